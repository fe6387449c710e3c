//! Minimal reader for the nested integer tuples and lists used in printed
//! coordinates, e.g. `(((1, 1), [[0, 1], [0, 1]]), 0, ((2,), [[0], [0]]))`.

use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Literal {
    Int(u64),
    Seq(Vec<Literal>),
}

impl Literal {
    pub(crate) fn as_seq(&self) -> Result<&[Literal]> {
        match self {
            Literal::Seq(xs) => Ok(xs),
            Literal::Int(x) => Err(Error::Parse(format!("expected a sequence, found {x}"))),
        }
    }

    pub(crate) fn as_u64(&self) -> Result<u64> {
        match self {
            Literal::Int(x) => Ok(*x),
            Literal::Seq(_) => Err(Error::Parse("expected an integer, found a sequence".into())),
        }
    }

    pub(crate) fn as_usize_vec(&self) -> Result<Vec<usize>> {
        self.as_seq()?.iter().map(|x| x.as_u64().map(|v| v as usize)).collect()
    }

    pub(crate) fn as_u32_vec(&self) -> Result<Vec<u32>> {
        self.as_seq()?
            .iter()
            .map(|x| {
                x.as_u64()
                    .and_then(|v| u32::try_from(v).map_err(|e| Error::Parse(e.to_string())))
            })
            .collect()
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {}", self.pos))
    }

    fn value(&mut self) -> Result<Literal> {
        match self.peek() {
            Some(open @ (b'(' | b'[')) => {
                let close = if open == b'(' { b')' } else { b']' };
                self.pos += 1;
                let mut items = Vec::new();
                loop {
                    if self.peek() == Some(close) {
                        self.pos += 1;
                        break;
                    }
                    items.push(self.value()?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(c) if c == close => {}
                        _ => return Err(self.err("expected ',' or closing bracket")),
                    }
                }
                Ok(Literal::Seq(items))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
                text.parse().map(Literal::Int).map_err(|e| Error::Parse(e.to_string()))
            }
            _ => Err(self.err("expected a value")),
        }
    }
}

impl FromStr for Literal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut r = Reader {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let v = r.value()?;
        if r.peek().is_some() {
            return Err(r.err("trailing input"));
        }
        Ok(v)
    }
}
