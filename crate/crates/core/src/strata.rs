//! Zero-order multisets and the static table of candidate strata with the
//! degree of their optimal torus cover.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multiset of zero orders, kept sorted in decreasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Kappa(Vec<u32>);

impl Kappa {
    pub fn new(mut orders: Vec<u32>) -> Self {
        orders.sort_unstable_by(|a, b| b.cmp(a));
        Kappa(orders)
    }

    pub fn orders(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of boundary saddle connections of a one-cylinder surface with these zeros.
    pub fn saddle_connection_count(&self) -> usize {
        self.0.iter().map(|&m| m as usize + 1).sum()
    }

    pub fn total_order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn count_of(&self, order: u32) -> usize {
        self.0.iter().filter(|&&m| m == order).count()
    }

    /// Multiset union.
    pub fn union(&self, other: &Kappa) -> Kappa {
        Kappa::new(self.0.iter().chain(&other.0).copied().collect())
    }

    /// Drops order-0 entries (marked points).
    pub fn without_marked_points(&self) -> Kappa {
        Kappa(self.0.iter().copied().filter(|&m| m > 0).collect())
    }

    /// File-name tag, e.g. `H_2_1_1`.
    pub fn tag(&self) -> String {
        let mut s = String::from("H");
        for m in &self.0 {
            s.push('_');
            s.push_str(&m.to_string());
        }
        s
    }
}

impl From<Vec<u32>> for Kappa {
    fn from(v: Vec<u32>) -> Self {
        Kappa::new(v)
    }
}

impl From<Kappa> for Vec<u32> {
    fn from(k: Kappa) -> Vec<u32> {
        k.0
    }
}

impl fmt::Debug for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Kappa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("H(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str(")")
    }
}

/// Accepts `2,1,1`, `H(2,1,1)`, `H_2_1_1` and exponent shorthand such as `2,1^6`.
impl FromStr for Kappa {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix("H(")
            .and_then(|r| r.strip_suffix(')'))
            .or_else(|| t.strip_prefix("H_"))
            .unwrap_or(t);
        if t.is_empty() {
            return Ok(Kappa(Vec::new()));
        }
        let mut orders = Vec::new();
        for tok in t.split([',', '_']) {
            let tok = tok.trim();
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b, e.trim().parse::<usize>().map_err(|e| Error::Parse(format!("{tok:?}: {e}")))?),
                None => (tok, 1),
            };
            let m = base
                .trim()
                .parse::<u32>()
                .map_err(|e| Error::Parse(format!("{tok:?}: {e}")))?;
            orders.extend(std::iter::repeat(m).take(exp));
        }
        Ok(Kappa::new(orders))
    }
}

/// One row of the candidate-strata table.
#[derive(Clone, Copy, Debug)]
pub struct StratumRow {
    pub orders: &'static [u32],
    pub d_opt: u32,
}

pub const CANDIDATE_STRATA: [StratumRow; 10] = [
    StratumRow { orders: &[1, 1, 1, 1], d_opt: 2 },
    StratumRow { orders: &[1, 1, 1, 1, 1, 1], d_opt: 4 },
    StratumRow { orders: &[2, 2, 2], d_opt: 3 },
    StratumRow { orders: &[2, 1, 1, 1, 1, 1, 1], d_opt: 36 },
    StratumRow { orders: &[2, 2, 1, 1, 1, 1], d_opt: 18 },
    StratumRow { orders: &[2, 2, 2, 1, 1], d_opt: 12 },
    StratumRow { orders: &[2, 2, 2, 2], d_opt: 9 },
    StratumRow { orders: &[3, 1, 1, 1, 1, 1], d_opt: 16 },
    StratumRow { orders: &[3, 3, 1, 1], d_opt: 8 },
    StratumRow { orders: &[4, 1, 1, 1, 1], d_opt: 10 },
];

/// Degree of the optimal torus cover for a candidate stratum.
pub fn d_opt(kappa: &Kappa) -> Result<u32> {
    CANDIDATE_STRATA
        .iter()
        .find(|row| row.orders == kappa.orders())
        .map(|row| row.d_opt)
        .ok_or_else(|| Error::UnknownStratum(kappa.to_string()))
}

pub fn candidate_strata() -> impl Iterator<Item = (Kappa, u32)> {
    CANDIDATE_STRATA
        .iter()
        .map(|row| (Kappa::new(row.orders.to_vec()), row.d_opt))
}
