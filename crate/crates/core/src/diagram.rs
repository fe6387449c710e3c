//! One-cylinder diagrams: the identification pattern between the saddle
//! connections on the bottom and top boundary of a single cylinder.
//!
//! The bottom sequence is read left to right. The top sequence is stored the
//! way it is printed, which is read right to left; every position computation
//! goes through [`OneCylinderDiagram::top_left_to_right`].

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::literal::Literal;
use crate::strata::Kappa;

/// Reading direction of the printed top sequence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TopReading {
    /// Printed top lists labels from right to left.
    #[default]
    RightToLeft,
    /// Printed top lists labels from left to right.
    LeftToRight,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneCylinderDiagram {
    bottom: Vec<usize>,
    top: Vec<usize>,
}

/// Zeros of the self-glued one-cylinder surface and the endpoints of each
/// bottom saddle connection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroIncidence {
    /// Order of each zero, indexed by zero id. Ids are assigned in order of
    /// first appearance along the bottom, so the zero at the left end of
    /// bottom position 0 has id 0.
    pub zero_orders: Vec<u32>,
    /// `(left zero, right zero)` for the saddle connection at each bottom position.
    pub incidence: Vec<(usize, usize)>,
}

impl ZeroIncidence {
    pub fn kappa(&self) -> Kappa {
        Kappa::new(self.zero_orders.clone())
    }

    pub fn zero_count(&self) -> usize {
        self.zero_orders.len()
    }

    /// True iff some boundary saddle connection runs from a simple zero to itself.
    pub fn has_simple_zero_self_loop(&self) -> bool {
        self.incidence
            .iter()
            .any(|&(a, b)| a == b && self.zero_orders[a] == 1)
    }
}

fn check_sequence(seq: &[usize], n: usize, what: &str) -> Result<()> {
    let mut seen = vec![false; n];
    for &x in seq {
        if x >= n || seen[x] {
            return Err(Error::InvalidDiagram(format!(
                "{what} {seq:?} is not a permutation of 0..{n}"
            )));
        }
        seen[x] = true;
    }
    Ok(())
}

impl OneCylinderDiagram {
    pub fn new(bottom: Vec<usize>, top: Vec<usize>) -> Result<Self> {
        let n = bottom.len();
        if n == 0 || top.len() != n {
            return Err(Error::InvalidDiagram(format!(
                "bottom has {} labels, top has {}",
                n,
                top.len()
            )));
        }
        check_sequence(&bottom, n, "bottom")?;
        check_sequence(&top, n, "top")?;
        Ok(OneCylinderDiagram { bottom, top })
    }

    /// Diagram with bottom `0, 1, …, n−1`.
    pub fn with_identity_bottom(top: Vec<usize>) -> Result<Self> {
        Self::new((0..top.len()).collect(), top)
    }

    /// Number of saddle connections.
    pub fn n(&self) -> usize {
        self.bottom.len()
    }

    pub fn bottom(&self) -> &[usize] {
        &self.bottom
    }

    /// Top labels as printed.
    pub fn top(&self) -> &[usize] {
        &self.top
    }

    /// Top labels in left-to-right order, starting from the first printed entry.
    pub fn top_left_to_right(&self) -> Vec<usize> {
        self.top_left_to_right_with(TopReading::default())
    }

    pub fn top_left_to_right_with(&self, reading: TopReading) -> Vec<usize> {
        match reading {
            TopReading::RightToLeft => self.top.iter().rev().copied().collect(),
            TopReading::LeftToRight => self.top.clone(),
        }
    }

    /// Cyclically rotates the bottom so that position `r` becomes position 0.
    pub fn rotate_bottom(&self, r: usize) -> OneCylinderDiagram {
        let mut bottom = self.bottom.clone();
        bottom.rotate_left(r % self.n());
        OneCylinderDiagram {
            bottom,
            top: self.top.clone(),
        }
    }

    /// Relabels so the bottom reads `0, 1, …, n−1` and rotates the printed top
    /// to start with label 0. Bottom positions are unchanged, so two diagrams
    /// with equal normal forms give identical surfaces.
    pub fn normalized(&self) -> OneCylinderDiagram {
        let n = self.n();
        let mut relabel = vec![0; n];
        for (pos, &lab) in self.bottom.iter().enumerate() {
            relabel[lab] = pos;
        }
        let mut top: Vec<usize> = self.top.iter().map(|&x| relabel[x]).collect();
        let zero_at = top.iter().position(|&x| x == 0).expect("label 0 present");
        top.rotate_left(zero_at);
        OneCylinderDiagram {
            bottom: (0..n).collect(),
            top,
        }
    }

    /// Representative of the class under simultaneous rotation: the normalized
    /// form with the lexicographically least top over all bottom rotations.
    pub fn canonical_rotation(&self) -> OneCylinderDiagram {
        (0..self.n())
            .map(|r| self.rotate_bottom(r).normalized())
            .min()
            .expect("n >= 1")
    }

    /// Zeros of the self-glued surface, found by walking corners
    /// counterclockwise. Starting just above the left endpoint of a bottom
    /// connection `a`, a counterclockwise turn sweeps the upper half-plane to
    /// the connection preceding `a` on the bottom, crosses it into the top
    /// copy, sweeps the lower half-plane to the next connection along the top,
    /// and crosses back up to the bottom at the left endpoint of that
    /// connection. Each full turn visits `m + 1` bottom corners for a zero of
    /// order `m`.
    pub fn zero_data(&self) -> ZeroIncidence {
        self.zero_data_with(TopReading::default())
    }

    pub fn zero_data_with(&self, reading: TopReading) -> ZeroIncidence {
        let n = self.n();
        let top = self.top_left_to_right_with(reading);
        let mut bottom_pos = vec![0; n];
        for (pos, &lab) in self.bottom.iter().enumerate() {
            bottom_pos[lab] = pos;
        }
        let mut next_top = vec![0; n];
        for k in 0..n {
            next_top[top[k]] = top[(k + 1) % n];
        }
        // corner walk on labels: left endpoint of a -> left endpoint of next_top(prev_bottom(a))
        let step = |a: usize| {
            let prev = self.bottom[(bottom_pos[a] + n - 1) % n];
            next_top[prev]
        };
        let mut zero_of_label = vec![usize::MAX; n];
        let mut zero_orders = Vec::new();
        for &start in &self.bottom {
            if zero_of_label[start] != usize::MAX {
                continue;
            }
            let id = zero_orders.len();
            let mut corners = 0u32;
            let mut a = start;
            loop {
                zero_of_label[a] = id;
                corners += 1;
                a = step(a);
                if a == start {
                    break;
                }
            }
            zero_orders.push(corners - 1);
        }
        let incidence = (0..n)
            .map(|pos| {
                let here = self.bottom[pos];
                let next = self.bottom[(pos + 1) % n];
                (zero_of_label[here], zero_of_label[next])
            })
            .collect();
        ZeroIncidence {
            zero_orders,
            incidence,
        }
    }

    /// Bit per bottom position: XOR of the bits of the two endpoint zeros.
    pub fn parity_pattern(&self, bits: &[u8]) -> Result<Vec<u8>> {
        parity_pattern(&self.zero_data(), bits)
    }
}

pub fn parity_pattern(zeros: &ZeroIncidence, bits: &[u8]) -> Result<Vec<u8>> {
    if bits.len() < zeros.zero_count() {
        return Err(Error::MissingBit(bits.len()));
    }
    Ok(zeros
        .incidence
        .iter()
        .map(|&(a, b)| (bits[a] ^ bits[b]) & 1)
        .collect())
}

/// All bit assignments placing a single zero of order `order` alone over its
/// 2-torsion point (bit 1) and every other zero over the other point (bit 0).
pub fn isolated_zero_bits(zeros: &ZeroIncidence, order: u32) -> Vec<Vec<u8>> {
    (0..zeros.zero_count())
        .filter(|&z| zeros.zero_orders[z] == order)
        .map(|z| {
            let mut bits = vec![0u8; zeros.zero_count()];
            bits[z] = 1;
            bits
        })
        .collect()
}

fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

/// All one-cylinder diagrams with zero orders `kappa`, one per class under
/// simultaneous rotation, in the normal form of
/// [`OneCylinderDiagram::canonical_rotation`], sorted by top. Diagrams with a
/// boundary saddle connection from a simple zero to itself are dropped.
pub fn enumerate_diagrams(kappa: &Kappa) -> Vec<OneCylinderDiagram> {
    let n = kappa.saddle_connection_count();
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut rest: Vec<usize> = (1..n).collect();
    loop {
        let mut top = Vec::with_capacity(n);
        top.push(0);
        top.extend_from_slice(&rest);
        let d = OneCylinderDiagram::with_identity_bottom(top).expect("valid by construction");
        let zeros = d.zero_data();
        if zeros.kappa() == *kappa && !zeros.has_simple_zero_self_loop() && d.canonical_rotation() == d {
            out.push(d);
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    out
}

impl fmt::Debug for OneCylinderDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, xs: &[usize]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

/// Bracket form `[[b0, …], [t0, …]]`.
impl fmt::Display for OneCylinderDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        write_list(f, &self.bottom)?;
        f.write_str(", ")?;
        write_list(f, &self.top)?;
        f.write_str("]")
    }
}

impl OneCylinderDiagram {
    pub(crate) fn from_literal(lit: &Literal) -> Result<Self> {
        let parts = lit.as_seq()?;
        if parts.len() != 2 {
            return Err(Error::Parse(format!("diagram needs two sequences, got {}", parts.len())));
        }
        let bottom = parts[0].as_usize_vec()?;
        let top = parts[1].as_usize_vec()?;
        OneCylinderDiagram::new(bottom, top)
    }
}

impl FromStr for OneCylinderDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lit: Literal = s.parse()?;
        // tolerate the extra bracket level used for multi-cylinder listings
        match lit.as_seq()? {
            [inner] if inner.as_seq().map_or(false, |x| x.len() == 2 && x[0].as_seq().is_ok()) => {
                Self::from_literal(inner)
            }
            _ => Self::from_literal(&lit),
        }
    }
}
