//! Placement of a stratum's zeros over the four 2-torsion points, reduced to
//! the zero orders on each cylinder boundary.
//!
//! Boundary A is the circle `y = 0` (bottom of C1, top of C2, the τ
//! connections); boundary B is `y = 1` (the σ connections). On each boundary
//! one zero sits alone over one of its two 2-torsion points and every other
//! zero sits over the other, so a bit assignment marks exactly one zero, of
//! order `isolated_order`.

use std::collections::BTreeSet;

use crate::composition::{feasible_with_first, first_element_range, min_first_element};
use crate::diagram::{enumerate_diagrams, isolated_zero_bits, parity_pattern, OneCylinderDiagram};
use crate::error::{Error, Result};
use crate::strata::{d_opt, Kappa};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// τ connections: bottom of C1, top of C2.
    A,
    /// σ connections: bottom of C2, top of C1.
    B,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Side::A => "A",
            Side::B => "B",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Boundary {
    pub kappa: Kappa,
    pub isolated_order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchingCase {
    pub stratum: Kappa,
    pub d_opt: u32,
    pub index: usize,
    pub description: &'static str,
    pub a: Boundary,
    pub b: Boundary,
}

/// A diagram for one boundary together with one admissible parity pattern.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SideOption {
    pub diagram: OneCylinderDiagram,
    pub pattern: Vec<u8>,
}

impl SideOption {
    pub fn odd_count(&self) -> usize {
        self.pattern.iter().filter(|&&b| b == 1).count()
    }
}

type Row = (&'static [u32], &'static [(&'static str, &'static [u32], u32, &'static [u32], u32)]);

// (stratum, [(description, boundary A, isolated order, boundary B, isolated order)])
const CASES: [Row; 10] = [
    (&[1, 1, 1, 1], &[("one simple zero over each point", &[1, 1], 1, &[1, 1], 1)]),
    (
        &[1, 1, 1, 1, 1, 1],
        &[("extra simple zeros together over the origin", &[1, 1, 1, 1], 1, &[1, 1], 1)],
    ),
    (&[2, 2, 2], &[("double zeros over three points", &[2, 2], 2, &[2], 2)]),
    (
        &[2, 1, 1, 1, 1, 1, 1],
        &[
            ("extra zeros all over one point", &[2, 1, 1, 1, 1], 1, &[1, 1], 1),
            ("simple pair below, double zero above", &[1, 1, 1, 1], 1, &[2, 1, 1], 1),
        ],
    ),
    (
        &[2, 2, 1, 1, 1, 1],
        &[
            ("both double zeros over one point", &[2, 2, 1, 1], 1, &[1, 1], 1),
            ("one double zero on each boundary", &[2, 1, 1], 1, &[2, 1, 1], 1),
        ],
    ),
    (&[2, 2, 2, 1, 1], &[]),
    (
        &[2, 2, 2, 2],
        &[
            ("one double zero over each point", &[2, 2], 2, &[2, 2], 2),
            ("three double zeros below", &[2, 2, 2], 2, &[2], 2),
        ],
    ),
    (
        &[3, 1, 1, 1, 1, 1],
        &[
            ("triple zero alone above", &[1, 1, 1, 1], 1, &[3, 1], 1),
            ("triple zero with the simple pair below", &[3, 1, 1, 1], 1, &[1, 1], 1),
        ],
    ),
    (&[3, 3, 1, 1], &[("one triple zero on each boundary", &[3, 1], 1, &[3, 1], 1)]),
    (&[4, 1, 1, 1, 1], &[("quadruple zero below", &[4, 1, 1], 1, &[1, 1], 1)]),
];

pub fn enumerate_cases(stratum: &Kappa) -> Result<Vec<BranchingCase>> {
    let d = d_opt(stratum)?;
    let (_, rows) = CASES
        .iter()
        .find(|(k, _)| *k == stratum.orders())
        .ok_or_else(|| Error::UnknownStratum(stratum.to_string()))?;
    Ok(rows
        .iter()
        .enumerate()
        .map(|(index, &(description, a, ia, b, ib))| BranchingCase {
            stratum: stratum.clone(),
            d_opt: d,
            index,
            description,
            a: Boundary {
                kappa: Kappa::new(a.to_vec()),
                isolated_order: ia,
            },
            b: Boundary {
                kappa: Kappa::new(b.to_vec()),
                isolated_order: ib,
            },
        })
        .collect())
}

/// Diagrams of a boundary with each distinct parity pattern, sorted.
pub fn side_options(boundary: &Boundary) -> Vec<SideOption> {
    let mut out = BTreeSet::new();
    for diagram in enumerate_diagrams(&boundary.kappa) {
        let zeros = diagram.zero_data();
        for bits in isolated_zero_bits(&zeros, boundary.isolated_order) {
            let pattern = parity_pattern(&zeros, &bits).expect("bits cover every zero");
            out.insert(SideOption {
                diagram: diagram.clone(),
                pattern,
            });
        }
    }
    out.into_iter().collect()
}

/// Everything the search needs about one boundary.
#[derive(Clone, Debug)]
pub struct SideData {
    pub side: Side,
    pub parts: usize,
    pub options: Vec<SideOption>,
    pub odd_counts: Vec<usize>,
}

impl SideData {
    pub fn new(side: Side, boundary: &Boundary) -> Self {
        let options = side_options(boundary);
        let odd_counts: BTreeSet<usize> = options.iter().map(SideOption::odd_count).collect();
        SideData {
            side,
            parts: boundary.kappa.saddle_connection_count(),
            options,
            odd_counts: odd_counts.into_iter().collect(),
        }
    }

    /// Least possible longest connection over all options.
    pub fn first_min(&self, total: u32) -> Option<u32> {
        self.odd_counts
            .iter()
            .filter_map(|&k| min_first_element(total, self.parts, k))
            .min()
    }

    /// Admissible values of the longest connection, ascending.
    pub fn first_values(&self, total: u32, partner_min: u32) -> Vec<u32> {
        let mut out = BTreeSet::new();
        for &k in &self.odd_counts {
            if let Some((lo, hi)) = first_element_range(total, self.parts, k, partner_min) {
                out.extend((lo..=hi).filter(|&m| feasible_with_first(total, self.parts, k, m)));
            }
        }
        out.into_iter().collect()
    }
}

impl BranchingCase {
    pub fn boundary(&self, side: Side) -> &Boundary {
        match side {
            Side::A => &self.a,
            Side::B => &self.b,
        }
    }

    pub fn total(&self) -> u32 {
        2 * self.d_opt
    }

    pub fn sides(&self) -> (SideData, SideData) {
        (SideData::new(Side::A, &self.a), SideData::new(Side::B, &self.b))
    }
}

/// First-element values for both sides; empty when either side has no
/// admissible composition.
pub fn first_values(case: &BranchingCase, a: &SideData, b: &SideData) -> (Vec<u32>, Vec<u32>) {
    let total = case.total();
    match (a.first_min(total), b.first_min(total)) {
        (Some(ma), Some(mb)) => (a.first_values(total, mb), b.first_values(total, ma)),
        _ => (Vec::new(), Vec::new()),
    }
}
