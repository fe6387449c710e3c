//! Joining the two boundaries into full coordinates, the permutation tests
//! on the assembled surface, and certification.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::coords::SurfaceCoordinates;
use crate::error::Result;
use crate::lyapunov::{lyapunov_sum, LyapunovSum};
use crate::origami::Origami;
use crate::search::window::Visible;
use crate::strata::Kappa;

/// Coordinates from a side-A entry (twist `t_start`) and a side-B entry
/// (twist `s_start`) iff `2d = 2·s0 + 2·t0 + s_start + t_start`.
pub fn combine(a: &Visible, b: &Visible, d_opt: u32) -> Option<SurfaceCoordinates> {
    let t0 = a.candidate.composition.first();
    let s0 = b.candidate.composition.first();
    if 2 * d_opt != 2 * s0 + 2 * t0 + a.start + b.start {
        return None;
    }
    SurfaceCoordinates::new(
        (a.candidate.composition.clone(), a.candidate.diagram.clone()),
        a.start,
        (b.candidate.composition.clone(), b.candidate.diagram.clone()),
        d_opt,
    )
    .ok()
}

/// All compatible pairs, keyed on the twist so the join is linear.
pub fn combine_lists(a: &[Visible], b: &[Visible], d_opt: u32) -> Vec<SurfaceCoordinates> {
    let mut by_start: BTreeMap<u32, Vec<&Visible>> = BTreeMap::new();
    for e in b {
        by_start.entry(e.start).or_default().push(e);
    }
    let mut out = Vec::new();
    for x in a {
        let t0 = x.candidate.composition.first();
        for (&s, ys) in &by_start {
            for y in ys {
                let s0 = y.candidate.composition.first();
                if 2 * d_opt == 2 * s0 + 2 * t0 + x.start + s {
                    out.extend(combine(x, y, d_opt));
                }
            }
        }
    }
    out.sort();
    out
}

fn two_cycles_of(p: &crate::perm::Permutation, len: usize) -> bool {
    p.len() == 2 * len && p.cycle_type() == [len, len]
}

/// The vertical cycle through square 0 has length `2d`.
pub fn vertical_fast(o: &Origami, d_opt: u32) -> bool {
    o.v().cycle_len_from(0) == 2 * d_opt as usize
}

/// `v` is a product of two `2d`-cycles.
pub fn vertical_check(o: &Origami, d_opt: u32) -> bool {
    vertical_fast(o, d_opt) && two_cycles_of(o.v(), 2 * d_opt as usize)
}

/// `h^k v` is a product of two `2d`-cycles for every `1 ≤ k ≤ d`.
pub fn slope_test(o: &Origami, d_opt: u32) -> bool {
    (1..=d_opt as i64).all(|k| two_cycles_of(&o.slope_monodromy(k), 2 * d_opt as usize))
}

/// A deduplicated class with its exact exponent sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub origami: Origami,
    pub stratum: Kappa,
    pub genus: u32,
    pub lyapunov: LyapunovSum,
}

impl Certificate {
    /// Sum exactly one, on a surface of genus at least two.
    pub fn certified(&self) -> bool {
        self.lyapunov.is_one() && self.genus >= 2
    }
}

/// Canonical classes of `survivors` in canonical order, each with its sum.
pub fn reduce_and_certify(survivors: &[Origami]) -> Vec<Certificate> {
    let mut classes: Vec<Origami> = survivors.par_iter().map(Origami::canonical).collect();
    classes.sort();
    classes.dedup();
    classes
        .into_par_iter()
        .map(|o| {
            let s = o.stratum();
            Certificate {
                lyapunov: lyapunov_sum(&o),
                stratum: s.kappa,
                genus: s.genus,
                origami: o,
            }
        })
        .collect()
}

/// Assembly plus the permutation tests, keeping each stage's output.
pub struct Cascade {
    pub vert_first: Vec<SurfaceCoordinates>,
    pub vert_all: Vec<SurfaceCoordinates>,
    pub slope: Vec<(SurfaceCoordinates, Origami)>,
}

pub fn permutation_cascade(admissible: &[SurfaceCoordinates], d_opt: u32) -> Result<Cascade> {
    let assembled: Vec<(SurfaceCoordinates, Origami)> = admissible
        .par_iter()
        .map(|c| c.assemble().map(|o| (c.clone(), o)))
        .filter(|r| !matches!(r, Err(crate::error::Error::Disconnected)))
        .collect::<Result<_>>()?;
    let first: Vec<&(SurfaceCoordinates, Origami)> =
        assembled.iter().filter(|(_, o)| vertical_fast(o, d_opt)).collect();
    let all: Vec<&(SurfaceCoordinates, Origami)> = first
        .iter()
        .copied()
        .filter(|(_, o)| two_cycles_of(o.v(), 2 * d_opt as usize))
        .collect();
    let slope: Vec<(SurfaceCoordinates, Origami)> = all
        .iter()
        .filter(|(_, o)| slope_test(o, d_opt))
        .map(|&(c, o)| (c.clone(), o.clone()))
        .collect();
    Ok(Cascade {
        vert_first: first.iter().map(|(c, _)| c.clone()).collect(),
        vert_all: all.iter().map(|(c, _)| c.clone()).collect(),
        slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::Composition;
    use crate::origami::fixtures::eierlegende_wollmilchsau;
    use crate::search::window::AlignedCandidate;

    fn visible(comp: &[u32], diag: &str, start: u32) -> Visible {
        Visible {
            candidate: AlignedCandidate {
                composition: Composition(comp.to_vec()),
                diagram: diag.parse().unwrap(),
            },
            start,
        }
    }

    #[test]
    fn twist_relation() {
        let a = visible(&[1; 6], "[[0,5,3,1,2,4],[0,5,3,1,2,4]]", 0);
        let b = visible(&[2, 2, 2], "[[0,1,2],[0,1,2]]", 0);
        assert!(combine(&a, &b, 3).is_some());
        let b1 = visible(&[2, 2, 2], "[[0,1,2],[0,1,2]]", 1);
        assert!(combine(&a, &b1, 3).is_none());
        let one = visible(&[1, 1, 1, 1], "[[0,1,2,3],[0,3,2,1]]", 0);
        assert!(combine(&one, &one, 2).is_some());
    }

    #[test]
    fn ornithorynque_passes_permutation_tests() {
        let c: SurfaceCoordinates =
            "(((1, 1, 1, 1, 1, 1), [[0, 5, 3, 1, 2, 4], [0, 5, 3, 1, 2, 4]]), 0, ((2, 2, 2), [[0, 1, 2], [0, 1, 2]]))"
                .parse()
                .unwrap();
        let o = c.assemble().unwrap();
        assert!(vertical_check(&o, 3));
        assert!(slope_test(&o, 3));
        let cert = reduce_and_certify(&[o]);
        assert_eq!(cert.len(), 1);
        assert!(cert[0].certified());
        assert_eq!(cert[0].lyapunov.orbit_size, 1);
    }

    #[test]
    fn wollmilchsau_passes_slope_test() {
        let o = eierlegende_wollmilchsau();
        assert!(vertical_check(&o, 2));
        assert!(slope_test(&o, 2));
    }

    #[test]
    fn vertical_fixed_square_fails() {
        let o = Origami::from_images(vec![1, 2, 3, 0], vec![0, 2, 1, 3]).unwrap();
        assert!(!vertical_check(&o, 1));
    }

    #[test]
    fn empty_survivors() {
        assert!(reduce_and_certify(&[]).is_empty());
    }
}
