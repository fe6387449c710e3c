//! Parity alignment and the visibility test through the opposite boundary's
//! longest connection.
//!
//! Everything here works in the frame of one boundary: its connections sit
//! at prefix sums on the bottom of their cylinder, and the copy of the first
//! one starts at `top = 2·window + start` on the top of the other cylinder,
//! where `window` is the length of the opposite boundary's longest connection
//! and `start` is the twist (`t_start` for side A, `s_start` for side B).

use std::fmt;

use rayon::prelude::*;

use crate::composition::{generate, Composition, CompositionSpec};
use crate::coords::layout;
use crate::diagram::OneCylinderDiagram;
use crate::error::{Error, Result};
use crate::search::cases::{SideData, SideOption};

/// A composition paired with a diagram whose bottom has been rotated so that
/// its parity pattern equals the composition mod 2.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlignedCandidate {
    pub composition: Composition,
    pub diagram: OneCylinderDiagram,
}

impl fmt::Debug for AlignedCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}", self.composition, self.diagram)
    }
}

/// One line of a visible list: a candidate and a twist that passed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Visible {
    pub candidate: AlignedCandidate,
    pub start: u32,
}

/// Every rotation of `pattern` equal to the parity of `composition`.
pub fn align(composition: &Composition, diagram: &OneCylinderDiagram, pattern: &[u8]) -> Vec<AlignedCandidate> {
    let n = pattern.len();
    if composition.parts().len() != n {
        return Vec::new();
    }
    let parity = composition.parity();
    (0..n)
        .filter(|&r| (0..n).all(|j| pattern[(j + r) % n] == parity[j]))
        .map(|r| AlignedCandidate {
            composition: composition.clone(),
            diagram: diagram.rotate_bottom(r),
        })
        .collect()
}

/// Even twists `0, 2, …, 2d − 2·first − 2·window`.
pub fn starts(d_opt: u32, first: u32, window: u32) -> impl Iterator<Item = u32> {
    let room = 2 * d_opt as i64 - 2 * first as i64 - 2 * window as i64;
    (0..=room.max(-1)).step_by(2).map(|x| x as u32)
}

/// Bottom offset, top offset relative to the first connection's copy, and
/// length of each connection, indexed by label.
#[derive(Clone, Debug)]
pub struct Geometry {
    p: Vec<u32>,
    q: Vec<u32>,
    len: Vec<u32>,
}

impl Geometry {
    pub fn of(cand: &AlignedCandidate, d_opt: u32) -> Self {
        let lay = layout(cand.composition.parts(), &cand.diagram, 0, 2 * d_opt);
        Geometry {
            p: lay.bottom_start,
            q: lay.top_start,
            len: lay.length,
        }
    }

    /// Smallest position, over all connections, at which a returning
    /// trajectory crosses the window line, or `None` if some connection can
    /// see itself for every window (its long end wraps past the origin).
    fn least_crossing(&self, top: u32, d_opt: u32) -> Result<Option<u32>> {
        let mut least = u32::MAX;
        for i in 0..self.p.len() {
            let s = self.p[i] + self.q[i] + top;
            if s % 2 != 0 {
                return Err(Error::Consistency(format!(
                    "odd endpoint sum {s} for connection {i}; parities disagree with the layout"
                )));
            }
            let c = (s / 2) % d_opt;
            if c + self.len[i] > d_opt {
                return Ok(None);
            }
            least = least.min(c);
        }
        Ok(Some(least))
    }

    pub fn passes(&self, window: u32, top: u32, d_opt: u32) -> Result<bool> {
        Ok(self.least_crossing(top, d_opt)?.map_or(false, |c| c >= window))
    }
}

/// Visibility test: no connection can see itself through the window. A
/// connection with bottom offset `P`, top offset `Q` and length `ℓ` sees
/// itself along a trajectory that crosses the window line at `c` or `c + d`,
/// `c = (P + Q)/2 mod d`; it passes iff both of those length-`ℓ` intervals
/// avoid `[0, window)` on the circle of length `2d`.
pub fn window_filter(cand: &AlignedCandidate, window: u32, start: u32, d_opt: u32) -> Result<bool> {
    Geometry::of(cand, d_opt).passes(window, 2 * window + start, d_opt)
}

/// Compositions with the given first element, aligned against every option.
/// Options are restricted to those with index `≡ part (mod parts)`.
pub fn align_list(side: &SideData, total: u32, first: u32, part: usize, parts: usize) -> Vec<AlignedCandidate> {
    let options: Vec<&SideOption> = side
        .options
        .iter()
        .enumerate()
        .filter(|(i, _)| i % parts == part)
        .map(|(_, o)| o)
        .collect();
    let mut out: Vec<AlignedCandidate> = side
        .odd_counts
        .par_iter()
        .flat_map_iter(|&k| {
            let spec = CompositionSpec::new(total, side.parts, k).with_first_range(first, first);
            let comps: Vec<Composition> = generate(&spec).collect();
            let opts: Vec<&SideOption> = options.iter().copied().filter(|o| o.odd_count() == k).collect();
            comps
                .into_iter()
                .flat_map(move |c| {
                    opts.iter()
                        .flat_map(|o| align(&c, &o.diagram, &o.pattern))
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.par_sort_unstable();
    out.dedup();
    out
}

/// Visible lists for ascending windows. With `prune`, a larger window only
/// re-tests pairs that passed the previous one: the top offset
/// `2·window + start` ranges over a shrinking set and the test at a fixed top
/// offset only gets stricter as the window grows.
pub fn visible_lists(
    cands: &[AlignedCandidate],
    first: u32,
    windows: &[u32],
    d_opt: u32,
    prune: bool,
) -> Result<Vec<Vec<Visible>>> {
    let mut windows_sorted = windows.to_vec();
    windows_sorted.sort_unstable();
    debug_assert_eq!(windows_sorted, windows, "windows must ascend");

    let geoms: Vec<Geometry> = cands.par_iter().map(|c| Geometry::of(c, d_opt)).collect();
    // surviving (candidate, top offset) pairs from the previous window
    let mut alive: Option<Vec<(usize, u32)>> = None;
    let mut out = Vec::with_capacity(windows.len());
    for &w in windows {
        let tops: Vec<u32> = starts(d_opt, first, w).map(|s| 2 * w + s).collect();
        let pool: Vec<(usize, u32)> = match (&alive, prune) {
            (Some(prev), true) => prev.iter().copied().filter(|&(_, t)| t >= 2 * w).collect(),
            _ => (0..cands.len())
                .flat_map(|i| tops.iter().map(move |&t| (i, t)))
                .collect(),
        };
        let pass: Vec<(usize, u32)> = pool
            .into_par_iter()
            .map(|(i, t)| geoms[i].passes(w, t, d_opt).map(|ok| ok.then_some((i, t))))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let mut list: Vec<Visible> = pass
            .iter()
            .map(|&(i, t)| Visible {
                candidate: cands[i].clone(),
                start: t - 2 * w,
            })
            .collect();
        list.sort_unstable();
        out.push(list);
        alive = Some(pass);
    }
    Ok(out)
}

/// Candidates excluded for every window above `w0`: those failing at `w0`
/// for every admissible twist.
pub fn window_monotone_prune(cands: &[AlignedCandidate], first: u32, w0: u32, d_opt: u32) -> Result<Vec<bool>> {
    cands
        .iter()
        .map(|c| {
            let g = Geometry::of(c, d_opt);
            for s in starts(d_opt, first, w0) {
                if g.passes(w0, 2 * w0 + s, d_opt)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(xs: &[u32]) -> Composition {
        Composition(xs.to_vec())
    }

    fn diag(s: &str) -> OneCylinderDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn constant_pattern_aligns_everywhere() {
        let d = diag("[[0,1,2,3],[0,3,2,1]]");
        assert_eq!(align(&comp(&[1, 1, 1, 1]), &d, &[1, 1, 1, 1]).len(), 4);
        assert_eq!(align(&comp(&[2, 2, 2]), &diag("[[0,1,2],[0,1,2]]"), &[0, 0, 0]).len(), 3);
    }

    #[test]
    fn mismatched_parity_never_aligns() {
        let d = diag("[[0,1,2,3],[0,3,2,1]]");
        assert!(align(&comp(&[1, 2, 1, 2]), &d, &[1, 1, 0, 0]).is_empty());
    }

    #[test]
    fn rotation_is_recorded_on_the_bottom() {
        let d = diag("[[0,1,2,3],[0,3,2,1]]");
        let got = align(&comp(&[2, 1, 1, 2]), &d, &[1, 1, 0, 0]);
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].diagram.bottom(), &[3, 0, 1, 2]);
    }

    #[test]
    fn ornithorynque_side_passes() {
        let c = AlignedCandidate {
            composition: comp(&[1; 6]),
            diagram: diag("[[0,5,3,1,2,4],[0,5,3,1,2,4]]"),
        };
        assert!(window_filter(&c, 2, 0, 3).unwrap());
    }

    #[test]
    fn overlong_connection_fails() {
        // ℓ0 = 2d − window + 1
        let c = AlignedCandidate {
            composition: comp(&[5, 1]),
            diagram: diag("[[0,1],[1,0]]"),
        };
        assert!(!window_filter(&c, 2, 0, 3).unwrap());
    }

    #[test]
    fn starts_follow_the_twist_bound() {
        assert_eq!(starts(3, 1, 2).collect::<Vec<_>>(), vec![0]);
        assert_eq!(starts(36, 8, 19).collect::<Vec<_>>(), (0..=18).step_by(2).collect::<Vec<_>>());
        assert_eq!(starts(3, 2, 2).count(), 0);
    }
}
