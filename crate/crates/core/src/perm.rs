//! Permutations of `0..n` and the simultaneous-conjugacy canonical form used
//! to decide whether two square-tiled surfaces are isomorphic.
//!
//! A permutation is stored by its image list: entry `i` is the image of `i`.
//! Composition follows function notation, `p.compose(&q)` maps `i` to
//! `p(q(i))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "permutations act on at least one point");
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::InvalidPermutation("empty image list".into()));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a bijection on 0..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from disjoint cycles on `0..n`; unlisted points are fixed.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let y = cycle[(k + 1) % cycle.len()];
                if x >= n || y >= n {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle entry out of range 0..{n}"
                    )));
                }
                images[x] = y;
            }
        }
        Self::from_images(images)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&x| self.images[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Permutation { images }
    }

    /// `self^k` for any integer `k`.
    pub fn pow(&self, k: i64) -> Permutation {
        let n = self.len();
        // Walk each cycle once and read off the k-th successor.
        let mut out = vec![usize::MAX; n];
        for start in 0..n {
            if out[start] != usize::MAX {
                continue;
            }
            let cycle = self.cycle_of(start);
            let len = cycle.len() as i64;
            let shift = k.rem_euclid(len) as usize;
            for (idx, &x) in cycle.iter().enumerate() {
                out[x] = cycle[(idx + shift) % cycle.len()];
            }
        }
        Permutation { images: out }
    }

    fn cycle_of(&self, start: usize) -> Vec<usize> {
        let mut cycle = vec![start];
        let mut x = self.images[start];
        while x != start {
            cycle.push(x);
            x = self.images[x];
        }
        cycle
    }

    /// Disjoint cycles, each starting at its smallest element, ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let cycle = self.cycle_of(start);
            for &x in &cycle {
                seen[x] = true;
            }
            cycles.push(cycle);
        }
        cycles
    }

    /// Cycle lengths sorted in decreasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x];
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        lengths
    }

    /// Length of the cycle through `start`.
    pub fn cycle_len_from(&self, start: usize) -> usize {
        let mut len = 1;
        let mut x = self.images[start];
        while x != start {
            len += 1;
            x = self.images[x];
        }
        len
    }

    /// `g self g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Result<Permutation> {
        g.compose(self)?.compose(&g.inverse())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("expected [..], got {s:?}")))?;
        let images = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("{t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.images
    }
}

/// True iff the group generated by `gens` acts transitively on the points.
pub fn is_transitive(gens: &[&Permutation]) -> bool {
    let n = gens[0].len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == n
}

/// Relabels `(h, v)` by breadth-first search from `start`, visiting the image
/// under `h` before the image under `v`. Returns the relabeled image lists.
fn bfs_relabel(h: &[usize], v: &[usize], start: usize, label: &mut [usize], order: &mut Vec<usize>) -> (Vec<usize>, Vec<usize>) {
    let n = h.len();
    label.fill(usize::MAX);
    order.clear();
    label[start] = 0;
    order.push(start);
    let mut head = 0;
    while head < order.len() {
        let x = order[head];
        head += 1;
        for y in [h[x], v[x]] {
            if label[y] == usize::MAX {
                label[y] = order.len();
                order.push(y);
            }
        }
    }
    debug_assert_eq!(order.len(), n);
    let hh = order.iter().map(|&x| label[h[x]]).collect();
    let vv = order.iter().map(|&x| label[v[x]]).collect();
    (hh, vv)
}

/// Canonical representative of the simultaneous conjugacy class of `(h, v)`:
/// the lexicographically least pair over all breadth-first relabelings.
pub fn canonical_pair(h: &Permutation, v: &Permutation) -> Result<(Permutation, Permutation)> {
    if h.len() != v.len() {
        return Err(Error::SizeMismatch {
            left: h.len(),
            right: v.len(),
        });
    }
    if !is_transitive(&[h, v]) {
        return Err(Error::Disconnected);
    }
    let n = h.len();
    let mut label = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for start in 0..n {
        let cand = bfs_relabel(h.images(), v.images(), start, &mut label, &mut order);
        if best.as_ref().map_or(true, |b| cand < *b) {
            best = Some(cand);
        }
    }
    let (hh, vv) = best.expect("n >= 1");
    Ok((Permutation { images: hh }, Permutation { images: vv }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(images: &[usize]) -> Permutation {
        Permutation::from_images(images.to_vec()).unwrap()
    }

    #[test]
    fn compose_hand_evaluated() {
        assert_eq!(p(&[1, 0, 2]).compose(&p(&[0, 2, 1])).unwrap(), p(&[1, 2, 0]));
    }

    #[test]
    fn compose_identity_and_inverse() {
        let q = p(&[2, 0, 3, 1]);
        let id = Permutation::identity(4);
        assert_eq!(id.compose(&q).unwrap(), q);
        assert!(q.compose(&q.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_size_mismatch() {
        assert!(matches!(
            p(&[0, 1]).compose(&p(&[0, 1, 2])),
            Err(Error::SizeMismatch { .. })
        ));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
        assert!(Permutation::from_images(vec![]).is_err());
        assert!(Permutation::from_images(vec![3, 0, 1]).is_err());
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(4).cycle_type(), vec![1, 1, 1, 1]);
        assert_eq!(p(&[1, 2, 3, 4, 5, 0]).cycle_type(), vec![6]);
        assert_eq!(p(&[1, 0, 3, 4, 2]).cycle_type(), vec![3, 2]);
    }

    #[test]
    fn powers() {
        let c = p(&[1, 2, 3, 4, 5, 0]);
        assert_eq!(c.pow(2), c.compose(&c).unwrap());
        assert!(c.pow(6).is_identity());
        assert_eq!(c.pow(-1), c.inverse());
        assert_eq!(c.pow(0), Permutation::identity(6));
    }

    #[test]
    fn display_round_trip() {
        let q = p(&[1, 0, 2]);
        assert_eq!(q.to_string(), "[1,0,2]");
        assert_eq!("[1, 0, 2]".parse::<Permutation>().unwrap(), q);
        assert!("[1,1]".parse::<Permutation>().is_err());
        assert_eq!(serde_json::to_string(&q).unwrap(), "[1,0,2]");
    }

    #[test]
    fn canonical_one_square_torus() {
        let id = Permutation::identity(1);
        assert_eq!(canonical_pair(&id, &id).unwrap(), (id.clone(), id));
    }

    #[test]
    fn canonical_rejects_disconnected() {
        let id = Permutation::identity(2);
        assert!(matches!(canonical_pair(&id, &id), Err(Error::Disconnected)));
    }

    #[test]
    fn canonical_is_idempotent_and_conjugation_invariant() {
        let h = p(&[1, 2, 3, 0, 5, 6, 7, 4]);
        let v = p(&[4, 7, 6, 5, 2, 1, 0, 3]);
        let (ch, cv) = canonical_pair(&h, &v).unwrap();
        assert_eq!(canonical_pair(&ch, &cv).unwrap(), (ch.clone(), cv.clone()));
        let g = p(&[3, 5, 0, 7, 1, 6, 2, 4]);
        let (gh, gv) = (h.conjugate_by(&g).unwrap(), v.conjugate_by(&g).unwrap());
        assert_eq!(canonical_pair(&gh, &gv).unwrap(), (ch, cv));
    }
}
