//! Square-tiled surfaces as pairs of permutations `(h, v)`: `h` sends a
//! square to its right neighbour and `v` to the square above it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{canonical_pair, is_transitive, Permutation};
use crate::strata::Kappa;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "OrigamiRecord", into = "OrigamiRecord")]
pub struct Origami {
    h: Permutation,
    v: Permutation,
}

/// Serialized form `{"n": …, "h": […], "v": […]}`.
#[derive(Serialize, Deserialize)]
struct OrigamiRecord {
    n: usize,
    h: Permutation,
    v: Permutation,
}

impl TryFrom<OrigamiRecord> for Origami {
    type Error = Error;

    fn try_from(r: OrigamiRecord) -> Result<Self> {
        if r.h.len() != r.n {
            return Err(Error::SizeMismatch {
                left: r.n,
                right: r.h.len(),
            });
        }
        Origami::new(r.h, r.v)
    }
}

impl From<Origami> for OrigamiRecord {
    fn from(o: Origami) -> Self {
        OrigamiRecord {
            n: o.h.len(),
            h: o.h,
            v: o.v,
        }
    }
}

/// Zeros of an origami together with its marked (regular) vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumData {
    /// Orders of the genuine zeros (order ≥ 1).
    pub kappa: Kappa,
    pub marked_points: usize,
    pub genus: u32,
}

/// Maximal cylinders in one direction as `(width, height)`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CylinderSet(pub Vec<(u32, u32)>);

impl CylinderSet {
    pub fn area(&self) -> u32 {
        self.0.iter().map(|&(w, h)| w * h).sum()
    }
}

impl Origami {
    pub fn new(h: Permutation, v: Permutation) -> Result<Self> {
        if h.len() != v.len() {
            return Err(Error::SizeMismatch {
                left: h.len(),
                right: v.len(),
            });
        }
        if !is_transitive(&[&h, &v]) {
            return Err(Error::Disconnected);
        }
        Ok(Origami { h, v })
    }

    pub fn from_images(h: Vec<usize>, v: Vec<usize>) -> Result<Self> {
        Origami::new(Permutation::from_images(h)?, Permutation::from_images(v)?)
    }

    pub fn n_squares(&self) -> usize {
        self.h.len()
    }

    pub fn h(&self) -> &Permutation {
        &self.h
    }

    pub fn v(&self) -> &Permutation {
        &self.v
    }

    /// Turning counterclockwise around the bottom-left corner of square `s`
    /// visits `h⁻¹(s)`, then the square below it, then the square to the
    /// right of that, then the square above, which has the vertex at its
    /// bottom-left again. Cycles of `v h v⁻¹ h⁻¹` are therefore the vertices.
    pub fn corner_permutation(&self) -> Permutation {
        let hi = self.h.inverse();
        let vi = self.v.inverse();
        let n = self.n_squares();
        let images = (0..n)
            .map(|s| self.v.apply(self.h.apply(vi.apply(hi.apply(s)))))
            .collect();
        Permutation::from_images(images).expect("product of permutations")
    }

    pub fn stratum(&self) -> StratumData {
        let corners = self.corner_permutation().cycle_type();
        let vertices = corners.len();
        let kappa = Kappa::new(corners.iter().filter(|&&k| k > 1).map(|&k| k as u32 - 1).collect());
        let marked_points = corners.iter().filter(|&&k| k == 1).count();
        let genus = 1 + (self.n_squares() - vertices) as u32 / 2;
        StratumData {
            kappa,
            marked_points,
            genus,
        }
    }

    /// Rows are cycles of `h`; a row merges with the row above it when `v`
    /// commutes with `h` along the whole row (no cone point in between).
    pub fn horizontal_cylinders(&self) -> CylinderSet {
        let rows = self.h.cycles();
        let mut row_of = vec![0; self.n_squares()];
        for (r, row) in rows.iter().enumerate() {
            for &s in row {
                row_of[s] = r;
            }
        }
        let up: Vec<Option<usize>> = rows
            .iter()
            .map(|row| {
                let glued = row
                    .iter()
                    .all(|&s| self.v.apply(self.h.apply(s)) == self.h.apply(self.v.apply(s)));
                glued.then(|| row_of[self.v.apply(row[0])])
            })
            .collect();
        let mut has_below = vec![false; rows.len()];
        for u in up.iter().flatten() {
            has_below[*u] = true;
        }
        let mut used = vec![false; rows.len()];
        let mut cyls = Vec::new();
        let walk = |start: usize, used: &mut Vec<bool>| {
            let mut height = 0;
            let mut r = start;
            loop {
                used[r] = true;
                height += 1;
                match up[r] {
                    Some(next) if !used[next] => r = next,
                    _ => break,
                }
            }
            (rows[start].len() as u32, height)
        };
        for r in 0..rows.len() {
            if !has_below[r] && !used[r] {
                cyls.push(walk(r, &mut used));
            }
        }
        // what remains are closed loops of rows
        for r in 0..rows.len() {
            if !used[r] {
                cyls.push(walk(r, &mut used));
            }
        }
        cyls.sort_unstable();
        CylinderSet(cyls)
    }

    pub fn vertical_cylinders(&self) -> CylinderSet {
        self.rotate().horizontal_cylinders()
    }

    /// Horizontal shear by one unit: `(h, v h⁻¹)`.
    pub fn shear(&self) -> Origami {
        let v = self.v.compose(&self.h.inverse()).expect("same size");
        Origami { h: self.h.clone(), v }
    }

    /// Quarter turn counterclockwise: `(v⁻¹, h)`.
    pub fn rotate(&self) -> Origami {
        Origami {
            h: self.v.inverse(),
            v: self.h.clone(),
        }
    }

    pub fn canonical(&self) -> Origami {
        let (h, v) = canonical_pair(&self.h, &self.v).expect("origamis are connected");
        Origami { h, v }
    }

    pub fn is_isomorphic(&self, other: &Origami) -> bool {
        self.n_squares() == other.n_squares() && self.canonical() == other.canonical()
    }

    /// Monodromy of the slope `1/k` direction, `h^k v`.
    pub fn slope_monodromy(&self, k: i64) -> Permutation {
        self.h.pow(k).compose(&self.v).expect("same size")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Debug for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Origami(h={}, v={})", self.h, self.v)
    }
}

impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::eierlegende_wollmilchsau;
    use super::*;

    fn torus() -> Origami {
        Origami::from_images(vec![0], vec![0]).unwrap()
    }

    #[test]
    fn one_square_torus() {
        let t = torus();
        let s = t.stratum();
        assert!(s.kappa.is_empty());
        assert_eq!(s.marked_points, 1);
        assert_eq!(s.genus, 1);
        assert_eq!(t.horizontal_cylinders(), CylinderSet(vec![(1, 1)]));
        assert_eq!(t.shear(), t);
        assert_eq!(t.rotate(), t);
    }

    #[test]
    fn wollmilchsau_stratum_and_cylinders() {
        let o = eierlegende_wollmilchsau();
        let s = o.stratum();
        assert_eq!(s.kappa, "1,1,1,1".parse().unwrap());
        assert_eq!(s.genus, 3);
        assert_eq!(o.horizontal_cylinders(), CylinderSet(vec![(4, 1), (4, 1)]));
        assert_eq!(o.vertical_cylinders(), CylinderSet(vec![(4, 1), (4, 1)]));
    }

    #[test]
    fn stacked_rows_merge() {
        // 2x2 unbranched torus cover: one cylinder of width 2, height 2
        let o = Origami::from_images(vec![1, 0, 3, 2], vec![2, 3, 0, 1]).unwrap();
        assert_eq!(o.horizontal_cylinders(), CylinderSet(vec![(2, 2)]));
        assert_eq!(o.stratum().genus, 1);
    }

    #[test]
    fn disconnected_rejected() {
        assert!(matches!(
            Origami::from_images(vec![0, 1], vec![0, 1]),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn json_shape() {
        let o = Origami::from_images(vec![1, 0], vec![0, 1]).unwrap();
        assert_eq!(o.to_json(), r#"{"n":2,"h":[1,0],"v":[0,1]}"#);
        assert_eq!(Origami::from_json(&o.to_json()).unwrap(), o);
        assert!(Origami::from_json(r#"{"n":3,"h":[1,0],"v":[0,1]}"#).is_err());
    }
}
