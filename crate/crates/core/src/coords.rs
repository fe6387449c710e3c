//! Two-cylinder surface coordinates `((P1, c1), t_start, (P2, c2))` and their
//! assembly into an origami.
//!
//! Layout: cylinder C1 holds squares `0..2d` and sits below C2, which holds
//! `2d..4d`. The bottom of C1 carries the τ connections of `c1` and the top
//! of C2 carries their copies. The bottom of C2 carries the σ connections of
//! `c2` and the top of C1 their copies. On the bottom of C1, the bottom of C2
//! and the top of C1 the first connection (τ0 or σ0) starts at offset 0; on
//! the top of C2, τ0 starts at offset `2·s0 + t_start`.

use std::fmt;
use std::str::FromStr;

use crate::composition::Composition;
use crate::diagram::OneCylinderDiagram;
use crate::error::{Error, Result};
use crate::literal::Literal;
use crate::origami::Origami;
use crate::perm::Permutation;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceCoordinates {
    pub side1: (Composition, OneCylinderDiagram),
    pub t_start: u32,
    pub side2: (Composition, OneCylinderDiagram),
    pub d_opt: u32,
}

/// Where each label's copy starts on one cylinder boundary.
pub(crate) struct BoundaryLayout {
    pub bottom_start: Vec<u32>,
    pub top_start: Vec<u32>,
    pub length: Vec<u32>,
}

/// Positions of a side's connections: bottom copies at prefix sums from 0,
/// top copies in left-to-right top order with the first bottom label's copy
/// starting at `top_anchor` (mod `width`).
pub(crate) fn layout(comp: &[u32], diagram: &OneCylinderDiagram, top_anchor: u32, width: u32) -> BoundaryLayout {
    let n = diagram.n();
    let mut bottom_start = vec![0; n];
    let mut length = vec![0; n];
    let mut acc = 0;
    for (pos, &lab) in diagram.bottom().iter().enumerate() {
        bottom_start[lab] = acc;
        length[lab] = comp[pos];
        acc += comp[pos];
    }
    let top = diagram.top_left_to_right();
    let first = diagram.bottom()[0];
    let at = top.iter().position(|&x| x == first).expect("label present on top");
    let mut top_start = vec![0; n];
    let mut acc = top_anchor % width;
    for k in 0..n {
        let lab = top[(at + k) % n];
        top_start[lab] = acc;
        acc = (acc + length[lab]) % width;
    }
    BoundaryLayout {
        bottom_start,
        top_start,
        length,
    }
}

impl SurfaceCoordinates {
    /// Checks lengths and sums; the twist bound is separate, see
    /// [`SurfaceCoordinates::satisfies_twist_bound`].
    pub fn new(
        side1: (Composition, OneCylinderDiagram),
        t_start: u32,
        side2: (Composition, OneCylinderDiagram),
        d_opt: u32,
    ) -> Result<Self> {
        let width = 2 * d_opt;
        for (name, (comp, diag)) in [("P1", &side1), ("P2", &side2)] {
            if comp.parts().len() != diag.n() {
                return Err(Error::MalformedCoordinates(format!(
                    "{name} has {} parts but its diagram has {} saddle connections",
                    comp.parts().len(),
                    diag.n()
                )));
            }
            if comp.parts().iter().any(|&x| x == 0) || comp.total() != width {
                return Err(Error::MalformedCoordinates(format!(
                    "{name} = {comp} is not a composition of {width}"
                )));
            }
        }
        Ok(SurfaceCoordinates {
            side1,
            t_start,
            side2,
            d_opt,
        })
    }

    pub fn t0(&self) -> u32 {
        self.side1.0.first()
    }

    pub fn s0(&self) -> u32 {
        self.side2.0.first()
    }

    /// `t_start` even and `0 ≤ t_start ≤ 2d − 2·t0 − 2·s0`.
    pub fn satisfies_twist_bound(&self) -> bool {
        let room = 2 * self.d_opt as i64 - 2 * self.t0() as i64 - 2 * self.s0() as i64;
        self.t_start % 2 == 0 && (self.t_start as i64) <= room
    }

    /// The twist on the other boundary: `2d − 2·s0 − 2·t0 − t_start`.
    pub fn s_start(&self) -> Option<u32> {
        let v = 2 * self.d_opt as i64 - 2 * self.s0() as i64 - 2 * self.t0() as i64 - self.t_start as i64;
        u32::try_from(v).ok()
    }

    /// Top-of-C2 offset of τ0's left endpoint.
    pub fn tau0_offset(&self) -> u32 {
        2 * self.s0() + self.t_start
    }

    pub fn assemble(&self) -> Result<Origami> {
        let d2 = 2 * self.d_opt;
        let w = d2 as usize;
        let tau = layout(self.side1.0.parts(), &self.side1.1, self.tau0_offset(), d2);
        let sigma = layout(self.side2.0.parts(), &self.side2.1, 0, d2);

        // which label covers each unit edge of a top boundary, and at what offset
        let cover = |lay: &BoundaryLayout, what: &str| -> Result<Vec<(usize, u32)>> {
            let mut owner = vec![None; w];
            for lab in 0..lay.length.len() {
                for off in 0..lay.length[lab] {
                    let x = ((lay.top_start[lab] + off) % d2) as usize;
                    if owner[x].replace((lab, off)).is_some() {
                        return Err(Error::MalformedCoordinates(format!("overlapping connections on {what} at {x}")));
                    }
                }
            }
            owner
                .into_iter()
                .enumerate()
                .map(|(x, o)| o.ok_or_else(|| Error::MalformedCoordinates(format!("gap on {what} at {x}"))))
                .collect()
        };
        let top_c1 = cover(&sigma, "top of C1")?;
        let top_c2 = cover(&tau, "top of C2")?;

        let mut h = vec![0; 2 * w];
        let mut v = vec![0; 2 * w];
        for x in 0..w {
            h[x] = (x + 1) % w;
            h[w + x] = w + (x + 1) % w;
            let (lab, off) = top_c1[x];
            v[x] = w + ((sigma.bottom_start[lab] + off) % d2) as usize;
            let (lab, off) = top_c2[x];
            v[w + x] = ((tau.bottom_start[lab] + off) % d2) as usize;
        }
        Origami::new(Permutation::from_images(h)?, Permutation::from_images(v)?)
    }

    /// Same coordinates with both diagrams in normal form.
    pub fn normalized(&self) -> SurfaceCoordinates {
        SurfaceCoordinates {
            side1: (self.side1.0.clone(), self.side1.1.normalized()),
            t_start: self.t_start,
            side2: (self.side2.0.clone(), self.side2.1.normalized()),
            d_opt: self.d_opt,
        }
    }
}

impl fmt::Debug for SurfaceCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Printed tuple form `(((P1), c1), t_start, ((P2), c2))`.
impl fmt::Display for SurfaceCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "((({}), {}), {}, (({}), {}))",
            TupleBody(&self.side1.0),
            self.side1.1,
            self.t_start,
            TupleBody(&self.side2.0),
            self.side2.1
        )
    }
}

struct TupleBody<'a>(&'a Composition);

impl fmt::Display for TupleBody<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.0.to_string();
        f.write_str(&s[1..s.len() - 1])
    }
}

impl FromStr for SurfaceCoordinates {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lit: Literal = s.parse()?;
        let top = lit.as_seq()?;
        if top.len() != 3 {
            return Err(Error::Parse(format!("coordinates need three entries, got {}", top.len())));
        }
        let side = |l: &Literal| -> Result<(Composition, OneCylinderDiagram)> {
            let xs = l.as_seq()?;
            if xs.len() != 2 {
                return Err(Error::Parse("a side is (partition, diagram)".into()));
            }
            Ok((Composition(xs[0].as_u32_vec()?), OneCylinderDiagram::from_literal(&xs[1])?))
        };
        let side1 = side(&top[0])?;
        let t_start = u32::try_from(top[1].as_u64()?).map_err(|e| Error::Parse(e.to_string()))?;
        let side2 = side(&top[2])?;
        let total = side1.0.total();
        if total % 2 != 0 {
            return Err(Error::MalformedCoordinates(format!("odd circumference {total}")));
        }
        SurfaceCoordinates::new(side1, t_start, side2, total / 2)
    }
}
