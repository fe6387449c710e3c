//! Exhaustive search over vertical permutations, used to check the cascade.
//!
//! `h` is fixed to two rows `0..2d` and `2d..4d`. Every `v` is built by
//! backtracking, pruned whenever a cycle of `v` or of `h^k v` (`1 ≤ k ≤ d`)
//! closes with a length other than `2d` or a path grows past it. The
//! remaining predicates are checked on the finished pair directly.

use std::path::Path;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::origami::{CylinderSet, Origami};
use crate::perm::Permutation;
use crate::pipeline::artifact::{write_final, Stage};
use crate::search::filters::{reduce_and_certify, slope_test, vertical_check, Certificate};
use crate::strata::Kappa;

pub const DEFAULT_MAX_SQUARES: usize = 12;

struct Search {
    n: usize,
    w: usize,
    /// `hk[k][x] = h^k(x)`, row 0 is `v` itself.
    hk: Vec<Vec<usize>>,
    v: Vec<usize>,
    used: Vec<bool>,
    found: Vec<Vec<usize>>,
}

impl Search {
    /// Length of the path of `h^k v` through `x` if it closes, or `Err(len)`
    /// with the length of the open path ending at `x`.
    fn cycle_through(&self, k: usize, x: usize) -> std::result::Result<usize, usize> {
        let step = |y: usize| -> Option<usize> {
            let vy = self.v[y];
            (vy != usize::MAX).then(|| self.hk[k][vy])
        };
        let mut len = 1;
        let mut y = x;
        while let Some(z) = step(y) {
            if z == x {
                return Ok(len);
            }
            y = z;
            len += 1;
            if len > self.n {
                break;
            }
        }
        // nodes from x forward, a lower bound on the open path's length
        Err(len)
    }

    fn ok_after(&self, x: usize) -> bool {
        for k in 0..self.hk.len() {
            match self.cycle_through(k, x) {
                Ok(len) if len != self.w => return false,
                Ok(_) => {}
                Err(len) if len > self.w => return false,
                Err(_) => {}
            }
        }
        true
    }

    fn dfs(&mut self, x: usize) {
        if x == self.n {
            self.found.push(self.v.clone());
            return;
        }
        for y in 0..self.n {
            if self.used[y] {
                continue;
            }
            self.v[x] = y;
            self.used[y] = true;
            if self.ok_after(x) {
                self.dfs(x + 1);
            }
            self.used[y] = false;
            self.v[x] = usize::MAX;
        }
    }
}

fn two_rows(n: usize) -> Vec<usize> {
    let w = n / 2;
    (0..n).map(|x| if x < w { (x + 1) % w } else { w + (x - w + 1) % w }).collect()
}

/// Vertical permutations for `n = 4d` squares passing the cycle tests.
fn candidate_verticals(n: usize) -> Vec<Vec<usize>> {
    let w = n / 2;
    let d = n / 4;
    let h = two_rows(n);
    let mut hk = vec![(0..n).collect::<Vec<_>>()];
    for _ in 0..d {
        let prev = hk.last().unwrap();
        hk.push(prev.iter().map(|&y| h[y]).collect());
    }
    // v(0) ranges over all squares; each branch runs on its own thread
    (0..n)
        .into_par_iter()
        .flat_map_iter(|y0| {
            let mut s = Search {
                n,
                w,
                hk: hk.clone(),
                v: vec![usize::MAX; n],
                used: vec![false; n],
                found: Vec::new(),
            };
            s.v[0] = y0;
            s.used[y0] = true;
            if s.ok_after(0) {
                s.dfs(1);
            }
            s.found
        })
        .collect()
}

/// Classes of connected `n`-square origamis with two horizontal cylinders of
/// width `n/2` and height 1, every `h^k v` (`0 ≤ k ≤ n/4`) a pair of
/// `n/2`-cycles, and zeros `kappa`. An empty `kappa` accepts any stratum.
pub fn oracle_classes(n: usize, kappa: &Kappa, max_squares: usize) -> Result<Vec<Certificate>> {
    if n > max_squares {
        return Err(Error::Config(format!(
            "oracle on {n} squares exceeds the guard of {max_squares}; raise it explicitly"
        )));
    }
    if n == 0 || n % 4 != 0 {
        return Err(Error::Config(format!("oracle needs a positive multiple of 4 squares, got {n}")));
    }
    let d = (n / 4) as u32;
    let h = Permutation::from_images(two_rows(n))?;
    let rows = CylinderSet(vec![(2 * d, 1), (2 * d, 1)]);
    let survivors: Vec<Origami> = candidate_verticals(n)
        .into_par_iter()
        .filter_map(|v| Origami::new(h.clone(), Permutation::from_images(v).ok()?).ok())
        .filter(|o| o.horizontal_cylinders() == rows)
        .filter(|o| vertical_check(o, d) && slope_test(o, d))
        .filter(|o| kappa.is_empty() || o.stratum().kappa == *kappa)
        .collect();
    Ok(reduce_and_certify(&survivors))
}

/// Writes certified classes in the final-artifact format.
pub fn run_oracle(n: usize, kappa: &Kappa, max_squares: usize, out: &Path) -> Result<Vec<Certificate>> {
    let classes = oracle_classes(n, kappa, max_squares)?;
    write_final(Stage::Oracle, &crate::pipeline::run::final_path(out), &classes)?;
    Ok(classes)
}
