//! Exact sums of the positive Lyapunov exponents of the Kontsevich–Zorich
//! cocycle over the `SL(2, Z)` orbit of an origami.

use std::collections::{HashMap, VecDeque};

use num::{BigInt, BigRational, One, Zero};

use crate::origami::Origami;
use crate::strata::Kappa;

pub type Rational = BigRational;

pub fn ratio(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// `p/q` in lowest terms; integers print as `p/1`.
pub fn render(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `(1/12) Σ m(m+2)/(m+1)` over the zeros.
pub fn stratum_term(kappa: &Kappa) -> Rational {
    kappa
        .orders()
        .iter()
        .map(|&m| ratio(m as i64 * (m as i64 + 2), 12 * (m as i64 + 1)))
        .fold(Rational::zero(), |a, b| a + b)
}

/// Canonical representatives of the orbit under `T = (h, v h⁻¹)` and
/// `S = (v⁻¹, h)`, in discovery order starting from `o`.
pub fn sl2z_orbit(o: &Origami) -> Vec<Origami> {
    let start = o.canonical();
    let mut seen: HashMap<Origami, ()> = HashMap::new();
    let mut order = vec![start.clone()];
    seen.insert(start.clone(), ());
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for y in [x.shear().canonical(), x.rotate().canonical()] {
            if seen.insert(y.clone(), ()).is_none() {
                order.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    order
}

/// `Σ height/width` over the horizontal cylinders.
pub fn cylinder_term(o: &Origami) -> Rational {
    o.horizontal_cylinders()
        .0
        .iter()
        .map(|&(w, h)| ratio(h as i64, w as i64))
        .fold(Rational::zero(), |a, b| a + b)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LyapunovSum {
    pub orbit_size: usize,
    pub sum: Rational,
}

impl LyapunovSum {
    pub fn is_one(&self) -> bool {
        self.sum.is_one()
    }
}

/// Zeros are the genuine ones; marked points contribute nothing.
pub fn lyapunov_sum(o: &Origami) -> LyapunovSum {
    let orbit = sl2z_orbit(o);
    let total = orbit.iter().map(cylinder_term).fold(Rational::zero(), |a, b| a + b);
    let avg = total / BigInt::from(orbit.len());
    LyapunovSum {
        orbit_size: orbit.len(),
        sum: stratum_term(&o.stratum().kappa) + avg,
    }
}
