//! Ordered compositions of a cylinder circumference into saddle-connection
//! lengths, with a fixed number of odd parts and a maximal first part.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::literal::Literal;

/// Saddle-connection lengths in bottom order, printed as `(2, 2, 2)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(pub Vec<u32>);

impl Composition {
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn first(&self) -> u32 {
        self.0[0]
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn parity(&self) -> Vec<u8> {
        self.0.iter().map(|&x| (x & 1) as u8).collect()
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        if self.0.len() == 1 {
            f.write_str(",")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lit: Literal = s.parse()?;
        Ok(Composition(lit.as_u32_vec()?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSpec {
    pub total: u32,
    pub parts: usize,
    pub odd_count: usize,
    pub first_min: u32,
    pub first_max: u32,
    pub first_parity: Option<u8>,
    /// Additionally require every odd value to occur an even number of times.
    pub odd_values_paired: bool,
}

impl CompositionSpec {
    /// Every admissible first element.
    pub fn new(total: u32, parts: usize, odd_count: usize) -> Self {
        CompositionSpec {
            total,
            parts,
            odd_count,
            first_min: 1,
            first_max: total.saturating_sub(parts as u32 - 1).max(1),
            first_parity: None,
            odd_values_paired: false,
        }
    }

    pub fn with_first_range(mut self, min: u32, max: u32) -> Self {
        self.first_min = min;
        self.first_max = max;
        self
    }

    pub fn with_first_parity(mut self, parity: Option<u8>) -> Self {
        self.first_parity = parity;
        self
    }

    pub fn with_odd_values_paired(mut self, on: bool) -> Self {
        self.odd_values_paired = on;
        self
    }
}

/// Can `remaining` parts, `odd` of them odd and all at most `cap`, sum to `sum`?
pub fn completion_feasible(remaining: usize, odd: isize, sum: i64, cap: u32) -> bool {
    if odd < 0 || odd as usize > remaining || sum < 0 {
        return false;
    }
    let odd = odd as i64;
    let even = remaining as i64 - odd;
    if (sum - odd).rem_euclid(2) != 0 {
        return false;
    }
    let odd_cap = if cap % 2 == 1 { cap } else { cap.saturating_sub(1) } as i64;
    let even_cap = if cap % 2 == 0 { cap } else { cap - 1 } as i64;
    if odd > 0 && odd_cap < 1 {
        return false;
    }
    if even > 0 && even_cap < 2 {
        return false;
    }
    let lo = odd + 2 * even;
    let hi = odd * odd_cap + even * even_cap;
    lo <= sum && sum <= hi
}

/// Whether some composition with first (and maximal) element `first` exists.
pub fn feasible_with_first(total: u32, parts: usize, odd_count: usize, first: u32) -> bool {
    if parts == 0 || first == 0 || first > total {
        return false;
    }
    completion_feasible(
        parts - 1,
        odd_count as isize - (first % 2) as isize,
        total as i64 - first as i64,
        first,
    )
}

/// Smallest feasible maximal first element.
pub fn min_first_element(total: u32, parts: usize, odd_count: usize) -> Option<u32> {
    (1..=total).find(|&m| feasible_with_first(total, parts, odd_count, m))
}

/// Parity forced on every part, if any.
pub fn forced_parity(parts: usize, odd_count: usize) -> Option<u8> {
    if odd_count == parts {
        Some(1)
    } else if odd_count == 0 {
        Some(0)
    } else {
        None
    }
}

/// Range of the first (longest) element given the opposite boundary's least
/// possible first element. The upper bound comes from requiring a
/// nonnegative twist range, `total − 2·max − 2·partner_first_min ≥ 0`.
/// Returns `None` when the range is empty.
pub fn first_element_range(total: u32, parts: usize, odd_count: usize, partner_first_min: u32) -> Option<(u32, u32)> {
    let min = min_first_element(total, parts, odd_count)?;
    let room = total as i64 - 2 * partner_first_min as i64;
    if room < 0 {
        return None;
    }
    let mut max = (room / 2) as u32;
    max = max.min(total.saturating_sub(parts as u32 - 1));
    if let Some(p) = forced_parity(parts, odd_count) {
        if max % 2 != p as u32 {
            max = max.checked_sub(1)?;
        }
    }
    (min <= max).then_some((min, max))
}

/// Lexicographic stream of compositions satisfying `spec`.
pub fn generate(spec: &CompositionSpec) -> Compositions {
    Compositions {
        spec: spec.clone(),
        cur: vec![0; spec.parts],
        prefix_sum: vec![0; spec.parts + 1],
        prefix_odd: vec![0; spec.parts + 1],
        depth: 0,
        started: false,
        done: spec.parts == 0 || spec.first_min > spec.first_max,
    }
}

pub struct Compositions {
    spec: CompositionSpec,
    cur: Vec<u32>,
    prefix_sum: Vec<i64>,
    prefix_odd: Vec<isize>,
    depth: usize,
    started: bool,
    done: bool,
}

impl Compositions {
    fn fits(&self, depth: usize, x: u32) -> bool {
        let spec = &self.spec;
        let cap = if depth == 0 { x } else { self.cur[0] };
        if depth == 0 {
            if let Some(p) = spec.first_parity {
                if x % 2 != p as u32 {
                    return false;
                }
            }
        }
        completion_feasible(
            spec.parts - 1 - depth,
            spec.odd_count as isize - self.prefix_odd[depth] - (x % 2) as isize,
            spec.total as i64 - self.prefix_sum[depth] - x as i64,
            cap,
        )
    }

    fn paired(&self) -> bool {
        let mut odd: Vec<u32> = self.cur.iter().copied().filter(|x| x % 2 == 1).collect();
        odd.sort_unstable();
        odd.chunks(2).all(|c| c.len() == 2 && c[0] == c[1])
    }
}

impl Iterator for Compositions {
    type Item = Composition;

    fn next(&mut self) -> Option<Composition> {
        if self.done {
            return None;
        }
        let n = self.spec.parts;
        if !self.started {
            self.started = true;
            self.depth = 0;
            self.cur[0] = self.spec.first_min.saturating_sub(1);
        } else {
            self.depth = n - 1;
        }
        loop {
            let depth = self.depth;
            let hi = if depth == 0 { self.spec.first_max } else { self.cur[0] };
            let mut x = self.cur[depth] + 1;
            while x <= hi && !self.fits(depth, x) {
                x += 1;
            }
            if x > hi {
                if depth == 0 {
                    self.done = true;
                    return None;
                }
                self.depth -= 1;
                continue;
            }
            self.cur[depth] = x;
            self.prefix_sum[depth + 1] = self.prefix_sum[depth] + x as i64;
            self.prefix_odd[depth + 1] = self.prefix_odd[depth] + (x % 2) as isize;
            if depth + 1 == n {
                if self.spec.odd_values_paired && !self.paired() {
                    continue;
                }
                return Some(Composition(self.cur.clone()));
            }
            self.depth += 1;
            self.cur[self.depth] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all(spec: &CompositionSpec) -> Vec<Vec<u32>> {
        generate(spec).map(|c| c.0).collect()
    }

    #[test]
    fn range_eleven_connection_side() {
        assert_eq!(first_element_range(72, 11, 4, 19), Some((8, 17)));
    }

    #[test]
    fn range_four_odd_side() {
        assert_eq!(first_element_range(72, 4, 4, 8), Some((19, 27)));
    }

    #[test]
    fn range_forced_ones() {
        assert_eq!(first_element_range(4, 4, 4, 1), Some((1, 1)));
    }

    #[test]
    fn range_infeasible() {
        assert_eq!(first_element_range(8, 8, 4, 1), None);
        assert_eq!(first_element_range(8, 4, 4, 5), None);
    }

    #[test]
    fn no_eight_part_composition_of_eight_with_four_odd() {
        assert!(all(&CompositionSpec::new(8, 8, 4)).is_empty());
    }

    #[test]
    fn forced_all_ones() {
        assert_eq!(all(&CompositionSpec::new(4, 4, 4)), vec![vec![1, 1, 1, 1]]);
    }

    #[test]
    fn three_even_parts() {
        let spec = CompositionSpec::new(6, 3, 0).with_first_range(2, 2);
        assert_eq!(all(&spec), vec![vec![2, 2, 2]]);
        assert_eq!(Composition(vec![2, 2, 2]).to_string(), "(2, 2, 2)");
    }

    #[test]
    fn lexicographic_and_first_maximal() {
        let got = all(&CompositionSpec::new(8, 3, 2));
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(got, sorted);
        assert!(got.iter().all(|c| c.iter().all(|&x| x <= c[0])));
        assert!(got.contains(&vec![3, 3, 2]));
        assert!(got.contains(&vec![3, 2, 3]));
        assert!(!got.contains(&vec![2, 3, 3]));
    }

    #[test]
    fn paired_odd_values() {
        let spec = CompositionSpec::new(10, 4, 2).with_odd_values_paired(true);
        let got = all(&spec);
        assert!(got.iter().all(|c| {
            let mut odd: Vec<_> = c.iter().filter(|&&x| x % 2 == 1).collect();
            odd.sort();
            odd.chunks(2).all(|p| p[0] == p[1])
        }));
        assert!(got.contains(&vec![4, 1, 4, 1]));
        assert!(!got.contains(&vec![4, 3, 2, 1]));
    }

    #[test]
    fn parse_and_print_singleton() {
        let c: Composition = "(2,)".parse().unwrap();
        assert_eq!(c.0, vec![2]);
        assert_eq!(c.to_string(), "(2,)");
    }
}
