#![allow(dead_code)]

use std::collections::HashSet;

use origami_search::search::cases::{enumerate_cases, first_values, SideData};
use origami_search::search::window::{align_list, starts, AlignedCandidate};
use origami_search::{Kappa, OneCylinderDiagram, Origami, Permutation, SurfaceCoordinates};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub const ORNITHORYNQUE: &str =
    "(((1, 1, 1, 1, 1, 1), [[0, 5, 3, 1, 2, 4], [0, 5, 3, 1, 2, 4]]), 0, ((2, 2, 2), [[0, 1, 2], [0, 1, 2]]))";

pub fn kappa(s: &str) -> Kappa {
    s.parse().unwrap()
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Quaternion group Q8 acting on itself by right multiplication with i, j.
pub fn wollmilchsau() -> Origami {
    // elements as (unit, sign) with units 1, i, j, k
    const T: [[(usize, usize); 4]; 4] = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],
        [(1, 0), (0, 1), (3, 0), (2, 1)],
        [(2, 0), (3, 1), (0, 1), (1, 0)],
        [(3, 0), (2, 0), (1, 1), (0, 1)],
    ];
    let mul = |a: usize, b: usize| {
        let (u, s) = T[a / 2][b / 2];
        2 * u + (a % 2 + b % 2 + s) % 2
    };
    Origami::from_images((0..8).map(|x| mul(x, 2)).collect(), (0..8).map(|x| mul(x, 4)).collect()).unwrap()
}

pub fn random_perm(n: usize, r: &mut StdRng) -> Permutation {
    let mut xs: Vec<usize> = (0..n).collect();
    xs.shuffle(r);
    Permutation::from_images(xs).unwrap()
}

pub fn random_origami(max_n: usize, r: &mut StdRng) -> Origami {
    loop {
        let n = r.gen_range(1..=max_n);
        if let Ok(o) = Origami::new(random_perm(n, r), random_perm(n, r)) {
            return o;
        }
    }
}

/// Every aligned candidate of one boundary for every admissible first
/// element, with that first element.
pub fn all_candidates(side: &SideData, total: u32, firsts: &[u32]) -> Vec<AlignedCandidate> {
    firsts.iter().flat_map(|&f| align_list(side, total, f, 0, 1)).collect()
}

/// All coordinate tuples (both sides aligned, twist bound satisfied) for
/// every case of a stratum, without any visibility test.
pub fn all_coordinates(stratum: &str) -> Vec<SurfaceCoordinates> {
    coordinates(stratum, None)
}

/// Up to `count` coordinate tuples drawn uniformly with replacement from
/// the pairs of aligned candidates.
pub fn sample_coordinates(stratum: &str, count: usize, r: &mut StdRng) -> Vec<SurfaceCoordinates> {
    coordinates(stratum, Some((count, r)))
}

fn coordinates(stratum: &str, mut sample: Option<(usize, &mut StdRng)>) -> Vec<SurfaceCoordinates> {
    let mut out = Vec::new();
    for case in enumerate_cases(&kappa(stratum)).unwrap() {
        let (a, b) = case.sides();
        let (ta, sb) = first_values(&case, &a, &b);
        let d = case.d_opt;
        let ca = all_candidates(&a, 2 * d, &ta);
        let cb = all_candidates(&b, 2 * d, &sb);
        let make = |x: &AlignedCandidate, y: &AlignedCandidate, t_start| {
            SurfaceCoordinates::new(
                (x.composition.clone(), x.diagram.clone()),
                t_start,
                (y.composition.clone(), y.diagram.clone()),
                d,
            )
            .unwrap()
        };
        match sample.as_mut() {
            None => {
                for x in &ca {
                    for y in &cb {
                        for t_start in starts(d, x.composition.first(), y.composition.first()) {
                            out.push(make(x, y, t_start));
                        }
                    }
                }
            }
            Some((count, r)) => {
                let mut tries = 0;
                while out.len() < *count && tries < 100 * *count && !ca.is_empty() && !cb.is_empty() {
                    tries += 1;
                    let x = ca.choose(r).unwrap();
                    let y = cb.choose(r).unwrap();
                    let ts: Vec<u32> = starts(d, x.composition.first(), y.composition.first()).collect();
                    if let Some(&t) = ts.choose(r) {
                        out.push(make(x, y, t));
                    }
                }
            }
        }
    }
    out
}

/// Does some trajectory leave a square of the given cylinder, cross the
/// given top interval of that cylinder, and return to its start after
/// crossing each core curve once?
pub fn sees_itself(o: &Origami, d: u32, cylinder: usize, window_start: u32, window_len: u32) -> bool {
    let w = 2 * d as usize;
    let h = o.h();
    let v = o.v();
    for s in cylinder * w..(cylinder + 1) * w {
        for delta in 0..w as i64 {
            let hd = h.pow(delta);
            let top = hd.apply(s);
            let x = ((top % w) + w - window_start as usize % w) % w;
            if x >= window_len as usize {
                continue;
            }
            let once = hd.apply(v.apply(top));
            if v.apply(once) == s {
                return true;
            }
        }
    }
    false
}

/// Classes of 1-cylinder diagrams under simultaneous rotation, found by
/// trying every top sequence against an identity bottom.
pub fn brute_force_diagram_classes(k: &Kappa) -> HashSet<Vec<usize>> {
    let n = k.saddle_connection_count();
    let mut out = HashSet::new();
    let mut top: Vec<usize> = (0..n).collect();
    permute(&mut top, 0, &mut |t| {
        let d = OneCylinderDiagram::with_identity_bottom(t.to_vec()).unwrap();
        let z = d.zero_data();
        if z.kappa() == *k && !z.has_simple_zero_self_loop() {
            out.insert(rotation_class(t));
        }
    });
    out
}

/// Least relabeled printed top over rotations, coded directly on sequences.
pub fn rotation_class(top: &[usize]) -> Vec<usize> {
    let n = top.len();
    (0..n)
        .map(|r| {
            // bottom position p holds label p; after rotating by r it holds (p - r) mod n
            let mut t: Vec<usize> = top.iter().map(|&x| (x + n - r) % n).collect();
            let z = t.iter().position(|&x| x == 0).unwrap();
            t.rotate_left(z);
            t
        })
        .min()
        .unwrap()
}

fn permute(xs: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// The self-glued cylinder with unit connections as an origami: square `p`
/// has bottom label `bottom[p]`, the top of square `j` carries the `j`-th
/// label of the top read left to right.
pub fn unit_cylinder(d: &OneCylinderDiagram) -> Origami {
    let n = d.n();
    let mut pos = vec![0; n];
    for (p, &l) in d.bottom().iter().enumerate() {
        pos[l] = p;
    }
    let ltr: Vec<usize> = d.top().iter().rev().copied().collect();
    let h = (0..n).map(|x| (x + 1) % n).collect();
    let v = (0..n).map(|j| pos[ltr[j]]).collect();
    Origami::from_images(h, v).unwrap()
}

/// Number of compositions by exhaustive enumeration.
pub fn brute_force_compositions(total: u32, parts: usize, odd: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for x in 1..=rest {
            cur.push(x);
            go(rest - x, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    go(total, parts, &mut Vec::new(), &mut all);
    all.into_iter()
        .filter(|c| c.iter().filter(|&&x| x % 2 == 1).count() == odd)
        .filter(|c| c[0] >= lo && c[0] <= hi && c.iter().all(|&x| x <= c[0]))
        .collect()
}
