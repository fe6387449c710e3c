//! Alignment and visibility in one pass: lengths are assigned with the
//! parities of an aligned pattern, and each connection is tested against
//! every twist as soon as its offsets are known. An offset is known once all
//! of its predecessors, or all of its successors, are. A bitmask tracks the
//! twists still alive; a branch dies when the mask empties.
//!
//! Produces exactly the visible lists of the staged path (alignment followed
//! by [`crate::search::window::visible_lists`]) without materializing the
//! align list.

use rayon::prelude::*;

use crate::composition::Composition;
use crate::error::{Error, Result};
use crate::search::cases::SideData;
use crate::search::window::{AlignedCandidate, Geometry, Visible};

/// How to read an offset once enough lengths are known: the sum over `set`,
/// negated when `set` is the label together with its successors (the whole
/// circle has length `2d`).
#[derive(Clone, Copy)]
struct OffsetRule {
    set: u32,
    negate: bool,
}

struct Check {
    label: usize,
    p: OffsetRule,
    q: OffsetRule,
}

struct Plan {
    n: usize,
    d: u32,
    first: u32,
    w0: u32,
    anchors: u32,
    /// Labels in assignment order; the first is the first bottom label.
    order: Vec<usize>,
    parity: Vec<u32>, // by label
    label_at: Vec<usize>,
    checks_at: Vec<Vec<Check>>,
    rest_min: Vec<u32>,
    rest_max: Vec<u32>,
}

fn bits(xs: &[usize]) -> u32 {
    xs.iter().fold(0, |m, &x| m | 1 << x)
}

/// Rule for an offset along `seq` (a cyclic order starting at the first
/// label) if it is determined by the labels in `known`.
fn rule(seq: &[usize], at: usize, known: u32) -> Option<OffsetRule> {
    let pred = bits(&seq[..at]);
    let succ = bits(&seq[at..]);
    if pred & !known == 0 {
        Some(OffsetRule { set: pred, negate: false })
    } else if succ & !known == 0 {
        Some(OffsetRule { set: succ, negate: true })
    } else {
        None
    }
}

impl Plan {
    fn new(diagram: &crate::diagram::OneCylinderDiagram, parity_by_pos: &[u32], first: u32, w0: u32, d: u32) -> Self {
        let n = diagram.n();
        let label_at = diagram.bottom().to_vec();
        let mut parity = vec![0; n];
        let mut bpos = vec![0; n];
        for (j, &l) in label_at.iter().enumerate() {
            parity[l] = parity_by_pos[j];
            bpos[l] = j;
        }
        let top = diagram.top_left_to_right();
        let at = top.iter().position(|&x| x == label_at[0]).expect("label on top");
        let tseq: Vec<usize> = (0..n).map(|k| top[(at + k) % n]).collect();
        let mut tpos = vec![0; n];
        for (k, &l) in tseq.iter().enumerate() {
            tpos[l] = k;
        }
        let ready = |known: u32, l: usize| -> Option<Check> {
            if known & (1 << l) == 0 {
                return None;
            }
            Some(Check {
                label: l,
                p: rule(&label_at, bpos[l], known)?,
                q: rule(&tseq, tpos[l], known)?,
            })
        };
        let ready_count = |known: u32| (0..n).filter(|&l| ready(known, l).is_some()).count() as i32;

        // order minimizing a node-count estimate: each free length branches
        // about 8 ways and each test keeps about a third of the branches
        let full = (1u32 << n) - 1;
        let start = 1u32 << label_at[0];
        let mut best = vec![f64::INFINITY; 1 << n];
        let mut next = vec![usize::MAX; 1 << n];
        best[full as usize] = 0.0;
        for s in (0..full).rev() {
            if s & start == 0 {
                continue;
            }
            let size = s.count_ones() as i32 - 1;
            let here = 8f64.powi(size) * 3f64.powi(-ready_count(s));
            for l in 0..n {
                if s & (1 << l) == 0 {
                    let c = best[(s | 1 << l) as usize];
                    if c < best[s as usize] {
                        best[s as usize] = c;
                        next[s as usize] = l;
                    }
                }
            }
            best[s as usize] += here;
        }
        let mut order = vec![label_at[0]];
        let mut known = start;
        let mut done = 0u32;
        let mut checks_at = Vec::with_capacity(n);
        loop {
            let mut now = Vec::new();
            for l in 0..n {
                if done & (1 << l) == 0 {
                    if let Some(c) = ready(known, l) {
                        done |= 1 << l;
                        now.push(c);
                    }
                }
            }
            checks_at.push(now);
            if known == full {
                break;
            }
            let l = next[known as usize];
            order.push(l);
            known |= 1 << l;
        }

        let odd_cap = if first % 2 == 1 { first } else { first - 1 };
        let even_cap = if first % 2 == 0 { first } else { first - 1 };
        let mut rest_min = vec![0; n + 1];
        let mut rest_max = vec![0; n + 1];
        for t in (0..n).rev() {
            let odd = parity[order[t]] == 1;
            rest_min[t] = rest_min[t + 1] + if odd { 1 } else { 2 };
            rest_max[t] = rest_max[t + 1] + if odd { odd_cap } else { even_cap };
        }
        let anchors = (d - first - w0) + 1;
        Plan {
            n,
            d,
            first,
            w0,
            anchors,
            order,
            parity,
            label_at,
            checks_at,
            rest_min,
            rest_max,
        }
    }

    fn label_mask(&self, p: u32, q: u32, len: u32) -> Result<u64> {
        let s = p + q + 2 * self.w0;
        if s % 2 != 0 {
            return Err(Error::Consistency(format!(
                "odd endpoint sum {s}; parities disagree with the layout"
            )));
        }
        let c0 = (s / 2) % self.d;
        let mut mask = 0u64;
        for a in 0..self.anchors {
            let c = (c0 + a) % self.d;
            if c >= self.w0 && c + len <= self.d {
                mask |= 1 << a;
            }
        }
        Ok(mask)
    }
}

struct State<'a> {
    plan: &'a Plan,
    lens: Vec<u32>, // by label
    found: Vec<(Vec<u32>, u64)>,
}

impl State<'_> {
    fn offset(&self, r: OffsetRule) -> u32 {
        let w = 2 * self.plan.d;
        let mut sum = 0;
        let mut m = r.set;
        while m != 0 {
            sum += self.lens[m.trailing_zeros() as usize];
            m &= m - 1;
        }
        if r.negate {
            (w - sum % w) % w
        } else {
            sum
        }
    }

    fn test(&self, depth: usize, mut mask: u64) -> Result<u64> {
        for c in &self.plan.checks_at[depth] {
            let p = self.offset(c.p);
            let q = self.offset(c.q);
            mask &= self.plan.label_mask(p, q, self.lens[c.label])?;
            if mask == 0 {
                break;
            }
        }
        Ok(mask)
    }

    fn dfs(&mut self, depth: usize, used: u32, mask: u64) -> Result<()> {
        let plan = self.plan;
        if depth == plan.n {
            self.found.push((plan.label_at.iter().map(|&l| self.lens[l]).collect(), mask));
            return Ok(());
        }
        let remaining = 2 * plan.d - used;
        let lab = plan.order[depth];
        let par = plan.parity[lab];
        let (lo, hi) = if depth == 0 {
            (plan.first, plan.first)
        } else {
            let lo = if par == 1 { 1 } else { 2 };
            (lo, plan.first.min(remaining.saturating_sub(plan.rest_min[depth + 1])))
        };
        let mut x = if lo % 2 == par { lo } else { lo + 1 };
        while x <= hi {
            let rest = remaining - x;
            if rest >= plan.rest_min[depth + 1] && rest <= plan.rest_max[depth + 1] {
                self.lens[lab] = x;
                let m = self.test(depth, mask)?;
                if m != 0 {
                    self.dfs(depth + 1, used + x, m)?;
                }
            }
            x += 2;
        }
        Ok(())
    }
}

/// Visible lists for ascending `windows`, computed without an align list.
/// Options are restricted to indices `≡ part (mod parts)`.
pub fn fused_visible_lists(
    side: &SideData,
    d_opt: u32,
    first: u32,
    windows: &[u32],
    part: usize,
    parts: usize,
) -> Result<Vec<Vec<Visible>>> {
    let windows: Vec<u32> = windows.to_vec();
    let Some(&w0) = windows.first() else {
        return Ok(Vec::new());
    };
    if 2 * first + 2 * w0 > 2 * d_opt {
        return Ok(vec![Vec::new(); windows.len()]);
    }
    assert!(d_opt - first - w0 < 64, "twist range exceeds the anchor mask");
    let jobs: Vec<(usize, usize)> = side
        .options
        .iter()
        .enumerate()
        .filter(|(i, _)| i % parts == part)
        .flat_map(|(i, o)| (0..o.pattern.len()).map(move |r| (i, r)))
        .filter(|&(i, r)| side.options[i].pattern[r] as u32 == first % 2)
        .collect();
    let per_job: Vec<Vec<Vec<Visible>>> = jobs
        .par_iter()
        .map(|&(i, r)| {
            let o = &side.options[i];
            let n = o.pattern.len();
            let parity: Vec<u32> = (0..n).map(|j| o.pattern[(j + r) % n] as u32).collect();
            let diagram = o.diagram.rotate_bottom(r);
            let plan = Plan::new(&diagram, &parity, first, w0, d_opt);
            let mut st = State {
                plan: &plan,
                lens: vec![0; n],
                found: Vec::new(),
            };
            st.dfs(0, 0, u64::MAX >> (64 - plan.anchors))?;
            let mut lists = vec![Vec::new(); windows.len()];
            for (comp, mask) in st.found {
                let cand = AlignedCandidate {
                    composition: Composition(comp),
                    diagram: diagram.clone(),
                };
                let g = Geometry::of(&cand, d_opt);
                for (wi, &w) in windows.iter().enumerate() {
                    for a in 0..plan.anchors {
                        let top = 2 * w0 + 2 * a;
                        if mask & (1 << a) != 0 && top >= 2 * w && g.passes(w, top, d_opt)? {
                            lists[wi].push(Visible {
                                candidate: cand.clone(),
                                start: top - 2 * w,
                            });
                        }
                    }
                }
            }
            Ok(lists)
        })
        .collect::<Result<_>>()?;
    let mut out = vec![Vec::new(); windows.len()];
    for lists in per_job {
        for (wi, l) in lists.into_iter().enumerate() {
            out[wi].extend(l);
        }
    }
    for l in &mut out {
        l.sort_unstable();
        l.dedup();
    }
    Ok(out)
}
