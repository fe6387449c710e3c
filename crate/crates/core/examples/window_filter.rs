//! Which aligned candidates of the H(2,2,2) boundaries survive their windows.

use origami_search::search::cases::{enumerate_cases, first_values};
use origami_search::search::window::{align_list, starts, window_filter};

fn main() {
    let case = &enumerate_cases(&"2,2,2".parse().unwrap()).unwrap()[0];
    let d = case.d_opt;
    let (a, b) = case.sides();
    let (t0s, s0s) = first_values(case, &a, &b);
    for &t0 in &t0s {
        for &s0 in &s0s {
            for cand in align_list(&a, 2 * d, t0, 0, 1) {
                for start in starts(d, t0, s0) {
                    let pass = window_filter(&cand, s0, start, d).unwrap();
                    println!("A {cand:?}\twindow {s0} start {start}: {}", if pass { "visible" } else { "sees itself" });
                }
            }
        }
    }
}
