//! Longest-first compositions with a fixed number of odd parts.

use origami_search::composition::{first_element_range, generate, CompositionSpec};

fn main() {
    // 11 connections on a boundary of length 72, four of them odd, against
    // a partner boundary whose first element is at least 19
    let (lo, hi) = first_element_range(72, 11, 4, 19).unwrap();
    println!("first element in [{lo}, {hi}]");

    let spec = CompositionSpec::new(20, 5, 2).with_first_range(6, 6);
    let all: Vec<_> = generate(&spec).collect();
    println!("{} compositions of 20 into 5 parts, 2 odd, first 6", all.len());
    for c in all.iter().take(5) {
        println!("  {c}");
    }

    let paired = generate(&spec.clone().with_odd_values_paired(true)).count();
    println!("{paired} of them pair up their odd values");
}
