//! One-cylinder diagrams of a stratum with their zeros and parity patterns.
//!
//! cargo run --example diagrams -- 2,1,1

use origami_search::diagram::isolated_zero_bits;
use origami_search::{enumerate_diagrams, Kappa};

fn main() {
    let arg = std::env::args().nth(1).unwrap_or_else(|| "2,2".into());
    let kappa: Kappa = arg.parse().expect("a stratum such as 2,1,1");
    let diagrams = enumerate_diagrams(&kappa);
    println!("{kappa}: {} diagrams", diagrams.len());
    for d in &diagrams {
        let z = d.zero_data();
        print!("{d}  zeros {:?}", z.zero_orders);
        for bits in isolated_zero_bits(&z, 1) {
            print!("  pattern {:?}", d.parity_pattern(&bits).unwrap());
        }
        println!();
    }
}
