//! Brute force over all 8-square surfaces against the pipeline.

use std::fs;

use origami_search::pipeline::oracle::{run_oracle, DEFAULT_MAX_SQUARES};
use origami_search::pipeline::run::{final_path, run, RunConfig};
use origami_search::Kappa;

fn main() {
    let kappa: Kappa = "1,1,1,1".parse().unwrap();
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    run(&RunConfig::new(kappa.clone(), a.path())).unwrap();
    let classes = run_oracle(8, &kappa, DEFAULT_MAX_SQUARES, b.path()).unwrap();
    println!("oracle classes {}", classes.len());
    let x = fs::read(final_path(a.path())).unwrap();
    let y = fs::read(final_path(b.path())).unwrap();
    println!("final artifacts identical: {}", x == y);
    print!("{}", String::from_utf8_lossy(&y));
}
