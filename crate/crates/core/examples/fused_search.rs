//! One unit of the H(2,1^6) single-point case against window 19, using the
//! search that never materializes the align list.
//!
//! cargo run --release --example fused_search -- 17

use std::time::Instant;

use origami_search::pipeline::run::{run, Mode, RunConfig};

fn main() {
    let t0: u32 = std::env::args().nth(1).map_or(17, |s| s.parse().expect("t0 in 8..=17"));
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::new("2,1^6".parse().unwrap(), dir.path());
    cfg.case_index = Some(0);
    cfg.t0 = Some(vec![t0]);
    cfg.windows = Some(vec![19]);
    cfg.mode = Mode::Fused;
    let start = Instant::now();
    let r = run(&cfg).unwrap();
    for u in &r.units {
        println!("{}: {:?}", u.unit.name(), u.counts.as_ref().unwrap());
    }
    println!("certified {} in {:.1?}", r.certified().len(), start.elapsed());
}
