//! The whole cascade on H(1,1,1,1), printing each stage's count.

use origami_search::lyapunov::render;
use origami_search::pipeline::run::{run, RunConfig};

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let report = run(&RunConfig::new("1,1,1,1".parse().unwrap(), dir.path())).unwrap();
    for u in &report.units {
        println!("{}: {:?}", u.unit.name(), u.counts.as_ref().unwrap());
    }
    for c in report.classes.unwrap() {
        println!(
            "{} genus {} orbit {} sum {} {}",
            c.stratum,
            c.genus,
            c.lyapunov.orbit_size,
            render(&c.lyapunov.sum),
            c.origami
        );
    }
}
