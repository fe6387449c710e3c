//! Split a run into shards, interrupt it, and resume.

use std::fs;

use origami_search::pipeline::run::{run, RunConfig};

fn main() {
    let dir = tempfile::tempdir().unwrap();
    let mut cfg = RunConfig::new("4,1,1,1,1".parse().unwrap(), dir.path());
    cfg.parts = 3;

    // pretend only the first of three shards ran before a crash
    cfg.shard = (0, 3);
    let r = run(&cfg).unwrap();
    println!("shard 0/3: {} of {} units, merged: {}", r.units.len(), r.units_total, r.classes.is_some());

    cfg.shard = (0, 1);
    cfg.resume = true;
    let r = run(&cfg).unwrap();
    let skipped = r.units.iter().filter(|u| u.skipped).count();
    println!("resume: skipped {skipped}, ran {}", r.units.len() - skipped);
    println!("certified {}", r.certified().len());
    println!("final artifact {} bytes", fs::metadata(&r.final_path).unwrap().len());
}
