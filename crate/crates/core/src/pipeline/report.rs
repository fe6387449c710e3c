//! Plain-text reports for the `enumerate` and `certify` commands.

use std::fmt::Write;

use crate::error::Result;
use crate::lyapunov::{lyapunov_sum, render, stratum_term};
use crate::origami::Origami;
use crate::search::cases::{enumerate_cases, first_values, SideData};
use crate::strata::{d_opt, Kappa};

fn side_line(out: &mut String, label: &str, side: &SideData, values: &[u32]) {
    let diagrams: std::collections::BTreeSet<_> = side.options.iter().map(|o| &o.diagram).collect();
    let _ = write!(
        out,
        "  boundary {label}: {} saddle connections, {} diagrams, {} parity patterns, odd counts {:?}, ",
        side.parts,
        diagrams.len(),
        side.options.len(),
        side.odd_counts
    );
    match (values.first(), values.last()) {
        (Some(lo), Some(hi)) => {
            let _ = writeln!(out, "first element in [{lo}, {hi}]: {values:?}");
        }
        _ => {
            let _ = writeln!(out, "no admissible partitions");
        }
    }
}

pub fn enumerate_report(kappa: &Kappa) -> Result<String> {
    let d = d_opt(kappa)?;
    let cases = enumerate_cases(kappa)?;
    let mut out = String::new();
    let _ = writeln!(out, "stratum {kappa}");
    let _ = writeln!(out, "d_opt {d}");
    let _ = writeln!(out, "stratum term {}", render(&stratum_term(kappa)));
    let _ = writeln!(out, "cases {}", cases.len());
    for case in &cases {
        let _ = writeln!(
            out,
            "case {}: {} | A {} (isolated order {}) | B {} (isolated order {})",
            case.index, case.description, case.a.kappa, case.a.isolated_order, case.b.kappa, case.b.isolated_order
        );
        let (a, b) = case.sides();
        let (ta, sb) = first_values(case, &a, &b);
        side_line(&mut out, "A (t0)", &a, &ta);
        side_line(&mut out, "B (s0)", &b, &sb);
    }
    Ok(out)
}

pub fn certify_report(o: &Origami) -> String {
    let s = o.stratum();
    let l = lyapunov_sum(o);
    let mut out = String::new();
    let _ = writeln!(out, "squares {}", o.n_squares());
    let _ = writeln!(out, "stratum {}", s.kappa);
    let _ = writeln!(out, "marked points {}", s.marked_points);
    let _ = writeln!(out, "genus {}", s.genus);
    let _ = writeln!(out, "orbit size {}", l.orbit_size);
    let _ = writeln!(out, "sum {}", render(&l.sum));
    let _ = writeln!(out, "certified {}", l.is_one() && s.genus >= 2);
    out
}
