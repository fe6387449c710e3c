//! Sharded execution of the cascade with per-unit checkpoints.
//!
//! A unit is one `(case, t0, part)` triple: side-A candidates with longest
//! connection `t0`, restricted to the diagram options of one part, tested
//! against every window `s0`, then joined with the side-B lists for each
//! `s0` at window `t0`. Units share nothing and write only their own
//! directory; the merge runs once every unit is complete.

use std::collections::BTreeSet;
use std::fmt::Display;
use std::path::{Path, PathBuf};

use crate::coords::SurfaceCoordinates;
use crate::error::{Error, Result};
use crate::origami::Origami;
use crate::pipeline::artifact::{read_lines, write_final, write_lines, Checkpoint, Stage};
use crate::search::cases::{enumerate_cases, first_values, BranchingCase, SideData};
use crate::search::filters::{combine_lists, permutation_cascade, reduce_and_certify, Certificate};
use crate::search::fused::fused_visible_lists;
use crate::search::window::{align_list, starts, visible_lists, Visible};
use crate::strata::Kappa;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// Materialize the align list, then test windows.
    #[default]
    Staged,
    /// Backtracking search that never builds the align list.
    Fused,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub stratum: Kappa,
    pub case_index: Option<usize>,
    /// `(k, m)`: run units whose global index is `k mod m`.
    pub shard: (usize, usize),
    pub output_dir: PathBuf,
    pub window_prune: bool,
    pub resume: bool,
    pub mode: Mode,
    /// Split of side-A diagram options within each `(case, t0)`.
    pub parts: usize,
    /// Only these side-A first elements, if given.
    pub t0: Option<Vec<u32>>,
    /// Only these side-A windows (side-B first elements), if given.
    pub windows: Option<Vec<u32>>,
}

impl RunConfig {
    pub fn new(stratum: Kappa, output_dir: impl Into<PathBuf>) -> Self {
        RunConfig {
            stratum,
            case_index: None,
            shard: (0, 1),
            output_dir: output_dir.into(),
            window_prune: true,
            resume: false,
            mode: Mode::Staged,
            parts: 1,
            t0: None,
            windows: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (k, m) = self.shard;
        if m == 0 || k >= m {
            return Err(Error::Config(format!("shard {k}/{m} needs 0 <= k < m")));
        }
        if self.parts == 0 {
            return Err(Error::Config("parts must be positive".into()));
        }
        crate::strata::d_opt(&self.stratum)?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Unit {
    pub case_index: usize,
    pub t0: u32,
    pub part: usize,
}

impl Unit {
    pub fn name(&self) -> String {
        format!("case{}_t0_{}_part{}", self.case_index, self.t0, self.part)
    }
}

/// Counts for one unit, in cascade order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UnitCounts {
    pub align: Option<usize>,
    pub visible_a: Vec<(u32, usize)>,
    pub visible_b: Vec<(u32, usize)>,
    pub admissible: usize,
    pub vert_first: usize,
    pub vert_all: usize,
    pub slope: usize,
}

#[derive(Clone, Debug)]
pub struct UnitReport {
    pub unit: Unit,
    pub skipped: bool,
    pub counts: Option<UnitCounts>,
}

#[derive(Clone, Debug)]
pub struct RunReport {
    pub units_total: usize,
    pub units: Vec<UnitReport>,
    /// Present once every unit of every shard has finished.
    pub classes: Option<Vec<Certificate>>,
    pub final_path: PathBuf,
}

impl RunReport {
    pub fn certified(&self) -> Vec<&Certificate> {
        self.classes.iter().flatten().filter(|c| c.certified()).collect()
    }
}

struct Plan {
    cases: Vec<(BranchingCase, SideData, SideData, Vec<u32>, Vec<u32>)>,
    units: Vec<Unit>,
}

fn plan(config: &RunConfig) -> Result<Plan> {
    let mut cases = Vec::new();
    let mut units = Vec::new();
    for case in enumerate_cases(&config.stratum)? {
        if config.case_index.map_or(false, |i| i != case.index) {
            continue;
        }
        let (a, b) = case.sides();
        let (mut t0s, mut s0s) = first_values(&case, &a, &b);
        if let Some(keep) = &config.t0 {
            t0s.retain(|t| keep.contains(t));
        }
        if let Some(keep) = &config.windows {
            s0s.retain(|s| keep.contains(s));
        }
        for &t0 in &t0s {
            for part in 0..config.parts {
                units.push(Unit {
                    case_index: case.index,
                    t0,
                    part,
                });
            }
        }
        cases.push((case, a, b, t0s, s0s));
    }
    if let Some(i) = config.case_index {
        if cases.is_empty() {
            return Err(Error::Config(format!("{} has no case {i}", config.stratum)));
        }
    }
    Ok(Plan { cases, units })
}

/// Every unit for the configuration, in global order.
pub fn units(config: &RunConfig) -> Result<Vec<Unit>> {
    Ok(plan(config)?.units)
}

fn unit_dir(config: &RunConfig, unit: &Unit) -> PathBuf {
    config.output_dir.join("units").join(unit.name())
}

struct UnitWriter<'a> {
    dir: PathBuf,
    unit: &'a Unit,
}

impl UnitWriter<'_> {
    fn write<T: Display>(&self, stage: Stage, name: &str, items: impl IntoIterator<Item = T>, complete: bool) -> Result<usize> {
        let (records, digest) = write_lines(stage, &self.dir.join(name), items)?;
        Checkpoint {
            step: stage.step(),
            stage,
            unit: self.unit.name(),
            records,
            artifact: name.to_string(),
            digest,
            complete,
        }
        .save(&self.dir)?;
        Ok(records)
    }
}

struct VisibleLine<'a>(&'a Visible);

impl Display for VisibleLine<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}\t{}", self.0.candidate, self.0.start)
    }
}

fn side_lists(
    config: &RunConfig,
    side: &SideData,
    d: u32,
    first: u32,
    windows: &[u32],
    part: usize,
    parts: usize,
    w: &UnitWriter,
    align_name: Option<String>,
) -> Result<(Option<usize>, Vec<Vec<Visible>>)> {
    match config.mode {
        Mode::Staged => {
            let cands = align_list(side, 2 * d, first, part, parts);
            let n = match align_name {
                Some(name) => Some(w.write(Stage::Align, &name, cands.iter().map(|c| format!("{c:?}")), false)?),
                None => None,
            };
            Ok((n, visible_lists(&cands, first, windows, d, config.window_prune)?))
        }
        Mode::Fused => Ok((None, fused_visible_lists(side, d, first, windows, part, parts)?)),
    }
}

fn run_unit(
    config: &RunConfig,
    case: &BranchingCase,
    a: &SideData,
    b: &SideData,
    s0s: &[u32],
    unit: &Unit,
) -> Result<UnitCounts> {
    let d = case.d_opt;
    let tag = format!("{}_case{}", case.stratum.tag(), case.index);
    let part_tag = if config.parts > 1 {
        format!("_part{}", unit.part)
    } else {
        String::new()
    };
    let w = UnitWriter {
        dir: unit_dir(config, unit),
        unit,
    };
    let t0 = unit.t0;
    let windows: Vec<u32> = s0s.iter().copied().filter(|&s| starts(d, t0, s).next().is_some()).collect();
    let mut counts = UnitCounts::default();

    let (n_align, vis_a) = side_lists(
        config,
        a,
        d,
        t0,
        &windows,
        unit.part,
        config.parts,
        &w,
        Some(format!("{tag}_A_align_list_{t0}{part_tag}")),
    )?;
    counts.align = n_align;
    let mut admissible: Vec<SurfaceCoordinates> = Vec::new();
    for (s0, list_a) in windows.iter().zip(&vis_a) {
        let name = format!("{tag}_A_align_list_{t0}{part_tag}_visible_{s0}");
        counts.visible_a.push((*s0, w.write(Stage::Visible, &name, list_a.iter().map(VisibleLine), false)?));
        let (_, vis_b) = side_lists(config, b, d, *s0, &[t0], 0, 1, &w, None)?;
        let list_b = &vis_b[0];
        let name = format!("{tag}_B_align_list_{s0}_visible_{t0}");
        counts.visible_b.push((*s0, w.write(Stage::Visible, &name, list_b.iter().map(VisibleLine), false)?));
        admissible.extend(combine_lists(list_a, list_b, d));
    }
    admissible.sort();
    admissible.dedup();
    counts.admissible = w.write(Stage::Admissible, &format!("{tag}_admissible_list_{t0}{part_tag}"), &admissible, false)?;

    let cascade = permutation_cascade(&admissible, d)?;
    counts.vert_first = w.write(
        Stage::VertPermCheck,
        &format!("{tag}_admissible_list_vert_perm_check_{t0}{part_tag}"),
        &cascade.vert_first,
        false,
    )?;
    counts.vert_all = w.write(
        Stage::VertPermCheck,
        &format!("{tag}_admissible_list_all_vert_perm_check_{t0}{part_tag}"),
        &cascade.vert_all,
        false,
    )?;
    counts.slope = w.write(
        Stage::SlopeTest,
        &format!("{tag}_slope_list_{t0}{part_tag}"),
        cascade.slope.iter().map(|(c, _)| c),
        true,
    )?;
    Ok(counts)
}

fn completed_survivors(config: &RunConfig, unit: &Unit) -> Result<Option<Vec<SurfaceCoordinates>>> {
    let dir = unit_dir(config, unit);
    match Checkpoint::load_verified(&dir)? {
        Some(cp) if cp.complete => {
            let lines = read_lines(Stage::Merge, &dir.join(&cp.artifact))?;
            let coords = lines.iter().map(|l| l.parse()).collect::<Result<Vec<_>>>()?;
            Ok(Some(coords))
        }
        _ => Ok(None),
    }
}

/// Everything that decides the unit list; shards and resumed runs must agree.
fn check_fingerprint(config: &RunConfig) -> Result<()> {
    let fp = serde_json::json!({
        "stratum": config.stratum.to_string(),
        "case": config.case_index,
        "parts": config.parts,
        "t0": config.t0,
        "windows": config.windows,
    })
    .to_string();
    let path = config.output_dir.join("run.json");
    match std::fs::read_to_string(&path) {
        Ok(old) if old.trim() == fp => Ok(()),
        Ok(old) => Err(Error::Config(format!(
            "{} belongs to a different run: {}",
            config.output_dir.display(),
            old.trim()
        ))),
        Err(_) => write_lines(Stage::Align, &path, [fp]).map(|_| ()),
    }
}

pub fn final_path(out: &Path) -> PathBuf {
    out.join("final.jsonl")
}

/// Runs this shard's units and, if every unit is then complete, the merge.
pub fn run(config: &RunConfig) -> Result<RunReport> {
    config.validate()?;
    check_fingerprint(config)?;
    let plan = plan(config)?;
    let (k, m) = config.shard;
    let mut reports = Vec::new();
    for (gi, unit) in plan.units.iter().enumerate() {
        if gi % m != k {
            continue;
        }
        let dir = unit_dir(config, unit);
        if config.resume {
            // verifies any existing checkpoint, refusing on a digest mismatch
            let cp = Checkpoint::load_verified(&dir)?;
            if cp.map_or(false, |c| c.complete) {
                reports.push(UnitReport {
                    unit: unit.clone(),
                    skipped: true,
                    counts: None,
                });
                continue;
            }
        }
        let (case, a, b, _, s0s) = plan
            .cases
            .iter()
            .find(|c| c.0.index == unit.case_index)
            .expect("planned case");
        let counts = run_unit(config, case, a, b, s0s, unit)?;
        reports.push(UnitReport {
            unit: unit.clone(),
            skipped: false,
            counts: Some(counts),
        });
    }
    let classes = merge(config, &plan.units)?;
    Ok(RunReport {
        units_total: plan.units.len(),
        units: reports,
        classes,
        final_path: final_path(&config.output_dir),
    })
}

fn merge(config: &RunConfig, units: &[Unit]) -> Result<Option<Vec<Certificate>>> {
    let mut coords = BTreeSet::new();
    for unit in units {
        match completed_survivors(config, unit)? {
            Some(cs) => coords.extend(cs),
            None => return Ok(None),
        }
    }
    let mut survivors: Vec<Origami> = Vec::with_capacity(coords.len());
    let mut presentations: Vec<(Origami, &SurfaceCoordinates)> = Vec::new();
    for c in &coords {
        let o = c.assemble()?;
        presentations.push((o.canonical(), c));
        survivors.push(o);
    }
    let classes = reduce_and_certify(&survivors);
    let out = &config.output_dir;
    write_final(Stage::Merge, &final_path(out), &classes)?;
    write_lines(
        Stage::Merge,
        &out.join("classes.jsonl"),
        classes.iter().map(|c| {
            format!(
                "{}\t{}",
                crate::pipeline::artifact::FinalRecord::from(c),
                if c.certified() { "certified" } else { "rejected" }
            )
        }),
    )?;
    presentations.sort();
    write_lines(
        Stage::Merge,
        &out.join("presentations.tsv"),
        presentations.iter().map(|(o, c)| format!("{}\t{}", o.to_json(), c)),
    )?;
    Ok(Some(classes))
}
