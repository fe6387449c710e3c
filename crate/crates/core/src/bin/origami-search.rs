use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use origami_search::lyapunov::render;
use origami_search::pipeline::{self, Mode, RunConfig};
use origami_search::{Kappa, Origami, SurfaceCoordinates};

#[derive(Parser)]
#[command(version, about = "Search for two-cylinder origamis with Lyapunov sum one")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print d_opt, branching cases, diagram counts and first-element ranges.
    Enumerate {
        #[arg(long)]
        stratum: Kappa,
    },
    /// Run the filter cascade for one shard.
    Run {
        #[arg(long)]
        stratum: Kappa,
        #[arg(long = "case")]
        case_index: Option<usize>,
        /// Shard `k/m`: run units whose index is k mod m.
        #[arg(long, default_value = "0/1", value_parser = parse_shard)]
        shard: (usize, usize),
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        no_window_prune: bool,
        #[arg(long)]
        resume: bool,
        /// Backtracking search without materialized align lists.
        #[arg(long)]
        fused: bool,
        /// Split each (case, t0) into this many units by diagram option.
        #[arg(long, default_value_t = 1)]
        parts: usize,
        /// Only these longest lengths on boundary A (comma list).
        #[arg(long, value_delimiter = ',')]
        t0: Option<Vec<u32>>,
        /// Only these windows, i.e. longest lengths on boundary B (comma list).
        #[arg(long = "window", value_delimiter = ',')]
        windows: Option<Vec<u32>>,
    },
    /// Exhaustive search over vertical permutations for comparison.
    Oracle {
        #[arg(long)]
        squares: usize,
        #[arg(long)]
        stratum: Kappa,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = pipeline::oracle::DEFAULT_MAX_SQUARES)]
        max_squares: usize,
    },
    /// Stratum, orbit size and exponent sum of one surface, given as
    /// origami JSON or printed coordinates.
    Certify {
        /// Input file; `-` reads standard input.
        input: PathBuf,
    },
}

fn parse_shard(s: &str) -> Result<(usize, usize), String> {
    let (k, m) = s.split_once('/').ok_or("expected k/m")?;
    let k = k.trim().parse().map_err(|e| format!("{e}"))?;
    let m = m.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((k, m))
}

fn read_input(path: &PathBuf) -> std::io::Result<String> {
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
}

fn main() -> ExitCode {
    match real_main(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn real_main(cli: Cli) -> Result<(), Box<dyn std::error::Error>> {
    match cli.cmd {
        Cmd::Enumerate { stratum } => print!("{}", pipeline::enumerate_report(&stratum)?),
        Cmd::Run {
            stratum,
            case_index,
            shard,
            out,
            no_window_prune,
            resume,
            fused,
            parts,
            t0,
            windows,
        } => {
            let config = RunConfig {
                case_index,
                shard,
                window_prune: !no_window_prune,
                resume,
                mode: if fused { Mode::Fused } else { Mode::Staged },
                parts,
                t0,
                windows,
                ..RunConfig::new(stratum, out)
            };
            let report = pipeline::run(&config)?;
            for u in &report.units {
                match (&u.counts, u.skipped) {
                    (_, true) => println!("{}: complete, skipped", u.unit.name()),
                    (Some(c), _) => println!(
                        "{}: align {} visible A {:?} visible B {:?} admissible {} vertical {}/{} slope {}",
                        u.unit.name(),
                        c.align.map_or("-".to_string(), |n| n.to_string()),
                        c.visible_a,
                        c.visible_b,
                        c.admissible,
                        c.vert_first,
                        c.vert_all,
                        c.slope
                    ),
                    (None, false) => {}
                }
            }
            match &report.classes {
                Some(classes) => {
                    println!("classes {}", classes.len());
                    for c in classes {
                        println!(
                            "  {} genus {} orbit {} sum {}{}",
                            c.stratum,
                            c.genus,
                            c.lyapunov.orbit_size,
                            render(&c.lyapunov.sum),
                            if c.certified() { " certified" } else { "" }
                        );
                    }
                    println!("certified {} -> {}", report.certified().len(), report.final_path.display());
                }
                None => println!("units {} of {}; merge waits for the other shards", report.units.len(), report.units_total),
            }
        }
        Cmd::Oracle {
            squares,
            stratum,
            out,
            max_squares,
        } => {
            let classes = pipeline::run_oracle(squares, &stratum, max_squares, &out)?;
            let certified = classes.iter().filter(|c| c.certified()).count();
            println!("classes {} certified {}", classes.len(), certified);
        }
        Cmd::Certify { input } => {
            let text = read_input(&input)?;
            let text = text.trim();
            let o = if text.starts_with('{') {
                Origami::from_json(text)?
            } else {
                text.parse::<SurfaceCoordinates>()?.assemble()?
            };
            print!("{}", pipeline::certify_report(&o));
        }
    }
    Ok(())
}
