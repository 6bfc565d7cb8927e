use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chambercoh::cohomology::{
    cohomology_dims, generic_rank_mode, main_theorem_verdict, MonodromyAssignment,
};
use chambercoh::complex::Analysis;
use chambercoh::flag::choose_nth_generic_flag;
use chambercoh::testkit::{run_suite, SuiteConfig};
use chambercoh::{parse_arrangement, Arrangement};

mod render;
mod report;

#[derive(Parser, Debug)]
#[command(name = "chambercoh", version, about = "Local-system cohomology of real line arrangements from chambers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List chambers with sign vectors, witnesses, kinds and opposites.
    Chambers {
        arr: PathBuf,
        #[arg(long)]
        text: bool,
    },
    /// Show the chosen generic flag and the induced decomposition.
    Flag {
        arr: PathBuf,
        /// Use the n-th valid flag of the search instead of the first.
        #[arg(long, default_value_t = 0)]
        nth: usize,
        #[arg(long)]
        text: bool,
    },
    /// Coboundary matrices over the Laurent ring.
    Complex {
        arr: PathBuf,
        /// Include every matrix entry in symbolic form.
        #[arg(long)]
        symbolic: bool,
        #[arg(long)]
        text: bool,
    },
    /// Cohomology dimensions at a torsion monodromy or generically.
    Cohomology {
        arr: PathBuf,
        #[arg(long)]
        mono: Option<PathBuf>,
        #[arg(long)]
        generic: bool,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        dt_include_hyperplanes: bool,
    },
    /// Check one theorem on an arrangement; exit status 0 iff it passes.
    Check {
        which: Which,
        arr: PathBuf,
        #[arg(long)]
        mono: Option<PathBuf>,
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        dt_include_hyperplanes: bool,
    },
    /// Run the property suites on seeded random arrangements.
    Suite {
        #[arg(long, env = "CHAMBERCOH_SEED", default_value_t = SuiteConfig::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = SuiteConfig::default().cases)]
        cases: usize,
        #[arg(long, default_value_t = SuiteConfig::default().n_max)]
        n_max: usize,
        #[arg(long, default_value_t = SuiteConfig::default().assignments)]
        assignments: usize,
    },
    /// Draw the arrangement, chamber labels and flag as SVG.
    Render {
        arr: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Which {
    Det,
    Main,
    Cdo,
    Dt,
}

fn load_arrangement(path: &Path) -> Result<Arrangement> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("arrangement");
    parse_arrangement(name, &text).with_context(|| format!("parsing {}", path.display()))
}

fn load_mono(path: &Path, n: usize) -> Result<MonodromyAssignment> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let l = MonodromyAssignment::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    if l.len() != n {
        bail!("{}: {} exponents for {n} lines", path.display(), l.len());
    }
    Ok(l)
}

fn require_mono(mono: Option<&PathBuf>, n: usize, what: &str) -> Result<MonodromyAssignment> {
    match mono {
        Some(p) => load_mono(p, n),
        None => bail!("`{what}` needs --mono FILE"),
    }
}

fn emit(mut doc: Value, started: Instant) {
    doc["timings"] = json!({ "total_ms": started.elapsed().as_millis() as u64 });
    let text = serde_json::to_string_pretty(&doc).expect("json");
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

/// Runs a command; `Ok(false)` means a requested check failed.
fn run(cli: Cli) -> Result<bool> {
    let started = Instant::now();
    match cli.command {
        Command::Chambers { arr, text } => {
            let a = Analysis::new(load_arrangement(&arr)?)?;
            if text {
                print!("{}", report::chambers_text(&a)?);
            } else {
                emit(report::with_header("chambers", &a.arrangement, report::chambers_json(&a)?), started);
            }
            Ok(true)
        }
        Command::Flag { arr, nth, text } => {
            let arrangement = load_arrangement(&arr)?;
            let flag = choose_nth_generic_flag(&arrangement, nth)?;
            let a = Analysis::with_flag(arrangement, flag)?;
            if text {
                print!("{}", report::flag_text(&a)?);
            } else {
                emit(report::with_header("flag", &a.arrangement, report::flag_json(&a)?), started);
            }
            Ok(true)
        }
        Command::Complex { arr, symbolic, text } => {
            let a = Analysis::new(load_arrangement(&arr)?)?;
            if text {
                print!("{}", report::complex_text(&a)?);
            } else {
                emit(report::with_header("complex", &a.arrangement, report::complex_json(&a, symbolic)?), started);
            }
            Ok(true)
        }
        Command::Cohomology { arr, mono, generic, dt_include_hyperplanes } => {
            let a = Analysis::new(load_arrangement(&arr)?)?;
            let mut body = json!({});
            if let Some(p) = mono.as_ref() {
                let l = load_mono(p, a.arrangement.len())?;
                let r = cohomology_dims(&a, &l, dt_include_hyperplanes)?;
                body["monodromy"] = json!({ "m": l.m(), "k": l.k() });
                body["report"] = serde_json::to_value(&r)?;
                body["verdict"] = serde_json::to_value(main_theorem_verdict(&a, &r))?;
            } else if !generic {
                bail!("`cohomology` needs --mono FILE or --generic");
            }
            if generic {
                body["generic_report"] = serde_json::to_value(generic_rank_mode(&a)?)?;
            }
            emit(report::with_header("cohomology", &a.arrangement, body), started);
            Ok(true)
        }
        Command::Check { which, arr, mono, dt_include_hyperplanes } => {
            let a = Analysis::new(load_arrangement(&arr)?)?;
            let n = a.arrangement.len();
            let (passed, body) = match which {
                Which::Det => report::check_det(&a)?,
                Which::Main => report::check_main(&a, &require_mono(mono.as_ref(), n, "check main")?)?,
                Which::Cdo => report::check_cdo(&a, &require_mono(mono.as_ref(), n, "check cdo")?)?,
                Which::Dt => report::check_dt(
                    &a,
                    &require_mono(mono.as_ref(), n, "check dt")?,
                    dt_include_hyperplanes,
                )?,
            };
            let mut doc = report::with_header("check", &a.arrangement, body);
            doc["passed"] = json!(passed);
            emit(doc, started);
            Ok(passed)
        }
        Command::Suite { seed, cases, n_max, assignments } => {
            let summary = run_suite(&SuiteConfig { seed, cases, n_max, assignments })?;
            let passed = summary.passed;
            let mut doc = json!({ "schema": report::SCHEMA, "command": "suite" });
            doc["summary"] = serde_json::to_value(&summary)?;
            emit(doc, started);
            Ok(passed)
        }
        Command::Render { arr, svg } => {
            if svg.as_os_str().is_empty() {
                bail!("--svg needs a non-empty output path");
            }
            let a = Analysis::new(load_arrangement(&arr)?)?;
            let doc = render::render_svg(&a);
            std::fs::write(&svg, doc).with_context(|| format!("writing {}", svg.display()))?;
            emit(
                report::with_header("render", &a.arrangement, json!({ "svg": svg.display().to_string() })),
                started,
            );
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
