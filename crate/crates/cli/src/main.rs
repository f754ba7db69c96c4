//! `fpp`: verification runs over the fake-projective-plane combinatorics.
//!
//! Exit status is 0 when every assertion passes, 1 when one fails and 2 on
//! a usage error.

mod commands;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use fpp_core::fano::Flag;

use report::{Outcome, RunReport, UsageError, SCHEMA_VERSION};

#[derive(Parser)]
#[command(name = "fpp", version, about = "Exact checks for a 2-adically uniformized fake projective plane")]
struct Cli {
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Omit wall-clock time so output is byte-identical across runs.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Seed for sampling-based checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrbitGroup {
    D8,
    D16,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ComplexFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Group orders, flag subgroups and their orbits.
    Fano {
        /// Also run the exhaustive action checks.
        #[arg(long)]
        verify: bool,
        /// Print the orbit partition of a flag subgroup.
        #[arg(long, value_enum)]
        orbits: Option<OrbitGroup>,
        #[arg(long, value_parser = parse_flag)]
        flag: Option<Flag>,
    },
    /// A ball in the building of PGL3(Q_p).
    Building {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        radius: u32,
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Run this many seeded canonical-form fuzz cases.
        #[arg(long)]
        fuzz: Option<usize>,
    },
    /// The 16-vertex dual complex and its order-336 action.
    CentralFiber {
        /// Include the orbit table.
        #[arg(long)]
        report: bool,
        #[arg(long, value_enum)]
        export: Option<ComplexFormat>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Quotient of the dual complex by the Sylow 2-subgroup of a flag.
    Quotient {
        #[arg(long, value_parser = parse_flag)]
        flag: Option<Flag>,
        #[arg(long, value_enum)]
        export: Option<ComplexFormat>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Abelianization and coset enumeration of a presentation.
    Pi1 {
        /// Presentation file (`gens:` / `rel:` lines).
        #[arg(long, conflicts_with = "complex")]
        input: Option<PathBuf>,
        /// Complex file in the cell text format.
        #[arg(long)]
        complex: Option<PathBuf>,
        /// Basepoint label for `--complex`; defaults to the first vertex.
        #[arg(long, requires = "complex")]
        basepoint: Option<String>,
        #[arg(long, default_value_t = fpp_core::pi1::DEFAULT_MAX_COSETS)]
        max_cosets: usize,
        /// Also print a Tietze-simplified presentation.
        #[arg(long)]
        simplify: bool,
    },
    /// Chern numbers from the vertex-orbit count.
    Invariants {
        #[arg(long, default_value_t = 16)]
        n: i64,
        #[arg(long, default_value_t = 2)]
        q: i64,
        /// Degree of an étale quotient.
        #[arg(long)]
        descend: Option<i64>,
        #[arg(long)]
        pg: Option<i64>,
        #[arg(long)]
        q_irr: Option<i64>,
    },
    /// The end-to-end pipeline from the dual complex to the invariants.
    VerifyPaper {
        #[arg(long, value_parser = parse_flag)]
        flag: Option<Flag>,
        /// Repeat the quotient and group checks for all 21 flags.
        #[arg(long)]
        flag_sweep: bool,
    },
}

fn parse_flag(s: &str) -> Result<Flag, String> {
    s.parse().map_err(|e: fpp_core::fano::FanoError| e.to_string())
}

fn name(c: &Command) -> &'static str {
    match c {
        Command::Fano { .. } => "fano",
        Command::Building { .. } => "building",
        Command::CentralFiber { .. } => "central-fiber",
        Command::Quotient { .. } => "quotient",
        Command::Pi1 { .. } => "pi1",
        Command::Invariants { .. } => "invariants",
        Command::VerifyPaper { .. } => "verify-paper",
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, UsageError> {
    match &cli.command {
        Command::Fano { verify, orbits, flag } => commands::fano(*verify, *orbits, *flag),
        Command::Building { p, radius, format, output, fuzz } => {
            commands::building(*p, *radius, *format, output.clone(), fuzz.map(|n| (n, cli.seed)))
        }
        Command::CentralFiber { report, export, output } => commands::central_fiber(*report, *export, output.clone()),
        Command::Quotient { flag, export, output } => commands::quotient(*flag, *export, output.clone()),
        Command::Pi1 { input, complex, basepoint, max_cosets, simplify } => {
            commands::pi1(input.as_deref(), complex.as_deref(), basepoint.as_deref(), *max_cosets, *simplify)
        }
        Command::Invariants { n, q, descend, pg, q_irr } => commands::invariants(*n, *q, *descend, *pg, *q_irr),
        Command::VerifyPaper { flag, flag_sweep } => commands::verify_paper(*flag, *flag_sweep),
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = match dispatch(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut result = outcome.result;
    if let Some(export) = outcome.export {
        match &export.path {
            Some(path) => {
                if let Err(e) = std::fs::write(path, &export.content) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            None if cli.json => {
                if let Some(map) = result.as_object_mut() {
                    map.insert("export".into(), export.content.into());
                }
            }
            None => emit(&export.content),
        }
    }
    let wall_time = (!cli.no_timing).then(|| start.elapsed().as_secs_f64() * 1e3);
    let report = RunReport {
        version: SCHEMA_VERSION,
        tool: format!("fpp {}", env!("CARGO_PKG_VERSION")),
        command: name(&cli.command).to_string(),
        pass: fpp_core::report::all_pass(&outcome.assertions),
        assertions: outcome.assertions,
        result,
        wall_time,
    };
    if cli.json {
        emit(&format!("{}\n", serde_json::to_string_pretty(&report).expect("report serializes")));
    } else {
        emit(&report.render_text());
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
