mod report;
mod run;
mod verify;

use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use matchoid_kernel::instances::{self, Graph, Instance, Kind};

use report::{ReportWriter, RunReport};

const EXIT_BOUND: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_INPUT: u8 = 3;

/// Kernels for linear and coverage objectives under ℓ-matchoid constraints.
#[derive(Parser)]
#[command(name = "matchoid", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated instance.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
        /// Output path (stdout if omitted).
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Offline max-weight kernel of size at most k.
    Kernel {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        k: usize,
    },
    /// Streaming representative set over the instance's stream order.
    Stream {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        k: usize,
    },
    /// Unweighted coverage kernel through a value oracle.
    CoverOracle {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        z: usize,
        /// Match child nodes against every stored element.
        #[arg(long)]
        literal: bool,
    },
    /// Weighted coverage kernel by color coding.
    CoverColor {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        z: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ColorMode::Random)]
        mode: ColorMode,
        /// Worker threads for independent colorings.
        #[arg(long, default_value_t = 1)]
        parallel: usize,
    },
    /// Check a saved report against exhaustive search.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        report: PathBuf,
    },
}

#[derive(Args)]
struct Io {
    #[arg(long)]
    instance: PathBuf,
    /// Report path (stdout if omitted).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random matroids of mixed kinds.
    Matchoid {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        ell: usize,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "uniform,partition,graphic"
        )]
        kinds: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random point sets, optionally under random matroids.
    Coverage {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        max_set: usize,
        #[arg(long)]
        weighted: bool,
        /// Number of matroids; a single free matroid if omitted.
        #[arg(long)]
        s: Option<usize>,
        #[arg(long, default_value_t = 1)]
        ell: usize,
        #[arg(
            long,
            value_delimiter = ',',
            default_value = "uniform,partition,graphic"
        )]
        kinds: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Independent set in a graph, edges written as `u-v`.
    IndependentSet {
        #[arg(long)]
        vertices: u32,
        #[arg(long, value_delimiter = ',')]
        edges: Vec<String>,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColorMode {
    Random,
    Perfect,
    Planted,
}

impl ColorMode {
    pub fn name(self) -> &'static str {
        match self {
            ColorMode::Random => "random",
            ColorMode::Perfect => "perfect",
            ColorMode::Planted => "planted",
        }
    }
}

enum Failure {
    Input(String),
    Verify(Vec<String>),
}

impl From<matchoid_kernel::Error> for Failure {
    fn from(e: matchoid_kernel::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn kinds(names: &[String]) -> Result<Vec<Kind>, Failure> {
    Ok(names
        .iter()
        .map(|n| n.parse())
        .collect::<matchoid_kernel::Result<_>>()?)
}

fn parse_edge(s: &str) -> Result<(u32, u32), Failure> {
    let bad = || Failure::Input(format!("edge {s:?} is not of the form u-v"));
    let (u, v) = s.split_once('-').ok_or_else(bad)?;
    Ok((
        u.trim().parse().map_err(|_| bad())?,
        v.trim().parse().map_err(|_| bad())?,
    ))
}

fn write_out(path: Option<&PathBuf>, text: &[u8]) -> io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => io::stdout().lock().write_all(text),
    }
}

fn emit(io: &Io, (report, writer): (RunReport, ReportWriter)) -> Result<u8, Failure> {
    let mut buf = Vec::new();
    writer.finish(&report, &mut buf)?;
    write_out(io.report.as_ref(), &buf)?;
    if report.bounds_ok() {
        Ok(0)
    } else {
        for b in report.bounds.iter().filter(|b| !b.ok) {
            eprintln!("bound violated: {} = {} > {}", b.name, b.value, b.limit);
        }
        Ok(EXIT_BOUND)
    }
}

fn load(io: &Io) -> Result<(Instance, String), Failure> {
    let path = io.instance.display().to_string();
    let inst = Instance::load(&io.instance).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    Ok((inst, path))
}

fn execute(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Gen { what, out } => {
            let inst = match what {
                GenCommand::Matchoid {
                    n,
                    s,
                    ell,
                    kinds: k,
                    seed,
                } => instances::gen_random_matchoid(n, s, ell, &kinds(&k)?, seed)?,
                GenCommand::Coverage {
                    n,
                    m,
                    max_set,
                    weighted,
                    s,
                    ell,
                    kinds: k,
                    seed,
                } => match s {
                    Some(s) => instances::gen_coverage_matchoid(
                        n,
                        s,
                        ell,
                        &kinds(&k)?,
                        m,
                        max_set,
                        weighted,
                        seed,
                    )?,
                    None => instances::gen_coverage(n, m, max_set, weighted, seed)?,
                },
                GenCommand::IndependentSet { vertices, edges, k } => {
                    let edges = edges
                        .iter()
                        .filter(|e| !e.is_empty())
                        .map(|e| parse_edge(e))
                        .collect::<Result<_, _>>()?;
                    instances::encode_independent_set(&Graph { vertices, edges }, k)?
                }
            };
            write_out(out.as_ref(), inst.to_json().as_bytes())?;
            Ok(0)
        }
        Command::Kernel { io, k } => {
            let (inst, path) = load(&io)?;
            emit(&io, run::kernel(&inst, &path, k)?)
        }
        Command::Stream { io, k } => {
            let (inst, path) = load(&io)?;
            emit(&io, run::stream(&inst, &path, k)?)
        }
        Command::CoverOracle { io, z, literal } => {
            let (inst, path) = load(&io)?;
            emit(&io, run::cover_oracle(&inst, &path, z, literal)?)
        }
        Command::CoverColor {
            io,
            z,
            eps,
            seed,
            mode,
            parallel,
        } => {
            let (inst, path) = load(&io)?;
            let args = run::ColorArgs {
                z,
                eps,
                seed,
                mode,
                parallel,
            };
            emit(&io, run::cover_color(&inst, &path, &args)?)
        }
        Command::Verify { instance, report } => {
            let inst = Instance::load(&instance)
                .map_err(|e| Failure::Input(format!("{}: {e}", instance.display())))?;
            let file = File::open(&report)
                .map_err(|e| Failure::Input(format!("{}: {e}", report.display())))?;
            let summary = report::read_summary(BufReader::new(file)).map_err(Failure::Input)?;
            let failures = verify::verify(&inst, &summary)?;
            if failures.is_empty() {
                println!(
                    "verify: ok ({} report, {} bounds)",
                    summary.mode,
                    summary.bounds.len()
                );
                Ok(0)
            } else {
                Err(Failure::Verify(failures))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Verify(failures)) => {
            for f in failures {
                eprintln!("verify failed: {f}");
            }
            ExitCode::from(EXIT_VERIFY)
        }
    }
}
