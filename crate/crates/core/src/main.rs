use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use covosc::commands;
use covosc::output::{Format, OutputDocument};
use covosc::quadrature::Grid2;
use covosc::verify::{self, Model, Mutation};
use covosc::{Error, Rapidity};

const USAGE: u8 = 2;
const FAILURE: u8 = 1;

#[derive(Parser)]
#[command(
    name = "covosc",
    version,
    about = "Covariant harmonic oscillator data and checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Boost {
    /// Rapidity η.
    #[arg(long, allow_hyphen_values = true)]
    eta: Option<f64>,
    /// Velocity β = tanh η.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
}

impl Boost {
    fn rapidity(&self) -> Result<Rapidity, Error> {
        match (self.eta, self.beta) {
            (Some(e), _) => Rapidity::new(e),
            (_, Some(b)) => Rapidity::from_beta(b),
            _ => unreachable!("clap enforces one of --eta/--beta"),
        }
    }
}

#[derive(Args)]
struct Sink {
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Output file (default stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Boosted wave function on a (z, t) grid.
    Wavefunction {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[command(flatten)]
        boost: Boost,
        #[arg(long, default_value = "-4:4:81,-4:4:81", allow_hyphen_values = true)]
        grid: Grid2,
        #[command(flatten)]
        sink: Sink,
    },
    /// Fock-series coefficients of the boosted state.
    Expand {
        #[arg(long, default_value_t = 0)]
        n: usize,
        #[command(flatten)]
        boost: Boost,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        sink: Sink,
    },
    /// Reduced density kernel on a (z, z') grid.
    Density {
        #[command(flatten)]
        boost: Boost,
        #[arg(long, default_value = "-3:3:31,-3:3:31", allow_hyphen_values = true)]
        grid: Grid2,
        #[arg(long, default_value_t = 1e-14)]
        tol: f64,
        #[command(flatten)]
        sink: Sink,
    },
    /// Entropy and purity from η = 0 up to the given rapidity.
    EntropyCurve {
        #[command(flatten)]
        boost: Boost,
        #[arg(long, default_value_t = 101)]
        steps: usize,
        #[command(flatten)]
        sink: Sink,
    },
    /// Residuals of the Lorentz, little-group and E(2) identities.
    Algebra {
        #[command(flatten)]
        sink: Sink,
    },
    /// Run every cross-check and report residuals.
    Verify {
        /// Truncation tolerance of the completeness check.
        #[arg(long, default_value_t = verify::DEFAULT_COMPLETENESS_TOL)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, hide = true)]
        mutate: Option<Mutation>,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidAxis(_)
            | Error::RapidityOutOfRange { .. }
            | Error::VelocityOutOfRange(_)
            | Error::InvalidTolerance(_)
            | Error::InvalidGrid(_)
            | Error::GridTooCoarse { .. }
            | Error::InvalidOrder(_)
            | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            _ => Failure::Runtime(e.to_string()),
        }
    }
}

fn open(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match out {
        Some(p) => {
            Box::new(BufWriter::new(File::create(p).map_err(|e| {
                Failure::Runtime(format!("{}: {e}", p.display()))
            })?))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn emit(doc: Result<OutputDocument, Error>, sink: &Sink) -> Result<(), Failure> {
    let doc = doc?;
    let mut w = open(&sink.out)?;
    doc.write(sink.format, &mut w)?;
    w.flush().map_err(|e| Failure::Runtime(e.to_string()))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Wavefunction {
            n,
            boost,
            grid,
            sink,
        } => emit(commands::wavefunction(n, boost.rapidity()?, grid), &sink),
        Command::Expand {
            n,
            boost,
            tol,
            sink,
        } => emit(commands::expand(n, boost.rapidity()?, tol), &sink),
        Command::Density {
            boost,
            grid,
            tol,
            sink,
        } => emit(commands::density(boost.rapidity()?, grid, tol), &sink),
        Command::EntropyCurve { boost, steps, sink } => emit(
            commands::entropy_curve(boost.rapidity()?.eta(), steps),
            &sink,
        ),
        Command::Algebra { sink } => emit(commands::algebra_check(), &sink),
        Command::Verify { tol, out, mutate } => {
            if !(tol > 0.0 && tol < 1.0) {
                return Err(Error::InvalidTolerance(tol).into());
            }
            let model = mutate.map(Model::mutated).unwrap_or_default();
            let report = verify::run(&model, tol);
            let mut w = open(&out)?;
            let io = |e: io::Error| Failure::Runtime(e.to_string());
            if let Some(m) = mutate {
                writeln!(w, "mutation: {m}").map_err(io)?;
            }
            for c in &report.checks {
                writeln!(w, "{c}").map_err(io)?;
            }
            for n in &report.notes {
                writeln!(w, "note: {n}").map_err(io)?;
            }
            let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
            if failed.is_empty() {
                writeln!(w, "all {} checks passed", report.checks.len()).map_err(io)?;
            } else {
                writeln!(
                    w,
                    "{} of {} checks failed",
                    failed.len(),
                    report.checks.len()
                )
                .map_err(io)?;
            }
            w.flush().map_err(io)?;
            if failed.is_empty() {
                Ok(())
            } else {
                for f in failed {
                    eprintln!("failed: {f}");
                }
                Err(Failure::Verification)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(USAGE)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(FAILURE)
        }
        Err(Failure::Verification) => ExitCode::from(FAILURE),
    }
}
