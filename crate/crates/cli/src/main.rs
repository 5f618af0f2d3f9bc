//! `monotone-tr`: tables, cross-verification reports and closed forms.
//!
//! Exit codes: 0 success, 1 a verified disagreement, 2 usage error,
//! 3 a resource guard tripped.

mod report;
mod table;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use monotone_tr::hurwitz::{count_connected, count_disconnected, transposition_count, Partition, SizeGuard};
use monotone_tr::schur::PartitionFunctionTruncation;
use monotone_tr::tr::{OmegaDifferential, OmegaStore};
use monotone_tr::{Error, Rational};

use verify::{Bounds, Shift, Suite};

#[derive(Parser)]
#[command(name = "monotone-tr", version, about = "Monotone orbifold Hurwitz numbers, computed and cross-checked")]
struct Cli {
    /// Worker threads; overrides MONOTONE_TR_THREADS. Default: logical cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Schur,
    ConnectedLog,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// A single Hurwitz number.
    Hurwitz {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        q: u32,
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        /// Parts, comma separated.
        #[arg(long)]
        mu: String,
        #[arg(long, value_enum, default_value = "schur")]
        method: Method,
        /// Count only transitive factorizations. Implied by connected-log.
        #[arg(long)]
        connected: bool,
    },
    /// Connected and disconnected numbers for all `g <= gmax`, `|mu| <= mumax`.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        q: u32,
        #[arg(long)]
        gmax: u32,
        #[arg(long)]
        mumax: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Fraction of enumerable rows confirmed by brute force.
        #[arg(long, default_value_t = 0.1)]
        sample: f64,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3", value_parser = clap::value_parser!(u32).range(1..))]
        q: Vec<u32>,
        #[arg(long)]
        gmax: Option<u32>,
        #[arg(long)]
        nmax: Option<usize>,
        #[arg(long)]
        mumax: Option<u32>,
        /// Largest `2g - 2 + n`.
        #[arg(long)]
        chimax: Option<i64>,
        #[arg(long)]
        weight: Option<u32>,
        #[arg(long)]
        hbar: Option<usize>,
        /// Total degree for the n-point cut-and-join check.
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, value_enum)]
        shift: Option<Shift>,
        /// Inject a fault; every affected check should then fail.
        #[arg(long)]
        mutate: bool,
        /// Record wall time per record (the report is then not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Dump the closed form of `omega_{g,n}` as JSON.
    Omega {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        q: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Guard(String),
    Io(std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SizeGuard(_) | Error::CutoffExceeded(_) | Error::OrderGuard(_) => Failure::Guard(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if flag.is_some() {
        return Ok(flag);
    }
    match std::env::var("MONOTONE_TR_THREADS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("MONOTONE_TR_THREADS={v:?} is not a thread count"))),
        Err(_) => Ok(None),
    }
}

fn hurwitz(q: u32, g: i64, mu: &Partition, method: Method, connected: bool) -> Result<Rational, Failure> {
    let zero = Rational::from_integer(0.into());
    match method {
        Method::Brute if connected => Ok(count_connected(g, mu, q, SizeGuard::default())?),
        Method::Brute => Ok(count_disconnected(g, mu, q, SizeGuard::default())?),
        Method::Schur | Method::ConnectedLog => {
            let Some(m) = transposition_count(g, mu, q) else {
                return Ok(zero);
            };
            let z = PartitionFunctionTruncation::build_on(q, [mu.clone()], m as usize);
            if method == Method::ConnectedLog {
                Ok(z.connected_from_disconnected().remove(&(g, mu.clone())).unwrap_or(zero))
            } else if connected {
                Ok(z.extract_connected(g, mu)?)
            } else {
                Ok(z.extract_disconnected(g, mu)?)
            }
        }
    }
}

fn omega(q: u32, g: u32, n: usize) -> Result<serde_json::Value, Failure> {
    let w = match (g, n) {
        (0, 1) => OmegaDifferential::ydx(q),
        (0, 2) => OmegaDifferential::bergman(q),
        _ => OmegaStore::new(q).omega(g, n)?.clone(),
    };
    Ok(w.to_json())
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    let mut out = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    if let Some(n) = thread_count(cli.threads)? {
        if n == 0 {
            return Err(Failure::Usage("thread count must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Hurwitz { q, g, mu, method, connected } => {
            let mu: Partition = mu.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let v = hurwitz(q, g, &mu, method, connected)?;
            println!("{v}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Table { q, gmax, mumax, format, sample } => {
            if !(0.0..=1.0).contains(&sample) {
                return Err(Failure::Usage(format!("--sample {sample} is not in [0, 1]")));
            }
            let t = table::build(q, gmax, mumax, sample)?;
            match format {
                Format::Json => print_json(&t)?,
                Format::Csv => table::write_csv(&t, std::io::stdout().lock())?,
            }
            if !t.agree {
                eprintln!("brute-force confirmation disagrees with the table");
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, q, gmax, nmax, mumax, chimax, weight, hbar, degree, shift, mutate, timings } => {
            let bounds = Bounds { gmax, nmax, mumax, chimax, weight, hbar, degree, shift, mutate, timings };
            let r = verify::run(suite, &q, &bounds)?;
            print_json(&r)?;
            Ok(if r.agree { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Omega { q, g, n } => {
            print_json(&omega(q, g, n)?)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
