use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use bogograph::Parallelism;

mod commands;

/// Exact invariants of polarized metric graphs and lower-bound certificates.
#[derive(Parser, Debug)]
#[command(name = "bogograph", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Run everything on the current thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report genus, eta, epsilon, tau, phi, type lengths and the admissible measure.
    Invariants {
        file: PathBuf,
        /// Use the conjectured c(g) for genus above 4 in the lower bound.
        #[arg(long)]
        allow_conjectural: bool,
    },
    /// Certify a canonical cubic graph, or a whole catalog with --genus and --all.
    Certify {
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        file: Option<PathBuf>,
        #[arg(long, requires = "all")]
        genus: Option<i64>,
        #[arg(long, requires = "genus")]
        all: bool,
        /// Compare each A_min with 7(g-1)^2/(6g(3g-5)).
        #[arg(long)]
        check_conjecture: bool,
        /// Report invariants instead of failing on graphs that are not canonical cubic models.
        #[arg(long)]
        allow_any: bool,
    },
    /// Enumerate the irreducible cubic graphs of a genus.
    Catalog {
        #[arg(long)]
        genus: i64,
        /// Write every entry as a graph JSON file into this directory.
        #[arg(long, value_name = "DIR")]
        emit_graphs: Option<PathBuf>,
        #[arg(long)]
        certify: bool,
        /// Largest genus to enumerate.
        #[arg(long, default_value_t = bogograph::catalog::DEFAULT_GENUS_LIMIT)]
        limit: i64,
    },
    /// Lower bound for the height infimum from node counts by type.
    CurveBound {
        #[arg(long)]
        genus: i64,
        #[arg(long)]
        degree: u64,
        /// Node counts as `i=n` pairs, e.g. `0=1,1=0`.
        #[arg(long, value_delimiter = ',', value_parser = parse_delta)]
        delta: Vec<(usize, u64)>,
        #[arg(long, conflicts_with = "delta")]
        smooth: bool,
        #[arg(long)]
        allow_conjectural: bool,
    },
    /// Run the randomized property suites.
    Selfcheck {
        #[arg(long, default_value_t = bogograph::selfcheck::DEFAULT_SEED)]
        seed: u64,
        /// Random graphs per suite.
        #[arg(long)]
        graphs: Option<usize>,
        #[arg(long, hide = true)]
        corrupt_omega1: bool,
    },
}

fn parse_delta(s: &str) -> Result<(usize, u64), String> {
    let (i, n) = s.split_once('=').ok_or_else(|| format!("expected i=n, got `{s}`"))?;
    let i = i.trim().parse().map_err(|e| format!("bad type index `{i}`: {e}"))?;
    let n = n.trim().parse().map_err(|e| format!("bad node count `{n}`: {e}"))?;
    Ok((i, n))
}

pub mod exit {
    pub const VALIDATION: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const INFEASIBLE: u8 = 3;
    pub const SELFCHECK: u8 = 4;
}

fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("BOGOGRAPH_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("BOGOGRAPH_THREADS must be a positive integer, got `{value}`"))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(exit::VALIDATION);
    }
    let par = if cli.sequential {
        Parallelism::Sequential
    } else {
        Parallelism::Parallel
    };
    let out = commands::Output {
        format: cli.format,
        par,
    };
    let result = match cli.command {
        Command::Invariants {
            file,
            allow_conjectural,
        } => commands::invariants(&out, &file, allow_conjectural),
        Command::Certify {
            file,
            genus,
            all: _,
            check_conjecture,
            allow_any,
        } => match (file, genus) {
            (Some(file), _) => commands::certify_file(&out, &file, check_conjecture, allow_any),
            (None, Some(g)) => commands::certify_genus(&out, g, check_conjecture),
            (None, None) => unreachable!("clap requires a file or --genus --all"),
        },
        Command::Catalog {
            genus,
            emit_graphs,
            certify,
            limit,
        } => commands::catalog(&out, genus, emit_graphs.as_deref(), certify, limit),
        Command::CurveBound {
            genus,
            degree,
            delta,
            smooth,
            allow_conjectural,
        } => {
            let deltas: BTreeMap<usize, u64> = delta.into_iter().collect();
            commands::curve_bound(&out, genus, degree, &deltas, smooth, allow_conjectural)
        }
        Command::Selfcheck {
            seed,
            graphs,
            corrupt_omega1,
        } => commands::selfcheck(&out, seed, graphs, corrupt_omega1),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                bogograph::Error::Parse(_) | bogograph::Error::Io(_) => exit::PARSE,
                _ => exit::VALIDATION,
            };
            ExitCode::from(code)
        }
    }
}
