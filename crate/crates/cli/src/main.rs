use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lefschetz_cli::report::Report;
use lefschetz_cli::{
    compute, monoid, qanalog, read_graph, render_report, render_verify, verify, verify_corpus, CliError,
    ComputeOptions, MonoidCommand, QCommand, VerifyOptions,
};
use lefschetz_core::oracle::OracleLimits;
use serde::Serialize;

/// Grothendieck classes, point counts and F1-zeta functions of loose graphs.
#[derive(Parser, Debug)]
#[command(name = "lefschetz", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for the random part of `verify --corpus`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Ambient size of the exhaustive corpus.
    #[arg(long, global = true, default_value_t = 5)]
    max_ambient: usize,
    /// Primes at which `verify` compares brute-force counts.
    #[arg(long, global = true, value_delimiter = ',', default_value = "2,3,5")]
    primes: Vec<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Class, Euler characteristic and optional extras of a graph file.
    Compute {
        path: PathBuf,
        /// Field sizes at which to report point counts.
        #[arg(long, value_delimiter = ',')]
        counts: Vec<u64>,
        /// Include the F1-zeta and arithmetic zeta functions.
        #[arg(long)]
        zeta: bool,
        /// Include every surgery step.
        #[arg(long)]
        surgery_trace: bool,
    },
    /// Cross-check all pipelines on a graph file or the built-in corpus.
    Verify {
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        path: Option<PathBuf>,
        #[arg(long)]
        corpus: bool,
        /// Random graphs added to the corpus.
        #[arg(long, default_value_t = 50)]
        random: usize,
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Gaussian binomials, q-integers and related counts.
    Qanalog {
        #[command(subcommand)]
        cmd: QArgs,
    },
    /// Prime spectra and point counts of monoid presentations.
    Monoid {
        #[command(subcommand)]
        cmd: MonoidArgs,
    },
}

#[derive(Subcommand, Debug)]
enum QArgs {
    /// [n]_q
    Integer { n: usize },
    /// [n]_q!
    Factorial { n: usize },
    /// Gaussian binomial [n k]_q.
    Binom { n: usize, k: usize },
    /// [n k]_q evaluated at q.
    Eval { n: usize, k: usize, q: u64 },
    /// Number of k-dimensional subspaces of projective n-space over F1 (k = -1 allowed).
    Subspaces {
        #[arg(allow_negative_numbers = true)]
        n: i64,
        #[arg(allow_negative_numbers = true)]
        k: i64,
    },
    /// Order of GL_d over F_(1^n).
    Gl { d: u32, n: u32 },
}

#[derive(Subcommand, Debug)]
enum MonoidArgs {
    /// List the prime ideals, e.g. `monoid spec "gens x y;"`.
    Spec { presentation: String },
    /// Number of maps to the multiplicative monoid of F_q.
    Homcount { presentation: String, q: u64 },
    /// The unique maximal ideal.
    Maximal { presentation: String },
    /// Localization at the maximal ideal.
    Localize { presentation: String },
}

/// Writes to stdout, ignoring a closed pipe (e.g. output piped into `head`).
fn write_out(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        write_out(&format!("{}\n", serde_json::to_string_pretty(value).expect("serializable")));
    } else {
        write_out(&text());
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let g = cli.global;
    let limits = OracleLimits {
        max_ambient: OracleLimits::default().max_ambient.max(g.max_ambient),
        ..OracleLimits::default()
    };
    match cli.command {
        Command::Compute {
            path,
            counts,
            zeta,
            surgery_trace,
        } => {
            let graph = read_graph(&path)?;
            let opts = ComputeOptions {
                counts,
                zeta,
                surgery_trace,
                limits,
            };
            let report: Report = compute(&graph, &opts)?;
            emit(g.json, &report, || render_report(&report));
            let ok = report.verdicts.values().all(|&v| v);
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Verify {
            path,
            corpus,
            random,
            corrupt,
        } => {
            let graphs = if corpus {
                verify_corpus(g.max_ambient, random, g.seed)
            } else {
                let path = path.expect("clap enforces a path without --corpus");
                vec![(path.display().to_string(), read_graph(&path)?)]
            };
            let opts = VerifyOptions {
                primes: g.primes,
                limits,
                corrupt,
            };
            let report = verify(&graphs, &opts);
            emit(g.json, &report, || render_verify(&report));
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Qanalog { cmd } => {
            let cmd = match cmd {
                QArgs::Integer { n } => QCommand::Integer(n),
                QArgs::Factorial { n } => QCommand::Factorial(n),
                QArgs::Binom { n, k } => QCommand::Binom(n, k),
                QArgs::Eval { n, k, q } => QCommand::Eval(n, k, q),
                QArgs::Subspaces { n, k } => QCommand::Subspaces(n, k),
                QArgs::Gl { d, n } => QCommand::GlOrder(d, n),
            };
            let out = qanalog(&cmd)?;
            emit(g.json, &out, || format!("{out}\n"));
            Ok(ExitCode::SUCCESS)
        }
        Command::Monoid { cmd } => {
            let cmd = match cmd {
                MonoidArgs::Spec { presentation } => MonoidCommand::Spec(presentation),
                MonoidArgs::Homcount { presentation, q } => MonoidCommand::HomCount(presentation, q),
                MonoidArgs::Maximal { presentation } => MonoidCommand::Maximal(presentation),
                MonoidArgs::Localize { presentation } => MonoidCommand::Localize(presentation),
            };
            let out = monoid(&cmd)?;
            if g.json {
                let lines: Vec<&str> = out.lines().collect();
                emit(true, &lines, String::new);
            } else {
                write_out(&format!("{out}\n"));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    // clap exits with status 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
