//! Command implementations behind the `lefschetz` binary. Each command
//! returns structured output; `main` decides between text and JSON.

pub mod report;

use std::collections::BTreeMap;
use std::path::Path;

use lefschetz_core::arith::is_prime;
use lefschetz_core::corpus;
use lefschetz_core::grothendieck::{affection_difference, surgery_by_components, tree_class_by_components};
use lefschetz_core::monoid::{self, MonoidError, DEFAULT_BOUND};
use lefschetz_core::oracle::{self, OracleError, OracleLimits};
use lefschetz_core::qanalog::{self, QError};
use lefschetz_core::zeta::{self, ZetaStyle};
use lefschetz_core::{class_of, surgery, GraphError, LPolynomial, LooseGraph, MonoidPresentation};
use num_bigint::BigInt;
use thiserror::Error;

use crate::report::{
    coefficients, to_i64, zeta_factors, Failure, GraphMeta, Report, Skipped, SurgeryReport, VerifyReport,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Graph(#[from] GraphError),
    #[error("{0}")]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Monoid(#[from] MonoidError),
    #[error("{0}")]
    QAnalog(#[from] QError),
    #[error("coefficient {0} does not fit in 64 bits")]
    Overflow(String),
    #[error("{0}")]
    Usage(String),
}

pub fn read_graph(path: &Path) -> Result<LooseGraph, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(LooseGraph::parse(&text)?)
}

#[derive(Clone, Debug, Default)]
pub struct ComputeOptions {
    pub counts: Vec<u64>,
    pub zeta: bool,
    pub surgery_trace: bool,
    pub limits: OracleLimits,
}

/// Class, Euler characteristic and the requested extras for one graph.
///
/// Counts are read off the polynomial, so any prime power may be requested;
/// at primes within the oracle limits they are also brute-forced, recorded
/// under the `oracle` verdict.
pub fn compute(g: &LooseGraph, opts: &ComputeOptions) -> Result<Report, CliError> {
    let class = class_of(g);
    let mut verdicts = BTreeMap::new();
    verdicts.insert("surgery".to_string(), surgery_by_components(g)? == class);
    if let Ok(t) = tree_class_by_components(g) {
        verdicts.insert("tree".to_string(), t == class);
    }

    let counts = if opts.counts.is_empty() {
        None
    } else {
        let mut counts = BTreeMap::new();
        let mut oracle_ok = None;
        for &q in &opts.counts {
            if q < 2 {
                return Err(CliError::Usage(format!("field size {q} is not a prime power")));
            }
            let n = class.eval(&BigInt::from(q));
            if is_prime(q) {
                if let Ok(brute) = oracle::enumerate_points_with(g, q, opts.limits, shard_count()) {
                    let agree = n == BigInt::from(brute);
                    oracle_ok = Some(oracle_ok.unwrap_or(true) && agree);
                }
            }
            counts.insert(q, to_i64(&n)?);
        }
        if let Some(ok) = oracle_ok {
            verdicts.insert("oracle".to_string(), ok);
        }
        Some(counts)
    };

    let (zeta, zeta_rendered, arithmetic_zeta) = if opts.zeta {
        let z = zeta::zeta_from_polynomial(&class);
        (
            Some(zeta_factors(&z)?),
            Some(z.render()),
            Some(zeta::render_arithmetic_zeta(&class, ZetaStyle::Unicode)),
        )
    } else {
        (None, None, None)
    };

    let surgery_trace = if opts.surgery_trace {
        let traces = g
            .components()
            .iter()
            .map(|c| {
                let (_, trace) = surgery(c)?;
                SurgeryReport::from_trace(&trace)
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Some(traces)
    } else {
        None
    };

    Ok(Report {
        graph: GraphMeta::of(g),
        polynomial: coefficients(&class)?,
        euler_characteristic: to_i64(&zeta::euler_characteristic(&class))?,
        zeta,
        zeta_rendered,
        arithmetic_zeta,
        counts,
        surgery_trace,
        verdicts,
    })
}

fn shard_count() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

/// Human-readable rendering of a [`Report`].
pub fn render_report(r: &Report) -> String {
    let mut out = String::new();
    let g = &r.graph;
    out.push_str(&format!(
        "graph: {} vertices, {} edges ({} loose), {}\n",
        g.vertices,
        g.edges,
        g.loose_edges,
        if g.connected { "connected" } else { "disconnected" }
    ));
    out.push_str(&format!("class: {}\n", r.polynomial()));
    out.push_str(&format!("euler characteristic: {}\n", r.euler_characteristic));
    if let Some(z) = &r.zeta_rendered {
        out.push_str(&format!("F1-zeta: {z}\n"));
    }
    if let Some(z) = &r.arithmetic_zeta {
        out.push_str(&format!("arithmetic zeta: {z}\n"));
    }
    if let Some(counts) = &r.counts {
        for (q, n) in counts {
            out.push_str(&format!("N({q}) = {n}\n"));
        }
    }
    if let Some(traces) = &r.surgery_trace {
        for (i, t) in traces.iter().enumerate() {
            out.push_str(&format!("surgery on component {i}: tree {{{}}}\n", t.spanning_tree.join(", ")));
            for s in &t.steps {
                out.push_str(&format!(
                    "  resolve {} on ball {{{}}}: {}\n",
                    s.edge,
                    s.ball.join(", "),
                    LPolynomial::from_i64s(&s.difference)
                ));
            }
            out.push_str(&format!("  remaining tree: {}\n", LPolynomial::from_i64s(&t.tree_polynomial)));
        }
    }
    for (name, ok) in &r.verdicts {
        out.push_str(&format!("check {name}: {}\n", if *ok { "agrees" } else { "DISAGREES" }));
    }
    out
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Primes at which brute-force counts are compared with the class.
    pub primes: Vec<u64>,
    pub limits: OracleLimits,
    /// Test hook: perturb the inclusion–exclusion class before comparing.
    pub corrupt: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            primes: vec![2, 3, 5],
            limits: OracleLimits::default(),
            corrupt: false,
        }
    }
}

/// Exhaustive graphs up to `max_ambient` coordinates plus `random` seeded
/// random graphs with up to 7.
pub fn verify_corpus(max_ambient: usize, random: usize, seed: u64) -> Vec<(String, LooseGraph)> {
    let mut out: Vec<(String, LooseGraph)> = corpus::exhaustive(max_ambient)
        .into_iter()
        .enumerate()
        .map(|(i, g)| (format!("exhaustive#{i}"), g))
        .collect();
    let mut rng = corpus::rng(seed);
    out.extend((0..random).map(|i| (format!("random#{i}"), corpus::random_graph(&mut rng, 7))));
    out
}

/// Runs every pipeline on every graph. Graphs beyond the oracle limits are
/// listed as skipped rather than failing the run.
pub fn verify(graphs: &[(String, LooseGraph)], opts: &VerifyOptions) -> VerifyReport {
    let mut report = VerifyReport::default();
    for (id, g) in graphs {
        match verify_one(id, g, opts) {
            Ok(mut failures) => {
                report.checked += 1;
                report.failures.append(&mut failures);
            }
            Err(e) => report.skipped.push(Skipped {
                graph: id.clone(),
                reason: e.to_string(),
            }),
        }
    }
    report
}

fn verify_one(id: &str, g: &LooseGraph, opts: &VerifyOptions) -> Result<Vec<Failure>, CliError> {
    let mut reference = class_of(g);
    if opts.corrupt {
        reference += &LPolynomial::one();
    }
    let mut failures = Vec::new();
    let mut check = |name: &str, expected: String, actual: String| {
        if expected != actual {
            failures.push(Failure {
                graph: id.to_string(),
                check: name.to_string(),
                expected,
                actual,
            });
        }
    };

    let cross = oracle::cross_check(g, opts.limits)?;
    for (route, poly) in cross.mismatches(&reference) {
        check(route, reference.to_string(), poly.to_string());
    }
    for &q in &opts.primes {
        let brute = oracle::enumerate_points_with(g, q, opts.limits, shard_count())?;
        check(
            &format!("count q={q}"),
            reference.eval(&BigInt::from(q)).to_string(),
            brute.to_string(),
        );
    }
    check(
        "vertex count",
        g.vertex_count().to_string(),
        reference.eval(&BigInt::from(1)).to_string(),
    );
    for (e, _, _) in g.full_edges() {
        let local = affection_difference(g, e)?;
        let global = &reference - &class_of(&g.resolve_edge(e)?);
        check(&format!("affection {e}"), global.to_string(), local.to_string());
    }
    Ok(failures)
}

pub fn render_verify(r: &VerifyReport) -> String {
    let mut out = String::new();
    for f in &r.failures {
        out.push_str(&format!(
            "FAIL {} [{}]: expected {}, got {}\n",
            f.graph, f.check, f.expected, f.actual
        ));
    }
    for s in &r.skipped {
        out.push_str(&format!("skip {}: {}\n", s.graph, s.reason));
    }
    out.push_str(&format!(
        "{} graphs checked, {} skipped, {} failures\n",
        r.checked,
        r.skipped.len(),
        r.failures.len()
    ));
    out
}

/// `qanalog` subcommands; the result is one line of text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QCommand {
    Integer(usize),
    Factorial(usize),
    Binom(usize, usize),
    /// `k`-dimensional subspaces of projective `n`-space over F1 (`k` may be −1).
    Subspaces(i64, i64),
    GlOrder(u32, u32),
    /// Binomial evaluated at a field size.
    Eval(usize, usize, u64),
}

pub fn qanalog(cmd: &QCommand) -> Result<String, CliError> {
    let var = |p: LPolynomial| p.display_var("q").to_string();
    Ok(match *cmd {
        QCommand::Integer(n) => var(qanalog::q_integer(n)),
        QCommand::Factorial(n) => var(qanalog::q_factorial(n)),
        QCommand::Binom(n, k) => var(qanalog::gauss_binomial(n, k)?),
        QCommand::Subspaces(n, k) => qanalog::f1_subspace_count(n, k)?.to_string(),
        QCommand::GlOrder(d, n) => qanalog::gl_order(d, n).to_string(),
        QCommand::Eval(n, k, q) => qanalog::gauss_binomial(n, k)?.eval(&BigInt::from(q)).to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonoidCommand {
    Spec(String),
    HomCount(String, u64),
    Maximal(String),
    Localize(String),
}

pub fn monoid(cmd: &MonoidCommand) -> Result<String, CliError> {
    let parse = |s: &str| MonoidPresentation::parse(s).map_err(CliError::from);
    Ok(match cmd {
        MonoidCommand::Spec(m) => {
            let primes = monoid::spec(&parse(m)?, DEFAULT_BOUND)?;
            let lines: Vec<String> = primes.iter().map(ToString::to_string).collect();
            lines.join("\n")
        }
        MonoidCommand::HomCount(m, q) => monoid::hom_count(&parse(m)?, *q)?.to_string(),
        MonoidCommand::Maximal(m) => monoid::maximal_ideal(&parse(m)?)?.to_string(),
        MonoidCommand::Localize(m) => {
            let m = parse(m)?;
            monoid::localize(&m, &monoid::maximal_ideal(&m)?)?.to_string()
        }
    })
}
