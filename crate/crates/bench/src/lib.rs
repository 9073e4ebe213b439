//! Benchmark inputs shared by the criterion suites.

use lefschetz_core::corpus;
use lefschetz_core::loose_graph::named;
use lefschetz_core::LooseGraph;

/// Named graphs of growing size for the class and surgery benches.
pub fn graph_ladder() -> Vec<(String, LooseGraph)> {
    let mut out: Vec<(String, LooseGraph)> = (4..=10)
        .step_by(2)
        .map(|n| (format!("K{n}"), named::complete(n)))
        .collect();
    out.push(("gamma_uv(4)".into(), named::gamma_uv(4)));
    let mut rng = corpus::rng(1);
    for n in [6, 8, 10] {
        out.push((format!("random_connected({n})"), corpus::random_connected(&mut rng, n, 0.4)));
    }
    out
}

/// Graphs within the oracle limits, paired with the prime to count at.
pub fn oracle_inputs() -> Vec<(String, LooseGraph, u64)> {
    vec![
        ("K4@5".into(), named::complete(4), 5),
        ("gamma_uv(2)@7".into(), named::gamma_uv(2), 7),
        ("gamma_uv(2)_uv@5".into(), named::gamma_uv_resolved(2), 5),
        ("K6@7".into(), named::complete(6), 7),
    ]
}
