//! Classes of loose graphs in `Z[L]`, computed three independent ways.
//!
//! The scheme of a loose graph is modeled inside the projective space on the
//! ambient vertices as the union of one cone per vertex `v`:
//!
//! ```text
//! A_v = { points with support in the closed ambient neighborhood of v, x_v != 0 }
//! ```
//!
//! a copy of affine space of dimension `deg(v)`. Free loose edges contribute
//! a multiplicative group `L - 1` each.
//!
//! * [`class_of`] sums the cone intersections by inclusion–exclusion. Cones
//!   over a vertex set `T` meet iff `T` is a clique, and the intersection has
//!   class `(L-1)^(|T|-1) L^(|S(T)|-|T|)` where `S(T)` is the common closed
//!   neighborhood.
//! * [`tree_class`] is the closed formula for loose trees.
//! * [`surgery`] resolves the non-tree edges of a spanning tree one at a
//!   time, each difference computed locally on the union of the two unit
//!   balls, and finishes with the tree formula.

use std::collections::BTreeSet;

use crate::bits::Bits;
use crate::loose_graph::{EdgeTag, Endpoints, GraphError, LooseGraph, TreeStats};
use crate::poly::LPolynomial;

/// `L - 1`, the class of the multiplicative group.
pub fn gm() -> LPolynomial {
    LPolynomial::from_i64s(&[-1, 1])
}

/// Class of `g` by clique inclusion–exclusion over the vertex cones.
pub fn class_of(g: &LooseGraph) -> LPolynomial {
    let amb = g.ambient_completion();
    let idx = amb.index();
    let n = idx.n_original;

    let mut originals = Bits::new(idx.names.len());
    for i in 0..n {
        originals.insert(i);
    }
    let adj: Vec<Bits> = (0..n)
        .map(|i| {
            // open neighborhood among original vertices
            let mut open = Bits::new(idx.names.len());
            for j in idx.closed[i].intersect(&originals).iter().filter(|&j| j != i) {
                open.insert(j);
            }
            open
        })
        .collect();

    // tally[t][s] = number of cliques with |T| = t and |S(T)| = s
    let mut tally: Vec<Vec<u64>> = Vec::new();
    let mut stack = Vec::new();
    sum_cliques(
        &adj,
        &idx.closed,
        &originals,
        None,
        0,
        &mut stack,
        &mut tally,
    );

    let l = LPolynomial::var();
    let mut total = LPolynomial::zero();
    for (t, row) in tally.iter().enumerate() {
        for (s, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let term = gm().pow(t as u32 - 1) * l.pow((s - t) as u32);
            let signed = if t % 2 == 1 { count as i64 } else { -(count as i64) };
            total += &(term * LPolynomial::constant(signed));
        }
    }
    total + gm() * LPolynomial::constant(g.free_loose_count() as i64)
}

fn sum_cliques(
    adj: &[Bits],
    closed: &[Bits],
    candidates: &Bits,
    common: Option<&Bits>,
    min: usize,
    stack: &mut Vec<usize>,
    tally: &mut Vec<Vec<u64>>,
) {
    for v in candidates.iter().filter(|&v| v >= min) {
        let s = match common {
            Some(c) => c.intersect(&closed[v]),
            None => closed[v].clone(),
        };
        stack.push(v);
        let (t, size) = (stack.len(), s.count());
        debug_assert!(size >= t, "a clique lies in its own common neighborhood");
        if tally.len() <= t {
            tally.resize(t + 1, Vec::new());
        }
        if tally[t].len() <= size {
            tally[t].resize(size + 1, 0);
        }
        tally[t][size] += 1;
        sum_cliques(
            adj,
            closed,
            &candidates.intersect(&adj[v]),
            Some(&s),
            v + 1,
            stack,
            tally,
        );
        stack.pop();
    }
}

/// Closed formula for a loose tree:
/// `Σ n_i L^(d_i) - I·L + I + E`, with `I = Σ n_i - 1` and `E` the number of
/// degree-1 vertices. A single vertex without edges is a point (class 1).
/// Free loose edges add `L - 1` each; a graph with no vertices is treated as
/// the sum of its free loose edges.
pub fn tree_class(g: &LooseGraph) -> Result<LPolynomial, GraphError> {
    let free = gm() * LPolynomial::constant(g.free_loose_count() as i64);
    if g.vertex_count() == 0 {
        return Ok(free);
    }
    let stats = g.tree_stats()?;
    Ok(tree_formula(&stats) + free)
}

/// The tree polynomial for given statistics.
pub fn tree_formula(stats: &TreeStats) -> LPolynomial {
    if stats.degrees.is_empty() && stats.ends == 0 {
        // only an isolated vertex can have neither ends nor internal vertices
        return LPolynomial::constant(stats.isolated as i64);
    }
    let mut p = LPolynomial::zero();
    for (&d, &n) in stats.degrees.iter().zip(&stats.counts) {
        p += &LPolynomial::monomial(n as i64, d);
    }
    let i = stats.internal;
    p - LPolynomial::monomial(i, 1) + LPolynomial::constant(i + stats.ends as i64)
}

fn full_endpoints(g: &LooseGraph, e: EdgeTag) -> Result<(String, String), GraphError> {
    match g.endpoints(e) {
        None => Err(GraphError::UnknownEdge(e)),
        Some(Endpoints::Full(x, y)) => Ok((x.clone(), y.clone())),
        Some(_) => Err(GraphError::NotResolvable(e)),
    }
}

/// `B(x,1) ∪ B(y,1)` for the full edge `e = xy`.
pub fn affection_ball(g: &LooseGraph, e: EdgeTag) -> Result<BTreeSet<String>, GraphError> {
    let (x, y) = full_endpoints(g, e)?;
    let mut b = g.ball(&x, 1)?;
    b.extend(g.ball(&y, 1)?);
    Ok(b)
}

/// `[g|_B] - [g_e|_B]` for `B` the union of the unit balls at the ends of `e`.
/// Equals `[g] - [g_e]`.
pub fn affection_difference(g: &LooseGraph, e: EdgeTag) -> Result<LPolynomial, GraphError> {
    let ball = affection_ball(g, e)?;
    let resolved = g.resolve_edge(e)?;
    Ok(class_of(&g.restrict(&ball)) - class_of(&resolved.restrict(&ball)))
}

/// One resolution step of a surgery.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryStep {
    pub edge: EdgeTag,
    pub ball: BTreeSet<String>,
    /// `P(Γ'|_B) - P(Γ'_e|_B)` for the graph `Γ'` current at this step.
    pub difference: LPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryTrace {
    pub spanning_tree: BTreeSet<EdgeTag>,
    pub steps: Vec<SurgeryStep>,
    pub final_stats: Option<TreeStats>,
    pub tree_polynomial: LPolynomial,
}

impl SurgeryTrace {
    /// Tree polynomial plus every recorded difference.
    pub fn total(&self) -> LPolynomial {
        self.steps
            .iter()
            .fold(self.tree_polynomial.clone(), |acc, s| acc + &s.difference)
    }
}

/// Surgery with the deterministic spanning tree and edges resolved in tag order.
pub fn surgery(g: &LooseGraph) -> Result<(LPolynomial, SurgeryTrace), GraphError> {
    let tree = g.spanning_tree()?;
    let order: Vec<EdgeTag> = g
        .full_edges()
        .map(|(t, _, _)| t)
        .filter(|t| !tree.contains(t))
        .collect();
    surgery_with(g, &tree, &order)
}

/// Surgery along a chosen spanning tree, resolving `order` (a permutation of
/// the full edges outside the tree) from first to last.
pub fn surgery_with(
    g: &LooseGraph,
    tree: &BTreeSet<EdgeTag>,
    order: &[EdgeTag],
) -> Result<(LPolynomial, SurgeryTrace), GraphError> {
    if !g.is_connected() {
        return Err(GraphError::NotConnected);
    }
    let outside: BTreeSet<EdgeTag> = g
        .full_edges()
        .map(|(t, _, _)| t)
        .filter(|t| !tree.contains(t))
        .collect();
    let ordered: BTreeSet<EdgeTag> = order.iter().copied().collect();
    if ordered != outside || order.len() != outside.len() {
        return Err(GraphError::NotATree);
    }

    let mut current = g.clone();
    let mut steps = Vec::with_capacity(order.len());
    for &e in order {
        let ball = affection_ball(&current, e)?;
        let difference = affection_difference(&current, e)?;
        current = current.resolve_edge(e)?;
        steps.push(SurgeryStep {
            edge: e,
            ball,
            difference,
        });
    }
    // `tree` must really span: the remainder has to be a tree
    if current.vertex_count() > 0 && !current.is_tree() {
        return Err(GraphError::NotATree);
    }
    let final_stats = if current.vertex_count() > 0 {
        Some(current.tree_stats()?)
    } else {
        None
    };
    let tree_polynomial = tree_class(&current)?;
    let trace = SurgeryTrace {
        spanning_tree: tree.clone(),
        steps,
        final_stats,
        tree_polynomial,
    };
    Ok((trace.total(), trace))
}

/// Surgery on each connected piece, summed.
pub fn surgery_by_components(g: &LooseGraph) -> Result<LPolynomial, GraphError> {
    g.components()
        .iter()
        .map(|c| surgery(c).map(|(p, _)| p))
        .sum()
}

/// Tree formula on each piece, summed; fails unless every piece is a loose tree.
pub fn tree_class_by_components(g: &LooseGraph) -> Result<LPolynomial, GraphError> {
    g.components().iter().map(tree_class).sum()
}
