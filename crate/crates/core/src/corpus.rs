//! Graph corpora for verification: exhaustive small loose graphs, seeded
//! random graphs, and all trees up to isomorphism.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::loose_graph::LooseGraph;

fn name(i: usize) -> String {
    format!("v{i}")
}

/// Ambient coordinates a graph occupies: vertices, one per loose edge, two
/// per free loose edge.
pub fn ambient_size(g: &LooseGraph) -> usize {
    g.vertex_count() + g.loose_edge_count() + 2 * g.free_loose_count()
}

/// Every labeled loose graph on vertices `v0..` with at most `max_ambient`
/// ambient coordinates.
pub fn exhaustive(max_ambient: usize) -> Vec<LooseGraph> {
    let mut out = Vec::new();
    for k in 0..=max_ambient {
        let pairs: Vec<(usize, usize)> = (0..k).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
        for mask in 0u64..1 << pairs.len() {
            let mut base = LooseGraph::new();
            for i in 0..k {
                base.add_vertex(name(i));
            }
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    base.add_edge(&name(i), &name(j)).expect("simple");
                }
            }
            let spare = max_ambient - k;
            for free in 0..=spare / 2 {
                let budget = spare - 2 * free;
                for loose in multisets(k, budget) {
                    let mut g = base.clone();
                    for v in loose {
                        g.add_loose(&name(v));
                    }
                    for _ in 0..free {
                        g.add_free_loose();
                    }
                    out.push(g);
                }
            }
        }
    }
    out
}

/// All multisets of size at most `max` over `0..k`, as sorted vectors.
fn multisets(k: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max {
        let mut next = Vec::new();
        for m in &frontier {
            let start = m.last().copied().unwrap_or(0);
            for v in start..k {
                let mut m2: Vec<usize> = m.clone();
                m2.push(v);
                next.push(m2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random loose graph with at most `max_ambient` ambient coordinates.
pub fn random_graph<R: Rng>(rng: &mut R, max_ambient: usize) -> LooseGraph {
    let k = rng.gen_range(0..=max_ambient);
    let density: f64 = rng.gen_range(0.2..0.9);
    let mut g = LooseGraph::new();
    for j in 0..k {
        g.add_vertex(name(j));
        for i in 0..j {
            if rng.gen_bool(density) {
                g.add_edge(&name(i), &name(j)).expect("simple");
            }
        }
    }
    let mut spare = max_ambient - k;
    while spare > 0 && rng.gen_bool(0.6) {
        if spare >= 2 && rng.gen_bool(0.15) {
            g.add_free_loose();
            spare -= 2;
        } else if k > 0 {
            g.add_loose(&name(rng.gen_range(0..k)));
            spare -= 1;
        } else {
            break;
        }
    }
    g
}

/// Random graph on `n` vertices whose reduced graph is connected.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, density: f64) -> LooseGraph {
    let mut g = random_tree(rng, n);
    for j in 0..n {
        for i in 0..j {
            if !g.adjacent(&name(i), &name(j)) && rng.gen_bool(density) {
                g.add_edge(&name(i), &name(j)).expect("not yet adjacent");
            }
        }
    }
    g
}

/// Uniformly attached random tree on `n >= 1` vertices.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> LooseGraph {
    let mut g = LooseGraph::new();
    g.add_vertex(name(0));
    for j in 1..n {
        let parent = rng.gen_range(0..j);
        g.add_edge(&name(parent), &name(j)).expect("fresh vertex");
    }
    g
}

/// Random tree on `2..=max_vertices` vertices plus up to `max_loose` loose
/// edges at random vertices.
pub fn random_loose_tree<R: Rng>(rng: &mut R, max_vertices: usize, max_loose: usize) -> LooseGraph {
    let n = rng.gen_range(1..=max_vertices);
    let mut g = random_tree(rng, n);
    let mut loose = rng.gen_range(0..=max_loose);
    if n == 1 && loose == 0 {
        loose = 1;
    }
    let names: Vec<String> = g.vertices().iter().cloned().collect();
    for _ in 0..loose {
        g.add_loose(names.choose(rng).expect("nonempty"));
    }
    g
}

/// All trees on `n` vertices up to isomorphism.
pub fn nonisomorphic_trees(n: usize) -> Vec<LooseGraph> {
    if n == 0 {
        return Vec::new();
    }
    // adjacency lists; grow by attaching a leaf and deduplicate by canonical form
    let mut level: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for size in 1..n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..size {
                let mut t2 = t.clone();
                t2.push(vec![v]);
                t2[v].push(size);
                if seen.insert(tree_code(&t2)) {
                    next.push(t2);
                }
            }
        }
        level = next;
    }
    level
        .into_iter()
        .map(|adj| {
            let mut g = LooseGraph::new();
            for (i, nbrs) in adj.iter().enumerate() {
                g.add_vertex(name(i));
                for &j in nbrs.iter().filter(|&&j| j > i) {
                    g.add_edge(&name(i), &name(j)).expect("tree edge");
                }
            }
            g
        })
        .collect()
}

/// Canonical string of an unlabeled tree: smallest rooted encoding over its centers.
fn tree_code(adj: &[Vec<usize>]) -> String {
    let n = adj.len();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut leaves: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= leaves.len();
        let mut next = Vec::new();
        for &l in &leaves {
            for &w in &adj[l] {
                if degree[w] == 0 {
                    continue;
                }
                degree[w] -= 1;
                if degree[w] == 1 {
                    next.push(w);
                }
            }
            degree[l] = 0;
        }
        leaves = next;
    }
    leaves
        .iter()
        .map(|&c| rooted_code(adj, c, usize::MAX))
        .min()
        .unwrap_or_default()
}

fn rooted_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| rooted_code(adj, w, v))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}
