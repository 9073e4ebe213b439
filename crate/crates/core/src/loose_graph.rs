//! Loose graphs: finite graphs whose edges may have two, one or zero endpoints.
//!
//! A 1-endpoint edge ("loose edge") records an affine direction at its vertex,
//! a 0-endpoint edge ("free loose edge") stands for a copy of the
//! multiplicative group. Vertex degrees count loose edges as well as full
//! edges.
//!
//! Text format, one directive per line:
//!
//! ```text
//! # comment
//! vertex a
//! edge a b
//! loose a
//! loose2
//! ```
//!
//! Vertices are declared implicitly by mention; ids match `[A-Za-z0-9_]+`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::bits::Bits;

/// Identifier of an edge, unique within one graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeTag(pub u32);

impl fmt::Display for EdgeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Endpoint set of an edge. Full edges store their endpoints in sorted order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoints {
    Full(String, String),
    Loose(String),
    Free,
}

impl Endpoints {
    pub fn contains(&self, v: &str) -> bool {
        match self {
            Endpoints::Full(a, b) => a == v || b == v,
            Endpoints::Loose(a) => a == v,
            Endpoints::Free => false,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("loop edge at vertex `{0}`")]
    Loop(String),
    #[error("duplicate edge between `{0}` and `{1}`")]
    DuplicateEdge(String, String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeTag),
    #[error("edge {0} is loose and cannot be resolved")]
    NotResolvable(EdgeTag),
    #[error("reduced graph is not connected")]
    NotConnected,
    #[error("graph is not a loose tree")]
    NotATree,
    #[error("vertex sets are not disjoint (`{0}` occurs in both)")]
    Overlap(String),
}

/// A finite loose graph.
///
/// Equality is structural: two graphs are equal when they have the same
/// vertex set and the same multiset of edge endpoint sets. Edge tags are
/// identifiers only.
#[derive(Clone, Debug, Default)]
pub struct LooseGraph {
    vertices: BTreeSet<String>,
    edges: BTreeMap<EdgeTag, Endpoints>,
}

impl PartialEq for LooseGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edge_multiset() == other.edge_multiset()
    }
}

impl Eq for LooseGraph {}

/// Degree statistics of a loose tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeStats {
    /// Distinct vertex degrees greater than 1, ascending.
    pub degrees: Vec<usize>,
    /// `counts[i]` vertices have degree `degrees[i]`.
    pub counts: Vec<usize>,
    /// Number of vertices of degree > 1, minus one. May be −1.
    pub internal: i64,
    /// Number of degree-1 vertices.
    pub ends: usize,
    /// Number of degree-0 vertices.
    pub isolated: usize,
}

/// The smallest ordinary graph containing a loose graph: every missing
/// endpoint of a loose edge becomes a fresh vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientEmbedding {
    pub graph: LooseGraph,
    pub original_vertices: BTreeSet<String>,
    pub added_vertices: BTreeSet<String>,
}

/// Index-based view of an ambient graph: original vertices come first.
pub(crate) struct AmbientIndex {
    pub(crate) names: Vec<String>,
    pub(crate) n_original: usize,
    /// Closed neighborhood of every ambient vertex.
    pub(crate) closed: Vec<Bits>,
}

impl AmbientEmbedding {
    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub(crate) fn index(&self) -> AmbientIndex {
        let names: Vec<String> = self
            .original_vertices
            .iter()
            .chain(&self.added_vertices)
            .cloned()
            .collect();
        let pos: BTreeMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let n = names.len();
        let mut closed: Vec<Bits> = (0..n)
            .map(|i| {
                let mut b = Bits::new(n);
                b.insert(i);
                b
            })
            .collect();
        for ends in self.graph.edges.values() {
            if let Endpoints::Full(a, b) = ends {
                let (i, j) = (pos[a.as_str()], pos[b.as_str()]);
                closed[i].insert(j);
                closed[j].insert(i);
            }
        }
        AmbientIndex {
            names,
            n_original: self.original_vertices.len(),
            closed,
        }
    }
}

fn valid_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl LooseGraph {
    pub fn new() -> Self {
        Self::default()
    }

    fn next_tag(&self) -> EdgeTag {
        EdgeTag(self.edges.keys().next_back().map_or(0, |t| t.0 + 1))
    }

    fn edge_multiset(&self) -> Vec<&Endpoints> {
        let mut v: Vec<_> = self.edges.values().collect();
        v.sort();
        v
    }

    pub fn add_vertex(&mut self, v: impl Into<String>) {
        self.vertices.insert(v.into());
    }

    /// Adds a full edge, declaring both endpoints if needed.
    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<EdgeTag, GraphError> {
        if a == b {
            return Err(GraphError::Loop(a.to_string()));
        }
        let ends = if a < b {
            Endpoints::Full(a.to_string(), b.to_string())
        } else {
            Endpoints::Full(b.to_string(), a.to_string())
        };
        if self.edges.values().any(|e| *e == ends) {
            let Endpoints::Full(x, y) = ends else { unreachable!() };
            return Err(GraphError::DuplicateEdge(x, y));
        }
        self.add_vertex(a);
        self.add_vertex(b);
        let tag = self.next_tag();
        self.edges.insert(tag, ends);
        Ok(tag)
    }

    /// Adds a loose edge at `v`, declaring `v` if needed.
    pub fn add_loose(&mut self, v: &str) -> EdgeTag {
        self.add_vertex(v);
        let tag = self.next_tag();
        self.edges.insert(tag, Endpoints::Loose(v.to_string()));
        tag
    }

    pub fn add_free_loose(&mut self) -> EdgeTag {
        let tag = self.next_tag();
        self.edges.insert(tag, Endpoints::Free);
        tag
    }

    pub fn vertices(&self) -> &BTreeSet<String> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeTag, &Endpoints)> {
        self.edges.iter().map(|(t, e)| (*t, e))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn endpoints(&self, tag: EdgeTag) -> Option<&Endpoints> {
        self.edges.get(&tag)
    }

    /// Tags and endpoints of the 2-endpoint edges.
    pub fn full_edges(&self) -> impl Iterator<Item = (EdgeTag, &str, &str)> {
        self.edges.iter().filter_map(|(t, e)| match e {
            Endpoints::Full(a, b) => Some((*t, a.as_str(), b.as_str())),
            _ => None,
        })
    }

    pub fn full_edge_count(&self) -> usize {
        self.full_edges().count()
    }

    pub fn loose_edge_count(&self) -> usize {
        self.edges
            .values()
            .filter(|e| matches!(e, Endpoints::Loose(_)))
            .count()
    }

    pub fn free_loose_count(&self) -> usize {
        self.edges.values().filter(|e| **e == Endpoints::Free).count()
    }

    /// Number of edges (full or loose) incident to `v`.
    pub fn degree(&self, v: &str) -> usize {
        self.edges.values().filter(|e| e.contains(v)).count()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices.iter().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Neighbors of `v` through 2-endpoint edges.
    pub fn neighbors(&self, v: &str) -> BTreeSet<&str> {
        self.full_edges()
            .filter_map(|(_, a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn adjacent(&self, a: &str, b: &str) -> bool {
        self.full_edges()
            .any(|(_, x, y)| (x == a && y == b) || (x == b && y == a))
    }

    fn check_vertex(&self, v: &str) -> Result<(), GraphError> {
        if self.vertices.contains(v) {
            Ok(())
        } else {
            Err(GraphError::UnknownVertex(v.to_string()))
        }
    }

    /// Parses the line format described in the module docs.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut g = Self::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = content.split_whitespace().collect();
            let Some((&head, args)) = toks.split_first() else {
                continue;
            };
            let err = |msg: String| GraphError::Parse { line, msg };
            if let Some(bad) = args.iter().find(|a| !valid_id(a)) {
                return Err(err(format!("invalid identifier `{bad}`")));
            }
            match (head, args) {
                ("vertex", [v]) => g.add_vertex(*v),
                ("edge", [a, b]) => {
                    g.add_edge(a, b)?;
                }
                ("loose", [v]) => {
                    g.add_loose(v);
                }
                ("loose2", []) => {
                    g.add_free_loose();
                }
                ("vertex" | "edge" | "loose" | "loose2", _) => {
                    return Err(err(format!("wrong number of arguments for `{head}`")))
                }
                _ => return Err(err(format!("unknown directive `{head}`"))),
            }
        }
        Ok(g)
    }

    /// Canonical text form: vertices sorted, then edges sorted.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            out.push_str(&format!("vertex {v}\n"));
        }
        for e in self.edge_multiset() {
            match e {
                Endpoints::Full(a, b) => out.push_str(&format!("edge {a} {b}\n")),
                Endpoints::Loose(a) => out.push_str(&format!("loose {a}\n")),
                Endpoints::Free => out.push_str("loose2\n"),
            }
        }
        out
    }

    /// Completes every loose edge with fresh endpoints. Fresh names are
    /// `~e<tag>` for a loose edge and `~e<tag>a`, `~e<tag>b` for a free one.
    pub fn ambient_completion(&self) -> AmbientEmbedding {
        let mut graph = LooseGraph {
            vertices: self.vertices.clone(),
            edges: BTreeMap::new(),
        };
        let mut added = BTreeSet::new();
        for (tag, ends) in &self.edges {
            let ends = match ends {
                Endpoints::Full(a, b) => Endpoints::Full(a.clone(), b.clone()),
                Endpoints::Loose(a) => {
                    let fresh = format!("~{tag}");
                    added.insert(fresh.clone());
                    // '~' sorts after every identifier character
                    Endpoints::Full(a.clone(), fresh)
                }
                Endpoints::Free => {
                    let (x, y) = (format!("~{tag}a"), format!("~{tag}b"));
                    added.insert(x.clone());
                    added.insert(y.clone());
                    Endpoints::Full(x, y)
                }
            };
            graph.edges.insert(*tag, ends);
        }
        graph.vertices.extend(added.iter().cloned());
        AmbientEmbedding {
            graph,
            original_vertices: self.vertices.clone(),
            added_vertices: added,
        }
    }

    /// Replaces the full edge `tag = uv` by one loose edge at `u` and one at `v`.
    pub fn resolve_edge(&self, tag: EdgeTag) -> Result<Self, GraphError> {
        let (u, v) = match self.edges.get(&tag) {
            None => return Err(GraphError::UnknownEdge(tag)),
            Some(Endpoints::Full(u, v)) => (u.clone(), v.clone()),
            Some(_) => return Err(GraphError::NotResolvable(tag)),
        };
        let mut g = self.clone();
        g.edges.remove(&tag);
        g.add_loose(&u);
        g.add_loose(&v);
        Ok(g)
    }

    /// Vertices at distance at most `radius` (0 or 1) from `c` in the reduced graph.
    pub fn ball(&self, c: &str, radius: u8) -> Result<BTreeSet<String>, GraphError> {
        self.check_vertex(c)?;
        let mut out = BTreeSet::from([c.to_string()]);
        if radius >= 1 {
            out.extend(self.neighbors(c).into_iter().map(str::to_string));
        }
        Ok(out)
    }

    /// Induced loose graph on `keep`. Full edges leaving `keep` become loose
    /// edges at their retained endpoint, so degrees inside `keep` are
    /// unchanged. Free loose edges are kept. Edge tags are preserved.
    pub fn restrict(&self, keep: &BTreeSet<String>) -> Self {
        let mut edges = BTreeMap::new();
        for (tag, ends) in &self.edges {
            let kept = match ends {
                Endpoints::Full(a, b) => match (keep.contains(a), keep.contains(b)) {
                    (true, true) => Some(ends.clone()),
                    (true, false) => Some(Endpoints::Loose(a.clone())),
                    (false, true) => Some(Endpoints::Loose(b.clone())),
                    (false, false) => None,
                },
                Endpoints::Loose(a) => keep.contains(a).then(|| ends.clone()),
                Endpoints::Free => Some(Endpoints::Free),
            };
            if let Some(e) = kept {
                edges.insert(*tag, e);
            }
        }
        LooseGraph {
            vertices: self.vertices.intersection(keep).cloned().collect(),
            edges,
        }
    }

    /// Drops every loose and free loose edge.
    pub fn reduce(&self) -> Self {
        LooseGraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .filter(|(_, e)| matches!(e, Endpoints::Full(..)))
                .map(|(t, e)| (*t, e.clone()))
                .collect(),
        }
    }

    /// Copy with every free loose edge removed.
    pub fn without_free_loose(&self) -> Self {
        let mut g = self.clone();
        g.edges.retain(|_, e| *e != Endpoints::Free);
        g
    }

    /// Vertex sets of the connected components of the reduced graph, in
    /// order of their smallest vertex.
    pub fn vertex_components(&self) -> Vec<BTreeSet<String>> {
        let mut seen: BTreeSet<&str> = BTreeSet::new();
        let mut comps = Vec::new();
        for start in &self.vertices {
            if seen.contains(start.as_str()) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start.as_str()]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                comp.insert(v.to_string());
                for w in self.neighbors(v) {
                    if seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            comps.push(comp);
        }
        comps
    }

    /// Splits into connected pieces: one per component of the reduced graph
    /// (with its loose edges) followed by one per free loose edge.
    pub fn components(&self) -> Vec<Self> {
        let mut out: Vec<Self> = self
            .vertex_components()
            .into_iter()
            .map(|c| self.restrict(&c).without_free_loose())
            .collect();
        for (tag, e) in &self.edges {
            if *e == Endpoints::Free {
                out.push(LooseGraph {
                    vertices: BTreeSet::new(),
                    edges: BTreeMap::from([(*tag, Endpoints::Free)]),
                });
            }
        }
        out
    }

    /// True when the reduced graph has at most one component.
    pub fn is_connected(&self) -> bool {
        self.vertex_components().len() <= 1
    }

    /// Deterministic spanning tree of the reduced graph: breadth-first from
    /// the smallest vertex, visiting neighbors in sorted order.
    pub fn spanning_tree(&self) -> Result<BTreeSet<EdgeTag>, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::NotConnected);
        }
        let mut tree = BTreeSet::new();
        let Some(start) = self.vertices.first() else {
            return Ok(tree);
        };
        let mut seen = BTreeSet::from([start.as_str()]);
        let mut queue = VecDeque::from([start.as_str()]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if seen.insert(w) {
                    tree.insert(self.edge_between(v, w).expect("adjacent"));
                    queue.push_back(w);
                }
            }
        }
        Ok(tree)
    }

    /// Every spanning tree of the reduced graph, as sets of edge tags.
    pub fn all_spanning_trees(&self) -> Result<Vec<BTreeSet<EdgeTag>>, GraphError> {
        if !self.is_connected() {
            return Err(GraphError::NotConnected);
        }
        let n = self.vertex_count();
        let full: Vec<(EdgeTag, &str, &str)> = self.full_edges().collect();
        let need = n.saturating_sub(1);
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        collect_trees(&full, 0, need, &mut chosen, &mut out, &self.vertices);
        Ok(out)
    }

    pub fn edge_between(&self, a: &str, b: &str) -> Option<EdgeTag> {
        self.full_edges()
            .find(|(_, x, y)| (*x == a && *y == b) || (*x == b && *y == a))
            .map(|(t, _, _)| t)
    }

    /// All nonempty cliques of the reduced graph, by size then lexicographically.
    pub fn cliques(&self) -> Vec<BTreeSet<String>> {
        let names: Vec<&String> = self.vertices.iter().collect();
        let n = names.len();
        let mut adj = vec![Bits::new(n); n];
        for (_, a, b) in self.full_edges() {
            let i = names.binary_search_by(|x| x.as_str().cmp(a)).unwrap();
            let j = names.binary_search_by(|x| x.as_str().cmp(b)).unwrap();
            adj[i].insert(j);
            adj[j].insert(i);
        }
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut stack = Vec::new();
        extend_cliques(&adj, &Bits::full(n), 0, &mut stack, &mut found);
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        found
            .into_iter()
            .map(|c| c.into_iter().map(|i| names[i].clone()).collect())
            .collect()
    }

    /// True when the reduced graph is a (nonempty) tree.
    pub fn is_tree(&self) -> bool {
        !self.vertices.is_empty()
            && self.is_connected()
            && self.full_edge_count() + 1 == self.vertex_count()
    }

    /// Degree statistics of a loose tree; degrees include loose edges.
    pub fn tree_stats(&self) -> Result<TreeStats, GraphError> {
        if !self.is_tree() {
            return Err(GraphError::NotATree);
        }
        let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
        for v in &self.vertices {
            *hist.entry(self.degree(v)).or_default() += 1;
        }
        let ends = hist.get(&1).copied().unwrap_or(0);
        let isolated = hist.get(&0).copied().unwrap_or(0);
        let (degrees, counts): (Vec<usize>, Vec<usize>) =
            hist.into_iter().filter(|(d, _)| *d > 1).unzip();
        let internal = counts.iter().sum::<usize>() as i64 - 1;
        Ok(TreeStats {
            degrees,
            counts,
            internal,
            ends,
            isolated,
        })
    }

    /// Disjoint union; fails if the vertex sets overlap. Tags of `other` are
    /// shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, GraphError> {
        if let Some(v) = self.vertices.intersection(&other.vertices).next() {
            return Err(GraphError::Overlap(v.clone()));
        }
        let mut g = self.clone();
        g.vertices.extend(other.vertices.iter().cloned());
        let base = g.next_tag().0;
        for (t, e) in &other.edges {
            g.edges.insert(EdgeTag(base + t.0), e.clone());
        }
        Ok(g)
    }
}

fn collect_trees(
    edges: &[(EdgeTag, &str, &str)],
    from: usize,
    need: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<BTreeSet<EdgeTag>>,
    vertices: &BTreeSet<String>,
) {
    if chosen.len() == need {
        // need = |V| - 1 edges spanning all vertices without a cycle
        let mut parent: BTreeMap<&str, &str> =
            vertices.iter().map(|v| (v.as_str(), v.as_str())).collect();
        fn find<'a>(p: &mut BTreeMap<&'a str, &'a str>, v: &'a str) -> &'a str {
            let mut r = v;
            while p[r] != r {
                r = p[r];
            }
            p.insert(v, r);
            r
        }
        for &i in chosen.iter() {
            let (_, a, b) = edges[i];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return;
            }
            parent.insert(ra, rb);
        }
        out.push(chosen.iter().map(|&i| edges[i].0).collect());
        return;
    }
    if edges.len() - from < need - chosen.len() {
        return;
    }
    for i in from..edges.len() {
        chosen.push(i);
        collect_trees(edges, i + 1, need, chosen, out, vertices);
        chosen.pop();
    }
}

fn extend_cliques(
    adj: &[Bits],
    candidates: &Bits,
    min: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    for v in candidates.iter().filter(|&v| v >= min) {
        stack.push(v);
        out.push(stack.clone());
        extend_cliques(adj, &candidates.intersect(&adj[v]), v + 1, stack, out);
        stack.pop();
    }
}

/// Named constructions used throughout tests and examples.
pub mod named {
    use super::LooseGraph;

    fn v(i: usize) -> String {
        format!("v{i}")
    }

    /// Complete graph on `n` vertices `v0..v{n-1}`.
    pub fn complete(n: usize) -> LooseGraph {
        let mut g = LooseGraph::new();
        for i in 0..n {
            g.add_vertex(v(i));
            for j in 0..i {
                g.add_edge(&v(j), &v(i)).expect("simple");
            }
        }
        g
    }

    /// Single vertex carrying `m` loose edges: the loose graph of affine `m`-space.
    pub fn affine_star(m: usize) -> LooseGraph {
        let mut g = LooseGraph::new();
        g.add_vertex("c");
        for _ in 0..m {
            g.add_loose("c");
        }
        g
    }

    /// Path `v0 - v1 - ... - v{n-1}`.
    pub fn path(n: usize) -> LooseGraph {
        let mut g = LooseGraph::new();
        for i in 0..n {
            g.add_vertex(v(i));
            if i > 0 {
                g.add_edge(&v(i - 1), &v(i)).expect("simple");
            }
        }
        g
    }

    /// Adjacent `u`, `v` with `m` common neighbors `w1..wm` and nothing else.
    pub fn gamma_uv(m: usize) -> LooseGraph {
        let mut g = LooseGraph::new();
        g.add_edge("u", "v").expect("simple");
        for i in 1..=m {
            let w = format!("w{i}");
            g.add_edge("u", &w).expect("simple");
            g.add_edge(&w, "v").expect("simple");
        }
        g
    }

    /// `gamma_uv(m)` with the edge `uv` resolved.
    pub fn gamma_uv_resolved(m: usize) -> LooseGraph {
        let g = gamma_uv(m);
        let tag = g.edge_between("u", "v").expect("uv present");
        g.resolve_edge(tag).expect("full edge")
    }

    /// One free loose edge and nothing else.
    pub fn free_edge() -> LooseGraph {
        let mut g = LooseGraph::new();
        g.add_free_loose();
        g
    }
}
