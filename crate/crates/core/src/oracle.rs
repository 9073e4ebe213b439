//! Brute-force point counts over prime fields and the cross-check harness.
//!
//! [`enumerate_points`] walks every projective point of the ambient space
//! over `Z/q`, each represented with its first nonzero coordinate equal to
//! one, and counts those lying in at least one vertex cone. It shares no
//! code with the inclusion–exclusion in [`crate::grothendieck`].

use std::collections::BTreeMap;
use std::io;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{first_primes, is_prime};
use crate::grothendieck::{class_of, surgery_by_components, tree_class_by_components};
use crate::loose_graph::{GraphError, LooseGraph};
use crate::poly::LPolynomial;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("ambient space has {count} coordinates, limit is {limit}")]
    TooManyCoordinates { count: usize, limit: usize },
    #[error("{q}^{coords} tuples exceed the budget of {budget}")]
    TooManyTuples { q: u64, coords: usize, budget: u64 },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("sample table: {0}")]
    BadTable(String),
    #[error("interpolated polynomial has a non-integer coefficient {0}")]
    NonIntegral(BigRational),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Size limits for the enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    /// Largest number of ambient coordinates.
    pub max_ambient: usize,
    /// Largest `q^N` walked.
    pub max_tuples: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_ambient: 8,
            max_tuples: 7u64.pow(8),
        }
    }
}

/// Cone data on the ambient space without the free loose edges.
struct Cones {
    coords: usize,
    /// (coordinate, closed neighborhood mask) of each original vertex
    cones: Vec<(usize, u32)>,
}

fn cones(g: &LooseGraph) -> Cones {
    let amb = g.without_free_loose().ambient_completion();
    let names: Vec<&String> = amb.original_vertices.iter().chain(&amb.added_vertices).collect();
    let pos = |s: &str| names.iter().position(|n| n.as_str() == s).expect("ambient vertex");
    let mut masks: Vec<u32> = (0..names.len()).map(|i| 1 << i).collect();
    for (_, a, b) in amb.graph.full_edges() {
        let (i, j) = (pos(a), pos(b));
        masks[i] |= 1 << j;
        masks[j] |= 1 << i;
    }
    Cones {
        coords: names.len(),
        cones: (0..amb.original_vertices.len()).map(|i| (i, masks[i])).collect(),
    }
}

/// Number of `F_q`-points of the scheme of `g`, for prime `q`, with default
/// limits and one shard per rayon thread.
pub fn enumerate_points(g: &LooseGraph, q: u64) -> Result<u64, OracleError> {
    enumerate_points_with(g, q, OracleLimits::default(), rayon::current_num_threads())
}

/// As [`enumerate_points`], splitting the walk into `shards` contiguous
/// index ranges summed in parallel.
pub fn enumerate_points_with(
    g: &LooseGraph,
    q: u64,
    limits: OracleLimits,
    shards: usize,
) -> Result<u64, OracleError> {
    if !is_prime(q) {
        return Err(OracleError::NotPrime(q));
    }
    let c = cones(g);
    let n = c.coords;
    if n > limits.max_ambient || n > 31 {
        return Err(OracleError::TooManyCoordinates {
            count: n,
            limit: limits.max_ambient.min(31),
        });
    }
    let tuples = q.checked_pow(n as u32).filter(|&t| t <= limits.max_tuples);
    let Some(tuples) = tuples else {
        return Err(OracleError::TooManyTuples {
            q,
            coords: n,
            budget: limits.max_tuples,
        });
    };
    let free = g.free_loose_count() as u64 * (q - 1);
    if n == 0 {
        return Ok(free);
    }
    // projective points: (q^n - 1)/(q - 1)
    let total = (tuples - 1) / (q - 1);
    let shards = shards.max(1) as u64;
    let chunk = total.div_ceil(shards);
    let counted: u64 = (0..shards)
        .into_par_iter()
        .map(|s| {
            let lo = s * chunk;
            let hi = ((s + 1) * chunk).min(total);
            (lo..hi).filter(|&idx| in_some_cone(&c, q, idx)).count() as u64
        })
        .sum();
    Ok(counted + free)
}

/// Decodes the `idx`-th canonical projective point and tests cone membership.
fn in_some_cone(c: &Cones, q: u64, mut idx: u64) -> bool {
    let n = c.coords;
    // leading coordinate position: block `lead` holds q^(n-1-lead) points
    let mut lead = 0;
    loop {
        let block = q.pow((n - 1 - lead) as u32);
        if idx < block {
            break;
        }
        idx -= block;
        lead += 1;
    }
    let mut coords = vec![0u64; n];
    coords[lead] = 1;
    for x in coords.iter_mut().skip(lead + 1) {
        *x = idx % q;
        idx /= q;
    }
    let support = coords
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .fold(0u32, |m, (i, _)| m | 1 << i);
    c.cones
        .iter()
        .any(|&(v, hood)| coords[v] != 0 && support & !hood == 0)
}

/// Point counts of one graph at several primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    pub graph_id: String,
    samples: Vec<(u64, BigInt)>,
}

impl CountTable {
    pub fn new(graph_id: impl Into<String>, samples: Vec<(u64, BigInt)>) -> Result<Self, OracleError> {
        let mut seen = std::collections::BTreeSet::new();
        for (q, count) in &samples {
            if !is_prime(*q) {
                return Err(OracleError::NotPrime(*q));
            }
            if !seen.insert(*q) {
                return Err(OracleError::BadTable(format!("repeated q = {q}")));
            }
            if count < &BigInt::zero() {
                return Err(OracleError::BadTable(format!("negative count at q = {q}")));
            }
        }
        Ok(Self {
            graph_id: graph_id.into(),
            samples,
        })
    }

    /// Counts `g` at each prime in `primes`.
    pub fn measure(
        graph_id: impl Into<String>,
        g: &LooseGraph,
        primes: &[u64],
        limits: OracleLimits,
    ) -> Result<Self, OracleError> {
        let threads = rayon::current_num_threads();
        let samples = primes
            .iter()
            .map(|&q| Ok((q, BigInt::from(enumerate_points_with(g, q, limits, threads)?))))
            .collect::<Result<Vec<_>, OracleError>>()?;
        Self::new(graph_id, samples)
    }

    pub fn samples(&self) -> &[(u64, BigInt)] {
        &self.samples
    }

    pub fn as_map(&self) -> BTreeMap<u64, BigInt> {
        self.samples.iter().cloned().collect()
    }

    /// CSV with header `q,count`.
    pub fn write_csv<W: io::Write>(&self, w: W) -> Result<(), OracleError> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["q", "count"])?;
        for (q, c) in &self.samples {
            out.write_record([q.to_string(), c.to_string()])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("ascii")
    }

    pub fn read_csv<R: io::Read>(graph_id: impl Into<String>, r: R) -> Result<Self, OracleError> {
        let mut rdr = csv::Reader::from_reader(r);
        let headers = rdr.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["q", "count"] {
            return Err(OracleError::BadTable(format!("unexpected header {headers:?}")));
        }
        let mut samples = Vec::new();
        for rec in rdr.records() {
            let rec = rec?;
            let q = rec[0]
                .parse::<u64>()
                .map_err(|e| OracleError::BadTable(e.to_string()))?;
            let c = rec[1]
                .parse::<BigInt>()
                .map_err(|e| OracleError::BadTable(e.to_string()))?;
            samples.push((q, c));
        }
        Self::new(graph_id, samples)
    }
}

/// Unique polynomial of degree below the sample count through the samples,
/// by exact Lagrange interpolation. Fails unless every coefficient is an
/// integer.
pub fn interpolate(table: &CountTable) -> Result<LPolynomial, OracleError> {
    let pts: Vec<(BigRational, BigRational)> = table
        .samples
        .iter()
        .map(|(q, c)| (BigRational::from_integer(BigInt::from(*q)), BigRational::from_integer(c.clone())))
        .collect();
    let n = pts.len();
    let mut coeffs = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in pts.iter().enumerate() {
        // basis polynomial ∏_{j≠i} (X - x_j) / (x_i - x_j), ascending coefficients
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (j, (xj, _)) in pts.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (k, b) in basis.iter().enumerate() {
                next[k + 1] += b;
                next[k] -= b * xj;
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = yi / denom;
        for (c, b) in coeffs.iter_mut().zip(&basis) {
            *c += b * &scale;
        }
    }
    let mut ints = Vec::with_capacity(n);
    for c in coeffs {
        if !c.is_integer() {
            return Err(OracleError::NonIntegral(c));
        }
        ints.push(c.to_integer());
    }
    Ok(LPolynomial::from_coeffs(ints))
}

/// Number of samples needed to pin down the counting polynomial of `g`.
pub fn samples_needed(g: &LooseGraph) -> usize {
    let deg = g.max_degree().max(usize::from(g.free_loose_count() > 0));
    deg + 1
}

/// Every route's polynomial for one graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCheck {
    pub inclusion_exclusion: LPolynomial,
    pub surgery: LPolynomial,
    /// Present when every component is a loose tree.
    pub tree: Option<LPolynomial>,
    pub interpolated: LPolynomial,
    pub counts: CountTable,
}

impl CrossCheck {
    /// Names of the routes disagreeing with `reference`.
    pub fn mismatches(&self, reference: &LPolynomial) -> Vec<(&'static str, LPolynomial)> {
        let mut routes = vec![
            ("inclusion_exclusion", &self.inclusion_exclusion),
            ("surgery", &self.surgery),
            ("interpolation", &self.interpolated),
        ];
        if let Some(t) = &self.tree {
            routes.push(("tree", t));
        }
        routes
            .into_iter()
            .filter(|(_, p)| *p != reference)
            .map(|(n, p)| (n, p.clone()))
            .collect()
    }

    pub fn all_agree(&self) -> bool {
        self.mismatches(&self.inclusion_exclusion).is_empty()
    }
}

/// Runs inclusion–exclusion, surgery, the tree formula (when it applies) and
/// interpolation of brute-force counts at the first primes.
pub fn cross_check(g: &LooseGraph, limits: OracleLimits) -> Result<CrossCheck, OracleError> {
    let inclusion_exclusion = class_of(g);
    let surgery = surgery_by_components(g)?;
    let tree = tree_class_by_components(g).ok();
    let primes = first_primes(samples_needed(g));
    let counts = CountTable::measure("graph", g, &primes, limits)?;
    let interpolated = interpolate(&counts)?;
    Ok(CrossCheck {
        inclusion_exclusion,
        surgery,
        tree,
        interpolated,
        counts,
    })
}
