//! Independent reference computations used by the integration tests. None of
//! these route through the library's algorithms; they only read graph and
//! presentation data.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use lefschetz_core::monoid::Term;
use lefschetz_core::{Endpoints, LPolynomial, LooseGraph, MonoidPresentation};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Ambient coordinates of a loose graph (free loose edges excluded): the
/// vertices first, then one fresh coordinate per one-ended loose edge. Returns
/// the closed neighborhood of every original vertex as a bitmask.
fn ambient_hoods(g: &LooseGraph) -> (usize, Vec<(usize, u64)>) {
    let names: Vec<&String> = g.vertices().iter().collect();
    let idx: BTreeMap<&str, usize> = names.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let mut hood: Vec<u64> = (0..names.len()).map(|i| 1 << i).collect();
    let mut next = names.len();
    for (_, e) in g.edges() {
        match e {
            Endpoints::Full(a, b) => {
                let (i, j) = (idx[a.as_str()], idx[b.as_str()]);
                hood[i] |= 1 << j;
                hood[j] |= 1 << i;
            }
            Endpoints::Loose(a) => {
                hood[idx[a.as_str()]] |= 1 << next;
                next += 1;
            }
            Endpoints::Free => {}
        }
    }
    (next, hood.into_iter().enumerate().collect())
}

/// Supports `S` of points lying in some cone: `S ∋ v` and `S ⊆ N̄(v)`.
fn admissible_supports(g: &LooseGraph) -> Vec<u32> {
    let (n, hoods) = ambient_hoods(g);
    assert!(n <= 20, "support oracle is exponential in the ambient size");
    (1u64..1 << n)
        .filter(|&s| hoods.iter().any(|&(v, h)| s >> v & 1 == 1 && s & !h == 0))
        .map(|s| s.count_ones())
        .collect()
}

/// Class computed by partitioning points by exact support: a support of size
/// `k` carries a torus `G_m^(k-1)`, class `(L-1)^(k-1)`.
pub fn support_class(g: &LooseGraph) -> LPolynomial {
    let gm = LPolynomial::from_i64s(&[-1, 1]);
    let mut total = LPolynomial::zero();
    for k in admissible_supports(g) {
        total += &gm.pow(k - 1);
    }
    total + gm * LPolynomial::constant(g.free_loose_count() as i64)
}

/// Point count over `F_q` from the same support partition.
pub fn support_count(g: &LooseGraph, q: u64) -> BigInt {
    let q1 = BigInt::from(q - 1);
    let mut total: BigInt = admissible_supports(g)
        .into_iter()
        .map(|k| num_traits::pow(q1.clone(), (k - 1) as usize))
        .sum();
    total += &q1 * BigInt::from(g.free_loose_count());
    total
}

/// Number of `k`-dimensional subspaces of `F_p^n`, by collecting row-reduced
/// bases of every `k`-tuple of vectors that spans a `k`-space.
pub fn subspace_count(n: usize, k: usize, p: u64) -> usize {
    let vectors: Vec<Vec<u64>> = (0..p.pow(n as u32))
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let d = i % p;
                    i /= p;
                    d
                })
                .collect()
        })
        .collect();
    let mut seen = HashSet::new();
    let mut tuple = vec![0usize; k];
    loop {
        let rows: Vec<Vec<u64>> = tuple.iter().map(|&i| vectors[i].clone()).collect();
        let rref = row_reduce(rows, p);
        if rref.len() == k {
            seen.insert(rref);
        }
        // odometer over k-tuples
        let mut pos = 0;
        loop {
            if pos == k {
                return seen.len();
            }
            tuple[pos] += 1;
            if tuple[pos] < vectors.len() {
                break;
            }
            tuple[pos] = 0;
            pos += 1;
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    (1..p).find(|&x| a * x % p == 1).expect("unit")
}

/// Nonzero rows of the reduced row echelon form over `F_p`.
fn row_reduce(mut rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// Dense monomial matrix: `m[row][col]` is the exponent of the root of unity.
pub type Dense = Vec<Vec<Option<u32>>>;

fn dense_mul(a: &Dense, b: &Dense, n: u32) -> Dense {
    let d = a.len();
    let mut out = vec![vec![None; d]; d];
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                if let (Some(x), Some(y)) = (a[i][k], b[k][j]) {
                    out[i][j] = Some((x + y) % n);
                }
            }
        }
    }
    out
}

/// Closure of {adjacent transpositions, diag(α, 1, …, 1)} under products.
pub fn monomial_group_closure(d: usize, n: u32) -> HashSet<Dense> {
    let identity: Dense = (0..d)
        .map(|i| (0..d).map(|j| (i == j).then_some(0)).collect())
        .collect();
    let mut gens = Vec::new();
    for i in 0..d.saturating_sub(1) {
        let mut t = identity.clone();
        t.swap(i, i + 1);
        gens.push(t);
    }
    let mut scale = identity.clone();
    scale[0][0] = Some(1 % n);
    gens.push(scale);
    let mut seen: HashSet<Dense> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let prod = dense_mul(&m, g, n);
            if seen.insert(prod.clone()) {
                queue.push_back(prod);
            }
        }
    }
    seen
}

fn eval_term(t: &Term, values: &[u64], q: u64) -> u64 {
    match t {
        Term::Zero => 0,
        Term::Monomial(e) => e
            .iter()
            .zip(values)
            .fold(1 % q, |acc, (&k, &x)| (0..k).fold(acc, |a, _| a * x % q)),
    }
}

/// Assignments of residues mod a prime `q` to the generators satisfying every
/// relation.
pub fn brute_hom_count(m: &MonoidPresentation, q: u64) -> u64 {
    let n = m.generators().len();
    let mut count = 0;
    for mut i in 0..q.pow(n as u32) {
        let values: Vec<u64> = (0..n)
            .map(|_| {
                let d = i % q;
                i /= q;
                d
            })
            .collect();
        if m
            .relations()
            .iter()
            .all(|(l, r)| eval_term(l, &values, q) == eval_term(r, &values, q))
        {
            count += 1;
        }
    }
    count
}

/// `∏_k (1 - p^k T)^(-a_k)` to `T^order`, by binomial series: for `a > 0`
/// the coefficient of `T^j` in `(1 - x)^(-a)` is `C(a+j-1, j) x^j`; for
/// `a < 0` it is `(-1)^j C(|a|, j) x^j`.
pub fn local_zeta_direct(poly: &LPolynomial, p: u64, order: usize) -> Vec<BigRational> {
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); order + 1];
    acc[0] = BigInt::one();
    for (k, a) in poly.terms() {
        let a: i64 = a.try_into().expect("small coefficient");
        let x = num_traits::pow(BigInt::from(p), k);
        let factor: Vec<BigInt> = (0..=order)
            .map(|j| {
                let xj = num_traits::pow(x.clone(), j);
                if a > 0 {
                    binom((a as usize) + j - 1, j) * xj
                } else if j as i64 <= -a {
                    let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    sign * binom((-a) as usize, j) * xj
                } else {
                    BigInt::zero()
                }
            })
            .collect();
        let mut next = vec![BigInt::zero(); order + 1];
        for (i, u) in acc.iter().enumerate() {
            for (j, v) in factor.iter().enumerate().take(order + 1 - i) {
                next[i + j] += u * v;
            }
        }
        acc = next;
    }
    acc.into_iter().map(BigRational::from_integer).collect()
}

fn binom(n: usize, k: usize) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

/// Vertex degrees of a graph, loose edges included.
pub fn degrees(g: &LooseGraph) -> BTreeMap<String, usize> {
    let mut d: BTreeMap<String, usize> = g.vertices().iter().map(|v| (v.clone(), 0)).collect();
    for (_, e) in g.edges() {
        match e {
            Endpoints::Full(a, b) => {
                *d.get_mut(a).unwrap() += 1;
                *d.get_mut(b).unwrap() += 1;
            }
            Endpoints::Loose(a) => *d.get_mut(a).unwrap() += 1,
            Endpoints::Free => {}
        }
    }
    d
}

/// Loose trees exercised by several suites.
pub fn named_graphs() -> Vec<(&'static str, LooseGraph)> {
    use lefschetz_core::loose_graph::named::*;
    let mut tree = path(4);
    tree.add_loose("v0");
    tree.add_loose("v3");
    tree.add_loose("v3");
    let mut set: Vec<(&'static str, LooseGraph)> = vec![
        ("gamma", gamma_uv(2)),
        ("gamma_resolved", gamma_uv_resolved(2)),
        ("k4", complete(4)),
        ("loose_tree", tree),
        ("k3", complete(3)),
        ("affine_plane", affine_star(2)),
        ("path5", path(5)),
        ("free_edge", free_edge()),
    ];
    let mut sq = path(4);
    sq.add_edge("v0", "v3").unwrap();
    set.push(("square", sq));
    let mut bowtie = complete(3);
    bowtie.add_edge("v2", "x").unwrap();
    bowtie.add_edge("v2", "y").unwrap();
    bowtie.add_edge("x", "y").unwrap();
    set.push(("bowtie", bowtie));
    set
}

pub fn as_set<T: Ord + Clone>(v: &[T]) -> BTreeSet<T> {
    v.iter().cloned().collect()
}
