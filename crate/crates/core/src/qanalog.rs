//! q-integers, Gaussian binomials, and linear algebra over `F_{1^n}`.
//!
//! A vector space over `F_{1^n}` of dimension `d` is a pointed set with a free
//! action of the cyclic group `μ_n`: `d` orbits of `n` points plus a zero.
//! Its automorphisms are the `d × d` monomial matrices with entries in `μ_n`,
//! i.e. the wreath product `μ_n ≀ S_d`. Elements of `μ_n` are stored as
//! exponents of a fixed generator `α`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::arith::{binomial, factorial};
use crate::poly::QPolynomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QError {
    #[error("need 0 <= k <= n, got n = {n}, k = {k}")]
    OutOfRange { n: i64, k: i64 },
    #[error("size mismatch: {0}")]
    Mismatch(String),
    #[error("{m} does not divide {n}")]
    NotDivisor { m: u32, n: u32 },
    #[error("invalid monomial matrix: {0}")]
    Invalid(String),
}

/// `[n]_q = 1 + q + … + q^(n-1)`; `[0]_q = 0`.
pub fn q_integer(n: usize) -> QPolynomial {
    QPolynomial::from_coeffs(vec![BigInt::from(1); n])
}

/// `[n]_q! = [1]_q [2]_q … [n]_q`.
pub fn q_factorial(n: usize) -> QPolynomial {
    (1..=n).fold(QPolynomial::one(), |acc, i| acc * q_integer(i))
}

/// Gaussian binomial `[n]_q! / ([k]_q! [n-k]_q!)`.
pub fn gauss_binomial(n: usize, k: usize) -> Result<QPolynomial, QError> {
    if k > n {
        return Err(QError::OutOfRange {
            n: n as i64,
            k: k as i64,
        });
    }
    let den = q_factorial(k) * q_factorial(n - k);
    Ok(q_factorial(n)
        .div_exact(&den)
        .expect("Gaussian binomial quotient is a polynomial"))
}

/// Number of `k`-dimensional subspaces of the combinatorial projective space
/// `PG(n, F1)`: `C(n+1, k+1)`. The empty subspace (`k = -1`) counts once.
pub fn f1_subspace_count(n: i64, k: i64) -> Result<BigInt, QError> {
    if k < -1 || k > n {
        return Err(QError::OutOfRange { n, k });
    }
    Ok(binomial((n + 1) as u64, (k + 1) as u64))
}

/// `|GL_d(F_{1^n})| = n^d · d!`.
pub fn gl_order(d: u32, n: u32) -> BigInt {
    num_traits::pow(BigInt::from(n), d as usize) * factorial(d as u64)
}

/// A point of a vector space over `F_{1^n}`: zero or `α^exp · b_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Zero,
    Basis { index: usize, exp: u32 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct F1nVectorSpace {
    pub dim: usize,
    pub n: u32,
}

impl F1nVectorSpace {
    pub fn new(dim: usize, n: u32) -> Self {
        assert!(n >= 1, "μ_n needs n >= 1");
        Self { dim, n }
    }

    /// Zero followed by the `dim · n` nonzero points.
    pub fn points(&self) -> Vec<Point> {
        let mut out = vec![Point::Zero];
        for index in 0..self.dim {
            for exp in 0..self.n {
                out.push(Point::Basis { index, exp });
            }
        }
        out
    }

    pub fn nonzero_count(&self) -> usize {
        self.dim * self.n as usize
    }

    /// Action of the generator `α` of `μ_n`.
    pub fn scale(&self, p: Point) -> Point {
        match p {
            Point::Zero => Point::Zero,
            Point::Basis { index, exp } => Point::Basis {
                index,
                exp: (exp + 1) % self.n,
            },
        }
    }

    /// The same point set viewed over `F_{1^m}` for `m | n`: the subgroup
    /// `μ_m = ⟨α^r⟩` (`n = m r`) splits every orbit into `r` orbits.
    pub fn restrict_scalars(&self, m: u32) -> Result<F1nVectorSpace, QError> {
        if m == 0 || self.n % m != 0 {
            return Err(QError::NotDivisor { m, n: self.n });
        }
        Ok(F1nVectorSpace::new(self.dim * (self.n / m) as usize, m))
    }

    /// Where a point lands in [`restrict_scalars`](Self::restrict_scalars).
    pub fn restrict_point(&self, m: u32, p: Point) -> Result<Point, QError> {
        if m == 0 || self.n % m != 0 {
            return Err(QError::NotDivisor { m, n: self.n });
        }
        let r = self.n / m;
        Ok(match p {
            Point::Zero => Point::Zero,
            Point::Basis { index, exp } => Point::Basis {
                index: index * r as usize + (exp % r) as usize,
                exp: exp / r,
            },
        })
    }
}

/// Monomial matrix over `μ_n`: column `i` has the single entry `α^weights[i]`
/// in row `sigma[i]`, so `b_i ↦ α^weights[i] b_sigma[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialMatrix {
    n: u32,
    sigma: Vec<usize>,
    weights: Vec<u32>,
}

impl MonomialMatrix {
    pub fn new(n: u32, sigma: Vec<usize>, weights: Vec<u32>) -> Result<Self, QError> {
        let d = sigma.len();
        if n == 0 {
            return Err(QError::Invalid("n must be positive".into()));
        }
        if weights.len() != d {
            return Err(QError::Invalid("one weight per column".into()));
        }
        let mut seen = vec![false; d];
        for &s in &sigma {
            if s >= d || std::mem::replace(&mut seen[s], true) {
                return Err(QError::Invalid(format!("{sigma:?} is not a permutation")));
            }
        }
        if let Some(w) = weights.iter().find(|&&w| w >= n) {
            return Err(QError::Invalid(format!("weight {w} outside 0..{n}")));
        }
        Ok(Self { n, sigma, weights })
    }

    pub fn identity(d: usize, n: u32) -> Self {
        Self {
            n,
            sigma: (0..d).collect(),
            weights: vec![0; d],
        }
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    pub fn order_of_roots(&self) -> u32 {
        self.n
    }

    pub fn permutation(&self) -> &[usize] {
        &self.sigma
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    fn check_compatible(&self, other: &Self) -> Result<(), QError> {
        if self.dim() != other.dim() || self.n != other.n {
            return Err(QError::Mismatch(format!(
                "GL_{}(F_1^{}) vs GL_{}(F_1^{})",
                self.dim(),
                self.n,
                other.dim(),
                other.n
            )));
        }
        Ok(())
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self, QError> {
        self.check_compatible(other)?;
        let sigma = other.sigma.iter().map(|&j| self.sigma[j]).collect();
        let weights = other
            .sigma
            .iter()
            .zip(&other.weights)
            .map(|(&j, &w)| (w + self.weights[j]) % self.n)
            .collect();
        Ok(Self {
            n: self.n,
            sigma,
            weights,
        })
    }

    pub fn invert(&self) -> Self {
        let d = self.dim();
        let mut sigma = vec![0; d];
        let mut weights = vec![0; d];
        for i in 0..d {
            sigma[self.sigma[i]] = i;
            weights[self.sigma[i]] = (self.n - self.weights[i]) % self.n;
        }
        Self {
            n: self.n,
            sigma,
            weights,
        }
    }

    pub fn apply(&self, space: &F1nVectorSpace, p: Point) -> Result<Point, QError> {
        if space.dim != self.dim() || space.n != self.n {
            return Err(QError::Mismatch(format!(
                "matrix over μ_{} of size {} on a {}-space over F_1^{}",
                self.n,
                self.dim(),
                space.dim,
                space.n
            )));
        }
        Ok(match p {
            Point::Zero => Point::Zero,
            Point::Basis { index, exp } => Point::Basis {
                index: self.sigma[index],
                exp: (exp + self.weights[index]) % self.n,
            },
        })
    }

    /// Dense form: `entries[row][col]` is the exponent of the nonzero entry.
    pub fn to_dense(&self) -> Vec<Vec<Option<u32>>> {
        let d = self.dim();
        let mut rows = vec![vec![None; d]; d];
        for (col, (&row, &w)) in self.sigma.iter().zip(&self.weights).enumerate() {
            rows[row][col] = Some(w);
        }
        rows
    }

    /// Every element of `GL_d(F_{1^n})`, `n^d · d!` of them.
    pub fn enumerate(d: usize, n: u32) -> Vec<Self> {
        let mut out = Vec::new();
        for sigma in permutations(d) {
            let total = (n as usize).pow(d as u32);
            for code in 0..total {
                let mut c = code;
                let weights = (0..d)
                    .map(|_| {
                        let w = (c % n as usize) as u32;
                        c /= n as usize;
                        w
                    })
                    .collect();
                out.push(Self {
                    n,
                    sigma: sigma.clone(),
                    weights,
                });
            }
        }
        out
    }
}

impl fmt::Display for MonomialMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense() {
            let cells: Vec<String> = row
                .iter()
                .map(|e| match e {
                    None => "0".to_string(),
                    Some(0) => "1".to_string(),
                    Some(w) => format!("a^{w}"),
                })
                .collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// All permutations of `0..d` in lexicographic order.
pub fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..d).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..d).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..d).rev().find(|&j| cur[j] > cur[i - 1]).expect("exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}
