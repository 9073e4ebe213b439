//! Zeta functions attached to a counting polynomial `N(L) = Σ a_k L^k`.
//!
//! * the F1-zeta `∏_k (t - k)^(-a_k)`, kept as an exact exponent map;
//! * the local factor over `F_p`, `∏_k (1 - p^k T)^(-a_k)` with `T = p^(-s)`,
//!   and the point-counting series `exp(Σ_m N(p^m) T^m / m)`, both as exact
//!   truncated power series;
//! * the symbolic arithmetic zeta `∏_k ζ(s - k)^(a_k)`;
//! * a floating-point check of the `p → 1` limit.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::poly::LPolynomial;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZetaError {
    #[error("s = {0} is a zero or pole of the zeta function")]
    Pole(f64),
    #[error("p must exceed 1, got {0}")]
    BadBase(f64),
}

/// F1-zeta `∏_k (t - k)^(-a_k)` stored as the exponent map `k ↦ a_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ZetaF1 {
    exponents: BTreeMap<usize, BigInt>,
}

impl ZetaF1 {
    /// Builds from `(k, a_k)` pairs, summing repeats and dropping zeros.
    pub fn from_exponents(pairs: impl IntoIterator<Item = (usize, BigInt)>) -> Self {
        let mut exponents: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (k, a) in pairs {
            *exponents.entry(k).or_default() += a;
        }
        exponents.retain(|_, a| !a.is_zero());
        Self { exponents }
    }

    pub fn exponents(&self) -> &BTreeMap<usize, BigInt> {
        &self.exponents
    }

    /// Multiplicity `a_k` of the root `k` (pole order when positive).
    pub fn multiplicity(&self, k: usize) -> BigInt {
        self.exponents.get(&k).cloned().unwrap_or_default()
    }

    /// `Σ a_k`, the Euler characteristic.
    pub fn euler_characteristic(&self) -> BigInt {
        self.exponents.values().sum()
    }

    /// The counting polynomial `Σ a_k L^k` this zeta function was read from.
    pub fn to_polynomial(&self) -> LPolynomial {
        self.exponents
            .iter()
            .map(|(&k, a)| LPolynomial::monomial(a.clone(), k))
            .sum()
    }

    /// `∏ (s - k)^(-a_k)` in double precision.
    pub fn value(&self, s: f64) -> Result<f64, ZetaError> {
        let mut v = 1.0;
        for (&k, a) in &self.exponents {
            let base = s - k as f64;
            if base == 0.0 {
                return Err(ZetaError::Pole(s));
            }
            v *= base.powf(-to_f64(a));
        }
        Ok(v)
    }

    /// Renders as a quotient in `t`, e.g. `1/(t(t−1)(t−2))` or `(t−1)/t^2`.
    pub fn render(&self) -> String {
        let factor = |k: usize, e: &BigInt| {
            let base = if k == 0 { "t".to_string() } else { format!("(t−{k})") };
            if e.is_one() {
                base
            } else {
                format!("{base}^{e}")
            }
        };
        let num: Vec<String> = self
            .exponents
            .iter()
            .filter(|(_, a)| a.is_negative())
            .map(|(&k, a)| factor(k, &-a))
            .collect();
        let den: Vec<String> = self
            .exponents
            .iter()
            .filter(|(_, a)| a.is_positive())
            .map(|(&k, a)| factor(k, a))
            .collect();
        quotient(&num, &den)
    }
}

fn quotient(num: &[String], den: &[String]) -> String {
    let top = if num.is_empty() { "1".to_string() } else { num.concat() };
    match den.len() {
        0 => top,
        1 => format!("{top}/{}", den[0]),
        _ => format!("{top}/({})", den.concat()),
    }
}

fn to_f64(a: &BigInt) -> f64 {
    a.to_f64().expect("finite exponent")
}

/// Reads `k ↦ a_k` off `p = Σ a_k L^k`.
pub fn zeta_from_polynomial(p: &LPolynomial) -> ZetaF1 {
    ZetaF1::from_exponents(p.terms().map(|(k, a)| (k, a.clone())))
}

/// `Σ_k a_k`, i.e. the number of points "over F1".
pub fn euler_characteristic(p: &LPolynomial) -> BigInt {
    p.coeff_sum()
}

/// Truncated power series `c_0 + c_1 T + … + c_M T^M` with rational
/// coefficients; products and exponentials are exact up to `T^M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); order + 1];
        coeffs[0] = BigRational::one();
        Self { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "order is at least 0");
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = self.order().min(other.order());
        let mut out = vec![BigRational::zero(); m + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(m + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(m + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// `exp(f)` for `f` with zero constant term, via `E' = f' E`.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "exp needs a zero constant term");
        let m = self.order();
        let mut e = vec![BigRational::zero(); m + 1];
        e[0] = BigRational::one();
        for n in 1..=m {
            // n e_n = Σ_{k=1..n} k f_k e_{n-k}
            let mut acc = BigRational::zero();
            for k in 1..=n {
                acc += BigRational::from_integer(k.into()) * &self.coeffs[k] * &e[n - k];
            }
            e[n] = acc / BigRational::from_integer(n.into());
        }
        Self { coeffs: e }
    }

    /// `log(f)` for `f` with constant term 1, via `f L' = f'`.
    pub fn log(&self) -> Self {
        assert!(self.coeffs[0].is_one(), "log needs constant term 1");
        let m = self.order();
        let mut l = vec![BigRational::zero(); m + 1];
        for n in 1..=m {
            // n l_n = n f_n - Σ_{k=1..n-1} k l_k f_{n-k}
            let mut acc = BigRational::from_integer(n.into()) * &self.coeffs[n];
            for (k, lk) in l.iter().enumerate().take(n).skip(1) {
                acc -= BigRational::from_integer(k.into()) * lk * &self.coeffs[n - k];
            }
            l[n] = acc / BigRational::from_integer(n.into());
        }
        Self { coeffs: l }
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

/// `(1 - x T)^(-a)` truncated at `order`.
fn geometric_power(x: &BigInt, a: &BigInt, order: usize) -> PowerSeries {
    let x = BigRational::from_integer(x.clone());
    let mut out = PowerSeries::one(order);
    if a.is_positive() {
        let mut geo = vec![BigRational::one(); order + 1];
        for j in 1..=order {
            geo[j] = &geo[j - 1] * &x;
        }
        let geo = PowerSeries::from_coeffs(geo);
        for _ in 0..a.to_u64().expect("small exponent") {
            out = out.mul(&geo);
        }
    } else {
        let mut lin = vec![BigRational::zero(); order + 1];
        lin[0] = BigRational::one();
        if order >= 1 {
            lin[1] = -x;
        }
        let lin = PowerSeries::from_coeffs(lin);
        for _ in 0..(-a).to_u64().expect("small exponent") {
            out = out.mul(&lin);
        }
    }
    out
}

/// Euler factor `∏_k (1 - p^k T)^(-a_k)` expanded to `T^order`.
pub fn local_zeta_series(p: &LPolynomial, prime: u64, order: usize) -> PowerSeries {
    let base = BigInt::from(prime);
    p.terms().fold(PowerSeries::one(order), |acc, (k, a)| {
        acc.mul(&geometric_power(&num_traits::pow(base.clone(), k), a, order))
    })
}

/// `exp(Σ_{m=1..order} N(p^m) T^m / m)`.
pub fn counting_series(p: &LPolynomial, prime: u64, order: usize) -> PowerSeries {
    let base = BigInt::from(prime);
    let mut f = vec![BigRational::zero(); order + 1];
    let mut q = BigInt::one();
    for (m, c) in f.iter_mut().enumerate().skip(1) {
        q *= &base;
        *c = BigRational::new(p.eval(&q), BigInt::from(m));
    }
    PowerSeries::from_coeffs(f).exp()
}

/// Symbol set for [`render_arithmetic_zeta`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ZetaStyle {
    #[default]
    Unicode,
    Ascii,
}

/// `∏_k ζ(s - k)^(a_k)` as text, factors by ascending `k`, negative
/// exponents in the denominator, e.g. `ζ(s)ζ(s−1)` or `ζ(s−1)/ζ(s)`.
pub fn render_arithmetic_zeta(p: &LPolynomial, style: ZetaStyle) -> String {
    let (zeta, minus) = match style {
        ZetaStyle::Unicode => ("ζ", "−"),
        ZetaStyle::Ascii => ("zeta", "-"),
    };
    let factor = |k: usize, e: &BigInt| {
        let mut f = if k == 0 {
            format!("{zeta}(s)")
        } else {
            format!("{zeta}(s{minus}{k})")
        };
        if !e.is_one() {
            let _ = write!(f, "^{e}");
        }
        f
    };
    let num: Vec<String> = p
        .terms()
        .filter(|(_, a)| a.is_positive())
        .map(|(k, a)| factor(k, a))
        .collect();
    let den: Vec<String> = p
        .terms()
        .filter(|(_, a)| a.is_negative())
        .map(|(k, a)| factor(k, &-a))
        .collect();
    quotient(&num, &den)
}

/// `ζ_{X|F_p}(s) · (p-1)^{χ}` with `ζ_{X|F_p}(s) = ∏ (1 - p^(k-s))^(-a_k)`
/// and `χ = Σ a_k`. Tends to `z.value(s)` as `p → 1`, with error `O(p - 1)`.
pub fn limit_check(z: &ZetaF1, s: f64, p: f64) -> Result<f64, ZetaError> {
    if p.is_nan() || p <= 1.0 {
        return Err(ZetaError::BadBase(p));
    }
    let ln_p = (p - 1.0).ln_1p();
    let mut v = 1.0;
    for (&k, a) in z.exponents() {
        let d = s - k as f64;
        if d == 0.0 {
            return Err(ZetaError::Pole(s));
        }
        // 1 - p^(k-s), divided by (p-1) so the (p-1)^χ factor is absorbed
        let factor = -(-d * ln_p).exp_m1() / (p - 1.0);
        v *= factor.powf(-to_f64(a));
    }
    Ok(v)
}
