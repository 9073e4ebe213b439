//! Dense univariate polynomials with arbitrary-precision integer coefficients.
//!
//! The same type serves as the class in `Z[L]` (indeterminate `L`, the class of
//! the affine line) and as a q-analog in `Z[q]`; only the rendered variable
//! name differs.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Integer polynomial stored as ascending coefficients with no trailing zeros.
///
/// The zero polynomial has an empty coefficient vector and degree `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

/// Class in the Grothendieck subring `Z[L]`.
pub type LPolynomial = Polynomial;
/// Polynomial in the q-analog indeterminate `q`.
pub type QPolynomial = Polynomial;

impl Polynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// The indeterminate itself (`L` or `q`).
    pub fn var() -> Self {
        Self::monomial(1, 1)
    }

    /// `c · X^k`.
    pub fn monomial(c: impl Into<BigInt>, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Self::from_coeffs(coeffs)
    }

    /// Builds from ascending coefficients; trailing zeros are dropped.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Ascending coefficients, `coeffs()[k]` is the coefficient of `X^k`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Nonzero terms `(k, a_k)` in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Exact value at an integer.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Sum of the coefficients, i.e. the value at 1.
    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Quotient and remainder for a divisor whose leading coefficient divides
    /// every intermediate leading coefficient. Returns `None` on a zero divisor
    /// or when the division leaves the integers.
    pub fn div_rem(&self, divisor: &Self) -> Option<(Self, Self)> {
        let dlead = divisor.leading_coeff()?;
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(ddeg)];
        while rem.len() > ddeg && !rem.is_empty() {
            let top = rem.len() - 1;
            let lead = rem[top].clone();
            if !lead.is_zero() {
                let (q, r) = lead.div_rem(dlead);
                if !r.is_zero() {
                    return None;
                }
                let shift = top - ddeg;
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] -= &q * d;
                }
                quot[shift] = q;
            }
            rem.pop();
        }
        Some((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Exact quotient, `None` if the division is not exact over `Z`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem(divisor)? {
            (q, r) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Renders in descending degree with the given variable name,
    /// e.g. `q^4+q^3+2q^2+q+1`.
    pub fn display_var<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        VarDisplay { poly: self, var }
    }
}

struct VarDisplay<'a> {
    poly: &'a Polynomial,
    var: &'a str,
}

impl fmt::Display for VarDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.poly.terms().collect::<Vec<_>>().into_iter().rev() {
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            if k == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str(self.var)?;
            if k > 1 {
                write!(f, "^{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_var("L").fmt(f)
    }
}

fn zip_with(a: &[BigInt], b: &[BigInt], op: impl Fn(&mut BigInt, &BigInt)) -> Polynomial {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigInt::zero());
    }
    for (o, x) in out.iter_mut().zip(b) {
        op(o, x);
    }
    Polynomial::from_coeffs(out)
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        zip_with(&self.coeffs, &rhs.coeffs, |o, x| *o += x)
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        zip_with(&self.coeffs, &rhs.coeffs, |o, x| *o -= x)
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                self.$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        *self = &*self - rhs;
    }
}

impl std::iter::Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Self {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}
