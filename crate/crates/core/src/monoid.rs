//! Finitely presented pointed commutative monoids ("F1-rings"), their prime
//! spectra, localizations, and point counts after base extension.
//!
//! A presentation lists generators and monomial relations `m1 = m2`, where a
//! side may also be the constant `0` or `1`:
//!
//! ```text
//! gens x y; rel x*y = 1;
//! ```
//!
//! Every monoid carries an absorbing zero, so every ideal contains `0` and
//! the generic point of the spectrum is the zero ideal `{0}`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::arith::{is_prime, prime_power};
use crate::loose_graph::LooseGraph;

/// Default exponent bound for congruence searches.
pub const DEFAULT_BOUND: u32 = 8;
/// Largest generator count accepted by [`hom_count`].
pub const MAX_HOM_GENERATORS: usize = 6;
/// Largest field size accepted by [`hom_count`].
pub const MAX_HOM_FIELD: u64 = 9;
const MAX_SPEC_GENERATORS: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonoidError {
    #[error("presentation syntax: {0}")]
    Parse(String),
    #[error("congruence not decidable with exponents bounded by {bound}")]
    BoundExceeded { bound: u32 },
    #[error("too many generators ({count}, limit {limit})")]
    TooManyGenerators { count: usize, limit: usize },
    #[error("{0} is not a prime power no larger than {MAX_HOM_FIELD}")]
    BadField(u64),
    #[error("not a prime of this monoid: {0}")]
    InvalidPrime(String),
    #[error("the monoid is zero and has no prime ideals")]
    ZeroMonoid,
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
}

/// A side of a relation: the zero element or a monomial (exponent vector).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Zero,
    Monomial(Vec<u32>),
}

impl Term {
    pub fn one(n: usize) -> Self {
        Term::Monomial(vec![0; n])
    }

    fn degree_max(&self) -> u32 {
        match self {
            Term::Zero => 0,
            Term::Monomial(e) => e.iter().copied().max().unwrap_or(0),
        }
    }

    fn padded(&self, n: usize) -> Self {
        match self {
            Term::Zero => Term::Zero,
            Term::Monomial(e) => {
                let mut e = e.clone();
                e.resize(n, 0);
                Term::Monomial(e)
            }
        }
    }
}

/// Generators plus monomial relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidPresentation {
    generators: Vec<String>,
    relations: Vec<(Term, Term)>,
}

/// Prime ideal `{0} ∪ ⟨S⟩` named by its generating subset `S`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeIdeal {
    generators: BTreeSet<String>,
}

impl PrimeIdeal {
    pub fn new<I: IntoIterator<Item = S>, S: Into<String>>(gens: I) -> Self {
        Self {
            generators: gens.into_iter().map(Into::into).collect(),
        }
    }

    /// The zero ideal `{0}`, the generic point.
    pub fn zero() -> Self {
        Self::new(Vec::<String>::new())
    }

    pub fn generators(&self) -> &BTreeSet<String> {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    /// Inclusion of ideals.
    pub fn contains_ideal(&self, other: &PrimeIdeal) -> bool {
        other.generators.is_subset(&self.generators)
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("{0}");
        }
        let names: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        write!(f, "({})", names.join(","))
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty()
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !s.starts_with(|c: char| c.is_ascii_digit())
}

impl MonoidPresentation {
    /// `F1[x1..xn]`, the free pointed monoid.
    pub fn free(n: usize) -> Self {
        Self::free_named((1..=n).map(|i| format!("x{i}")))
    }

    pub fn free_named<I: IntoIterator<Item = S>, S: Into<String>>(names: I) -> Self {
        Self {
            generators: names.into_iter().map(Into::into).collect(),
            relations: Vec::new(),
        }
    }

    /// `F1[x,y]/(xy = 1)`, the multiplicative group.
    pub fn torus() -> Self {
        Self::parse("gens x y; rel x*y = 1;").expect("valid")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relations(&self) -> &[(Term, Term)] {
        &self.relations
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Adds a relation between two terms over the current generators.
    pub fn add_relation(&mut self, lhs: Term, rhs: Term) {
        let n = self.generators.len();
        self.relations.push((lhs.padded(n), rhs.padded(n)));
    }

    /// Parses `gens a b c; rel a*b^2 = c; rel c = 0;`.
    pub fn parse(text: &str) -> Result<Self, MonoidError> {
        let mut m = Self::free_named(Vec::<String>::new());
        let mut pending = Vec::new();
        for stmt in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            if let Some(rest) = stmt.strip_prefix("gens") {
                for name in rest.split(|c: char| c.is_whitespace() || c == ',') {
                    if name.is_empty() {
                        continue;
                    }
                    if !valid_name(name) {
                        return Err(MonoidError::Parse(format!("bad generator name `{name}`")));
                    }
                    if m.index_of(name).is_some() {
                        return Err(MonoidError::Parse(format!("duplicate generator `{name}`")));
                    }
                    m.generators.push(name.to_string());
                }
            } else if let Some(rest) = stmt.strip_prefix("rel") {
                let (l, r) = rest
                    .split_once('=')
                    .ok_or_else(|| MonoidError::Parse(format!("relation without `=`: {stmt}")))?;
                pending.push((l.to_string(), r.to_string()));
            } else {
                return Err(MonoidError::Parse(format!("unknown statement `{stmt}`")));
            }
        }
        for (l, r) in pending {
            let lhs = m.parse_term(&l)?;
            let rhs = m.parse_term(&r)?;
            m.relations.push((lhs, rhs));
        }
        Ok(m)
    }

    fn parse_term(&self, s: &str) -> Result<Term, MonoidError> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        match s.as_str() {
            "" => return Err(MonoidError::Parse("empty side of relation".into())),
            "0" => return Ok(Term::Zero),
            "1" => return Ok(Term::one(self.generators.len())),
            _ => {}
        }
        let mut exps = vec![0u32; self.generators.len()];
        for factor in s.split('*') {
            let (name, pow) = match factor.split_once('^') {
                Some((n, p)) => (
                    n,
                    p.parse::<u32>()
                        .map_err(|_| MonoidError::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            let i = self
                .index_of(name)
                .ok_or_else(|| MonoidError::Parse(format!("unknown generator `{name}`")))?;
            exps[i] += pow;
        }
        Ok(Term::Monomial(exps))
    }

    fn render_term(&self, t: &Term) -> String {
        match t {
            Term::Zero => "0".into(),
            Term::Monomial(e) if e.iter().all(|&x| x == 0) => "1".into(),
            Term::Monomial(e) => e
                .iter()
                .zip(&self.generators)
                .filter(|(&x, _)| x > 0)
                .map(|(&x, g)| if x == 1 { g.clone() } else { format!("{g}^{x}") })
                .collect::<Vec<_>>()
                .join("*"),
        }
    }

    /// Value in `F1 = {0, 1}` of a term when the generators in `killed` map
    /// to 0 and all others to 1.
    fn boolean_value(&self, t: &Term, killed: &BTreeSet<usize>) -> bool {
        match t {
            Term::Zero => false,
            Term::Monomial(e) => e.iter().enumerate().all(|(i, &x)| x == 0 || !killed.contains(&i)),
        }
    }

    /// True when `{0} ∪ ⟨S⟩` is a prime: the indicator of its complement is
    /// a monoid map to `{0, 1}`, i.e. every relation has both sides inside
    /// or both outside the ideal.
    fn is_prime_subset(&self, killed: &BTreeSet<usize>) -> bool {
        self.relations
            .iter()
            .all(|(l, r)| self.boolean_value(l, killed) == self.boolean_value(r, killed))
    }

    fn subset_indices(&self, p: &PrimeIdeal) -> Result<BTreeSet<usize>, MonoidError> {
        p.generators
            .iter()
            .map(|g| {
                self.index_of(g)
                    .ok_or_else(|| MonoidError::InvalidPrime(format!("unknown generator `{g}`")))
            })
            .collect()
    }

    /// Congruence class of a term, explored by rewriting with the relations
    /// in both directions while every exponent stays within `bound`.
    pub fn congruence_class(&self, t: &Term, bound: u32) -> CongruenceClass {
        let n = self.generators.len();
        let start = t.padded(n);
        let Term::Monomial(start) = start else {
            return CongruenceClass {
                monomials: HashSet::new(),
                is_zero: true,
                truncated: false,
            };
        };
        let mut seen: HashSet<Vec<u32>> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        let (mut is_zero, mut truncated) = (false, false);
        while let Some(u) = queue.pop_front() {
            for (a, b) in self.relations.iter().flat_map(|(l, r)| [(l, r), (r, l)]) {
                let Term::Monomial(a) = a else { continue };
                if !a.iter().zip(&u).all(|(x, y)| x <= y) {
                    continue;
                }
                match b {
                    Term::Zero => is_zero = true,
                    Term::Monomial(b) => {
                        let v: Vec<u32> = u.iter().zip(a).zip(b).map(|((x, y), z)| x - y + z).collect();
                        if v.iter().any(|&x| x > bound) {
                            truncated = true;
                        } else if seen.insert(v.clone()) {
                            queue.push_back(v);
                        }
                    }
                }
            }
        }
        CongruenceClass {
            monomials: seen,
            is_zero,
            truncated,
        }
    }

    /// Bounded-search membership of a term in the ideal `{0} ∪ ⟨S⟩`.
    pub fn ideal_contains(&self, p: &PrimeIdeal, t: &Term, bound: u32) -> Result<bool, MonoidError> {
        let killed = self.subset_indices(p)?;
        let class = self.congruence_class(t, bound);
        Ok(class.is_zero
            || class
                .monomials
                .iter()
                .any(|e| killed.iter().any(|&i| e[i] > 0)))
    }

    /// Generators that are units, found by searching the class of `1`.
    pub fn unit_generators(&self, bound: u32) -> Result<BTreeSet<String>, MonoidError> {
        let class = self.congruence_class(&Term::one(self.generators.len()), bound);
        if class.is_zero {
            return Err(MonoidError::ZeroMonoid);
        }
        Ok(self
            .generators
            .iter()
            .enumerate()
            .filter(|(i, _)| class.monomials.iter().any(|e| e[*i] > 0))
            .map(|(_, g)| g.clone())
            .collect())
    }
}

impl fmt::Display for MonoidPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens {};", self.generators.join(" "))?;
        for (l, r) in &self.relations {
            write!(f, " rel {} = {};", self.render_term(l), self.render_term(r))?;
        }
        Ok(())
    }
}

/// Result of a bounded congruence search.
#[derive(Clone, Debug)]
pub struct CongruenceClass {
    pub monomials: HashSet<Vec<u32>>,
    /// The class is that of `0`.
    pub is_zero: bool,
    /// Some rewrite left the exponent bound and was not followed.
    pub truncated: bool,
}

fn check_bound(m: &MonoidPresentation, bound: u32) -> Result<(), MonoidError> {
    let max = m
        .relations
        .iter()
        .map(|(l, r)| l.degree_max().max(r.degree_max()))
        .max()
        .unwrap_or(0);
    if max > bound {
        return Err(MonoidError::BoundExceeded { bound });
    }
    Ok(())
}

/// All primes `{0} ∪ ⟨S⟩`, `S` ranging over generator subsets, smallest first.
pub fn spec(m: &MonoidPresentation, bound: u32) -> Result<Vec<PrimeIdeal>, MonoidError> {
    check_bound(m, bound)?;
    let n = m.generators.len();
    if n > MAX_SPEC_GENERATORS {
        return Err(MonoidError::TooManyGenerators {
            count: n,
            limit: MAX_SPEC_GENERATORS,
        });
    }
    let mut out: Vec<PrimeIdeal> = (0u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect::<BTreeSet<usize>>())
        .filter(|s| m.is_prime_subset(s))
        .map(|s| PrimeIdeal::new(s.into_iter().map(|i| m.generators[i].clone())))
        .collect();
    out.sort_by(|a, b| {
        a.generators
            .len()
            .cmp(&b.generators.len())
            .then_with(|| a.generators.cmp(&b.generators))
    });
    Ok(out)
}

/// `M \ M^×`: the prime generated by the generators that are not units.
pub fn maximal_ideal(m: &MonoidPresentation) -> Result<PrimeIdeal, MonoidError> {
    maximal_ideal_bounded(m, DEFAULT_BOUND)
}

pub fn maximal_ideal_bounded(m: &MonoidPresentation, bound: u32) -> Result<PrimeIdeal, MonoidError> {
    check_bound(m, bound)?;
    let units = m.unit_generators(bound)?;
    let ideal = PrimeIdeal::new(m.generators.iter().filter(|g| !units.contains(*g)).cloned());
    // a missed unit would leave a non-prime here
    if !m.is_prime_subset(&m.subset_indices(&ideal)?) {
        return Err(MonoidError::BoundExceeded { bound });
    }
    Ok(ideal)
}

/// Localization at a prime: every generator outside `p` gets an inverse
/// `<g>_inv` with `g * <g>_inv = 1`.
pub fn localize(m: &MonoidPresentation, p: &PrimeIdeal) -> Result<MonoidPresentation, MonoidError> {
    let killed = m.subset_indices(p)?;
    if !m.is_prime_subset(&killed) {
        return Err(MonoidError::InvalidPrime(p.to_string()));
    }
    let mut out = m.clone();
    let old: Vec<String> = m.generators.clone();
    for (i, g) in old.iter().enumerate() {
        if killed.contains(&i) {
            continue;
        }
        let mut name = format!("{g}_inv");
        while out.index_of(&name).is_some() {
            name.push('_');
        }
        out.generators.push(name);
        let n = out.generators.len();
        for (l, r) in out.relations.iter_mut() {
            *l = l.padded(n);
            *r = r.padded(n);
        }
        let mut prod = vec![0; n];
        prod[i] = 1;
        prod[n - 1] = 1;
        out.relations.push((Term::Monomial(prod), Term::one(n)));
    }
    Ok(out)
}

/// How the multiplicative monoid of `F_q` is realized in [`hom_count_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldModel {
    /// Residues mod a prime `q` with modular multiplication.
    PrimeResidues,
    /// `{0} ∪ C_(q-1)`: 0 is zero, `i >= 1` stands for `α^(i-1)`.
    CyclicExponents,
}

/// Number of monoid maps `m → (F_q, ·)` fixing 0 and 1. Prime `q` uses
/// residues, prime powers the cyclic exponent model.
pub fn hom_count(m: &MonoidPresentation, q: u64) -> Result<u64, MonoidError> {
    let model = if is_prime(q) {
        FieldModel::PrimeResidues
    } else {
        FieldModel::CyclicExponents
    };
    hom_count_with(m, q, model)
}

pub fn hom_count_with(m: &MonoidPresentation, q: u64, model: FieldModel) -> Result<u64, MonoidError> {
    if q > MAX_HOM_FIELD || prime_power(q).is_none() {
        return Err(MonoidError::BadField(q));
    }
    if model == FieldModel::PrimeResidues && !is_prime(q) {
        return Err(MonoidError::BadField(q));
    }
    let n = m.generators.len();
    if n > MAX_HOM_GENERATORS {
        return Err(MonoidError::TooManyGenerators {
            count: n,
            limit: MAX_HOM_GENERATORS,
        });
    }
    let eval = |t: &Term, x: &[u64]| -> u64 {
        match (t, model) {
            (Term::Zero, _) => 0,
            (Term::Monomial(e), FieldModel::PrimeResidues) => e
                .iter()
                .zip(x)
                .fold(1, |acc, (&k, &v)| acc * pow_mod(v, k, q) % q),
            (Term::Monomial(e), FieldModel::CyclicExponents) => {
                let mut log = 0;
                for (&k, &v) in e.iter().zip(x) {
                    if k == 0 {
                        continue;
                    }
                    if v == 0 {
                        return 0;
                    }
                    log = (log + (v - 1) * k as u64) % (q - 1);
                }
                log + 1
            }
        }
    };
    let mut x = vec![0u64; n];
    let mut count = 0;
    loop {
        if m.relations.iter().all(|(l, r)| eval(l, &x) == eval(r, &x)) {
            count += 1;
        }
        // odometer over F_q^n
        let mut i = 0;
        loop {
            if i == n {
                return Ok(count);
            }
            x[i] += 1;
            if x[i] < q {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

fn pow_mod(base: u64, exp: u32, m: u64) -> u64 {
    (0..exp).fold(1 % m, |acc, _| acc * base % m)
}

/// Local chart at a vertex: the free monoid on the edges incident to `v`.
pub fn coordinate_monoid(g: &LooseGraph, v: &str) -> Result<MonoidPresentation, MonoidError> {
    if !g.vertices().contains(v) {
        return Err(MonoidError::UnknownVertex(v.to_string()));
    }
    Ok(MonoidPresentation::free_named(
        g.edges()
            .filter(|(_, e)| e.contains(v))
            .map(|(t, _)| t.to_string()),
    ))
}
