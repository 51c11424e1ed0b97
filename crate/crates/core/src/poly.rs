//! Sparse multivariate polynomials over F_p with weighted multi-gradings.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::error::AlgebraError;
use crate::field::Prime;
use crate::monomial::Monomial;

/// Ordered, named variables with one weight vector per variable.
///
/// Each weight vector has one entry per grading component; a product of `k`
/// weighted projective spaces carries `k` components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Vec<String>,
    weights: Vec<Vec<u32>>,
}

impl VariableSet {
    pub fn new(names: Vec<String>, weights: Vec<Vec<u32>>) -> Result<Self, AlgebraError> {
        let bad = |m: String| Err(AlgebraError::InvalidVariables(m));
        if names.len() != weights.len() {
            return bad(format!("{} names but {} weights", names.len(), weights.len()));
        }
        let ncomp = weights.first().map_or(1, Vec::len);
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return bad(format!("`{n}` is not an identifier"));
            }
            if names[..i].contains(n) {
                return bad(format!("duplicate variable `{n}`"));
            }
            let w = &weights[i];
            if w.len() != ncomp || ncomp == 0 {
                return bad(format!("variable `{n}` has {} grading components, expected {ncomp}", w.len()));
            }
            if w.iter().all(|&c| c == 0) {
                return bad(format!("variable `{n}` has no positive weight"));
            }
        }
        Ok(VariableSet { names, weights })
    }

    /// Singly graded variables, all of weight one.
    pub fn standard<S: AsRef<str>>(names: &[S]) -> Result<Self, AlgebraError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let weights = vec![vec![1]; names.len()];
        Self::new(names, weights)
    }

    /// Singly graded variables with the given weights.
    pub fn weighted<S: AsRef<str>>(names: &[S], weights: &[u32]) -> Result<Self, AlgebraError> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        Self::new(names, weights.iter().map(|&w| vec![w]).collect())
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn components(&self) -> usize {
        self.weights.first().map_or(1, Vec::len)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn weight(&self, i: usize) -> &[u32] {
        &self.weights[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Weighted multidegree of a monomial.
    pub fn degree_of(&self, m: &Monomial) -> Vec<u64> {
        let mut d = vec![0u64; self.components()];
        for (e, w) in m.exponents().iter().zip(&self.weights) {
            for (dc, wc) in d.iter_mut().zip(w) {
                *dc += *e as u64 * *wc as u64;
            }
        }
        d
    }

    /// A copy with a fresh variable prepended at index 0. The new variable
    /// gets weight one in every component; its name avoids collisions.
    pub fn with_fresh_first(&self, stem: &str) -> VariableSet {
        let mut name = stem.to_string();
        while self.names.contains(&name) {
            name.push('_');
        }
        let mut names = vec![name];
        names.extend(self.names.iter().cloned());
        let mut weights = vec![vec![1; self.components()]];
        weights.extend(self.weights.iter().cloned());
        VariableSet { names, weights }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.names[i], e)),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A polynomial over F_p. Coefficients are stored as canonical
/// representatives in `0..p` and are never zero.
#[derive(Clone, Debug)]
pub struct Polynomial {
    p: Prime,
    vars: Arc<VariableSet>,
    terms: BTreeMap<Monomial, u32>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl Polynomial {
    pub fn zero(p: Prime, vars: Arc<VariableSet>) -> Self {
        Polynomial { p, vars, terms: BTreeMap::new() }
    }

    pub fn constant(p: Prime, vars: Arc<VariableSet>, c: u64) -> Self {
        let n = vars.len();
        Self::from_terms(p, vars, [(Monomial::one(n), c)])
    }

    pub fn one(p: Prime, vars: Arc<VariableSet>) -> Self {
        Self::constant(p, vars, 1)
    }

    pub fn variable(p: Prime, vars: Arc<VariableSet>, i: usize) -> Self {
        let n = vars.len();
        Self::from_terms(p, vars, [(Monomial::var(n, i, 1), 1)])
    }

    /// Builds a polynomial from (monomial, coefficient) pairs, combining
    /// repeated monomials and reducing coefficients mod p.
    pub fn from_terms<I>(p: Prime, vars: Arc<VariableSet>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, u64)>,
    {
        let mut map: BTreeMap<Monomial, u32> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len(), "monomial length does not match variable count");
            let c = p.reduce(c);
            if c == 0 {
                continue;
            }
            let e = map.entry(m).or_insert(0);
            *e = p.add(*e, c);
        }
        map.retain(|_, c| *c != 0);
        Polynomial { p, vars, terms: map }
    }

    pub(crate) fn from_map(p: Prime, vars: Arc<VariableSet>, terms: BTreeMap<Monomial, u32>) -> Self {
        debug_assert!(terms.values().all(|&c| c != 0 && c < p.get()));
        Polynomial { p, vars, terms }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn same_ring(&self, other: &Polynomial) -> bool {
        self.p == other.p && (Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), AlgebraError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Nonzero constant polynomial.
    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u32)> + '_ {
        self.terms.iter().rev().map(|(m, &c)| (m, c))
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> + '_ {
        self.terms.keys().rev()
    }

    /// Grevlex-leading term.
    pub fn leading_term(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let c = c % self.p.get();
        if c == 0 {
            return Polynomial::zero(self.p, self.vars.clone());
        }
        let terms = self.terms.iter().map(|(m, &a)| (m.clone(), self.p.mul(a, c))).collect();
        Polynomial { p: self.p, vars: self.vars.clone(), terms }
    }

    /// Monic rescaling; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Polynomial {
        match self.leading_term() {
            Some((_, c)) => self.scale(self.p.inv(c)),
            None => self.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> Result<Polynomial, AlgebraError> {
        let mut terms = BTreeMap::new();
        let c = c % self.p.get();
        if c != 0 {
            for (t, &a) in &self.terms {
                terms.insert(t.mul(m)?, self.p.mul(a, c));
            }
        }
        Ok(Polynomial { p: self.p, vars: self.vars.clone(), terms })
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, &c) in &other.terms {
            match terms.get_mut(m) {
                Some(a) => {
                    *a = self.p.add(*a, c);
                    if *a == 0 {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c);
                }
            }
        }
        Ok(Polynomial { p: self.p, vars: self.vars.clone(), terms })
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.try_add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        let map = mul_raw(&self.terms, &other.terms, self.p.get() as u64, None)?;
        Ok(self.with_raw(map))
    }

    /// Product in `S / (x_i^q : all i)`: terms with any exponent `>= q` are dropped.
    pub fn mul_truncated(&self, other: &Polynomial, q: u32) -> Result<Polynomial, AlgebraError> {
        self.check_ring(other)?;
        let map = mul_raw(&self.terms, &other.terms, self.p.get() as u64, Some(q))?;
        Ok(self.with_raw(map))
    }

    fn with_raw(&self, map: HashMap<Monomial, u64>) -> Polynomial {
        let p = self.p;
        let terms = map
            .into_iter()
            .filter_map(|(m, c)| {
                let c = p.reduce(c);
                (c != 0).then_some((m, c))
            })
            .collect();
        Polynomial { p, vars: self.vars.clone(), terms }
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, e: u64) -> Result<Polynomial, AlgebraError> {
        self.pow_inner(e, None)
    }

    /// Canonical representative of `self^e` in `S / (x_i^q : all i)`, where
    /// `q` must be a positive power of the characteristic. Reduction is
    /// applied after every intermediate product.
    pub fn pow_mod_frobenius(&self, e: u64, q: u64) -> Result<Polynomial, AlgebraError> {
        if self.p.log_of_power(q).is_none() {
            return Err(AlgebraError::NotPrimePower { q, p: self.p.get() });
        }
        self.pow_inner(e, Some(q.min(u32::MAX as u64) as u32))
    }

    fn pow_inner(&self, mut e: u64, trunc: Option<u32>) -> Result<Polynomial, AlgebraError> {
        let modulus = self.p.get() as u64;
        let truncate = |t: BTreeMap<Monomial, u32>| match trunc {
            Some(q) => t.into_iter().filter(|(m, _)| m.below(q)).collect(),
            None => t,
        };
        let mut base = truncate(self.terms.clone());
        let mut acc = truncate(Polynomial::one(self.p, self.vars.clone()).terms);
        let norm = |map: HashMap<Monomial, u64>| -> BTreeMap<Monomial, u32> {
            map.into_iter()
                .filter_map(|(m, c)| {
                    let c = (c % modulus) as u32;
                    (c != 0).then_some((m, c))
                })
                .collect()
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = norm(mul_raw(&acc, &base, modulus, trunc)?);
            }
            e >>= 1;
            if e > 0 {
                base = norm(mul_raw(&base, &base, modulus, trunc)?);
            }
        }
        Ok(Polynomial { p: self.p, vars: self.vars.clone(), terms: acc })
    }

    /// Deletes every term divisible by some `x_i^q`.
    pub fn truncate_frobenius(&self, q: u32) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.below(q)).map(|(m, &c)| (m.clone(), c)).collect();
        Polynomial { p: self.p, vars: self.vars.clone(), terms }
    }

    /// Common weighted multidegree of all terms.
    pub fn weighted_degree(&self) -> Result<Vec<u64>, AlgebraError> {
        let mut it = self.terms.keys();
        let first = it.next().ok_or(AlgebraError::ZeroPolynomial)?;
        let d = self.vars.degree_of(first);
        for m in it {
            if self.vars.degree_of(m) != d {
                return Err(AlgebraError::NonHomogeneous {
                    first: self.vars.format_monomial(first),
                    second: self.vars.format_monomial(m),
                });
            }
        }
        Ok(d)
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let p = self.p;
        let terms = self.terms.iter().filter_map(|(m, &c)| {
            let e = m.exponents()[i];
            if e == 0 {
                return None;
            }
            let c = p.mul(c, p.reduce(e as u64));
            if c == 0 {
                return None;
            }
            let mut v = m.exponents().to_vec();
            v[i] -= 1;
            Some((Monomial::new(v), c))
        });
        Polynomial { p, vars: self.vars.clone(), terms: terms.collect() }
    }

    /// Substitutes zero for every variable in `zeroed`.
    pub fn restrict_zero(&self, zeroed: &[usize]) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| zeroed.iter().all(|&i| m.exponents()[i] == 0))
            .map(|(m, &c)| (m.clone(), c))
            .collect();
        Polynomial { p: self.p, vars: self.vars.clone(), terms }
    }

    /// Moves the polynomial into a larger ring: variable `i` becomes
    /// variable `map[i]` of `target`.
    pub fn embed(&self, target: Arc<VariableSet>, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.vars.len());
        let n = target.len();
        let terms = self
            .terms
            .iter()
            .map(|(m, &c)| {
                let mut v = vec![0u16; n];
                for (i, &e) in m.exponents().iter().enumerate() {
                    v[map[i]] = e;
                }
                (Monomial::new(v), c)
            })
            .collect();
        Polynomial { p: self.p, vars: target, terms }
    }

    /// Inverse of [`Polynomial::embed`]: returns `None` when some term uses a
    /// variable of `self` that `map` does not send anywhere.
    pub fn project(&self, target: Arc<VariableSet>, map: &[Option<usize>]) -> Option<Polynomial> {
        assert_eq!(map.len(), self.vars.len());
        let n = target.len();
        let mut terms = BTreeMap::new();
        for (m, &c) in &self.terms {
            let mut v = vec![0u16; n];
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    v[map[i]?] = e;
                }
            }
            terms.insert(Monomial::new(v), c);
        }
        Some(Polynomial { p: self.p, vars: target, terms })
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if !self.same_ring(divisor) {
            return None;
        }
        let (lm, lc) = divisor.leading_term()?;
        let (lm, inv) = (lm.clone(), self.p.inv(lc));
        let mut rest = self.clone();
        let mut quotient = BTreeMap::new();
        while let Some((m, c)) = rest.leading_term() {
            let q = m.div(&lm)?;
            let qc = self.p.mul(c, inv);
            rest = rest.try_sub(&divisor.mul_monomial(&q, qc).ok()?).ok()?;
            quotient.insert(q, qc);
        }
        Some(Polynomial { p: self.p, vars: self.vars.clone(), terms: quotient })
    }
}

/// Schoolbook product of two term maps with coefficients mod `modulus`,
/// optionally truncated at exponent `q`. Coefficients in the result are
/// unreduced sums of reduced products.
pub(crate) fn mul_raw<C: Copy + Into<u64>>(
    a: &BTreeMap<Monomial, C>,
    b: &BTreeMap<Monomial, C>,
    modulus: u64,
    trunc: Option<u32>,
) -> Result<HashMap<Monomial, u64>, AlgebraError> {
    let mut out: HashMap<Monomial, u64> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    for (ma, &ca) in small {
        let ca: u64 = ca.into();
        'inner: for (mb, &cb) in large {
            let mut v = Vec::with_capacity(ma.len());
            for (&x, &y) in ma.exponents().iter().zip(mb.exponents()) {
                let s = x as u32 + y as u32;
                if let Some(q) = trunc {
                    if s >= q {
                        continue 'inner;
                    }
                }
                v.push(u16::try_from(s).map_err(|_| AlgebraError::ExponentOverflow)?);
            }
            let prod = ca * cb.into() % modulus;
            let slot = out.entry(Monomial::new(v)).or_insert(0);
            *slot += prod;
            if *slot >= 1 << 62 {
                *slot %= modulus;
            }
        }
    }
    Ok(out)
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let p = self.p;
        let terms = self.terms.iter().map(|(m, &c)| (m.clone(), p.neg(c))).collect();
        Polynomial { p, vars: self.vars.clone(), terms }
    }
}

impl Polynomial {
    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Polynomial {
        -self
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    /// Panics if the operands live in different rings.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("adding polynomials from different rings")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    /// Panics if the operands live in different rings.
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("subtracting polynomials from different rings")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c == 1 {
                f.write_str(&self.vars.format_monomial(m))?;
            } else {
                write!(f, "{c}*{}", self.vars.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(names: &[&str]) -> Arc<VariableSet> {
        Arc::new(VariableSet::standard(names).unwrap())
    }

    fn x_plus_y(p: u32) -> Polynomial {
        let vars = ring(&["x", "y"]);
        let p = Prime::new(p).unwrap();
        &Polynomial::variable(p, vars.clone(), 0) + &Polynomial::variable(p, vars, 1)
    }

    #[test]
    fn variable_set_validation() {
        assert!(VariableSet::standard(&["x", "x"]).is_err());
        assert!(VariableSet::standard(&["1x"]).is_err());
        assert!(VariableSet::new(vec!["x".into()], vec![vec![0]]).is_err());
        assert!(VariableSet::new(vec!["x".into(), "y".into()], vec![vec![1, 0], vec![1]]).is_err());
    }

    #[test]
    fn frobenius_in_char_two_and_three() {
        let f = x_plus_y(2);
        assert_eq!(f.pow(2).unwrap().to_string(), "x^2 + y^2");
        let g = x_plus_y(3);
        assert_eq!(g.pow(3).unwrap().to_string(), "x^3 + y^3");
        assert_eq!(g.pow(0).unwrap().to_string(), "1");
    }

    #[test]
    fn pow_mod_frobenius_on_a_variable() {
        for p in [2, 3, 5, 7] {
            let vars = ring(&["x0"]);
            let pr = Prime::new(p).unwrap();
            let x = Polynomial::variable(pr, vars, 0);
            let r = x.pow_mod_frobenius((p - 1) as u64, p as u64).unwrap();
            assert_eq!(r.num_terms(), 1);
            assert_eq!(r.leading_term().unwrap().0.exponents(), &[(p - 1) as u16]);
        }
    }

    #[test]
    fn pow_mod_frobenius_rejects_non_powers() {
        let f = x_plus_y(3);
        assert!(matches!(f.pow_mod_frobenius(2, 6), Err(AlgebraError::NotPrimePower { .. })));
    }

    #[test]
    fn weighted_degree_errors() {
        let vars = ring(&["x0", "x1"]);
        let p = Prime::new(5).unwrap();
        let f =
            Polynomial::from_terms(p, vars.clone(), [(Monomial::new(vec![1, 0]), 1), (Monomial::new(vec![0, 2]), 1)]);
        assert!(matches!(f.weighted_degree(), Err(AlgebraError::NonHomogeneous { .. })));
        assert_eq!(Polynomial::zero(p, vars).weighted_degree(), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn derivative_kills_pth_powers() {
        let f = x_plus_y(3).pow(3).unwrap();
        assert!(f.derivative(0).is_zero());
    }

    #[test]
    fn exact_division() {
        let f = x_plus_y(5);
        let sq = f.mul(&f).unwrap();
        assert_eq!(sq.div_exact(&f), Some(f.clone()));
        let x = Polynomial::variable(Prime::new(5).unwrap(), f.vars().clone(), 0);
        assert_eq!(f.div_exact(&x), None);
    }

    #[test]
    fn exponent_overflow_is_reported() {
        let vars = ring(&["x"]);
        let p = Prime::new(2).unwrap();
        let x = Polynomial::variable(p, vars, 0);
        assert_eq!(x.pow(70_000), Err(AlgebraError::ExponentOverflow));
    }
}
