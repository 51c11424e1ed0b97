//! Integer intersection theory on `P^{n_1} × ⋯ × P^{n_k}` and on split
//! projective bundles `P(⊕_j O(a_j))` over such products.
//!
//! The Chow ring is `Z[h_1, ..., h_k, ξ] / (h_i^{n_i+1}, Π_j (ξ − a_j·h))`
//! where `ξ = c_1(O_P(1))` and `O_P(1)` restricts to `O(a_j)` on the section
//! `P(O(a_j))`. The degree map sends `h_1^{n_1} ⋯ h_k^{n_k} ξ^{r-1}` to 1.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ChowError;
use crate::parse::{tokenize, Lexeme, Token};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductBase {
    dims: Vec<usize>,
}

impl ProductBase {
    pub fn new(dims: Vec<usize>) -> Result<Self, ChowError> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(ChowError::InvalidRing("need at least one factor, each of dimension >= 1".into()));
        }
        Ok(ProductBase { dims })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn factors(&self) -> usize {
        self.dims.len()
    }
}

/// `E = ⊕_j O(a_j)` over a [`ProductBase`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitBundleSpec {
    twists: Vec<Vec<i64>>,
}

impl SplitBundleSpec {
    pub fn new(base: &ProductBase, twists: Vec<Vec<i64>>) -> Result<Self, ChowError> {
        if twists.is_empty() {
            return Err(ChowError::InvalidRing("bundle needs at least one summand".into()));
        }
        if let Some(t) = twists.iter().find(|t| t.len() != base.factors()) {
            return Err(ChowError::ClassLength { expected: base.factors(), got: t.len() });
        }
        Ok(SplitBundleSpec { twists })
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[Vec<i64>] {
        &self.twists
    }
}

/// A divisor class `Σ c_i h_i (+ c_ξ ξ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivClass {
    pub h: Vec<i64>,
    pub xi: Option<i64>,
}

impl DivClass {
    pub fn base(h: Vec<i64>) -> Self {
        DivClass { h, xi: None }
    }

    pub fn with_xi(h: Vec<i64>, xi: i64) -> Self {
        DivClass { h, xi: Some(xi) }
    }

    pub fn checked_add(&self, other: &DivClass) -> Result<DivClass, ChowError> {
        if self.h.len() != other.h.len() || self.xi.is_some() != other.xi.is_some() {
            return Err(ChowError::ClassLength { expected: self.h.len(), got: other.h.len() });
        }
        let h = self
            .h
            .iter()
            .zip(&other.h)
            .map(|(a, b)| a.checked_add(*b).ok_or(ChowError::Overflow))
            .collect::<Result<_, _>>()?;
        let xi = match (self.xi, other.xi) {
            (Some(a), Some(b)) => Some(a.checked_add(b).ok_or(ChowError::Overflow)?),
            _ => None,
        };
        Ok(DivClass { h, xi })
    }

    pub fn checked_scale(&self, c: i64) -> Result<DivClass, ChowError> {
        let h = self.h.iter().map(|a| a.checked_mul(c).ok_or(ChowError::Overflow)).collect::<Result<_, _>>()?;
        let xi = self.xi.map(|a| a.checked_mul(c).ok_or(ChowError::Overflow)).transpose()?;
        Ok(DivClass { h, xi })
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(i64, String)> = Vec::new();
        if let Some(x) = self.xi {
            parts.push((x, "xi".into()));
        }
        for (i, &c) in self.h.iter().enumerate() {
            parts.push((c, format!("h{}", i + 1)));
        }
        let mut first = true;
        for (c, name) in parts.into_iter().filter(|(c, _)| *c != 0) {
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.unsigned_abs())?;
            }
            f.write_str(&name)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// An element of the Chow ring; exponent vectors are `(h_1, ..., h_k, ξ)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChowElement {
    terms: BTreeMap<Vec<u32>, i128>,
}

impl ChowElement {
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], i128)> {
        self.terms.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: i128) -> Result<(), ChowError> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.terms.entry(exps.clone()).or_insert(0);
        *slot = slot.checked_add(c).ok_or(ChowError::Overflow)?;
        if *slot == 0 {
            self.terms.remove(&exps);
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &ChowElement) -> Result<ChowElement, ChowError> {
        let mut out = self.clone();
        for (k, &v) in &other.terms {
            out.add_term(k.clone(), v)?;
        }
        Ok(out)
    }

    pub fn checked_neg(&self) -> Result<ChowElement, ChowError> {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| v.checked_neg().map(|n| (k.clone(), n)).ok_or(ChowError::Overflow))
            .collect::<Result<_, _>>()?;
        Ok(ChowElement { terms })
    }
}

impl fmt::Display for ChowElement {
    /// Terms from the highest exponent vector down, e.g. `2*h1*xi^2 - 3*h2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (exps, &c)) in self.terms.iter().rev().enumerate() {
            let k = exps.len() - 1;
            let mut factors = Vec::new();
            for (i, &e) in exps.iter().enumerate() {
                let name = if i == k { "xi".to_string() } else { format!("h{}", i + 1) };
                match e {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if n == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0 { " - " } else { " + " })?;
            }
            let a = c.unsigned_abs();
            match (factors.is_empty(), a) {
                (true, _) => write!(f, "{a}")?,
                (false, 1) => f.write_str(&factors.join("*"))?,
                (false, _) => write!(f, "{a}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

/// The Chow ring of a product of projective spaces, optionally of a split
/// projective bundle over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionRing {
    base: ProductBase,
    bundle: Option<SplitBundleSpec>,
    /// `ξ^r` rewritten in terms of lower powers of `ξ`.
    xi_top: Option<ChowElement>,
}

impl IntersectionRing {
    pub fn product(base: ProductBase) -> Self {
        IntersectionRing { base, bundle: None, xi_top: None }
    }

    pub fn bundle(base: ProductBase, bundle: SplitBundleSpec) -> Result<Self, ChowError> {
        let mut ring = IntersectionRing { base, bundle: None, xi_top: None };
        // Π_j (ξ − α_j), expanded with only the h-truncation applied
        let mut prod = ring.constant(1);
        for t in bundle.twists() {
            let factor = ring.linear(&DivClass::with_xi(t.iter().map(|&a| -a).collect(), 1))?;
            prod = ring.mul_raw(&prod, &factor)?;
        }
        let r = bundle.rank() as u32;
        let mut top = ring.monomial_elem(vec![0; ring.base.factors()], r);
        top = top.checked_add(&prod.checked_neg()?)?;
        ring.bundle = Some(bundle);
        ring.xi_top = Some(top);
        Ok(ring)
    }

    pub fn base(&self) -> &ProductBase {
        &self.base
    }

    pub fn split_bundle(&self) -> Option<&SplitBundleSpec> {
        self.bundle.as_ref()
    }

    pub fn rank(&self) -> usize {
        self.bundle.as_ref().map_or(1, SplitBundleSpec::rank)
    }

    pub fn dim(&self) -> usize {
        self.base.dim() + self.rank() - 1
    }

    pub fn has_xi(&self) -> bool {
        self.bundle.is_some()
    }

    pub fn h(&self, i: usize) -> DivClass {
        let mut h = vec![0; self.base.factors()];
        h[i] = 1;
        DivClass { h, xi: self.has_xi().then_some(0) }
    }

    pub fn xi(&self) -> Option<DivClass> {
        self.has_xi().then(|| DivClass::with_xi(vec![0; self.base.factors()], 1))
    }

    pub fn zero_class(&self) -> DivClass {
        DivClass { h: vec![0; self.base.factors()], xi: self.has_xi().then_some(0) }
    }

    /// `g^*` of a base class.
    pub fn pullback(&self, base_class: &[i64]) -> Result<DivClass, ChowError> {
        self.check_len(base_class.len())?;
        Ok(DivClass { h: base_class.to_vec(), xi: self.has_xi().then_some(0) })
    }

    fn check_len(&self, got: usize) -> Result<(), ChowError> {
        if got != self.base.factors() {
            return Err(ChowError::ClassLength { expected: self.base.factors(), got });
        }
        Ok(())
    }

    fn check_class(&self, c: &DivClass) -> Result<(), ChowError> {
        self.check_len(c.h.len())?;
        if c.xi.is_some() != self.has_xi() {
            return Err(ChowError::ClassLength {
                expected: self.base.factors() + self.has_xi() as usize,
                got: c.h.len() + c.xi.is_some() as usize,
            });
        }
        Ok(())
    }

    fn monomial_elem(&self, h: Vec<u32>, xi: u32) -> ChowElement {
        let mut exps = h;
        exps.push(xi);
        ChowElement { terms: [(exps, 1)].into() }
    }

    pub fn constant(&self, c: i128) -> ChowElement {
        let mut e = ChowElement::default();
        e.add_term(vec![0; self.base.factors() + 1], c).expect("no overflow");
        e
    }

    /// The ring element of a divisor class.
    pub fn linear(&self, c: &DivClass) -> Result<ChowElement, ChowError> {
        let k = self.base.factors();
        if c.h.len() != k {
            return Err(ChowError::ClassLength { expected: k, got: c.h.len() });
        }
        let mut e = ChowElement::default();
        for (i, &a) in c.h.iter().enumerate() {
            let mut exps = vec![0; k + 1];
            exps[i] = 1;
            e.add_term(exps, a as i128)?;
        }
        if let Some(x) = c.xi {
            let mut exps = vec![0; k + 1];
            exps[k] = 1;
            e.add_term(exps, x as i128)?;
        }
        self.reduce(e)
    }

    /// Product applying only `h_i^{n_i+1} = 0`.
    fn mul_raw(&self, a: &ChowElement, b: &ChowElement) -> Result<ChowElement, ChowError> {
        let dims = &self.base.dims;
        let mut out = ChowElement::default();
        for (ea, &ca) in &a.terms {
            'terms: for (eb, &cb) in &b.terms {
                let mut exps = Vec::with_capacity(ea.len());
                for (i, (x, y)) in ea.iter().zip(eb).enumerate() {
                    let s = x + y;
                    if i < dims.len() && s as usize > dims[i] {
                        continue 'terms;
                    }
                    exps.push(s);
                }
                out.add_term(exps, ca.checked_mul(cb).ok_or(ChowError::Overflow)?)?;
            }
        }
        Ok(out)
    }

    fn reduce(&self, mut e: ChowElement) -> Result<ChowElement, ChowError> {
        let (Some(top), Some(bundle)) = (&self.xi_top, &self.bundle) else {
            return Ok(e);
        };
        let r = bundle.rank() as u32;
        let k = self.base.factors();
        loop {
            let Some(key) = e.terms.keys().find(|ex| ex[k] >= r).cloned() else {
                return Ok(e);
            };
            let c = e.terms.remove(&key).expect("present");
            let mut rest = key.clone();
            rest[k] -= r;
            let shifted = self.mul_raw(&ChowElement { terms: [(rest, c)].into() }, top)?;
            e = e.checked_add(&shifted)?;
        }
    }

    pub fn mul(&self, a: &ChowElement, b: &ChowElement) -> Result<ChowElement, ChowError> {
        self.reduce(self.mul_raw(a, b)?)
    }

    /// Coefficient of the top monomial of a reduced element.
    pub fn integrate(&self, e: &ChowElement) -> i128 {
        let mut top: Vec<u32> = self.base.dims.iter().map(|&n| n as u32).collect();
        top.push(self.rank() as u32 - 1);
        e.terms.get(&top).copied().unwrap_or(0)
    }

    /// Degree of the product of `dim` divisor classes.
    pub fn intersect(&self, classes: &[DivClass]) -> Result<i128, ChowError> {
        if classes.len() != self.dim() {
            return Err(ChowError::DimensionMismatch { expected: self.dim(), got: classes.len() });
        }
        let mut acc = self.constant(1);
        for c in classes {
            self.check_class(c)?;
            acc = self.mul(&acc, &self.linear(c)?)?;
        }
        Ok(self.integrate(&acc))
    }

    /// Degree of `classes` restricted to the hypersurface of class `x`.
    pub fn hypersurface_degree(&self, x: &DivClass, classes: &[DivClass]) -> Result<i128, ChowError> {
        if classes.len() + 1 != self.dim() {
            return Err(ChowError::DimensionMismatch { expected: self.dim() - 1, got: classes.len() });
        }
        let mut all = classes.to_vec();
        all.push(x.clone());
        self.intersect(&all)
    }

    /// `K = −r·ξ + Σ_c (−(n_c + 1) + Σ_j a_{j,c}) h_c`.
    pub fn canonical_class(&self) -> DivClass {
        let mut h: Vec<i64> = self.base.dims.iter().map(|&n| -(n as i64 + 1)).collect();
        match &self.bundle {
            None => DivClass::base(h),
            Some(b) => {
                for t in b.twists() {
                    for (hc, a) in h.iter_mut().zip(t) {
                        *hc += a;
                    }
                }
                DivClass::with_xi(h, -(b.rank() as i64))
            }
        }
    }

    /// Class of the section `P(O(a_j)) ⊂ P(E)` for a rank-two `E`: the zero
    /// locus of the projection onto the other summand, `ξ − g^*a_{j'}`.
    pub fn section_class(&self, j: usize) -> Result<DivClass, ChowError> {
        let b = self.bundle.as_ref().ok_or_else(|| ChowError::InvalidRing("no bundle".into()))?;
        if b.rank() != 2 || j > 1 {
            return Err(ChowError::InvalidRing("sections are divisors only for rank-two bundles".into()));
        }
        let other = &b.twists()[1 - j];
        Ok(DivClass::with_xi(other.iter().map(|a| -a).collect(), 1))
    }

    /// `deg c_top(⊕ M_i)` for line bundles `M_i`, one per dimension.
    pub fn chern_top_degree(&self, line_factors: &[DivClass]) -> Result<i128, ChowError> {
        self.intersect(line_factors)
    }

    /// Equality in the (free) Picard lattice.
    pub fn verify_linear_identity(&self, lhs: &DivClass, rhs: &DivClass) -> bool {
        self.check_class(lhs).is_ok() && self.check_class(rhs).is_ok() && lhs == rhs
    }

    /// Evaluates a class expression such as `deg((2*h1+h2)^2*xi)`.
    pub fn eval_expr(&self, text: &str) -> Result<ExprValue, ChowError> {
        let toks = tokenize(text).map_err(|(pos, msg)| ChowError::Expr { pos, msg })?;
        let mut parser = ExprParser { ring: self, toks: &toks, at: 0, end: text.len() };
        let value = parser.top()?;
        if parser.at != toks.len() {
            return Err(parser.err("unexpected trailing input"));
        }
        Ok(value)
    }
}

/// `pr_i^* Ω¹_{P¹} ⊗ twist` for each factor of `(P¹)^k`.
pub fn omega_twist_factors(base: &ProductBase, twist: &DivClass) -> Result<Vec<DivClass>, ChowError> {
    if let Some(i) = base.dims.iter().position(|&n| n != 1) {
        return Err(ChowError::NonP1Factor(i));
    }
    if twist.h.len() != base.factors() {
        return Err(ChowError::ClassLength { expected: base.factors(), got: twist.h.len() });
    }
    Ok((0..base.factors())
        .map(|i| {
            let mut c = twist.clone();
            c.h[i] -= 2;
            c
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprValue {
    Degree(i128),
    Element(ChowElement),
}

struct ExprParser<'r, 'a, 't> {
    ring: &'r IntersectionRing,
    toks: &'t [Lexeme<'a>],
    at: usize,
    end: usize,
}

impl<'r, 'a, 't> ExprParser<'r, 'a, 't> {
    fn peek(&self) -> Option<&Token<'a>> {
        self.toks.get(self.at).map(|l| &l.token)
    }

    fn err(&self, msg: &str) -> ChowError {
        let pos = self.toks.get(self.at).map_or(self.end, |l| l.pos);
        ChowError::Expr { pos, msg: msg.into() }
    }

    fn expect(&mut self, t: Token<'static>, what: &str) -> Result<(), ChowError> {
        if self.peek() == Some(&t) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {what}")))
        }
    }

    fn top(&mut self) -> Result<ExprValue, ChowError> {
        if self.peek() == Some(&Token::Ident("deg")) {
            self.at += 1;
            self.expect(Token::LParen, "`(` after deg")?;
            let e = self.sum()?;
            self.expect(Token::RParen, "`)`")?;
            return Ok(ExprValue::Degree(self.ring.integrate(&e)));
        }
        Ok(ExprValue::Element(self.sum()?))
    }

    fn sum(&mut self) -> Result<ChowElement, ChowError> {
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            negate = true;
            self.at += 1;
        }
        let mut acc = ChowElement::default();
        loop {
            let mut t = self.product()?;
            if negate {
                t = t.checked_neg()?;
            }
            acc = acc.checked_add(&t)?;
            match self.peek() {
                Some(Token::Plus) => negate = false,
                Some(Token::Minus) => negate = true,
                _ => return Ok(acc),
            }
            self.at += 1;
        }
    }

    fn product(&mut self) -> Result<ChowElement, ChowError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Token::Star) => self.at += 1,
                Some(Token::Int(_)) | Some(Token::Ident(_)) | Some(Token::LParen) => {}
                _ => return Ok(acc),
            }
            let rhs = self.power()?;
            acc = self.ring.mul(&acc, &rhs)?;
        }
    }

    fn power(&mut self) -> Result<ChowElement, ChowError> {
        let mut base = self.atom()?;
        if self.peek() != Some(&Token::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let mut e: u32 = match self.peek() {
            Some(Token::Int(d)) => d.parse().map_err(|_| self.err("exponent too large"))?,
            _ => return Err(self.err("expected exponent")),
        };
        self.at += 1;
        let mut acc = self.ring.constant(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.ring.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.ring.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<ChowElement, ChowError> {
        match self.peek().cloned() {
            Some(Token::Int(d)) => {
                let v: i128 = d.parse().map_err(|_| self.err("integer too large"))?;
                self.at += 1;
                Ok(self.ring.constant(v))
            }
            Some(Token::Ident(name)) => {
                let k = self.ring.base.factors();
                let class = if name == "xi" {
                    self.ring.xi().ok_or_else(|| self.err("`xi` needs a bundle"))?
                } else if let Some(i) = name.strip_prefix('h').and_then(|s| s.parse::<usize>().ok()) {
                    if i == 0 || i > k {
                        return Err(self.err(&format!("no generator h{i} (base has {k} factors)")));
                    }
                    self.ring.h(i - 1)
                } else {
                    return Err(self.err(&format!("unknown generator `{name}`")));
                };
                self.at += 1;
                self.ring.linear(&class)
            }
            Some(Token::LParen) => {
                self.at += 1;
                let e = self.sum()?;
                self.expect(Token::RParen, "`)`")?;
                Ok(e)
            }
            _ => Err(self.err("expected a number, generator or `(`")),
        }
    }
}
