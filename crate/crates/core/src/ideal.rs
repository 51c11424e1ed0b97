//! Ideals over F_p: Frobenius powers, Buchberger Gröbner bases, normal
//! forms, membership, ideal quotients and Rabinowitsch localization tests.

use std::cmp::Ordering;
use std::sync::{Arc, OnceLock};

use crate::error::AlgebraError;
use crate::field::Prime;
use crate::monomial::{Monomial, TermOrder};
use crate::poly::{Polynomial, VariableSet};

/// A monomial ideal with a minimal generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    vars: Arc<VariableSet>,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Minimalizes `generators`: duplicates and multiples of other
    /// generators are dropped.
    pub fn new(vars: Arc<VariableSet>, mut generators: Vec<Monomial>) -> Self {
        generators.sort();
        generators.dedup();
        let mut minimal: Vec<Monomial> = Vec::new();
        // ascending grevlex: a divisor always precedes its proper multiples
        for g in generators {
            assert_eq!(g.len(), vars.len());
            if !minimal.iter().any(|h| h.divides(&g)) {
                minimal.push(g);
            }
        }
        MonomialIdeal { vars, generators: minimal }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn contains_monomial(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    /// True iff every term of `f` is divisible by some generator.
    pub fn contains(&self, f: &Polynomial) -> bool {
        f.monomials().all(|m| self.contains_monomial(m))
    }

    pub fn to_poly_ideal(&self, p: Prime) -> PolyIdeal {
        let gens =
            self.generators.iter().map(|m| Polynomial::from_terms(p, self.vars.clone(), [(m.clone(), 1)])).collect();
        PolyIdeal::new(p, self.vars.clone(), gens).expect("generators share the ring")
    }
}

/// The Frobenius power `(x_0^q, ..., x_n^q)` of the irrelevant ideal.
pub fn frobenius_power(vars: &Arc<VariableSet>, q: u16) -> MonomialIdeal {
    assert!(q >= 1);
    let n = vars.len();
    MonomialIdeal::new(vars.clone(), (0..n).map(|i| Monomial::var(n, i, q)).collect())
}

pub fn monomial_ideal_contains(ideal: &MonomialIdeal, f: &Polynomial) -> bool {
    ideal.contains(f)
}

/// Internal dense-in-order representation: terms ascending in the term
/// order, so the leading term is last.
#[derive(Clone, Debug)]
struct Gp {
    terms: Vec<(Monomial, u32)>,
}

impl Gp {
    fn from_poly(f: &Polynomial, order: TermOrder) -> Gp {
        let mut terms: Vec<(Monomial, u32)> = f.terms().map(|(m, c)| (m.clone(), c)).collect();
        if order != TermOrder::Grevlex {
            terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        } else {
            terms.reverse();
        }
        Gp { terms }
    }

    fn to_poly(&self, p: Prime, vars: &Arc<VariableSet>) -> Polynomial {
        Polynomial::from_terms(p, vars.clone(), self.terms.iter().map(|(m, c)| (m.clone(), *c as u64)))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Monomial, u32) {
        self.terms.last().expect("leading term of zero")
    }

    fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    fn monic(mut self, p: Prime) -> Gp {
        if let Some(&(_, c)) = self.terms.last() {
            if c != 1 {
                let inv = p.inv(c);
                for t in &mut self.terms {
                    t.1 = p.mul(t.1, inv);
                }
            }
        }
        self
    }

    /// `self − c·m·g`, merging in ascending order.
    fn sub_scaled(&self, c: u32, m: &Monomial, g: &Gp, order: TermOrder, p: Prime) -> Result<Gp, AlgebraError> {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut shifted = g.terms.iter().map(|(gm, gc)| Ok::<_, AlgebraError>((gm.mul(m)?, p.mul(*gc, c))));
        let mut next_b = shifted.next().transpose()?;
        loop {
            match (a.peek(), &next_b) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some((bm, bc))) => {
                    out.push((bm.clone(), p.neg(*bc)));
                    next_b = shifted.next().transpose()?;
                }
                (Some((am, ac)), Some((bm, bc))) => match order.cmp(am, bm) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => {
                        out.push((bm.clone(), p.neg(*bc)));
                        next_b = shifted.next().transpose()?;
                    }
                    Ordering::Equal => {
                        let s = p.sub(*ac, *bc);
                        if s != 0 {
                            out.push((am.clone(), s));
                        }
                        a.next();
                        next_b = shifted.next().transpose()?;
                    }
                },
            }
        }
        Ok(Gp { terms: out })
    }
}

/// Full reduction of `h` against monic `basis`.
fn reduce(mut h: Gp, basis: &[&Gp], order: TermOrder, p: Prime) -> Result<Gp, AlgebraError> {
    let mut rem: Vec<(Monomial, u32)> = Vec::new();
    while let Some((lm, lc)) = h.terms.last().cloned() {
        let divisor = basis.iter().find(|g| g.lead().0.divides(&lm));
        match divisor {
            Some(g) => {
                let q = lm.div(&g.lead().0).expect("divides");
                h = h.sub_scaled(lc, &q, g, order, p)?;
            }
            None => {
                h.terms.pop();
                rem.push((lm, lc));
            }
        }
    }
    rem.reverse();
    Ok(Gp { terms: rem })
}

fn s_poly(f: &Gp, g: &Gp, order: TermOrder, p: Prime) -> Result<Gp, AlgebraError> {
    let (fm, fc) = f.lead();
    let (gm, gc) = g.lead();
    let l = fm.lcm(gm);
    let uf = l.div(fm).unwrap();
    let ug = l.div(gm).unwrap();
    // (l/lm f)·f/lc f − (l/lm g)·g/lc g
    let zero = Gp { terms: Vec::new() };
    let a = zero.sub_scaled(p.neg(p.inv(*fc)), &uf, f, order, p)?;
    a.sub_scaled(p.inv(*gc), &ug, g, order, p)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine {
    p: Prime,
    order: TermOrder,
    polys: Vec<Gp>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn active_refs(&self) -> Vec<&Gp> {
        self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(g, _)| g).collect()
    }

    /// Gebauer–Möller update after adjoining a new monic element.
    fn update(&mut self, h: Gp) {
        let hi = self.polys.len();
        let hm = h.lead().0.clone();
        self.polys.push(h);
        self.active.push(true);

        let mut c: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| Pair { i: g, j: hi, lcm: hm.lcm(&self.polys[g].lead().0) })
            .collect();
        let mut d: Vec<Pair> = Vec::new();
        while let Some(pair) = c.pop() {
            let gm = &self.polys[pair.i].lead().0;
            let keep = hm.coprime(gm)
                || (!c.iter().any(|q| q.lcm.divides(&pair.lcm)) && !d.iter().any(|q| q.lcm.divides(&pair.lcm)));
            if keep {
                d.push(pair);
            }
        }
        let e = d.into_iter().filter(|q| !hm.coprime(&self.polys[q.i].lead().0));

        let polys = &self.polys;
        let old = std::mem::take(&mut self.pairs);
        self.pairs = old
            .into_iter()
            .filter(|q| {
                let l1h = polys[q.i].lead().0.lcm(&hm);
                let l2h = polys[q.j].lead().0.lcm(&hm);
                !hm.divides(&q.lcm) || l1h == q.lcm || l2h == q.lcm
            })
            .collect();
        self.pairs.extend(e);

        for g in 0..hi {
            if self.active[g] && hm.divides(&self.polys[g].lead().0) {
                self.active[g] = false;
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let idx = (0..self.pairs.len()).min_by(|&a, &b| {
            order
                .cmp(&self.pairs[a].lcm, &self.pairs[b].lcm)
                .then((self.pairs[a].i, self.pairs[a].j).cmp(&(self.pairs[b].i, self.pairs[b].j)))
        })?;
        Some(self.pairs.swap_remove(idx))
    }

    /// Returns `Ok(true)` as soon as the ideal is seen to be the unit ideal.
    fn adjoin(&mut self, h: Gp) -> Result<bool, AlgebraError> {
        let h = reduce(h, &self.active_refs(), self.order, self.p)?;
        if h.is_zero() {
            return Ok(false);
        }
        if h.is_constant() {
            return Ok(true);
        }
        self.update(h.monic(self.p));
        Ok(false)
    }

    fn run(mut self, gens: Vec<Gp>) -> Result<Vec<Gp>, AlgebraError> {
        let n = gens.first().map(|g| g.lead().0.len());
        let unit = |n: usize| vec![Gp { terms: vec![(Monomial::one(n), 1)] }];
        for g in gens {
            if self.adjoin(g)? {
                return Ok(unit(n.unwrap()));
            }
        }
        while let Some(pair) = self.pop_pair() {
            let s = s_poly(&self.polys[pair.i], &self.polys[pair.j], self.order, self.p)?;
            if self.adjoin(s)? {
                return Ok(unit(n.unwrap()));
            }
        }
        self.finish()
    }

    fn finish(self) -> Result<Vec<Gp>, AlgebraError> {
        let order = self.order;
        let mut min: Vec<Gp> = Vec::new();
        let mut cands: Vec<Gp> = self.active_refs().into_iter().cloned().collect();
        cands.sort_by(|a, b| order.cmp(&a.lead().0, &b.lead().0));
        for g in cands {
            if !min.iter().any(|h| h.lead().0.divides(&g.lead().0)) {
                min.push(g);
            }
        }
        let mut reduced = Vec::with_capacity(min.len());
        for k in 0..min.len() {
            let (lead, tail) = {
                let g = &min[k];
                let lead = g.lead().clone();
                let tail = Gp { terms: g.terms[..g.terms.len() - 1].to_vec() };
                (lead, tail)
            };
            let others: Vec<&Gp> = min.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, g)| g).collect();
            let mut tail = reduce(tail, &others, order, self.p)?;
            tail.terms.push(lead);
            reduced.push(tail.monic(self.p));
        }
        reduced.sort_by(|a, b| order.cmp(&b.lead().0, &a.lead().0));
        Ok(reduced)
    }
}

/// A reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    order: TermOrder,
    p: Prime,
    vars: Arc<VariableSet>,
    elements: Vec<Polynomial>,
    internal: Vec<Gp>,
}

impl GroebnerBasis {
    fn compute(p: Prime, vars: &Arc<VariableSet>, gens: &[Polynomial], order: TermOrder) -> Result<Self, AlgebraError> {
        let gps: Vec<Gp> = gens.iter().filter(|g| !g.is_zero()).map(|g| Gp::from_poly(g, order).monic(p)).collect();
        let engine = Engine { p, order, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
        let internal = if gps.is_empty() { Vec::new() } else { engine.run(gps)? };
        let elements = internal.iter().map(|g| g.to_poly(p, vars)).collect();
        Ok(GroebnerBasis { order, p, vars: vars.clone(), elements, internal })
    }

    pub fn order(&self) -> TermOrder {
        self.order
    }

    /// Basis elements, sorted by descending leading monomial.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.internal.iter().map(|g| g.lead().0.clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.internal.len() == 1 && self.internal[0].is_constant()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.internal.is_empty()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial, AlgebraError> {
        if !(f.prime() == self.p && **f.vars() == *self.vars) {
            return Err(AlgebraError::RingMismatch);
        }
        let refs: Vec<&Gp> = self.internal.iter().collect();
        Ok(reduce(Gp::from_poly(f, self.order), &refs, self.order, self.p)?.to_poly(self.p, &self.vars))
    }

    /// S-polynomial of basis elements `i` and `j`.
    pub fn s_polynomial(&self, i: usize, j: usize) -> Result<Polynomial, AlgebraError> {
        Ok(s_poly(&self.internal[i], &self.internal[j], self.order, self.p)?.to_poly(self.p, &self.vars))
    }

    /// Checks Buchberger's criterion: every S-pair reduces to zero.
    pub fn certify(&self) -> Result<bool, AlgebraError> {
        let refs: Vec<&Gp> = self.internal.iter().collect();
        for i in 0..refs.len() {
            for j in i + 1..refs.len() {
                let s = s_poly(refs[i], refs[j], self.order, self.p)?;
                if !reduce(s, &refs, self.order, self.p)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// A polynomial ideal with a lazily computed grevlex Gröbner basis.
#[derive(Clone, Debug)]
pub struct PolyIdeal {
    p: Prime,
    vars: Arc<VariableSet>,
    generators: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl PolyIdeal {
    /// Zero generators are dropped; an empty list is the zero ideal.
    pub fn new(p: Prime, vars: Arc<VariableSet>, generators: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        for g in &generators {
            if g.prime() != p || **g.vars() != *vars {
                return Err(AlgebraError::RingMismatch);
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(PolyIdeal { p, vars, generators, gb: OnceLock::new() })
    }

    /// Ideal generated by `generators`, which must be nonempty.
    pub fn from_generators(generators: Vec<Polynomial>) -> Result<Self, AlgebraError> {
        let first = generators.first().ok_or(AlgebraError::ZeroPolynomial)?;
        let (p, vars) = (first.prime(), first.vars().clone());
        Self::new(p, vars, generators)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn groebner(&self) -> Result<&GroebnerBasis, AlgebraError> {
        if let Some(gb) = self.gb.get() {
            return Ok(gb);
        }
        let gb = GroebnerBasis::compute(self.p, &self.vars, &self.generators, TermOrder::Grevlex)?;
        Ok(self.gb.get_or_init(|| gb))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool, AlgebraError> {
        if f.is_zero() {
            return Ok(true);
        }
        Ok(self.groebner()?.normal_form(f)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool, AlgebraError> {
        if self.generators.iter().any(Polynomial::is_unit) {
            return Ok(true);
        }
        Ok(self.groebner()?.is_unit())
    }
}

pub fn buchberger(ideal: &PolyIdeal) -> Result<GroebnerBasis, AlgebraError> {
    ideal.groebner().cloned()
}

/// Gröbner basis of the ideal generated by `gens` for an explicit order.
pub fn buchberger_with_order(gens: &[Polynomial], order: TermOrder) -> Result<GroebnerBasis, AlgebraError> {
    let first = gens.first().ok_or(AlgebraError::ZeroPolynomial)?;
    GroebnerBasis::compute(first.prime(), first.vars(), gens, order)
}

pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial, AlgebraError> {
    gb.normal_form(f)
}

pub fn ideal_membership(ideal: &PolyIdeal, f: &Polynomial) -> Result<bool, AlgebraError> {
    ideal.contains(f)
}

pub fn is_unit_ideal(ideal: &PolyIdeal) -> Result<bool, AlgebraError> {
    ideal.is_unit()
}

/// The ideal quotient `I : g = {h : h·g ∈ I}`.
///
/// Computes `I ∩ (g)` by eliminating `t` from `t·I + (1 − t)·g`, then divides
/// each generator by `g`.
pub fn ideal_quotient(ideal: &PolyIdeal, g: &Polynomial) -> Result<PolyIdeal, AlgebraError> {
    if g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if g.prime() != ideal.p || **g.vars() != *ideal.vars {
        return Err(AlgebraError::RingMismatch);
    }
    let (p, vars) = (ideal.p, ideal.vars.clone());
    if ideal.generators.is_empty() {
        return PolyIdeal::new(p, vars, Vec::new());
    }
    let ext = Arc::new(vars.with_fresh_first("t"));
    let map: Vec<usize> = (1..=vars.len()).collect();
    let t = Polynomial::variable(p, ext.clone(), 0);
    let one_minus_t = &Polynomial::one(p, ext.clone()) - &t;

    let mut gens = Vec::with_capacity(ideal.generators.len() + 1);
    for f in &ideal.generators {
        gens.push(t.mul(&f.embed(ext.clone(), &map))?);
    }
    gens.push(one_minus_t.mul(&g.embed(ext.clone(), &map))?);
    let gb = buchberger_with_order(&gens, TermOrder::EliminateFirst)?;

    let back: Vec<Option<usize>> = std::iter::once(None).chain((0..vars.len()).map(Some)).collect();
    let mut quotient = Vec::new();
    for e in gb.elements() {
        if let Some(h) = e.project(vars.clone(), &back) {
            let q = h.div_exact(g).expect("elements of I ∩ (g) are divisible by g");
            quotient.push(q);
        }
    }
    PolyIdeal::new(p, vars, quotient)
}

/// True iff `1 ∈ I + (t·g − 1)` in the ring extended by a fresh `t`, i.e.
/// `V(I)` does not meet `{g ≠ 0}` over the algebraic closure.
pub fn localized_is_unit(ideal: &PolyIdeal, g: &Polynomial) -> Result<bool, AlgebraError> {
    if g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    if g.prime() != ideal.p || **g.vars() != *ideal.vars {
        return Err(AlgebraError::RingMismatch);
    }
    let (p, vars) = (ideal.p, ideal.vars.clone());
    let ext = Arc::new(vars.with_fresh_first("t"));
    let map: Vec<usize> = (1..=vars.len()).collect();
    let t = Polynomial::variable(p, ext.clone(), 0);
    let mut gens: Vec<Polynomial> = ideal.generators.iter().map(|f| f.embed(ext.clone(), &map)).collect();
    gens.push(&t.mul(&g.embed(ext.clone(), &map))? - &Polynomial::one(p, ext.clone()));
    let ext_ideal = PolyIdeal::new(p, ext, gens)?;
    ext_ideal.is_unit()
}
