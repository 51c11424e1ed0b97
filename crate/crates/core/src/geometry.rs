//! Products of weighted projective spaces and smoothness certification for
//! multihomogeneous hypersurfaces.
//!
//! Smoothness is certified symbolically: the Jacobian ideal is shown to
//! have no zero on every chart `{g_1 ⋯ g_k ≠ 0}` (one variable per factor)
//! of the affine cone, via the Rabinowitsch trick. The charts cover the
//! complement of the irrelevant locus.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, GeometryError};
use crate::field::Prime;
use crate::ideal::{localized_is_unit, PolyIdeal};
use crate::poly::{Polynomial, VariableSet};

/// One weighted projective factor `P(w_0, ..., w_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientSpace {
    factors: Vec<Factor>,
    vars: Arc<VariableSet>,
    /// Index of the first variable of each factor, plus the total count.
    offsets: Vec<usize>,
}

impl AmbientSpace {
    pub fn new(factors: Vec<Factor>) -> Result<Self, GeometryError> {
        if factors.is_empty() {
            return Err(GeometryError::InvalidAmbient("no factors".into()));
        }
        let k = factors.len();
        let mut names = Vec::new();
        let mut weights = Vec::new();
        let mut offsets = vec![0];
        for (j, fac) in factors.iter().enumerate() {
            if fac.vars.len() != fac.weights.len() {
                return Err(GeometryError::InvalidAmbient(format!(
                    "factor {j}: {} variables but {} weights",
                    fac.vars.len(),
                    fac.weights.len()
                )));
            }
            if fac.vars.len() < 2 {
                return Err(GeometryError::InvalidAmbient(format!("factor {j} needs at least two variables")));
            }
            if fac.weights.contains(&0) {
                return Err(GeometryError::InvalidAmbient(format!("factor {j} has a zero weight")));
            }
            for (name, &w) in fac.vars.iter().zip(&fac.weights) {
                names.push(name.clone());
                let mut wv = vec![0; k];
                wv[j] = w;
                weights.push(wv);
            }
            offsets.push(names.len());
        }
        let vars = Arc::new(VariableSet::new(names, weights).map_err(GeometryError::Algebra)?);
        Ok(AmbientSpace { factors, vars, offsets })
    }

    /// Parses `P(1,1,1,1,3)`, `P^2`, `P2 x P2`, `P(1,1,1)xP(1,1,2)`, ...
    ///
    /// Variables come from `names` when given (all factors concatenated);
    /// otherwise a single factor is named `x0..xn` and the factors of a
    /// product use the letters `x, y, z, u, v, w, ...` with indices.
    pub fn parse(spec: &str, names: Option<&[String]>) -> Result<Self, GeometryError> {
        let weight_lists = parse_ambient_weights(spec)?;
        let total: usize = weight_lists.iter().map(Vec::len).sum();
        let mut factors = Vec::new();
        match names {
            Some(names) => {
                if names.len() != total {
                    return Err(GeometryError::InvalidAmbient(format!(
                        "{} variable names for {total} coordinates",
                        names.len()
                    )));
                }
                let mut at = 0;
                for w in weight_lists {
                    factors.push(Factor { vars: names[at..at + w.len()].to_vec(), weights: w.clone() });
                    at += w.len();
                }
            }
            None => {
                const LETTERS: &[&str] = &["x", "y", "z", "u", "v", "w", "a", "b", "c", "d"];
                let single = weight_lists.len() == 1;
                for (j, w) in weight_lists.into_iter().enumerate() {
                    let stem = if single {
                        "x".to_string()
                    } else {
                        LETTERS.get(j).map_or_else(|| format!("v{j}_"), |s| s.to_string())
                    };
                    let vars = (0..w.len()).map(|i| format!("{stem}{i}")).collect();
                    factors.push(Factor { vars, weights: w });
                }
            }
        }
        Self::new(factors)
    }

    pub fn projective(dims: &[usize]) -> Result<Self, GeometryError> {
        let spec: Vec<String> = dims.iter().map(|n| format!("P{n}")).collect();
        Self::parse(&spec.join("x"), None)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn vars(&self) -> &Arc<VariableSet> {
        &self.vars
    }

    /// Global variable indices of factor `j`.
    pub fn factor_range(&self, j: usize) -> std::ops::Range<usize> {
        self.offsets[j]..self.offsets[j + 1]
    }

    pub fn factor_of(&self, var: usize) -> usize {
        (0..self.factors.len()).find(|&j| self.factor_range(j).contains(&var)).expect("variable index in range")
    }
}

fn parse_ambient_weights(spec: &str) -> Result<Vec<Vec<u32>>, GeometryError> {
    let bad = |m: &str| GeometryError::InvalidAmbient(format!("{m} in `{spec}`"));
    let s: Vec<char> = spec.chars().filter(|c| !c.is_whitespace()).collect();
    let mut i = 0;
    let mut out = Vec::new();
    let number = |i: &mut usize| -> Option<u32> {
        let start = *i;
        while *i < s.len() && s[*i].is_ascii_digit() {
            *i += 1;
        }
        s[start..*i].iter().collect::<String>().parse().ok()
    };
    loop {
        if i >= s.len() || s[i] != 'P' {
            return Err(bad("expected `P`"));
        }
        i += 1;
        if i < s.len() && s[i] == '(' {
            i += 1;
            let mut w = Vec::new();
            loop {
                w.push(number(&mut i).ok_or_else(|| bad("expected weight"))?);
                match s.get(i) {
                    Some(',') => i += 1,
                    Some(')') => {
                        i += 1;
                        break;
                    }
                    _ => return Err(bad("expected `,` or `)`")),
                }
            }
            out.push(w);
        } else {
            if i < s.len() && s[i] == '^' {
                i += 1;
            }
            let n = number(&mut i).ok_or_else(|| bad("expected dimension"))?;
            if n == 0 {
                return Err(bad("dimension must be positive"));
            }
            out.push(vec![1; n as usize + 1]);
        }
        match s.get(i) {
            None => break,
            Some('x') | Some('×') | Some('*') => i += 1,
            Some(_) => return Err(bad("expected factor separator `x`")),
        }
    }
    Ok(out)
}

/// A locus of the ambient space with nontrivial isotropy: the points whose
/// nonzero coordinates (in one factor) all lie in `variables`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularStratum {
    pub factor: usize,
    pub variables: Vec<usize>,
    pub order: u32,
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// For each factor, every maximal variable subset whose weights share a
/// common divisor `> 1`.
pub fn ambient_singular_strata(space: &AmbientSpace) -> Vec<SingularStratum> {
    let mut out = Vec::new();
    for (j, fac) in space.factors.iter().enumerate() {
        let offset = space.offsets[j];
        let max_w = fac.weights.iter().copied().max().unwrap_or(1);
        let mut sets: Vec<(Vec<usize>, u32)> = Vec::new();
        for d in 2..=max_w {
            let set: Vec<usize> = (0..fac.weights.len()).filter(|&i| fac.weights[i] % d == 0).collect();
            if set.is_empty() || sets.iter().any(|(s, _)| *s == set) {
                continue;
            }
            let g = set.iter().fold(0, |acc, &i| gcd(acc, fac.weights[i]));
            sets.push((set, g));
        }
        let is_proper_subset = |a: &[usize], b: &[usize]| a.len() < b.len() && a.iter().all(|x| b.contains(x));
        for (set, order) in &sets {
            if sets.iter().any(|(other, _)| is_proper_subset(set, other)) {
                continue;
            }
            out.push(SingularStratum { factor: j, variables: set.iter().map(|i| offset + i).collect(), order: *order });
        }
    }
    out
}

/// A hypersurface `{f = 0}` in an ambient product.
#[derive(Clone, Debug)]
pub struct HypersurfaceVariety {
    space: AmbientSpace,
    f: Polynomial,
    multidegree: Vec<u64>,
}

impl HypersurfaceVariety {
    pub fn new(space: AmbientSpace, f: Polynomial) -> Result<Self, GeometryError> {
        if **f.vars() != *space.vars {
            return Err(GeometryError::Algebra(AlgebraError::RingMismatch));
        }
        let multidegree = f.weighted_degree()?;
        if multidegree.iter().all(|&d| d == 0) {
            return Err(GeometryError::DegenerateDegree);
        }
        Ok(HypersurfaceVariety { space, f, multidegree })
    }

    pub fn parse(p: Prime, space: AmbientSpace, text: &str) -> Result<Self, GeometryError> {
        let f = crate::parse::parse_poly(text, space.vars(), p)?;
        Self::new(space, f)
    }

    pub fn prime(&self) -> Prime {
        self.f.prime()
    }

    pub fn space(&self) -> &AmbientSpace {
        &self.space
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.f
    }

    pub fn multidegree(&self) -> &[u64] {
        &self.multidegree
    }

    /// `(f, ∂f/∂x_0, ..., ∂f/∂x_n)`; `f` is kept even when Euler's relation
    /// would make it redundant.
    pub fn jacobian_ideal(&self) -> PolyIdeal {
        let mut gens = vec![self.f.clone()];
        gens.extend((0..self.space.vars.len()).map(|i| self.f.derivative(i)));
        PolyIdeal::new(self.prime(), self.space.vars.clone(), gens).expect("same ring")
    }

    /// Every chart: one variable from each factor.
    pub fn charts(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for j in 0..self.space.factors.len() {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    self.space.factor_range(j).map(move |v| {
                        let mut c = prefix.clone();
                        c.push(v);
                        c
                    })
                })
                .collect();
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeSmoothness {
    SmoothAwayFromIrrelevant,
    /// The Jacobian ideal has a zero on the chart `{Π chart ≠ 0}`.
    SingularWitnessIdeal {
        chart: Vec<String>,
        jacobian: Vec<String>,
    },
}

impl ConeSmoothness {
    pub fn is_smooth(&self) -> bool {
        matches!(self, ConeSmoothness::SmoothAwayFromIrrelevant)
    }
}

pub fn cone_smoothness(v: &HypersurfaceVariety) -> Result<ConeSmoothness, GeometryError> {
    let jac = v.jacobian_ideal();
    let (p, vars) = (v.prime(), v.space.vars.clone());
    for chart in v.charts() {
        let g = chart.iter().fold(Polynomial::one(p, vars.clone()), |acc, &i| {
            acc.mul(&Polynomial::variable(p, vars.clone(), i)).expect("degree one products")
        });
        if !localized_is_unit(&jac, &g)? {
            return Ok(ConeSmoothness::SingularWitnessIdeal {
                chart: chart.iter().map(|&i| vars.name(i).to_string()).collect(),
                jacobian: jac.generators().iter().map(ToString::to_string).collect(),
            });
        }
    }
    Ok(ConeSmoothness::SmoothAwayFromIrrelevant)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Smoothness {
    Smooth,
    QuasiSmoothOnly,
    Singular,
}

impl fmt::Display for Smoothness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Smoothness::Smooth => "Smooth",
            Smoothness::QuasiSmoothOnly => "QuasiSmoothOnly",
            Smoothness::Singular => "Singular",
        })
    }
}

/// True when `X` passes through the point stratum `{v}`: setting the other
/// variables of the factor to zero must leave a nowhere-vanishing form.
fn meets_point_stratum(v: &HypersurfaceVariety, stratum: &SingularStratum) -> bool {
    let var = stratum.variables[0];
    let zeroed: Vec<usize> = v.space.factor_range(stratum.factor).filter(|&i| i != var).collect();
    let restricted = v.f.restrict_zero(&zeroed);
    let other_degree_positive = v.multidegree.iter().enumerate().any(|(c, &d)| c != stratum.factor && d > 0);
    restricted.is_zero() || other_degree_positive
}

pub fn smoothness_verdict(v: &HypersurfaceVariety) -> Result<Smoothness, GeometryError> {
    let strata = ambient_singular_strata(&v.space);
    if let Some(bad) = strata.iter().find(|s| s.variables.len() > 1) {
        return Err(GeometryError::Unsupported(
            bad.variables.iter().map(|&i| v.space.vars.name(i).to_string()).collect(),
        ));
    }
    if !cone_smoothness(v)?.is_smooth() {
        return Ok(Smoothness::Singular);
    }
    if strata.iter().any(|s| meets_point_stratum(v, s)) {
        return Ok(Smoothness::QuasiSmoothOnly);
    }
    Ok(Smoothness::Smooth)
}

/// Outcome of Euler's relation `Σ_x w_c(x)·x·∂f/∂x = d_c·f` in component `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerCheck {
    pub component: usize,
    pub degree: u64,
    /// `None` when `p | d_c`: the relation then only says the left side is 0.
    pub holds: Option<bool>,
}

pub fn euler_relations(v: &HypersurfaceVariety) -> Vec<EulerCheck> {
    let (p, vars) = (v.prime(), v.space.vars.clone());
    (0..vars.components())
        .map(|c| {
            let mut lhs = Polynomial::zero(p, vars.clone());
            for i in 0..vars.len() {
                let w = vars.weight(i)[c];
                if w == 0 {
                    continue;
                }
                let term = Polynomial::variable(p, vars.clone(), i)
                    .mul(&v.f.derivative(i))
                    .expect("degree bounded by f")
                    .scale(p.reduce(w as u64));
                lhs = &lhs + &term;
            }
            let d = v.multidegree[c];
            let holds = if d.is_multiple_of(p.get() as u64) { None } else { Some(lhs == v.f.scale(p.reduce(d))) };
            EulerCheck { component: c, degree: d, holds }
        })
        .collect()
}
