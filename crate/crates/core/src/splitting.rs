//! Fedder's criterion for graded hypersurface rings and Δ₁ probes.
//!
//! `S/(f)` is F-split iff `f^{p-1} ∉ (x_0^p, ..., x_n^p)`. The residue of
//! `f^{p-1}` in `S/m^{[p]}` is computed directly, so a nonzero residue also
//! yields a witness monomial.

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::field::Prime;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::witt::delta1;

/// `S/(f)` for a nonzero weighted-homogeneous `f`.
#[derive(Clone, Debug)]
pub struct HypersurfaceRing {
    f: Polynomial,
    degree: Vec<u64>,
}

impl HypersurfaceRing {
    pub fn new(f: Polynomial) -> Result<Self, AlgebraError> {
        let degree = f.weighted_degree()?;
        Ok(HypersurfaceRing { f, degree })
    }

    pub fn prime(&self) -> Prime {
        self.f.prime()
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.f
    }

    pub fn degree(&self) -> &[u64] {
        &self.degree
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SplitStatus {
    FSplit,
    NotFSplit,
}

impl fmt::Display for SplitStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitStatus::FSplit => "FSplit",
            SplitStatus::NotFSplit => "NotFSplit",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitVerdict {
    pub status: SplitStatus,
    /// Grevlex-largest surviving monomial of `f^{p-1}` mod `m^{[p]}`.
    pub witness: Option<Monomial>,
}

/// `f^{p-1}` reduced in `S/m^{[p]}`.
pub fn fedder_residue(ring: &HypersurfaceRing) -> Result<Polynomial, AlgebraError> {
    let p = ring.prime().get() as u64;
    ring.f.pow_mod_frobenius(p - 1, p)
}

pub fn fedder_fsplit(ring: &HypersurfaceRing) -> Result<SplitVerdict, AlgebraError> {
    let residue = fedder_residue(ring)?;
    Ok(verdict_from_residue(&residue))
}

fn verdict_from_residue(residue: &Polynomial) -> SplitVerdict {
    match residue.leading_term() {
        Some((m, _)) => SplitVerdict { status: SplitStatus::FSplit, witness: Some(m.clone()) },
        None => SplitVerdict { status: SplitStatus::NotFSplit, witness: None },
    }
}

/// `f^a · Δ₁(f)^b` in `S/m^{[p^s]}`. Descriptive only.
pub fn delta1_probe(ring: &HypersurfaceRing, a: u64, b: u64, s: u32) -> Result<Polynomial, AlgebraError> {
    assert!(s >= 1, "Frobenius exponent must be positive");
    let p = ring.prime().get() as u64;
    let q = p.checked_pow(s).ok_or(AlgebraError::ExponentOverflow)?;
    let fa = ring.f.pow_mod_frobenius(a, q)?;
    if b == 0 {
        return Ok(fa);
    }
    let d = delta1(&ring.f)?;
    let db = d.pow_mod_frobenius(b, q)?;
    fa.mul_truncated(&db, q.min(u32::MAX as u64) as u32)
}

/// Serializable summary of a Fedder computation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FedderReport {
    pub prime: u32,
    pub polynomial: String,
    pub degree: Vec<u64>,
    pub status: SplitStatus,
    pub witness: Option<String>,
    pub residue_terms: usize,
    pub delta1_terms: usize,
    pub delta1_degree: Option<Vec<u64>>,
    pub elapsed_ms: f64,
}

pub fn fedder_report(ring: &HypersurfaceRing) -> Result<FedderReport, AlgebraError> {
    let start = Instant::now();
    let residue = fedder_residue(ring)?;
    let verdict = verdict_from_residue(&residue);
    let d = delta1(&ring.f)?;
    let delta1_degree = if d.is_zero() { None } else { Some(d.weighted_degree()?) };
    Ok(FedderReport {
        prime: ring.prime().get(),
        polynomial: ring.f.to_string(),
        degree: ring.degree.clone(),
        status: verdict.status,
        witness: verdict.witness.as_ref().map(|m| ring.f.vars().format_monomial(m)),
        residue_terms: residue.num_terms(),
        delta1_terms: d.num_terms(),
        delta1_degree,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}
