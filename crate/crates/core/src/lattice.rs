//! Picard lattices of blowups of P² at `r` points, the Fano plane, the
//! Langer configuration of (−2)-classes, and PGL₃(F_q) orbits of point
//! configurations.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::LatticeError;
use crate::field::prime_power_parts;
use crate::gf::SmallField;

/// `Z^{1,r}` with form `diag(1, −1, ..., −1)` and `K = (−3; −1, ..., −1)`,
/// written as `dH − Σ m_i E_i` with `m_i = −1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PicLattice {
    r: usize,
}

impl PicLattice {
    pub fn new(r: usize) -> Result<Self, LatticeError> {
        if !(1..=8).contains(&r) {
            return Err(LatticeError::InvalidRank(r));
        }
        Ok(PicLattice { r })
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    pub fn canonical(&self) -> LatticeClass {
        LatticeClass { d: -3, m: vec![-1; self.r] }
    }

    pub fn exceptional(&self, i: usize) -> LatticeClass {
        let mut m = vec![0; self.r];
        m[i] = -1;
        LatticeClass { d: 0, m }
    }
}

/// The class `dH − Σ m_i E_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeClass {
    pub d: i64,
    pub m: Vec<i64>,
}

impl LatticeClass {
    pub fn new(d: i64, m: Vec<i64>) -> Self {
        LatticeClass { d, m }
    }

    pub fn dot(&self, other: &LatticeClass) -> Result<i64, LatticeError> {
        if self.m.len() != other.m.len() {
            return Err(LatticeError::RankMismatch);
        }
        Ok(self.d * other.d - self.m.iter().zip(&other.m).map(|(a, b)| a * b).sum::<i64>())
    }

    pub fn self_intersection(&self) -> i64 {
        self.d * self.d - self.m.iter().map(|a| a * a).sum::<i64>()
    }

    /// `C · K = −3d + Σ m_i`.
    pub fn k_degree(&self) -> i64 {
        -3 * self.d + self.m.iter().sum::<i64>()
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.m.iter().map(i64::to_string).collect();
        write!(f, "({}; {})", self.d, m.join(","))
    }
}

/// Every class with `0 <= d <= d_max`, all `m_i >= −1`, the given
/// self-intersection and `C·K = k_deg`, sorted by `(d, m)`.
pub fn enumerate_classes(lattice: &PicLattice, self_int: i64, k_deg: i64, d_max: i64) -> Vec<LatticeClass> {
    let r = lattice.r;
    let mut out = Vec::new();
    for d in 0..=d_max.max(-1) {
        let target_sum = k_deg + 3 * d;
        let target_sq = d * d - self_int;
        if target_sq < 0 {
            continue;
        }
        let bound = (target_sq as f64).sqrt() as i64 + 1;
        let mut m = vec![0i64; r];
        fill(&mut m, 0, target_sum, target_sq, bound, &mut |m| out.push(LatticeClass { d, m: m.to_vec() }));
    }
    out.sort();
    out
}

fn fill(m: &mut [i64], i: usize, sum_left: i64, sq_left: i64, bound: i64, emit: &mut impl FnMut(&[i64])) {
    let remaining = (m.len() - i) as i64;
    if remaining == 0 {
        if sum_left == 0 && sq_left == 0 {
            emit(m);
        }
        return;
    }
    // each remaining entry contributes at least -1 to the sum
    if sum_left < -remaining || sq_left < 0 {
        return;
    }
    for v in -1..=bound {
        let sq = v * v;
        if sq > sq_left {
            if v > 0 {
                break;
            }
            continue;
        }
        m[i] = v;
        fill(m, i + 1, sum_left - v, sq_left - sq, bound, emit);
    }
    m[i] = 0;
}

/// The seven F₂-points `[1:0:0], [0:1:0], [0:0:1], [1:1:0], [1:0:1], [0:1:1], [1:1:1]`.
pub const FANO_POINTS: [[u8; 3]; 7] = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]];

/// The seven collinear triples of `P²(F₂)`, as sorted indices into
/// [`FANO_POINTS`].
pub fn fano_lines() -> Vec<[usize; 3]> {
    let mut lines = Vec::new();
    for (a, pa) in FANO_POINTS.iter().enumerate() {
        for (b, pb) in FANO_POINTS.iter().enumerate().skip(a + 1) {
            for (c, pc) in FANO_POINTS.iter().enumerate().skip(b + 1) {
                // distinct points of F₂³ are collinear iff they sum to zero
                if (0..3).all(|k| pa[k] ^ pb[k] ^ pc[k] == 0) {
                    lines.push([a, b, c]);
                }
            }
        }
    }
    lines
}

/// `H − E_i − E_j − E_k` for each Fano line `{i, j, k}` on the blowup of
/// `P²_{F₂}` at all seven points.
pub fn langer_neg2_classes() -> Vec<LatticeClass> {
    fano_lines()
        .into_iter()
        .map(|line| {
            let mut m = vec![0; 7];
            for i in line {
                m[i] = 1;
            }
            LatticeClass { d: 1, m }
        })
        .collect()
}

/// Number of (−1)-classes at `r = 7` (degree ≤ 3) meeting every class in
/// `neg2` nonnegatively.
pub fn count_compatible_exceptionals(neg2: &[LatticeClass]) -> Result<usize, LatticeError> {
    compatible_exceptionals(neg2).map(|v| v.len())
}

pub fn compatible_exceptionals(neg2: &[LatticeClass]) -> Result<Vec<LatticeClass>, LatticeError> {
    let lattice = PicLattice::new(7)?;
    let all = enumerate_classes(&lattice, -1, -1, 3);
    let mut out = Vec::new();
    for c in all {
        let mut ok = true;
        for n in neg2 {
            if c.dot(n)? < 0 {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(c);
        }
    }
    Ok(out)
}

/// Counts for the Langer surface `Bl_{P²(F₂)} P²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LangerSummary {
    pub exceptional: usize,
    pub compatible: Vec<LatticeClass>,
    pub neg2: Vec<LatticeClass>,
    pub disjoint: bool,
}

pub fn langer_summary() -> Result<LangerSummary, LatticeError> {
    let lattice = PicLattice::new(7)?;
    let neg2 = langer_neg2_classes();
    let mut disjoint = true;
    for (i, a) in neg2.iter().enumerate() {
        for b in &neg2[i + 1..] {
            disjoint &= a.dot(b)? == 0;
        }
    }
    Ok(LangerSummary {
        exceptional: enumerate_classes(&lattice, -1, -1, 3).len(),
        compatible: compatible_exceptionals(&neg2)?,
        neg2,
        disjoint,
    })
}

impl fmt::Display for LangerSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(-1)-classes: {}; compatible: {}; (-2)-classes: {}; disjoint: {}",
            self.exceptional,
            self.compatible.len(),
            self.neg2.len(),
            if self.disjoint { "yes" } else { "no" }
        )
    }
}

/// A set of distinct points of `P²(F_q)`, normalized so the first nonzero
/// coordinate is 1 and kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    q: u64,
    points: Vec<[u8; 3]>,
}

impl PointConfig {
    pub fn new(q: u64, points: &[[u8; 3]]) -> Result<Self, LatticeError> {
        let field = field_for(q)?;
        let mut set = BTreeSet::new();
        for p in points {
            if p.iter().any(|&c| c as u64 >= q) {
                return Err(LatticeError::InvalidPoint(format!("{p:?} has a coordinate outside F_{q}")));
            }
            let n = normalize(&field, *p).ok_or_else(|| LatticeError::InvalidPoint(format!("{p:?} is zero")))?;
            if !set.insert(n) {
                return Err(LatticeError::InvalidPoint(format!("{p:?} is repeated")));
            }
        }
        Ok(PointConfig { q, points: set.into_iter().collect() })
    }

    pub fn points(&self) -> &[[u8; 3]] {
        &self.points
    }

    pub fn field_size(&self) -> u64 {
        self.q
    }
}

fn field_for(q: u64) -> Result<SmallField, LatticeError> {
    if q > 8 || prime_power_parts(q).is_none() {
        return Err(LatticeError::UnsupportedFieldSize(q));
    }
    SmallField::new(q).ok_or(LatticeError::UnsupportedFieldSize(q))
}

fn normalize(f: &SmallField, p: [u8; 3]) -> Option<[u8; 3]> {
    let lead = *p.iter().find(|&&c| c != 0)?;
    let inv = f.inv(lead);
    Some(p.map(|c| f.mul(c, inv)))
}

/// All points of `P²(F_q)` in normalized form, sorted.
pub fn plane_points(q: u64) -> Result<Vec<[u8; 3]>, LatticeError> {
    let f = field_for(q)?;
    let mut pts = BTreeSet::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                if let Some(n) = normalize(&f, [a, b, c]) {
                    pts.insert(n);
                }
            }
        }
    }
    Ok(pts.into_iter().collect())
}

pub fn is_full_plane_config(config: &PointConfig) -> bool {
    let q = config.q;
    config.points.len() as u64 == q * q + q + 1
}

/// A 3×3 matrix over F_q, row-major.
pub type Matrix3 = [[u8; 3]; 3];

fn det(f: &SmallField, m: &Matrix3) -> u8 {
    let t = |a: u8, b: u8, c: u8| f.mul(a, f.mul(b, c));
    let pos = f.add(f.add(t(m[0][0], m[1][1], m[2][2]), t(m[0][1], m[1][2], m[2][0])), t(m[0][2], m[1][0], m[2][1]));
    let neg = f.add(f.add(t(m[0][2], m[1][1], m[2][0]), t(m[0][0], m[1][2], m[2][1])), t(m[0][1], m[1][0], m[2][2]));
    f.sub(pos, neg)
}

fn apply(f: &SmallField, m: &Matrix3, p: [u8; 3]) -> [u8; 3] {
    let mut out = [0u8; 3];
    for (i, row) in m.iter().enumerate() {
        out[i] = f.add(f.add(f.mul(row[0], p[0]), f.mul(row[1], p[1])), f.mul(row[2], p[2]));
    }
    out
}

fn compose(f: &SmallField, a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut out = [[0u8; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut s = 0;
            for k in 0..3 {
                s = f.add(s, f.mul(a[i][k], b[k][j]));
            }
            out[i][j] = s;
        }
    }
    out
}

/// One representative per element of `PGL₃(F_q)`: invertible matrices whose
/// first nonzero entry (row-major) is 1.
pub fn pgl3_elements(q: u64) -> Result<Vec<Matrix3>, LatticeError> {
    let f = field_for(q)?;
    let q = q as usize;
    let mut out = Vec::new();
    let total = q.pow(9);
    for code in 0..total {
        let mut m = [[0u8; 3]; 3];
        let mut c = code;
        for k in 0..9 {
            m[k / 3][k % 3] = (c % q) as u8;
            c /= q;
        }
        let first = m.iter().flatten().find(|&&x| x != 0);
        if first != Some(&1) {
            continue;
        }
        if det(&f, &m) != 0 {
            out.push(m);
        }
    }
    Ok(out)
}

/// Normalizes a matrix to its `PGL₃` representative.
pub fn pgl3_normalize(q: u64, m: &Matrix3) -> Result<Matrix3, LatticeError> {
    let f = field_for(q)?;
    let lead = *m.iter().flatten().find(|&&x| x != 0).ok_or(LatticeError::InvalidPoint("zero matrix".into()))?;
    let inv = f.inv(lead);
    Ok(m.map(|row| row.map(|x| f.mul(x, inv))))
}

pub fn pgl3_compose(q: u64, a: &Matrix3, b: &Matrix3) -> Result<Matrix3, LatticeError> {
    let f = field_for(q)?;
    pgl3_normalize(q, &compose(&f, a, b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitInfo {
    /// Lexicographically least image of the configuration.
    pub canonical: Vec<[u8; 3]>,
    pub orbit_size: u64,
    pub stabilizer_size: u64,
    pub group_order: u64,
}

/// Canonical form and orbit size of `config` under `PGL₃(F_q)`.
pub fn pgl_orbit_canonical(config: &PointConfig) -> Result<OrbitInfo, LatticeError> {
    let f = field_for(config.q)?;
    let group = pgl3_elements(config.q)?;
    let mut best: Option<Vec<[u8; 3]>> = None;
    let mut stabilizer = 0u64;
    for g in &group {
        let mut image: Vec<[u8; 3]> =
            config.points.iter().map(|&p| normalize(&f, apply(&f, g, p)).expect("invertible")).collect();
        image.sort();
        if image == config.points {
            stabilizer += 1;
        }
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    }
    let group_order = group.len() as u64;
    Ok(OrbitInfo {
        canonical: best.unwrap_or_default(),
        orbit_size: group_order / stabilizer,
        stabilizer_size: stabilizer,
        group_order,
    })
}
