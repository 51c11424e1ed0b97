#![allow(dead_code)]

pub mod naive_chow;

use std::collections::BTreeMap;
use std::sync::Arc;

use fanocheck::gf::SmallField;
use fanocheck::{Monomial, Polynomial, Prime, VariableSet};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vars(n: usize) -> Arc<VariableSet> {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    Arc::new(VariableSet::standard(&names).unwrap())
}

pub fn prime(p: u32) -> Prime {
    Prime::new(p).unwrap()
}

/// Up to `terms` random terms with exponents at most `max_exp`.
pub fn random_poly(rng: &mut ChaCha8Rng, p: Prime, vars: &Arc<VariableSet>, terms: usize, max_exp: u16) -> Polynomial {
    let n = vars.len();
    let t: Vec<(Monomial, u64)> = (0..terms)
        .map(|_| {
            let m = Monomial::new((0..n).map(|_| rng.gen_range(0..=max_exp)).collect());
            (m, rng.gen_range(1..p.get() as u64 + 1))
        })
        .collect();
    Polynomial::from_terms(p, vars.clone(), t)
}

/// Random homogeneous polynomial of total degree `deg` with at least one term.
pub fn random_homogeneous(
    rng: &mut ChaCha8Rng,
    p: Prime,
    vars: &Arc<VariableSet>,
    deg: u16,
    terms: usize,
) -> Polynomial {
    loop {
        let n = vars.len();
        let t: Vec<(Monomial, u64)> = (0..terms)
            .map(|_| {
                let mut e = vec![0u16; n];
                for _ in 0..deg {
                    e[rng.gen_range(0..n)] += 1;
                }
                (Monomial::new(e), rng.gen_range(1..p.get() as u64))
            })
            .collect();
        let f = Polynomial::from_terms(p, vars.clone(), t);
        if !f.is_zero() {
            return f;
        }
    }
}

/// Dense-map integer polynomial used as an independent oracle.
pub type ZPoly = BTreeMap<Vec<u32>, BigInt>;

pub fn lift(f: &Polynomial) -> ZPoly {
    f.terms().map(|(m, c)| (m.exponents().iter().map(|&e| e as u32).collect(), BigInt::from(c))).collect()
}

pub fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = ZPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn zpow(a: &ZPoly, e: u64, n: usize) -> ZPoly {
    let mut acc: ZPoly = [(vec![0; n], BigInt::from(1))].into();
    for _ in 0..e {
        acc = zmul(&acc, a);
    }
    acc
}

/// Reduces an integer polynomial mod p into the given ring, keeping only
/// monomials accepted by `keep`.
pub fn reduce(z: &ZPoly, p: Prime, vars: &Arc<VariableSet>, keep: impl Fn(&[u32]) -> bool) -> Polynomial {
    let pm = BigInt::from(p.get());
    let terms = z.iter().filter(|(m, _)| keep(m)).map(|(m, c)| {
        let mut r = c % &pm;
        if r.is_negative() {
            r += &pm;
        }
        let r: u64 = r.try_into().unwrap();
        (Monomial::new(m.iter().map(|&e| e as u16).collect()), r)
    });
    Polynomial::from_terms(p, vars.clone(), terms)
}

/// `((Σ t_i)^p − Σ t_i^p) / p mod p` over the integers.
pub fn delta1_oracle(f: &Polynomial) -> Polynomial {
    let p = f.prime();
    let n = f.vars().len();
    let z = lift(f);
    let mut num = zpow(&z, p.get() as u64, n);
    for (m, c) in &z {
        let single: ZPoly = [(m.clone(), c.clone())].into();
        for (k, v) in zpow(&single, p.get() as u64, n) {
            *num.entry(k).or_default() -= v;
        }
    }
    let pb = BigInt::from(p.get());
    for c in num.values_mut() {
        assert!((&*c % &pb) == BigInt::from(0), "sum of p-th powers is not divisible by p");
        *c /= &pb;
    }
    reduce(&num, p, f.vars(), |_| true)
}

/// Whether some point of `V(gens)` over `field` has `g ≠ 0`.
pub fn has_point_off(field: &SmallField, gens: &[Polynomial], g: &Polynomial, n: usize) -> bool {
    let q = field.size();
    let mut point = vec![0u8; n];
    for code in 0..q.pow(n as u32) {
        let mut c = code;
        for x in point.iter_mut() {
            *x = (c % q) as u8;
            c /= q;
        }
        if field.eval(g, &point) != 0 && gens.iter().all(|f| field.eval(f, &point) == 0) {
            return true;
        }
    }
    false
}

/// Normalized points of `P^{n-1}(F_q)`.
pub fn projective_points(field: &SmallField, n: usize) -> Vec<Vec<u8>> {
    let q = field.size();
    let mut out = Vec::new();
    for lead in 0..n {
        for code in 0..q.pow((n - lead - 1) as u32) {
            let mut pt = vec![0u8; n];
            pt[lead] = 1;
            let mut c = code;
            for x in pt[lead + 1..].iter_mut() {
                *x = (c % q) as u8;
                c /= q;
            }
            out.push(pt);
        }
    }
    out
}

/// Whether all `gens` vanish at some point of `Π P^{n_j - 1}(F_q)`.
pub fn common_projective_zero(field: &SmallField, gens: &[Polynomial], sizes: &[usize]) -> bool {
    let per_factor: Vec<Vec<Vec<u8>>> = sizes.iter().map(|&n| projective_points(field, n)).collect();
    let mut idx = vec![0usize; sizes.len()];
    loop {
        let point: Vec<u8> = idx.iter().zip(&per_factor).flat_map(|(&i, pts)| pts[i].clone()).collect();
        if gens.iter().all(|g| field.eval(g, &point) == 0) {
            return true;
        }
        let mut j = 0;
        while j < idx.len() {
            idx[j] += 1;
            if idx[j] < per_factor[j].len() {
                break;
            }
            idx[j] = 0;
            j += 1;
        }
        if j == idx.len() {
            return false;
        }
    }
}
