//! Table-driven arithmetic in small finite fields F_q, `q = p^k <= 256`.
//!
//! An element is encoded as the integer `Σ c_i p^i` of its coefficient
//! vector over F_p in the basis `1, α, ..., α^{k-1}`; F_p sits inside as
//! `0..p`.

use crate::field::prime_power_parts;
use crate::poly::Polynomial;

#[derive(Clone, Debug)]
pub struct SmallField {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl SmallField {
    pub fn new(q: u64) -> Option<SmallField> {
        let (p, k) = prime_power_parts(q)?;
        if q > 256 {
            return None;
        }
        let (p, k, q) = (p as usize, k as usize, q as usize);
        let modulus = irreducible(p, k);
        let digits = |mut x: usize| {
            let mut v = vec![0usize; k];
            for d in v.iter_mut() {
                *d = x % p;
                x /= p;
            }
            v
        };
        let encode = |v: &[usize]| v.iter().rev().fold(0usize, |acc, &d| acc * p + d);
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&s) as u8;
                // schoolbook product then reduce by the monic modulus
                let mut prod = vec![0usize; 2 * k];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for deg in (k..2 * k).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (i, m) in modulus.iter().enumerate().take(k) {
                            let slot = &mut prod[deg - k + i];
                            *slot = (*slot + p * p - c * m % p) % p;
                        }
                        prod[deg] = 0;
                    }
                }
                mul[a * q + b] = encode(&prod[..k]) as u8;
            }
        }
        let neg = (0..q).map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8).collect();
        let inv =
            (0..q).map(|a| if a == 0 { 0 } else { (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8 }).collect();
        Some(SmallField { q, p, add, mul, neg, inv })
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u8, e: u32) -> u8 {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    /// Evaluates an F_p-polynomial at a point with coordinates in this field.
    pub fn eval(&self, f: &Polynomial, point: &[u8]) -> u8 {
        assert_eq!(f.prime().get() as usize, self.p);
        let mut acc = 0u8;
        for (m, c) in f.terms() {
            let mut t = c as u8;
            for (&x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = self.mul(t, self.pow(x, e as u32));
                }
            }
            acc = self.add(acc, t);
        }
        acc
    }
}

/// Coefficients `m_0..m_{k-1}` of a monic irreducible `x^k + Σ m_i x^i` over F_p.
fn irreducible(p: usize, k: usize) -> Vec<usize> {
    if k == 1 {
        return vec![0];
    }
    let total = p.pow(k as u32);
    'cand: for code in 0..total {
        let mut f: Vec<usize> = (0..k).map(|i| code / p.pow(i as u32) % p).collect();
        f.push(1);
        if f[0] == 0 {
            continue;
        }
        // trial division by every monic polynomial of degree 1..=k/2
        for d in 1..=k / 2 {
            for gcode in 0..p.pow(d as u32) {
                let mut g: Vec<usize> = (0..d).map(|i| gcode / p.pow(i as u32) % p).collect();
                g.push(1);
                if poly_rem_is_zero(&f, &g, p) {
                    continue 'cand;
                }
            }
        }
        f.pop();
        return f;
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn poly_rem_is_zero(f: &[usize], g: &[usize], p: usize) -> bool {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    for deg in (dg..r.len()).rev() {
        let c = r[deg];
        if c != 0 {
            for (i, gi) in g.iter().enumerate() {
                let slot = &mut r[deg - dg + i];
                *slot = (*slot + p * p - c * gi % p) % p;
            }
        }
    }
    r.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small_cases() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = SmallField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1, "q={q} a={a}");
                }
                // Frobenius fixes everything: a^q = a
                assert_eq!(f.pow(a, q as u32), a);
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(SmallField::new(6).is_none());
        assert!(SmallField::new(1).is_none());
    }
}
