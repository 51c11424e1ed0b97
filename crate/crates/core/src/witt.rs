//! The Witt carry Δ₁.
//!
//! For `f = Σ c_i m_i` over F_p, lift every coefficient to `c̃_i ∈ {0..p-1}`
//! and set
//!
//! ```text
//! Δ₁(f) = ((Σ c̃_i m_i)^p − Σ c̃_i^p m_i^p) / p   (mod p)
//! ```
//!
//! The numerator is divisible by p coefficientwise, so it is enough to
//! expand it in `(Z/p²)[x]`: a coefficient `a` of the integer numerator is
//! `p·b`, and `a mod p²` determines `b mod p`.

use std::collections::BTreeMap;

use crate::error::AlgebraError;
use crate::monomial::Monomial;
use crate::poly::{mul_raw, Polynomial};

/// The second Witt component of the sum of the terms of `f`.
pub fn delta1(f: &Polynomial) -> Result<Polynomial, AlgebraError> {
    let p = f.prime();
    let p64 = p.get() as u64;
    let modulus = p64 * p64;
    let lifted: BTreeMap<Monomial, u64> = f.terms().map(|(m, c)| (m.clone(), c as u64)).collect();
    if lifted.len() <= 1 {
        return Ok(Polynomial::zero(p, f.vars().clone()));
    }

    let mut acc: BTreeMap<Monomial, u64> = [(Monomial::one(f.vars().len()), 1)].into();
    let mut base = lifted.clone();
    let mut e = p64;
    let norm = |m: std::collections::HashMap<Monomial, u64>| -> BTreeMap<Monomial, u64> {
        m.into_iter().map(|(k, c)| (k, c % modulus)).filter(|&(_, c)| c != 0).collect()
    };
    while e > 0 {
        if e & 1 == 1 {
            acc = norm(mul_raw(&acc, &base, modulus, None)?);
        }
        e >>= 1;
        if e > 0 {
            base = norm(mul_raw(&base, &base, modulus, None)?);
        }
    }

    for (m, c) in &lifted {
        let mp = m.pow(p.get())?;
        let cp = pow_mod(*c, p64, modulus);
        let slot = acc.entry(mp).or_insert(0);
        *slot = (*slot + modulus - cp) % modulus;
    }

    let terms = acc.into_iter().map(|(m, c)| {
        debug_assert_eq!(c % p64, 0, "Witt numerator not divisible by p");
        (m, c / p64)
    });
    Ok(Polynomial::from_terms(p, f.vars().clone(), terms))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::field::Prime;
    use crate::parse::parse_poly;
    use crate::poly::VariableSet;

    fn d1(text: &str, names: &[&str], p: u32) -> String {
        let vars = Arc::new(VariableSet::standard(names).unwrap());
        let f = parse_poly(text, &vars, Prime::new(p).unwrap()).unwrap();
        delta1(&f).unwrap().to_string()
    }

    #[test]
    fn two_term_carry_in_char_two() {
        assert_eq!(d1("x + y", &["x", "y"], 2), "x*y");
    }

    #[test]
    fn three_term_carry_in_char_two() {
        assert_eq!(d1("x + y + z", &["x", "y", "z"], 2), "x*y + x*z + y*z");
    }

    #[test]
    fn two_term_carry_in_char_three() {
        // ((x+y)^3 - x^3 - y^3)/3 = x^2 y + x y^2
        assert_eq!(d1("x + y", &["x", "y"], 3), "x^2*y + x*y^2");
    }

    #[test]
    fn single_terms_have_no_carry() {
        for p in [2, 3, 5, 7] {
            assert_eq!(d1("3*x^2*y", &["x", "y"], p), "0");
        }
        assert_eq!(d1("0", &["x"], 5), "0");
    }

    #[test]
    fn lifted_coefficients_matter() {
        // p = 3, f = 2x + y: ((2x+y)^3 - 8x^3 - y^3)/3 = 4x^2 y + 2 x y^2
        assert_eq!(d1("2*x + y", &["x", "y"], 3), "x^2*y + 2*x*y^2");
    }
}
