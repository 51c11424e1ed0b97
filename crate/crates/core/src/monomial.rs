//! Exponent vectors and term orders.

use std::cmp::Ordering;
use std::fmt;

use crate::error::AlgebraError;

/// An exponent vector. Ordered by graded reverse lexicographic order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn new(exponents: Vec<u16>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize, e: u16) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial, AlgebraError> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b).ok_or(AlgebraError::ExponentOverflow))
            .collect::<Result<_, _>>()
            .map(Monomial)
    }

    pub fn pow(&self, e: u32) -> Result<Monomial, AlgebraError> {
        self.0
            .iter()
            .map(|&a| u16::try_from(a as u64 * e as u64).map_err(|_| AlgebraError::ExponentOverflow))
            .collect::<Result<_, _>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(&other.0).map(|(&a, &b)| a.checked_sub(b)).collect::<Option<_>>().map(Monomial)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// True when every exponent is strictly below `q`.
    pub fn below(&self, q: u32) -> bool {
        self.0.iter().all(|&e| (e as u32) < q)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded reverse lexicographic comparison of two exponent slices.
pub fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Term orders available to the Gröbner engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// Graded reverse lexicographic in the given variable order.
    Grevlex,
    /// Block order eliminating variable 0: compare its exponent first, then
    /// grevlex on the remaining variables.
    EliminateFirst,
}

impl TermOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Grevlex => grevlex(&a.0, &b.0),
            TermOrder::EliminateFirst => a.0[0].cmp(&b.0[0]).then_with(|| grevlex(&a.0[1..], &b.0[1..])),
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::Grevlex => f.write_str("grevlex"),
            TermOrder::EliminateFirst => f.write_str("elim(t)>grevlex"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[u16]) -> Monomial {
        Monomial::new(v.to_vec())
    }

    #[test]
    fn grevlex_orders_by_degree_then_reverse() {
        // x > y > z in degree one
        assert!(m(&[1, 0, 0]) > m(&[0, 1, 0]));
        assert!(m(&[0, 1, 0]) > m(&[0, 0, 1]));
        // x*z < y^2 in grevlex
        assert!(m(&[1, 0, 1]) < m(&[0, 2, 0]));
        assert!(m(&[0, 0, 2]) > m(&[1, 0, 0]));
    }

    #[test]
    fn elimination_puts_first_variable_on_top() {
        let o = TermOrder::EliminateFirst;
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 1, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn mul_detects_overflow() {
        let a = m(&[u16::MAX]);
        assert_eq!(a.mul(&m(&[1])), Err(AlgebraError::ExponentOverflow));
        assert_eq!(m(&[300]).pow(300), Err(AlgebraError::ExponentOverflow));
    }

    #[test]
    fn division_and_lcm() {
        assert_eq!(m(&[2, 1]).div(&m(&[1, 1])), Some(m(&[1, 0])));
        assert_eq!(m(&[2, 0]).div(&m(&[1, 1])), None);
        assert_eq!(m(&[2, 0]).lcm(&m(&[1, 3])), m(&[2, 3]));
        assert!(m(&[2, 0]).coprime(&m(&[0, 3])));
    }
}
