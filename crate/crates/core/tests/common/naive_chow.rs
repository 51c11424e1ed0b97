//! Chow rings of split bundles over products of projective spaces,
//! computed by expanding and rewriting with the defining relations.

use std::collections::BTreeMap;

use fanocheck::chow::DivClass;

/// Integer polynomials in `h_1..h_k, ξ`, reduced by hand.
pub type Naive = BTreeMap<Vec<u32>, i128>;

pub struct NaiveRing {
    pub dims: Vec<usize>,
    pub twists: Vec<Vec<i64>>,
}

impl NaiveRing {
    fn k(&self) -> usize {
        self.dims.len()
    }

    fn linear(&self, c: &DivClass) -> Naive {
        let mut out = Naive::new();
        for (i, &a) in c.h.iter().enumerate() {
            let mut e = vec![0; self.k() + 1];
            e[i] = 1;
            if a != 0 {
                out.insert(e, a as i128);
            }
        }
        if let Some(x) = c.xi.filter(|&x| x != 0) {
            let mut e = vec![0; self.k() + 1];
            e[self.k()] = 1;
            out.insert(e, x as i128);
        }
        out
    }

    fn mul(&self, a: &Naive, b: &Naive) -> Naive {
        let mut out = Naive::new();
        for (ea, ca) in a {
            for (eb, cb) in b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if e[..self.k()].iter().zip(&self.dims).any(|(&x, &n)| x as usize > n) {
                    continue;
                }
                *out.entry(e).or_default() += ca * cb;
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// `ξ^r − Π_j (ξ − a_j·h)`, which has ξ-degree below `r`.
    fn xi_power_rule(&self) -> Naive {
        let k = self.k();
        let mut prod: Naive = [(vec![0; k + 1], 1)].into();
        for a in &self.twists {
            let mut factor = Naive::new();
            let mut xi = vec![0; k + 1];
            xi[k] = 1;
            factor.insert(xi, 1);
            for (c, &w) in a.iter().enumerate() {
                if w != 0 {
                    let mut e = vec![0; k + 1];
                    e[c] = 1;
                    factor.insert(e, -(w as i128));
                }
            }
            prod = self.mul(&prod, &factor);
        }
        let r = self.twists.len() as u32;
        let mut top = vec![0; k + 1];
        top[k] = r;
        let mut rule: Naive = [(top, 1)].into();
        for (e, c) in prod {
            *rule.entry(e).or_default() -= c;
        }
        rule.retain(|_, c| *c != 0);
        rule
    }

    fn reduce(&self, mut a: Naive) -> Naive {
        let k = self.k();
        let r = self.twists.len() as u32;
        let rule = self.xi_power_rule();
        loop {
            let Some(e) = a.keys().find(|e| e[k] >= r).cloned() else { return a };
            let c = a.remove(&e).unwrap();
            let mut rest = e.clone();
            rest[k] -= r;
            for (re, rc) in self.mul(&[(rest, c)].into(), &rule) {
                *a.entry(re).or_default() += rc;
            }
            a.retain(|_, c| *c != 0);
        }
    }

    pub fn intersect(&self, classes: &[DivClass]) -> i128 {
        let k = self.k();
        let mut acc: Naive = [(vec![0; k + 1], 1)].into();
        for c in classes {
            acc = self.reduce(self.mul(&acc, &self.linear(c)));
        }
        let mut top: Vec<u32> = self.dims.iter().map(|&n| n as u32).collect();
        top.push(self.twists.len().saturating_sub(1) as u32);
        acc.get(&top).copied().unwrap_or(0)
    }
}
