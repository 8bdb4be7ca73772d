//! Sparse multivariate polynomials with complex coefficients.
//!
//! Used both for holomorphic test functions and for constant-coefficient differential
//! operators in the symbols `∂_1, ..., ∂_n`.

use std::collections::BTreeMap;

use rand::Rng;

use crate::kernel::C64;
use crate::special::falling_factorial;

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<usize>, C64>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: C64) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Vec<usize>, c: C64) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The coordinate function `x_i`.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, C64::new(1.0, 0.0))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Vec<usize>, c: C64) {
        assert_eq!(exps.len(), self.nvars, "monomial arity");
        if c == C64::new(0.0, 0.0) {
            return;
        }
        let e = self.terms.entry(exps).or_insert(C64::new(0.0, 0.0));
        *e += c;
    }

    pub fn coeff(&self, exps: &[usize]) -> C64 {
        self.terms.get(exps).copied().unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &C64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| *c == C64::new(0.0, 0.0))
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// True when every term has total degree `d`.
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<usize>() == d)
    }

    pub fn scale(&self, s: C64) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<usize> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::constant(self.nvars, C64::new(1.0, 0.0));
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &[C64]) -> C64 {
        assert_eq!(x.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| e.iter().zip(x).fold(*c, |acc, (&k, xi)| acc * xi.powu(k as u32)))
            .sum()
    }

    /// `∂^orders` of the polynomial.
    pub fn derivative(&self, orders: &[usize]) -> Self {
        assert_eq!(orders.len(), self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().zip(orders).any(|(a, o)| o > a) {
                continue;
            }
            let f: f64 = e.iter().zip(orders).map(|(&a, &o)| falling_factorial(a, o)).product();
            let ne: Vec<usize> = e.iter().zip(orders).map(|(a, o)| a - o).collect();
            out.add_term(ne, c * f);
        }
        out
    }

    /// Substitutes polynomial `subs[i]` (all sharing one arity) for variable `i`.
    pub fn compose(&self, subs: &[Polynomial]) -> Self {
        assert_eq!(subs.len(), self.nvars);
        let n = subs.first().map(|p| p.nvars).unwrap_or(0);
        let mut out = Self::zero(n);
        for (e, c) in &self.terms {
            let mut t = Self::constant(n, *c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t.mul(&subs[i].pow(k));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Random polynomial of total degree ≤ `degree` with coefficients in the unit square.
    pub fn random<R: Rng>(nvars: usize, degree: usize, rng: &mut R) -> Self {
        let mut out = Self::zero(nvars);
        for e in exponents_up_to(nvars, degree) {
            out.add_term(e, C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        }
        out
    }
}

/// All exponent vectors with total degree ≤ `degree`.
pub fn exponents_up_to(nvars: usize, degree: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; nvars];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, degree, &mut cur, &mut out);
    out
}
