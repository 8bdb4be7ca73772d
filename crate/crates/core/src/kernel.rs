//! Product kernels `K(z,w) = Π_j (1 - z_j conj(w_j))^{-α_j}` on the polydisc and their
//! closed-form mixed holomorphic/anti-holomorphic partial derivatives.

use std::ops::Deref;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{JetError, Result};
use crate::special::{binomial, falling_factorial, pochhammer};

pub type C64 = Complex64;

/// Default cap on `|z_orders| + |w_orders|`.
pub const DEFAULT_ORDER_CAP: usize = 8;

/// Weighted Bergman kernel on `D^m`, one positive exponent per factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductKernel {
    weights: Vec<f64>,
}

impl ProductKernel {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(JetError::InvalidWeights("at least one factor is required".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(JetError::InvalidWeights(format!("weight {w} is not a positive real")));
        }
        Ok(Self { weights })
    }

    pub fn m(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    fn check_pair(&self, z: &[C64], w: &[C64]) -> Result<()> {
        for p in [z, w] {
            if p.len() != self.m() {
                return Err(JetError::DimensionMismatch { expected: self.m(), got: p.len() });
            }
            check_in_polydisc(p)?;
        }
        Ok(())
    }

    pub fn eval(&self, z: &[C64], w: &[C64]) -> Result<C64> {
        self.check_pair(z, w)?;
        Ok(eval_unchecked(&self.weights, z, w))
    }

    pub fn mixed_partial(&self, d: &DerivOrder, z: &[C64], w: &[C64]) -> Result<C64> {
        self.check_pair(z, w)?;
        if d.z_orders.len() != self.m() {
            return Err(JetError::DimensionMismatch { expected: self.m(), got: d.z_orders.len() });
        }
        Ok(mixed_partial_unchecked(&self.weights, &d.z_orders, &d.w_orders, z, w))
    }
}

pub(crate) fn check_in_polydisc(p: &[C64]) -> Result<()> {
    for (index, c) in p.iter().enumerate() {
        let modulus = c.norm();
        if !(modulus < 1.0) {
            return Err(JetError::OutsideDomain { index, modulus });
        }
    }
    Ok(())
}

/// A point of the open polydisc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point(Vec<C64>);

impl Point {
    pub fn new(coords: Vec<C64>) -> Result<Self> {
        check_in_polydisc(&coords)?;
        Ok(Self(coords))
    }

    pub fn origin(m: usize) -> Self {
        Self(vec![C64::new(0.0, 0.0); m])
    }

    /// The point `(t, ..., t)` of the diagonal.
    pub fn diagonal(m: usize, t: C64) -> Result<Self> {
        Self::new(vec![t; m])
    }

    pub fn coords(&self) -> &[C64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<C64> {
        self.0
    }
}

impl Deref for Point {
    type Target = [C64];
    fn deref(&self) -> &[C64] {
        &self.0
    }
}

/// Orders of `∂_z^{z_orders} ∂̄_w^{w_orders}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DerivOrder {
    pub z_orders: Vec<usize>,
    pub w_orders: Vec<usize>,
}

impl DerivOrder {
    pub fn new(z_orders: Vec<usize>, w_orders: Vec<usize>) -> Result<Self> {
        Self::with_cap(z_orders, w_orders, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(z_orders: Vec<usize>, w_orders: Vec<usize>, cap: usize) -> Result<Self> {
        if z_orders.len() != w_orders.len() {
            return Err(JetError::DimensionMismatch { expected: z_orders.len(), got: w_orders.len() });
        }
        let order: usize = z_orders.iter().chain(&w_orders).sum();
        if order > cap {
            return Err(JetError::OrderCapExceeded { order, cap });
        }
        Ok(Self { z_orders, w_orders })
    }

    pub fn zero(m: usize) -> Self {
        Self { z_orders: vec![0; m], w_orders: vec![0; m] }
    }

    pub fn total(&self) -> usize {
        self.z_orders.iter().chain(&self.w_orders).sum()
    }

    /// Orders with the roles of `z` and `w` exchanged.
    pub fn swapped(&self) -> Self {
        Self { z_orders: self.w_orders.clone(), w_orders: self.z_orders.clone() }
    }
}

pub fn eval_kernel(k: &ProductKernel, z: &[C64], w: &[C64]) -> Result<C64> {
    k.eval(z, w)
}

pub fn mixed_partial(k: &ProductKernel, d: &DerivOrder, z: &[C64], w: &[C64]) -> Result<C64> {
    k.mixed_partial(d, z, w)
}

pub(crate) fn eval_unchecked(weights: &[f64], z: &[C64], w: &[C64]) -> C64 {
    weights
        .iter()
        .zip(z.iter().zip(w))
        .map(|(&lam, (zj, wj))| (C64::new(1.0, 0.0) - zj * wj.conj()).powf(-lam))
        .product()
}

pub(crate) fn mixed_partial_unchecked(
    weights: &[f64],
    z_orders: &[usize],
    w_orders: &[usize],
    z: &[C64],
    w: &[C64],
) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    for j in 0..weights.len() {
        acc *= factor_partial_unchecked(weights[j], z_orders[j], w_orders[j], z[j], w[j].conj());
    }
    acc
}

/// `∂_z^a ∂̄_w^b (1 - z w̄)^{-λ}` evaluated at `(z, w̄)`.
pub fn factor_mixed_partial(lambda: f64, a: usize, b: usize, z: C64, wbar: C64) -> Result<C64> {
    let x = (z * wbar).norm();
    if !(x < 1.0) {
        return Err(JetError::InvalidArgument(format!("|z w̄| = {x} must be < 1")));
    }
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(JetError::InvalidWeights(format!("weight {lambda} is not a positive real")));
    }
    Ok(factor_partial_unchecked(lambda, a, b, z, wbar))
}

fn factor_partial_unchecked(lambda: f64, a: usize, b: usize, z: C64, wbar: C64) -> C64 {
    if a > b {
        // ∂^a ∂̄^b f(z,w) = conj(∂^b ∂̄^a f(w,z))
        return factor_partial_unchecked(lambda, b, a, wbar.conj(), z.conj()).conj();
    }
    let x = z * wbar;
    let one = C64::new(1.0, 0.0);
    let poch_a = pochhammer(lambda, a);
    let mut sum = C64::new(0.0, 0.0);
    let mut xt = one;
    for t in 0..=a {
        let c = binomial(a, t) * falling_factorial(b, a - t) * poch_a / pochhammer(lambda, a - t);
        sum += xt * c;
        xt *= x;
    }
    let zpow = if b > a { z.powu((b - a) as u32) } else { one };
    sum * pochhammer(lambda, b) * zpow * (one - x).powf(-(lambda + (a + b) as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let k = ProductKernel::new(vec![2.0]).unwrap();
        let v = k.eval(&[c(0.5, 0.0)], &[c(0.5, 0.0)]).unwrap();
        assert!((v - c(16.0 / 9.0, 0.0)).norm() < 1e-14);

        let k3 = ProductKernel::new(vec![1.0, 1.0, 1.0]).unwrap();
        let z = [c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        assert!((k3.eval(&z, &z).unwrap() - c(4.0 / 3.0, 0.0)).norm() < 1e-14);
        let o = Point::origin(3);
        assert_eq!(k3.eval(&o, &o).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn rejects_boundary_points() {
        let k = ProductKernel::new(vec![1.0, 2.0]).unwrap();
        let err = k.eval(&[c(1.0, 0.0), c(0.0, 0.0)], &[c(0.0, 0.0), c(0.0, 0.0)]);
        assert!(matches!(err, Err(JetError::OutsideDomain { index: 0, .. })));
        assert!(Point::new(vec![c(0.3, 0.0), c(0.0, 1.2)]).is_err());
    }

    #[test]
    fn rejects_bad_weights() {
        assert!(ProductKernel::new(vec![]).is_err());
        assert!(ProductKernel::new(vec![1.0, 0.0]).is_err());
        assert!(ProductKernel::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn order_cap() {
        assert!(DerivOrder::new(vec![4, 0], vec![4, 1]).is_err());
        assert!(DerivOrder::new(vec![4, 0], vec![4, 0]).is_ok());
        assert!(DerivOrder::with_cap(vec![1], vec![1], 1).is_err());
    }

    #[test]
    fn factor_examples() {
        // λ z (1 - z w̄)^{-λ-1} at λ=1, z=0.5, w̄=0
        let v = factor_mixed_partial(1.0, 0, 1, c(0.5, 0.0), c(0.0, 0.0)).unwrap();
        assert!((v - c(0.5, 0.0)).norm() < 1e-15);
        let z = c(0.3, 0.2);
        let wb = c(-0.1, 0.4);
        let v0 = factor_mixed_partial(2.5, 0, 0, z, wb).unwrap();
        assert!((v0 - (c(1.0, 0.0) - z * wb).powf(-2.5)).norm() < 1e-15);
        let lam = 1.7;
        let v1 = factor_mixed_partial(lam, 0, 1, z, wb).unwrap();
        let expect = z * lam * (c(1.0, 0.0) - z * wb).powf(-lam - 1.0);
        assert!((v1 - expect).norm() < 1e-14);
    }

    /// Direct Taylor-series reference for `∂_z^a ∂_u^b (1 - z u)^{-λ}`.
    fn series_reference(lambda: f64, a: usize, b: usize, z: C64, u: C64) -> C64 {
        let mut sum = C64::new(0.0, 0.0);
        let mut coeff = 1.0; // (λ)_n / n!
        for n in 0..400usize {
            if n >= a && n >= b {
                let term = coeff * falling_factorial(n, a) * falling_factorial(n, b);
                sum += z.powu((n - a) as u32) * u.powu((n - b) as u32) * term;
            }
            coeff *= (lambda + n as f64) / (n + 1) as f64;
        }
        sum
    }

    #[test]
    fn factor_matches_series_both_branches() {
        let z = c(0.31, -0.12);
        let u = c(0.22, 0.18);
        for a in 0..4 {
            for b in 0..4 {
                let v = factor_mixed_partial(1.5, a, b, z, u).unwrap();
                let r = series_reference(1.5, a, b, z, u);
                assert!((v - r).norm() <= 1e-12 * r.norm().max(1.0), "a={a} b={b} {v} {r}");
            }
        }
    }

    #[test]
    fn hermitian_symmetry() {
        let k = ProductKernel::new(vec![1.3, 0.4, 2.2]).unwrap();
        let z = [c(0.1, 0.5), c(-0.3, 0.2), c(0.6, -0.1)];
        let w = [c(0.4, -0.2), c(0.05, 0.66), c(-0.2, -0.3)];
        let d = DerivOrder::new(vec![2, 0, 1], vec![1, 3, 0]).unwrap();
        let lhs = k.mixed_partial(&d, &z, &w).unwrap().conj();
        let rhs = k.mixed_partial(&d.swapped(), &w, &z).unwrap();
        assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm());
    }

    #[test]
    fn zero_order_is_kernel() {
        let k = ProductKernel::new(vec![0.7, 1.9]).unwrap();
        let z = [c(0.1, 0.5), c(-0.3, 0.2)];
        let w = [c(0.4, -0.2), c(0.05, 0.66)];
        let a = k.mixed_partial(&DerivOrder::zero(2), &z, &w).unwrap();
        assert!((a - k.eval(&z, &w).unwrap()).norm() < 1e-15);
    }
}
