//! Independent numerical differentiation oracle.
//!
//! Derivatives of a holomorphic function are read off from samples on small circles
//! (a discrete Cauchy integral), then Richardson-extrapolated over two radii. The
//! kernel oracle works factor by factor on the 2 holomorphic variables `(z_j, conj(w_j))`
//! and multiplies the results, so its cost does not grow with `m`.

use std::f64::consts::PI;

use crate::error::{JetError, Result};
use crate::kernel::{check_in_polydisc, DerivOrder, ProductKernel, C64};
use crate::special::factorial;

/// Samples per circle.
pub const CONTOUR_POINTS: usize = 16;

/// Default circle radius for [`fd_mixed_partial`].
pub const DEFAULT_RADIUS: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FdEstimate {
    pub value: C64,
    /// Difference between the extrapolated value and the finer single-radius value.
    pub error_estimate: f64,
}

fn circle_stencil<F: Fn(&[C64]) -> C64>(f: &F, point: &[C64], active: &[(usize, usize)], r: f64) -> C64 {
    let m = CONTOUR_POINTS;
    let roots: Vec<C64> = (0..m).map(|k| C64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64)).collect();
    let total = m.pow(active.len() as u32);
    let mut x = point.to_vec();
    let mut sum = C64::new(0.0, 0.0);
    for flat in 0..total {
        let mut rem = flat;
        let mut weight = C64::new(1.0, 0.0);
        for &(var, order) in active {
            let k = rem % m;
            rem /= m;
            x[var] = point[var] + roots[k] * r;
            // ω^{-k n}
            weight *= roots[(m - (k * order) % m) % m];
        }
        sum += f(&x) * weight;
    }
    let mut scale = 1.0;
    for &(_, order) in active {
        scale *= factorial(order) / (m as f64 * r.powi(order as i32));
    }
    sum * scale
}

/// `∂^orders f(point)` for a function holomorphic in every variable near `point`.
///
/// `h` is the larger of the two circle radii. Variables of order zero are not perturbed.
pub fn fd_partial<F: Fn(&[C64]) -> C64>(f: F, point: &[C64], orders: &[usize], h: f64) -> FdEstimate {
    let active: Vec<(usize, usize)> = orders.iter().copied().enumerate().filter(|(_, o)| *o > 0).collect();
    if active.is_empty() {
        return FdEstimate { value: f(point), error_estimate: 0.0 };
    }
    let coarse = circle_stencil(&f, point, &active, h);
    let fine = circle_stencil(&f, point, &active, h / 2.0);
    // aliasing error scales like r^M
    let q = 2f64.powi(CONTOUR_POINTS as i32);
    let value = (fine * q - coarse) / (q - 1.0);
    FdEstimate { value, error_estimate: (value - fine).norm() }
}

/// Oracle for [`crate::kernel::mixed_partial`].
pub fn fd_mixed_partial(k: &ProductKernel, d: &DerivOrder, z: &[C64], w: &[C64], h: f64) -> Result<FdEstimate> {
    if !(h > 0.0) {
        return Err(JetError::InvalidArgument(format!("radius {h} must be positive")));
    }
    for p in [z, w] {
        if p.len() != k.m() {
            return Err(JetError::DimensionMismatch { expected: k.m(), got: p.len() });
        }
        check_in_polydisc(p)?;
    }
    let mut value = C64::new(1.0, 0.0);
    let mut rel_err = 0.0;
    for j in 0..k.m() {
        let (a, b) = (d.z_orders[j], d.w_orders[j]);
        let (zj, uj) = (z[j], w[j].conj());
        let rz = if a > 0 { h } else { 0.0 };
        let ru = if b > 0 { h } else { 0.0 };
        if (zj.norm() + rz) * (uj.norm() + ru) >= 1.0 {
            return Err(JetError::InvalidArgument(format!("radius {h} reaches the singular set at factor {j}")));
        }
        let lam = k.weights()[j];
        let f = |x: &[C64]| (C64::new(1.0, 0.0) - x[0] * x[1]).powf(-lam);
        let est = fd_partial(f, &[zj, uj], &[a, b], h);
        value *= est.value;
        rel_err += est.error_estimate / est.value.norm().max(f64::MIN_POSITIVE);
    }
    Ok(FdEstimate { value, error_estimate: rel_err * value.norm() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::factor_mixed_partial;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn zero_order_is_exact() {
        let k = ProductKernel::new(vec![1.2, 0.4]).unwrap();
        let z = [c(0.1, 0.2), c(-0.3, 0.0)];
        let w = [c(0.5, -0.1), c(0.2, 0.2)];
        let e = fd_mixed_partial(&k, &DerivOrder::zero(2), &z, &w, 0.05).unwrap();
        assert_eq!(e.value, k.eval(&z, &w).unwrap());
    }

    #[test]
    fn linear_self_test() {
        let e = fd_partial(|x: &[C64]| x[0], &[c(0.3, 0.1)], &[1], 1e-3);
        assert!((e.value - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn spec_factor_example() {
        let z = c(0.3, 0.1);
        let wb = c(0.2, 0.0);
        let closed = factor_mixed_partial(1.5, 2, 1, z, wb).unwrap();
        let f = |x: &[C64]| (c(1.0, 0.0) - x[0] * x[1]).powf(-1.5);
        let est = fd_partial(f, &[z, wb], &[2, 1], DEFAULT_RADIUS);
        assert!((est.value - closed).norm() / closed.norm() < 1e-6);
    }

    #[test]
    fn rejects_large_radius() {
        let k = ProductKernel::new(vec![1.0]).unwrap();
        let d = DerivOrder::new(vec![1], vec![1]).unwrap();
        assert!(fd_mixed_partial(&k, &d, &[c(0.9, 0.0)], &[c(0.9, 0.0)], 0.2).is_err());
    }
}
