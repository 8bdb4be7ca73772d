//! Möbius automorphisms of the disc and their products.
//!
//! A map is stored through its `SU(1,1)` lift `(p, q)`, `|p|² - |q|² = 1`, acting by
//! `g(z) = (p z + q) / (q̄ z + p̄)`. Composition multiplies lifts, so the factor
//! `q̄ z + p̄` composes exactly and integer-weight cocycles need no phase bookkeeping.

use rand::Rng;
use serde::Serialize;

use crate::error::{JetError, Result};
use crate::jets::SubmanifoldSpec;
use crate::kernel::C64;
use crate::special::factorial;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMap {
    p: C64,
    q: C64,
}

/// Normal-form parameters of a map, `g(z) = e^{iθ} (z - a) / (1 - ā z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MobiusParams {
    pub a: [f64; 2],
    pub theta: f64,
}

impl MobiusMap {
    /// `e^{iθ} (z - a) / (1 - ā z)`.
    pub fn new(a: C64, theta: f64) -> Result<Self> {
        let r = a.norm();
        if !(r < 1.0) || !theta.is_finite() {
            return Err(JetError::InvalidMobius(r));
        }
        let p = C64::from_polar(1.0 / (1.0 - r * r).sqrt(), theta / 2.0);
        Ok(Self { p, q: -a * p })
    }

    pub fn identity() -> Self {
        Self { p: C64::new(1.0, 0.0), q: C64::new(0.0, 0.0) }
    }

    pub fn lift(&self) -> (C64, C64) {
        (self.p, self.q)
    }

    pub fn a(&self) -> C64 {
        -self.q / self.p
    }

    /// In `(-2π, 2π]`; the lift fixes `θ` modulo `4π`.
    pub fn theta(&self) -> f64 {
        2.0 * self.p.arg()
    }

    pub fn params(&self) -> MobiusParams {
        let a = self.a();
        MobiusParams { a: [a.re, a.im], theta: self.theta() }
    }

    pub fn is_identity(&self) -> bool {
        self.q == C64::new(0.0, 0.0) && self.p == C64::new(1.0, 0.0)
    }

    /// `q̄ z + p̄`.
    pub fn denominator(&self, z: C64) -> C64 {
        self.q.conj() * z + self.p.conj()
    }

    pub fn apply(&self, z: C64) -> C64 {
        (self.p * z + self.q) / self.denominator(z)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MobiusMap) -> MobiusMap {
        MobiusMap {
            p: self.p * other.p + self.q * other.q.conj(),
            q: self.p * other.q + self.q * other.p.conj(),
        }
    }

    pub fn inverse(&self) -> MobiusMap {
        MobiusMap { p: self.p.conj(), q: -self.q }
    }

    /// `g^{(r)}(z)`; `r = 0` is the map itself.
    pub fn derivative(&self, z: C64, r: usize) -> Result<C64> {
        if r > 4 {
            return Err(JetError::OrderCapExceeded { order: r, cap: 4 });
        }
        Ok(self.derivative_unchecked(z, r))
    }

    pub(crate) fn derivative_unchecked(&self, z: C64, r: usize) -> C64 {
        if r == 0 {
            return self.apply(z);
        }
        let sign = if r % 2 == 1 { 1.0 } else { -1.0 };
        self.q.conj().powu(r as u32 - 1) / self.denominator(z).powu(r as u32 + 1) * (sign * factorial(r))
    }

    /// `a` uniform in the disc of radius `radius`, `θ` uniform in `[0, 2π)`.
    pub fn random<R: Rng>(rng: &mut R, radius: f64) -> Self {
        let r = radius * rng.gen::<f64>().sqrt();
        let phi = rng.gen::<f64>() * std::f64::consts::TAU;
        let theta = rng.gen::<f64>() * std::f64::consts::TAU;
        Self::new(C64::from_polar(r, phi), theta).expect("radius < 1")
    }
}

/// An `m`-tuple of Möbius maps acting coordinatewise on the polydisc.
#[derive(Debug, Clone, PartialEq)]
pub struct AutoTuple {
    pub maps: Vec<MobiusMap>,
}

impl AutoTuple {
    pub fn new(maps: Vec<MobiusMap>) -> Self {
        Self { maps }
    }

    pub fn identity(m: usize) -> Self {
        Self { maps: vec![MobiusMap::identity(); m] }
    }

    /// `(φ, ..., φ, ψ_{d+1}, ..., ψ_m)` with `d` copies of `φ`.
    pub fn diagonal(phi: MobiusMap, rest: &[MobiusMap], d: usize) -> Self {
        let mut maps = vec![phi; d];
        maps.extend_from_slice(rest);
        Self { maps }
    }

    /// Random tuple fixing the first-`d` diagonal.
    pub fn random_fixing<R: Rng>(rng: &mut R, m: usize, d: usize, radius: f64) -> Self {
        let phi = MobiusMap::random(rng, radius);
        let rest: Vec<MobiusMap> = (d..m).map(|_| MobiusMap::random(rng, radius)).collect();
        Self::diagonal(phi, &rest, d)
    }

    pub fn m(&self) -> usize {
        self.maps.len()
    }

    pub fn apply(&self, z: &[C64]) -> Vec<C64> {
        self.maps.iter().zip(z).map(|(g, &x)| g.apply(x)).collect()
    }

    pub fn compose(&self, other: &AutoTuple) -> AutoTuple {
        AutoTuple { maps: self.maps.iter().zip(&other.maps).map(|(g, h)| g.compose(h)).collect() }
    }

    pub fn inverse(&self) -> AutoTuple {
        AutoTuple { maps: self.maps.iter().map(MobiusMap::inverse).collect() }
    }

    /// Whether the tuple maps the submanifold onto itself.
    pub fn fixes(&self, sub: &SubmanifoldSpec) -> bool {
        if self.m() != sub.m {
            return false;
        }
        match sub.kind {
            crate::jets::SubmanifoldKind::Diagonal => self.maps[..sub.d].windows(2).all(|w| w[0] == w[1]),
            // {z_1 = ... = z_d = 0} is preserved iff each of those maps fixes 0
            crate::jets::SubmanifoldKind::CoordinatePlane => self.maps[..sub.d].iter().all(|g| g.q == C64::new(0.0, 0.0)),
        }
    }

    pub fn params(&self) -> Vec<MobiusParams> {
        self.maps.iter().map(MobiusMap::params).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_map() {
        let g = MobiusMap::new(c(0.0, 0.0), 0.0).unwrap();
        assert_eq!(g.apply(c(0.3, -0.2)), c(0.3, -0.2));
        assert_eq!(g.derivative(c(0.3, -0.2), 1).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn derivative_at_zero() {
        let g = MobiusMap::new(c(0.5, 0.0), 0.0).unwrap();
        assert!((g.derivative(c(0.0, 0.0), 1).unwrap() - c(0.75, 0.0)).norm() < 1e-15);
        assert!(MobiusMap::new(c(1.0, 0.0), 0.0).is_err());
    }

    #[test]
    fn normal_form() {
        let (a, th) = (c(0.3, -0.4), 1.1);
        let g = MobiusMap::new(a, th).unwrap();
        let z = c(-0.2, 0.5);
        let direct = C64::from_polar(1.0, th) * (z - a) / (c(1.0, 0.0) - a.conj() * z);
        assert!((g.apply(z) - direct).norm() < 1e-15);
        assert!((g.a() - a).norm() < 1e-15);
        assert!((g.theta() - th).abs() < 1e-14);
    }

    #[test]
    fn group_law() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let g = MobiusMap::random(&mut rng, 0.9);
        let h = MobiusMap::random(&mut rng, 0.9);
        let gi = g.inverse();
        for _ in 0..100 {
            let z = C64::from_polar(0.95 * rng.gen::<f64>(), rng.gen::<f64>() * 6.3);
            assert!((g.apply(gi.apply(z)) - z).norm() < 1e-14);
            assert!((g.compose(&h).apply(z) - g.apply(h.apply(z))).norm() < 1e-14);
            assert!(g.apply(z).norm() < 1.0);
        }
    }

    #[test]
    fn derivatives_match_series() {
        let g = MobiusMap::new(c(0.2, 0.5), -0.7).unwrap();
        let z = c(0.1, -0.3);
        // difference quotients on a small circle of the closed forms of order r - 1
        for r in 1..=4 {
            let h = 1e-4;
            let fd = (g.derivative(z + h, r - 1).unwrap() - g.derivative(z - h, r - 1).unwrap()) / (2.0 * h);
            let exact = g.derivative(z, r).unwrap();
            assert!((fd - exact).norm() / exact.norm() < 1e-7, "r={r}");
        }
        assert!(g.derivative(z, 5).is_err());
    }
}
