use jetlab_core::jets::{jet_gram, jet_gram_axes, JetIndexSet, SubmanifoldSpec};
use jetlab_core::kernel::{factor_mixed_partial, Point};
use jetlab_core::linalg::max_abs;
use jetlab_core::quotient::{orthonormal_basis, quotient_kernel_from_basis, series_gram};
use jetlab_core::{DerivOrder, ProductKernel, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Term-by-term derivative of `Σ (λ)_n / n! (z w̄)^n`.
fn series_partial(lambda: f64, a: usize, b: usize, z: C64, wbar: C64) -> C64 {
    let mut sum = C64::new(0.0, 0.0);
    let mut coef = 1.0;
    for n in 0..600usize {
        if n > 0 {
            coef *= (lambda + n as f64 - 1.0) / n as f64;
        }
        if n >= a.max(b) {
            let fa: f64 = ((n - a + 1)..=n).map(|x| x as f64).product();
            let fb: f64 = ((n - b + 1)..=n).map(|x| x as f64).product();
            sum += z.powu((n - a) as u32) * wbar.powu((n - b) as u32) * (coef * fa * fb);
        }
    }
    sum
}

fn disc(r: &mut ChaCha8Rng, radius: f64) -> C64 {
    C64::from_polar(radius * r.gen::<f64>().sqrt(), r.gen::<f64>() * std::f64::consts::TAU)
}

#[test]
fn factor_partial_matches_power_series() {
    let mut r = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..200 {
        let lambda = r.gen_range(0.3..3.0);
        let (a, b) = (r.gen_range(0..5), r.gen_range(0..5));
        let (z, w) = (disc(&mut r, 0.5), disc(&mut r, 0.5));
        let exact = factor_mixed_partial(lambda, a, b, z, w.conj()).unwrap();
        let series = series_partial(lambda, a, b, z, w.conj());
        assert!((exact - series).norm() <= 1e-11 * series.norm().max(1.0), "{lambda} {a} {b}: {exact} vs {series}");
    }
}

#[test]
fn product_partial_factorizes() {
    let k = ProductKernel::new(vec![0.7, 1.9, 2.4]).unwrap();
    let z = [C64::new(0.1, 0.3), C64::new(-0.2, 0.1), C64::new(0.4, -0.4)];
    let w = [C64::new(0.5, 0.0), C64::new(0.0, -0.3), C64::new(-0.1, 0.2)];
    let d = DerivOrder::new(vec![2, 0, 1], vec![1, 3, 0]).unwrap();
    let direct = k.mixed_partial(&d, &z, &w).unwrap();
    let prod: C64 = (0..3)
        .map(|i| series_partial(k.weights()[i], d.z_orders[i], d.w_orders[i], z[i], w[i].conj()))
        .product();
    assert!((direct - prod).norm() < 1e-11 * prod.norm());
}

/// On a coordinate plane through the origin the jet Gram is `diag(Π α_i! (λ_i)_{α_i})`.
#[test]
fn coordinate_plane_gram_at_origin() {
    let w = [1.3, 0.7, 2.1, 0.4];
    let k = ProductKernel::new(w.to_vec()).unwrap();
    let sub = SubmanifoldSpec::coordinate_plane(4, 2).unwrap();
    let o = Point::origin(4);
    let g = jet_gram(&k, &sub, 3, &o, &o).unwrap();
    let set = JetIndexSet::new(2, 3).unwrap();
    let axes = sub.axes();
    for (i, alpha) in set.indices.iter().enumerate() {
        let mut v = 1.0;
        for (a, &ax) in alpha.iter().zip(&axes) {
            for s in 0..*a {
                v *= (s + 1) as f64 * (w[ax] + s as f64);
            }
        }
        for j in 0..set.len() {
            let expect = if i == j { v } else { 0.0 };
            assert!((g.entries[(i, j)] - expect).norm() < 1e-12 * v.max(1.0));
        }
    }
}

#[test]
fn quotient_series_matches_jet_gram_and_its_tail_bound() {
    let w = [0.9, 1.6, 0.5];
    let k = ProductKernel::new(w.to_vec()).unwrap();
    let sub = SubmanifoldSpec::diagonal(3, 3).unwrap();
    let basis = orthonormal_basis(&series_gram(&k, &sub, 2, 200).unwrap()).unwrap();
    let mut r = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..10 {
        let (z, x) = (disc(&mut r, 0.5), disc(&mut r, 0.5));
        let kq = quotient_kernel_from_basis(&basis, z, x, 200, 1e-6).unwrap();
        let g = jet_gram(&k, &sub, 2, &Point::diagonal(3, z).unwrap(), &Point::diagonal(3, x).unwrap()).unwrap();
        let err = max_abs(&(&kq.matrix - &g.entries));
        assert!(err < 1e-9 * max_abs(&g.entries));
        assert!(kq.tail_bound > err);
    }
}

#[test]
fn quotient_tail_shrinks_with_truncation() {
    let k = ProductKernel::new(vec![1.0, 1.0, 1.0]).unwrap();
    let sub = SubmanifoldSpec::diagonal(3, 3).unwrap();
    let z = C64::new(0.45, 0.1);
    let g = jet_gram(&k, &sub, 2, &Point::diagonal(3, z).unwrap(), &Point::diagonal(3, z).unwrap()).unwrap();
    let err = |p: usize| {
        let basis = orthonormal_basis(&series_gram(&k, &sub, 2, p).unwrap()).unwrap();
        let kq = quotient_kernel_from_basis(&basis, z, z, p, 1.0).unwrap();
        max_abs(&(&kq.matrix - &g.entries))
    };
    assert!(err(60) < err(20));
}

/// `|C(-λ, p)|^{1/2}`.
fn nb_sqrt(lambda: f64, p: i64) -> f64 {
    if p < 0 {
        return 0.0;
    }
    (0..p).map(|s| (lambda + s as f64) / (s + 1) as f64).product::<f64>().sqrt()
}

/// Truncated `Σ_p Σ_i e_i^{(p)}(t) e_i^{(p)}(x)^*` from the printed basis of the worked example on `D³`.
fn printed_quotient_sum(a: f64, b: f64, g: f64, t: C64, x: C64, p_max: usize) -> jetlab_core::linalg::CMat {
    let s = a + b + g;
    let mut out = jetlab_core::linalg::CMat::zeros(3, 3);
    for p in 0..=p_max as i64 {
        let pw = |z: C64, e: i64| if e < 0 { C64::new(0.0, 0.0) } else { z.powu(e as u32) };
        let c1 = (p as f64 / s).sqrt() * nb_sqrt(s + 1.0, p - 1);
        let c2 = nb_sqrt(s + 2.0, p - 1) / ((b * (a + g)).sqrt() * s.sqrt());
        let c3 = (a * g / (a + g)).sqrt() * nb_sqrt(s + 2.0, p - 1);
        let vecs = |z: C64| {
            [
                [pw(z, p) * nb_sqrt(s, p), pw(z, p - 1) * (a * c1), pw(z, p - 1) * (b * c1)],
                [C64::new(0.0, 0.0), pw(z, p - 1) * (a * b * c2), pw(z, p - 1) * (b * g * c2)],
                [C64::new(0.0, 0.0), pw(z, p - 1) * c3, pw(z, p - 1) * (-c3)],
            ]
        };
        let (u, v) = (vecs(t), vecs(x));
        for e in 0..3 {
            for i in 0..3 {
                for j in 0..3 {
                    out[(i, j)] += u[e][i] * v[e][j].conj();
                }
            }
        }
    }
    out
}

/// The printed basis reproduces the jet kernel in the frame `(1, ∂_1, ∂_2)` only when `β = γ`.
/// Otherwise its `(2, 3)` entry is already nonzero at the origin, where the kernel has `0`.
#[test]
fn printed_quotient_basis_against_engine() {
    let residual = |a: f64, b: f64, g: f64| {
        let k = ProductKernel::new(vec![a, b, g]).unwrap();
        let t = C64::new(0.2, 0.1);
        let x = C64::new(-0.1, 0.3);
        let jk = jet_gram_axes(&k, &[0, 1], 2, &[t; 3], &[x; 3]).unwrap();
        let printed = printed_quotient_sum(a, b, g, t, x, 300);
        max_abs(&(&printed - &jk)) / max_abs(&jk)
    };
    let equal = residual(1.3, 0.9, 0.9);
    let unequal = residual(1.3, 0.7, 2.1);
    println!("printed basis residual: beta = gamma {equal:.3e}, beta != gamma {unequal:.3e}");
    assert!(equal < 1e-10, "{equal}");
    assert!(unequal > 1e-3, "{unequal}");
    let origin = printed_quotient_sum(1.3, 0.7, 2.1, C64::new(0.0, 0.0), C64::new(0.0, 0.0), 2)[(1, 2)].re;
    assert!(origin.abs() > 1e-3);
}
