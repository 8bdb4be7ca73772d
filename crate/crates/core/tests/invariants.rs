use jetlab_core::decomposition::{congruence_matrix, normalized_off_block, sigma_frame};
use jetlab_core::jets::{jet_gram, JetIndexSet, SubmanifoldSpec};
use jetlab_core::linalg::{max_abs, min_eigenvalue, CMat};
use jetlab_core::mobius::{AutoTuple, MobiusMap};
use jetlab_core::homogeneity::jet_cocycle;
use jetlab_core::kernel::Point;
use jetlab_core::{DerivOrder, ProductKernel, C64};
use proptest::prelude::*;

fn point(r: f64, t: f64) -> C64 {
    C64::from_polar(r, t)
}

fn weight() -> impl Strategy<Value = f64> {
    0.3f64..3.0
}

fn coord() -> impl Strategy<Value = C64> {
    (0.0f64..0.8, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| point(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn mixed_partial_is_hermitian(w in prop::collection::vec(weight(), 3), z in prop::collection::vec(coord(), 3),
                                  x in prop::collection::vec(coord(), 3), a in prop::collection::vec(0usize..3, 3),
                                  b in prop::collection::vec(0usize..3, 3)) {
        let k = ProductKernel::new(w).unwrap();
        let d = DerivOrder::with_cap(a, b, 24).unwrap();
        let lhs = k.mixed_partial(&d, &z, &x).unwrap();
        let rhs = k.mixed_partial(&d.swapped(), &x, &z).unwrap().conj();
        prop_assert!((lhs - rhs).norm() <= 1e-12 * lhs.norm().max(1.0));
    }

    #[test]
    fn jet_gram_is_positive_definite(w in prop::collection::vec(weight(), 3), t in coord(), k in 1usize..4) {
        let kern = ProductKernel::new(w).unwrap();
        let sub = SubmanifoldSpec::diagonal(3, 3).unwrap();
        let p = Point::diagonal(3, t).unwrap();
        let g = jet_gram(&kern, &sub, k, &p, &p).unwrap();
        prop_assert!(max_abs(&(&g.entries - g.entries.adjoint())) <= 1e-12 * max_abs(&g.entries));
        prop_assert!(g.min_eigenvalue() > 0.0);
    }

    #[test]
    fn congruence_blocks_at_any_base_point(w in prop::collection::vec(weight(), 4), n in 1usize..4, z in coord(), x in coord()) {
        let kern = ProductKernel::new(w.clone()).unwrap();
        let sub = SubmanifoldSpec::diagonal(4, 4).unwrap();
        let (mx, groups) = congruence_matrix(4, n, &w).unwrap();
        let g = jet_gram(&kern, &sub, n, &Point::diagonal(4, z).unwrap(), &Point::diagonal(4, x).unwrap()).unwrap();
        prop_assert!(normalized_off_block(&(&mx * &g.entries * mx.adjoint()), &groups) < 1e-10);
    }

    #[test]
    fn mobius_group_law(a in coord(), b in coord(), s in 0.0f64..6.3, t in 0.0f64..6.3, z in coord()) {
        let g = MobiusMap::new(a, s).unwrap();
        let h = MobiusMap::new(b, t).unwrap();
        prop_assert!((g.compose(&h).apply(z) - g.apply(h.apply(z))).norm() < 1e-12);
        prop_assert!((g.inverse().apply(g.apply(z)) - z).norm() < 1e-12);
    }

    #[test]
    fn jet_cocycle_is_lower_triangular_by_grade(w in prop::collection::vec(weight(), 3), a in coord(), z in coord()) {
        let t = AutoTuple::diagonal(MobiusMap::new(a * 0.7, 0.4).unwrap(), &[], 3);
        let sub = SubmanifoldSpec::diagonal(3, 3).unwrap();
        let m = jet_cocycle(&t, &w, &sub, 2).unwrap().eval(&[z; 3]).unwrap();
        let set = JetIndexSet::new(2, 2).unwrap();
        for i in 0..set.len() {
            for j in 0..set.len() {
                if set.grade(j) > set.grade(i) {
                    prop_assert!(m[(i, j)].norm() < 1e-13);
                }
            }
        }
    }
}

/// Off the diagonal the σ frame stops being orthogonal.
#[test]
fn sigma_frame_orthogonality_needs_the_diagonal() {
    let w = [1.1, 0.8, 1.7];
    let k = ProductKernel::new(w.to_vec()).unwrap();
    let (s0, s1) = (sigma_frame(0, w[1], w[2]).unwrap(), sigma_frame(1, w[1], w[2]).unwrap());
    let pair = |p: &[C64]| {
        let mut acc = C64::new(0.0, 0.0);
        for (j, c) in s1.coeffs.iter().enumerate() {
            let d = DerivOrder::new(vec![0, 1 - j, j], vec![0, 0, 0]).unwrap();
            acc += k.mixed_partial(&d, p, p).unwrap() * c * s0.coeffs[0];
        }
        acc.norm()
    };
    let on = [C64::new(0.3, 0.1); 3];
    let off = [C64::new(0.3, 0.1), C64::new(-0.4, 0.2), C64::new(0.1, -0.5)];
    assert!(pair(&on) < 1e-14);
    assert!(pair(&off) > 1e-3);
}

#[test]
fn gram_of_random_vectors_has_positive_spectrum() {
    let k = ProductKernel::new(vec![0.9, 1.4]).unwrap();
    let pts: Vec<Vec<C64>> = (0..5).map(|i| vec![point(0.15 * i as f64, i as f64), point(0.5, 0.7 * i as f64)]).collect();
    let g = CMat::from_fn(5, 5, |i, j| k.eval(&pts[i], &pts[j]).unwrap());
    assert!(min_eigenvalue(&g) > 0.0);
}
