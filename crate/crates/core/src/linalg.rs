//! Dense complex linear algebra helpers on top of nalgebra.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{JetError, Result};
use crate::kernel::C64;

pub type CMat = DMatrix<C64>;
pub type CVec = DVector<C64>;

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |acc, x| acc.max(x.norm()))
}

/// `max |a - b| / max(max|b|, tiny)`.
pub fn rel_diff(a: &CMat, b: &CMat) -> f64 {
    let scale = max_abs(b).max(f64::MIN_POSITIVE);
    max_abs(&(a - b)) / scale
}

pub fn hermitian_part(m: &CMat) -> CMat {
    (m + m.adjoint()).scale(0.5)
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_eigenvalues(m: &CMat) -> Vec<f64> {
    let eig = SymmetricEigen::new(hermitian_part(m));
    let mut v: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

pub fn min_eigenvalue(m: &CMat) -> f64 {
    hermitian_eigenvalues(m).first().copied().unwrap_or(f64::NAN)
}

/// Lower Cholesky factor with positive diagonal. `degree` only labels the error.
pub fn cholesky_lower(a: &CMat, degree: usize) -> Result<CMat> {
    let n = a.nrows();
    let mut l = CMat::zeros(n, n);
    let mut smallest = f64::INFINITY;
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        smallest = smallest.min(d);
        if !(d > 0.0) || !d.is_finite() {
            return Err(JetError::NotPositiveDefinite { degree, pivot: smallest });
        }
        let djj = d.sqrt();
        l[(j, j)] = C64::new(djj, 0.0);
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }
    Ok(l)
}

/// Solves `L X = B` for lower-triangular `L`.
pub fn solve_lower(l: &CMat, b: &CMat) -> CMat {
    let n = l.nrows();
    let mut x = b.clone();
    for c in 0..b.ncols() {
        for i in 0..n {
            let mut s = x[(i, c)];
            for k in 0..i {
                s -= l[(i, k)] * x[(k, c)];
            }
            x[(i, c)] = s / l[(i, i)];
        }
    }
    x
}

pub fn lower_inverse(l: &CMat) -> CMat {
    solve_lower(l, &CMat::identity(l.nrows(), l.nrows()))
}

pub fn inverse(m: &CMat) -> Result<CMat> {
    m.clone()
        .try_inverse()
        .ok_or_else(|| JetError::RankDeficient(format!("{}x{} matrix is singular", m.nrows(), m.ncols())))
}

/// 2-norm condition number from singular values.
pub fn condition_number(m: &CMat) -> f64 {
    let sv = m.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Orthonormal basis (as columns) of the null space of `m`, using a relative rank cutoff.
pub fn null_space(m: &CMat, rel_tol: f64) -> CMat {
    let cols = m.ncols();
    if m.nrows() == 0 {
        return CMat::identity(cols, cols);
    }
    // pad so the thin SVD returns a full set of right singular vectors
    let rows = m.nrows().max(cols);
    let mut padded = CMat::zeros(rows, cols);
    padded.view_mut((0, 0), (m.nrows(), cols)).copy_from(m);
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested v_t");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cut = rel_tol * smax.max(f64::MIN_POSITIVE);
    let null: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] <= cut).collect();
    let mut out = CMat::zeros(cols, null.len());
    for (c, &i) in null.iter().enumerate() {
        for r in 0..cols {
            out[(r, c)] = v_t[(i, r)].conj();
        }
    }
    out
}

/// Orthogonal projector onto the null space of `m`.
pub fn null_space_projector(m: &CMat, rel_tol: f64) -> CMat {
    let n = null_space(m, rel_tol);
    &n * n.adjoint()
}

/// Scales every row so its first entry with modulus above `tol` equals 1.
pub fn row_normalize(m: &CMat, tol: f64) -> CMat {
    let mut out = m.clone();
    for i in 0..m.nrows() {
        if let Some(j) = (0..m.ncols()).find(|&j| m[(i, j)].norm() > tol) {
            let s = m[(i, j)];
            for k in 0..m.ncols() {
                out[(i, k)] = m[(i, k)] / s;
            }
        }
    }
    out
}

/// Largest entry modulus of `m` outside the diagonal blocks of `groups`.
pub fn off_block_max(m: &CMat, groups: &[Vec<usize>]) -> (f64, usize, usize) {
    let n = m.nrows();
    let mut group_of = vec![usize::MAX; n];
    for (g, rows) in groups.iter().enumerate() {
        for &r in rows {
            group_of[r] = g;
        }
    }
    let mut best = (0.0, 0, 0);
    for i in 0..n {
        for j in 0..n {
            if group_of[i] != group_of[j] && m[(i, j)].norm() > best.0 {
                best = (m[(i, j)].norm(), i, j);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn spd() -> CMat {
        let b = CMat::from_row_slice(3, 3, &[
            c(1.0, 0.2), c(0.3, 0.0), c(-0.1, 0.4),
            c(0.0, 0.0), c(2.0, -0.1), c(0.5, 0.5),
            c(0.7, 0.0), c(0.0, 1.0), c(1.5, 0.0),
        ]);
        &b * b.adjoint()
    }

    #[test]
    fn cholesky_round_trip() {
        let a = spd();
        let l = cholesky_lower(&a, 0).unwrap();
        assert!(rel_diff(&(&l * l.adjoint()), &a) < 1e-14);
        for i in 0..3 {
            assert!(l[(i, i)].re > 0.0 && l[(i, i)].im == 0.0);
        }
        let li = lower_inverse(&l);
        assert!(rel_diff(&(&li * &l), &CMat::identity(3, 3)) < 1e-13);
    }

    #[test]
    fn cholesky_reports_pivot() {
        let a = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(1.0, 0.0)]);
        match cholesky_lower(&a, 7) {
            Err(JetError::NotPositiveDefinite { degree, pivot }) => {
                assert_eq!(degree, 7);
                assert!((pivot + 3.0).abs() < 1e-12);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn null_space_of_rank_one() {
        let m = CMat::from_row_slice(1, 3, &[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]);
        let n = null_space(&m, 1e-12);
        assert_eq!(n.ncols(), 2);
        assert!(max_abs(&(&m * &n)) < 1e-14);
        let p = null_space_projector(&m, 1e-12);
        assert!(rel_diff(&(&p * &p), &p) < 1e-14);
    }

    #[test]
    fn eigenvalues_ascending() {
        let a = spd();
        let e = hermitian_eigenvalues(&a);
        assert!(e.windows(2).all(|w| w[0] <= w[1]));
        assert!(e[0] > 0.0);
    }

    #[test]
    fn normalize_rows() {
        let m = CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(2.0, 0.0), c(-3.0, 0.0), c(6.0, 0.0)]);
        let r = row_normalize(&m, 1e-14);
        assert_eq!(r[(0, 1)], c(1.0, 0.0));
        assert_eq!(r[(1, 0)], c(1.0, 0.0));
        assert_eq!(r[(1, 1)], c(-2.0, 0.0));
    }
}
