//! Power-series Gram blocks of the restricted jet kernel `JK|_Δ`, orthonormal bases of the
//! quotient module, kernel reconstruction with a tail bound, and the truncated matrix of the
//! compressed multiplication operator.
//!
//! Blocks are graded by total degree `D = (power of t) + |α|`: block `D` pairs the monomial
//! jets `t^{D-|α|} ε_α`, `|α| ≤ D`. Since the index set is graded, those `α` form a prefix of
//! the index set. The kernel only couples equal total degrees.

use crate::error::{JetError, Result};
use crate::jets::{jet_gram_axes, JetIndexSet, SubmanifoldKind, SubmanifoldSpec};
use crate::kernel::{ProductKernel, C64};
use crate::linalg::{cholesky_lower, max_abs, null_space_projector, solve_lower, CMat};
use crate::special::{binomial, falling_factorial, negative_binomial_series, pochhammer};

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesGram {
    pub kernel: ProductKernel,
    pub index_set: JetIndexSet,
    /// Truncation degree `P`.
    pub degree: usize,
    /// `blocks[D]` is the coefficient matrix of total degree `D`, of size `block_dim(D)`.
    pub blocks: Vec<CMat>,
}

impl SeriesGram {
    pub fn block_dim(&self, d: usize) -> usize {
        self.index_set.indices.iter().filter(|a| a.iter().sum::<usize>() <= d).count()
    }

    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.nrows()).sum()
    }

    /// Coefficient of `t^p s̄^q` in `JK|_Δ(t, s)` as an `N × N` matrix.
    pub fn power_block(&self, p: usize, q: usize) -> CMat {
        let n = self.index_set.len();
        CMat::from_fn(n, n, |i, j| {
            let (gi, gj) = (self.index_set.grade(i), self.index_set.grade(j));
            if p + gi != q + gj || p + gi > self.degree {
                return C64::new(0.0, 0.0);
            }
            self.blocks[p + gi][(i, j)]
        })
    }

    /// Start offset of each block in the full truncated space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.blocks.len() + 1);
        let mut acc = 0;
        for b in &self.blocks {
            off.push(acc);
            acc += b.nrows();
        }
        off.push(acc);
        off
    }
}

fn require_full_diagonal(kernel: &ProductKernel, sub: &SubmanifoldSpec) -> Result<()> {
    if sub.m != kernel.m() {
        return Err(JetError::DimensionMismatch { expected: kernel.m(), got: sub.m });
    }
    if sub.kind != SubmanifoldKind::Diagonal || sub.d != sub.m {
        return Err(JetError::Unsupported("series expansions need the full diagonal d = m".into()));
    }
    Ok(())
}

fn convolve(a: &[f64], b: &[f64]) -> Vec<f64> {
    let n = a.len().min(b.len());
    (0..n).map(|d| (0..=d).map(|i| a[i] * b[d - i]).sum()).collect()
}

/// `Σ_{n_1+…+n_m = D} Π_j c_j(n_j) n_j!/(n_j-a_j)! n_j!/(n_j-b_j)!` for `D ≤ p`.
fn entry_series(kernel: &ProductKernel, za: &[usize], wb: &[usize], p: usize) -> Vec<f64> {
    let mut acc: Option<Vec<f64>> = None;
    for (j, &lam) in kernel.weights().iter().enumerate() {
        let c = negative_binomial_series(lam, p + 1);
        let seq: Vec<f64> = c
            .iter()
            .enumerate()
            .map(|(n, cn)| cn * falling_factorial(n, za[j]) * falling_factorial(n, wb[j]))
            .collect();
        acc = Some(match acc {
            None => seq,
            Some(prev) => convolve(&prev, &seq),
        });
    }
    acc.unwrap_or_default()
}

fn embed(m: usize, axes: &[usize], alpha: &[usize]) -> Vec<usize> {
    let mut o = vec![0; m];
    for (a, &ax) in alpha.iter().zip(axes) {
        o[ax] += a;
    }
    o
}

pub fn series_gram(kernel: &ProductKernel, sub: &SubmanifoldSpec, k: usize, p: usize) -> Result<SeriesGram> {
    require_full_diagonal(kernel, sub)?;
    let set = JetIndexSet::new(sub.codim(), k)?;
    let axes = sub.axes();
    let m = kernel.m();
    let n = set.len();
    let orders: Vec<Vec<usize>> = set.indices.iter().map(|a| embed(m, &axes, a)).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    use rayon::prelude::*;
    let series: Vec<Vec<f64>> = pairs.par_iter().map(|&(i, j)| entry_series(kernel, &orders[i], &orders[j], p)).collect();
    let mut blocks = Vec::with_capacity(p + 1);
    for d in 0..=p {
        let dim = set.indices.iter().filter(|a| a.iter().sum::<usize>() <= d).count();
        let mut b = CMat::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = series[i * n + j][d];
                if !v.is_finite() {
                    return Err(JetError::CoefficientOverflow { degree: d });
                }
                b[(i, j)] = C64::new(v, 0.0);
            }
        }
        blocks.push(b);
    }
    Ok(SeriesGram { kernel: kernel.clone(), index_set: set, degree: p, blocks })
}

/// Degree-major Cholesky orthonormalization. Basis vector `(D, i)` has coefficients
/// `factors[D][:, i]` over the monomial jets of block `D`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    pub kernel: ProductKernel,
    pub index_set: JetIndexSet,
    pub degree: usize,
    pub factors: Vec<CMat>,
}

impl OrthonormalBasis {
    /// Value of basis vector `(d, i)` at the diagonal parameter `t`, an `N`-vector.
    pub fn eval_vector(&self, d: usize, i: usize, t: C64) -> Vec<C64> {
        let n = self.index_set.len();
        let l = &self.factors[d];
        (0..n)
            .map(|r| if r < l.nrows() { l[(r, i)] * t.powu((d - self.index_set.grade(r)) as u32) } else { C64::new(0.0, 0.0) })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.factors.iter().map(|f| f.ncols()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn orthonormal_basis(g: &SeriesGram) -> Result<OrthonormalBasis> {
    let factors = g.blocks.iter().enumerate().map(|(d, b)| cholesky_lower(b, d)).collect::<Result<Vec<_>>>()?;
    Ok(OrthonormalBasis { kernel: g.kernel.clone(), index_set: g.index_set.clone(), degree: g.degree, factors })
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuotientKernelValue {
    pub matrix: CMat,
    /// Bound on the entrywise error of `matrix` against the full series.
    pub tail_bound: f64,
}

/// `Π_j P_j(1, 1)` where `∂^a ∂̄^b (1 - z w̄)^{-λ} = P(z, w̄) (1 - z w̄)^{-λ-a-b}`.
fn prefactor_at_one(kernel: &ProductKernel, za: &[usize], wb: &[usize]) -> f64 {
    let mut q = 1.0;
    for (j, &lam) in kernel.weights().iter().enumerate() {
        let (a, b) = if za[j] <= wb[j] { (za[j], wb[j]) } else { (wb[j], za[j]) };
        let mut s = 0.0;
        for t in 0..=a {
            s += binomial(a, t) * falling_factorial(b, a - t) * pochhammer(lam, a) / pochhammer(lam, a - t);
        }
        q *= s * pochhammer(lam, b);
    }
    q
}

/// Truncated sum `Σ_{D ≤ p} Σ_i e_{D,i}(z) e_{D,i}(w)^*` with a rigorous entrywise tail bound.
///
/// Fails with [`JetError::RadiusTooLarge`] when the bound exceeds `tolerance` times the largest
/// entry of the result.
pub fn quotient_kernel_from_basis(basis: &OrthonormalBasis, z: C64, w: C64, p: usize, tolerance: f64) -> Result<QuotientKernelValue> {
    if p > basis.degree {
        return Err(JetError::InvalidArgument(format!("truncation {p} exceeds basis degree {}", basis.degree)));
    }
    let n = basis.index_set.len();
    let rho = z.norm().max(w.norm());
    if !(rho < 1.0) {
        return Err(JetError::OutsideDomain { index: 0, modulus: rho });
    }
    let mut out = CMat::zeros(n, n);
    for d in 0..=p {
        let l = &basis.factors[d];
        let dim = l.nrows();
        let scale = |t: C64| CMat::from_fn(n, dim, |r, c| if r == c { t.powu((d - basis.index_set.grade(r)) as u32) } else { C64::new(0.0, 0.0) });
        let ez = scale(z) * l;
        let ew = scale(w) * l;
        out += &ez * ew.adjoint();
    }

    let m = basis.kernel.m();
    let axes: Vec<usize> = (1..m).collect();
    let orders: Vec<Vec<usize>> = basis.index_set.indices.iter().map(|a| embed(m, &axes, a)).collect();
    let r = rho * rho;
    let real_point = vec![C64::new(rho, 0.0); m];
    let g_real = jet_gram_axes(&basis.kernel, &axes, basis.index_set.order, &real_point, &real_point)?;
    let mut tail: f64 = 0.0;
    for (i, oi) in orders.iter().enumerate() {
        for (j, oj) in orders.iter().enumerate() {
            let s = basis.kernel.total_weight() + (basis.index_set.grade(i) + basis.index_set.grade(j)) as f64;
            let s1 = s.max(1.0);
            let ratio = r * (s1 + (p + 1) as f64) / (p + 2) as f64;
            if ratio >= 1.0 {
                return Err(JetError::RadiusTooLarge { radius: rho, bound: f64::INFINITY, tolerance });
            }
            let d = p + 1;
            let expo = 2 * d - basis.index_set.grade(i) - basis.index_set.grade(j);
            // (s1)_D / D! accumulated in log space to avoid overflow
            let log_coeff: f64 = (0..d).map(|q| ((s1 + q as f64) / (q + 1) as f64).ln()).sum();
            let term = prefactor_at_one(&basis.kernel, oi, oj) * (log_coeff + expo as f64 * rho.max(f64::MIN_POSITIVE).ln()).exp();
            tail = tail.max(term / (1.0 - ratio));
        }
    }
    let rounding = 16.0 * f64::EPSILON * (p + 1 + n) as f64 * max_abs(&g_real);
    let bound = tail + rounding;
    let scale = max_abs(&out).max(f64::MIN_POSITIVE);
    if bound > tolerance * scale {
        return Err(JetError::RadiusTooLarge { radius: rho, bound, tolerance });
    }
    Ok(QuotientKernelValue { matrix: out, tail_bound: bound })
}

/// Truncated matrix of multiplication by one coordinate in the orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    pub dim: usize,
    pub matrix: CMat,
    pub offsets: Vec<usize>,
    pub index_set: JetIndexSet,
    pub factors: Vec<CMat>,
}

impl TruncatedOperator {
    pub fn degree(&self) -> usize {
        self.factors.len() - 1
    }

    pub fn block(&self, row_degree: usize, col_degree: usize) -> CMat {
        let (r0, r1) = (self.offsets[row_degree], self.offsets[row_degree + 1]);
        let (c0, c1) = (self.offsets[col_degree], self.offsets[col_degree + 1]);
        self.matrix.view((r0, c0), (r1 - r0, c1 - c0)).into_owned()
    }
}

/// Compression of `M_{z_1}` (multiplication by the diagonal parameter).
pub fn compressed_operator_matrix(g: &SeriesGram) -> Result<TruncatedOperator> {
    compressed_operator_matrix_for(g, 0)
}

/// Compression of `M_{z_c}`; on the quotient it acts by the module action matrix of `z_c`.
pub fn compressed_operator_matrix_for(g: &SeriesGram, coordinate: usize) -> Result<TruncatedOperator> {
    let m = g.kernel.m();
    if coordinate >= m {
        return Err(JetError::InvalidArgument(format!("coordinate {coordinate} out of range for m={m}")));
    }
    let basis = orthonormal_basis(g)?;
    let set = &g.index_set;
    let offsets = g.offsets();
    let dim = *offsets.last().unwrap_or(&0);
    let mut mat = CMat::zeros(dim, dim);
    // transverse slot of the coordinate, if it is transverse
    let slot = if coordinate >= 1 { Some(coordinate - 1) } else { None };
    for d in 0..g.degree {
        let (nd, nd1) = (g.blocks[d].nrows(), g.blocks[d + 1].nrows());
        let mut s = CMat::zeros(nd1, nd);
        for col in 0..nd {
            s[(col, col)] += C64::new(1.0, 0.0);
            if let Some(i) = slot {
                let mut beta = set.indices[col].clone();
                let coeff = (beta[i] + 1) as f64;
                beta[i] += 1;
                if let Some(row) = set.position(&beta) {
                    s[(row, col)] += C64::new(coeff, 0.0);
                }
            }
        }
        let blk = solve_lower(&basis.factors[d + 1], &(s * &basis.factors[d]));
        mat.view_mut((offsets[d + 1], offsets[d]), (nd1, nd)).copy_from(&blk);
    }
    Ok(TruncatedOperator { dim, matrix: mat, offsets, index_set: set.clone(), factors: basis.factors })
}

/// Max over groups of `‖P_{D+1} T_D - T_D P_D‖_max`, `D < P`, where `P` projects onto
/// `{f : (X f)_i = 0 for rows i outside the group}`. Rows of `x` must be homogeneous
/// polynomials in the transverse derivatives.
pub fn check_reducing_projection(t: &TruncatedOperator, x: &CMat, groups: &[Vec<usize>]) -> Result<f64> {
    let n = t.index_set.len();
    if x.nrows() != n || x.ncols() != n {
        return Err(JetError::DimensionMismatch { expected: n, got: x.nrows() });
    }
    let mut row_grade = Vec::with_capacity(n);
    for i in 0..n {
        let scale = (0..n).map(|j| x[(i, j)].norm()).fold(0.0, f64::max);
        let grades: Vec<usize> = (0..n).filter(|&j| x[(i, j)].norm() > 1e-14 * scale).map(|j| t.index_set.grade(j)).collect();
        match grades.first() {
            Some(&g0) if grades.iter().all(|&g| g == g0) => row_grade.push(g0),
            _ => return Err(JetError::InvalidArgument(format!("row {i} of X is not homogeneous"))),
        }
    }
    let degree = t.degree();
    let mut worst: f64 = 0.0;
    for group in groups {
        let outside: Vec<usize> = (0..n).filter(|i| !group.contains(i)).collect();
        let projectors: Vec<CMat> = (0..=degree)
            .map(|d| {
                let l = &t.factors[d];
                let dim = l.nrows();
                let rows: Vec<usize> = outside.iter().copied().filter(|&i| row_grade[i] <= d).collect();
                if rows.is_empty() {
                    return CMat::identity(dim, dim);
                }
                let c = CMat::from_fn(rows.len(), dim, |a, b| x[(rows[a], b)]);
                null_space_projector(&(c * l), 1e-10)
            })
            .collect();
        for d in 0..degree {
            let blk = t.block(d + 1, d);
            let comm = &projectors[d + 1] * &blk - &blk * &projectors[d];
            worst = worst.max(max_abs(&comm));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rel_diff;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn scalar_blocks_are_binomial_coefficients() {
        let k = ProductKernel::new(vec![2.5]).unwrap();
        // m = 1 has no diagonal; emulate with a 2-factor kernel of total weight 2.5 and k = 1
        let k2 = ProductKernel::new(vec![1.0, 1.5]).unwrap();
        let g = series_gram(&k2, &SubmanifoldSpec::diagonal(2, 2).unwrap(), 1, 10).unwrap();
        for p in 0..=10 {
            let expect = pochhammer(k.weights()[0], p) / crate::special::factorial(p);
            assert!((g.blocks[p][(0, 0)].re - expect).abs() < 1e-12 * expect);
        }
    }

    #[test]
    fn toy_one_power_block_zero() {
        let k = ProductKernel::new(vec![0.7, 2.0, 3.0]).unwrap();
        let g = series_gram(&k, &SubmanifoldSpec::diagonal(3, 3).unwrap(), 2, 4).unwrap();
        let b = g.power_block(0, 0);
        let expect = CMat::from_diagonal(&crate::linalg::CVec::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]));
        assert!(rel_diff(&b, &expect) < 1e-15);
    }

    #[test]
    fn unsupported_submanifolds() {
        let k = ProductKernel::new(vec![1.0, 1.0, 1.0]).unwrap();
        assert!(series_gram(&k, &SubmanifoldSpec::diagonal(3, 2).unwrap(), 2, 4).is_err());
        assert!(series_gram(&k, &SubmanifoldSpec::coordinate_plane(3, 1).unwrap(), 2, 4).is_err());
    }

    #[test]
    fn szego_shift() {
        // total weight 1 gives the unilateral shift
        let k = ProductKernel::new(vec![0.5, 0.5]).unwrap();
        let g = series_gram(&k, &SubmanifoldSpec::diagonal(2, 2).unwrap(), 1, 12).unwrap();
        let t = compressed_operator_matrix(&g).unwrap();
        for p in 0..12 {
            assert!((t.matrix[(p + 1, p)] - c(1.0, 0.0)).norm() < 1e-13);
        }
        assert!(max_abs(&t.block(12, 12)) == 0.0);
    }

    #[test]
    fn weighted_shift_lambda_two() {
        let k = ProductKernel::new(vec![1.2, 0.8]).unwrap();
        let g = series_gram(&k, &SubmanifoldSpec::diagonal(2, 2).unwrap(), 1, 12).unwrap();
        let t = compressed_operator_matrix(&g).unwrap();
        for p in 0..12 {
            let expect = ((p + 1) as f64 / (p + 2) as f64).sqrt();
            assert!((t.matrix[(p + 1, p)].re - expect).abs() < 1e-13);
        }
    }

    #[test]
    fn single_group_commutes_exactly() {
        let k = ProductKernel::new(vec![1.0, 2.0, 3.0]).unwrap();
        let g = series_gram(&k, &SubmanifoldSpec::diagonal(3, 3).unwrap(), 2, 8).unwrap();
        let t = compressed_operator_matrix(&g).unwrap();
        let x = CMat::identity(3, 3);
        assert_eq!(check_reducing_projection(&t, &x, &[vec![0, 1, 2]]).unwrap(), 0.0);
    }
}
