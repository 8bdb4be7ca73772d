//! σ frames, their norms and orthogonality, generalized Wilkins components and the
//! block-diagonalizing congruence of the jet Gram along the diagonal.
//!
//! Frames are constant-coefficient differential operators in the transverse symbols
//! `∂_2, ..., ∂_m`, stored as [`Polynomial`]s and expanded into the ambient jet frame.

use serde::Serialize;

use crate::error::{JetError, Result};
use crate::jets::{jet_gram_axes_with_cap, pair, FrameVector, JetIndexSet};
use crate::kernel::{ProductKernel, C64};
use crate::linalg::{condition_number, off_block_max, CMat, CVec};
use crate::polynomial::Polynomial;
use crate::special::{binomial, factorial, pochhammer};

/// Internal cap on `|z_orders| + |w_orders|` for the frame computations here.
const FRAME_ORDER_CAP: usize = 12;

/// `σ_k = Σ_j (-1)^j C(k,j) (β)_k (γ)_k / ((β)_{k-j} (γ)_j) ∂_2^{k-j} ∂_3^j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaFrame {
    pub k: usize,
    pub beta: f64,
    pub gamma: f64,
    /// Coefficient of `∂_2^{k-j} ∂_3^j` at position `j`.
    pub coeffs: Vec<f64>,
}

pub fn sigma_frame(k: usize, beta: f64, gamma: f64) -> Result<SigmaFrame> {
    if !(beta > 0.0 && gamma > 0.0) {
        return Err(JetError::InvalidWeights(format!("σ weights must be positive, got ({beta}, {gamma})")));
    }
    let pk = pochhammer(beta, k) * pochhammer(gamma, k);
    let coeffs = (0..=k)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(k, j) * pk / (pochhammer(beta, k - j) * pochhammer(gamma, j))
        })
        .collect();
    Ok(SigmaFrame { k, beta, gamma, coeffs })
}

impl SigmaFrame {
    /// The operator in two symbols `(X, Y)`.
    pub fn operator(&self) -> Polynomial {
        let mut p = Polynomial::zero(2);
        for (j, c) in self.coeffs.iter().enumerate() {
            p.add_term(vec![self.k - j, j], C64::new(*c, 0.0));
        }
        p
    }

    /// Frame vector in the jet frame of codimension 2 and order `order > k`.
    pub fn frame_vector(&self, order: usize) -> Result<FrameVector> {
        FrameVector::from_operator(&JetIndexSet::new(2, order)?, &self.operator())
    }
}

/// `k! Σ_i C(k,i) (β)_k² (γ)_k² / ((β)_{k-i} (γ)_i)`, the value of `‖σ_k‖²` at the origin.
pub fn sigma_norm_constant(k: usize, beta: f64, gamma: f64) -> f64 {
    sigma_constant_sum(k, beta, gamma, false)
}

/// The same sum with the alternating sign `(-1)^i`, as printed in the norm formula.
pub fn sigma_norm_constant_alternating(k: usize, beta: f64, gamma: f64) -> f64 {
    sigma_constant_sum(k, beta, gamma, true)
}

fn sigma_constant_sum(k: usize, beta: f64, gamma: f64, alternating: bool) -> f64 {
    let num = (pochhammer(beta, k) * pochhammer(gamma, k)).powi(2);
    let s: f64 = (0..=k)
        .map(|i| {
            let sign = if alternating && i % 2 == 1 { -1.0 } else { 1.0 };
            sign * binomial(k, i) * num / (pochhammer(beta, k - i) * pochhammer(gamma, i))
        })
        .sum();
    factorial(k) * s
}

/// `(1-|w_1|²)^{-α} (1-|w_2|²)^{-β-γ-2k}` times [`sigma_norm_constant`].
pub fn sigma_norm_closed_form(k: usize, weights: [f64; 3], w1: C64, w2: C64) -> f64 {
    let [a, b, g] = weights;
    sigma_norm_constant(k, b, g) * (1.0 - w1.norm_sqr()).powf(-a) * (1.0 - w2.norm_sqr()).powf(-b - g - 2.0 * k as f64)
}

fn check_on_z(w: &[C64]) -> Result<()> {
    if w.len() != 3 {
        return Err(JetError::DimensionMismatch { expected: 3, got: w.len() });
    }
    if (w[1] - w[2]).norm() > 1e-12 {
        return Err(JetError::InvalidSubmanifold("σ norms need w_2 = w_3".into()));
    }
    Ok(())
}

/// Gram-derived `‖σ_k(w)‖²` for `K^{(α,β,γ)}` on `D³`, `w` with `w_2 = w_3`.
pub fn sigma_norm_sq(k: usize, weights: [f64; 3], w: &[C64]) -> Result<f64> {
    check_on_z(w)?;
    let kernel = ProductKernel::new(weights.to_vec())?;
    let sig = sigma_frame(k, weights[1], weights[2])?;
    let g = jet_gram_axes_with_cap(&kernel, &[1, 2], k + 1, w, w, FRAME_ORDER_CAP)?;
    let v = sig.frame_vector(k + 1)?;
    Ok(pair(&v.coeffs, &v.coeffs, &g).re)
}

/// Max of `|⟨σ_k, σ_l⟩| / (‖σ_k‖ ‖σ_l‖)` over `k ≠ l < n` and the sample points.
pub fn verify_sigma_orthogonality(n: usize, weights: [f64; 3], samples: &[Vec<C64>]) -> Result<f64> {
    if n == 0 || n > 6 {
        return Err(JetError::InvalidArgument(format!("n = {n} must be in 1..=6")));
    }
    let kernel = ProductKernel::new(weights.to_vec())?;
    let frames: Vec<CVec> = (0..n)
        .map(|k| sigma_frame(k, weights[1], weights[2]).and_then(|s| s.frame_vector(n)).map(|f| f.coeffs))
        .collect::<Result<_>>()?;
    let mut worst: f64 = 0.0;
    for w in samples {
        let g = jet_gram_axes_with_cap(&kernel, &[1, 2], n, w, w, FRAME_ORDER_CAP)?;
        let norms: Vec<f64> = frames.iter().map(|f| pair(f, f, &g).re.sqrt()).collect();
        for k in 0..n {
            for l in 0..n {
                if k != l {
                    worst = worst.max(pair(&frames[k], &frames[l], &g).norm() / (norms[k] * norms[l]));
                }
            }
        }
    }
    Ok(worst)
}

/// Exponent pair and constant of the component kernel `C (1-z_1w̄_1)^{-a} (1-z_2w̄_2)^{-b}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WilkinsKernel {
    pub exponents: (f64, f64),
    pub constant: f64,
}

impl WilkinsKernel {
    pub fn kernel(&self) -> ProductKernel {
        ProductKernel::new(vec![self.exponents.0, self.exponents.1]).expect("exponents are positive")
    }
}

/// Per-stage data of the recursive construction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageInfo {
    /// 1-based coordinate split off at this stage.
    pub coordinate: usize,
    pub l: usize,
    pub beta: f64,
    pub gamma: f64,
    /// Gram-derived constant of this stage, `‖σ_l‖²` at the origin.
    pub norm_constant: f64,
    /// The alternating-sign evaluation of the same constant.
    pub printed_constant: f64,
}

fn validate_weights(m: usize, weights: &[f64]) -> Result<()> {
    if weights.len() != m {
        return Err(JetError::DimensionMismatch { expected: m, got: weights.len() });
    }
    ProductKernel::new(weights.to_vec()).map(|_| ())
}

/// Stages `s = 1..=m-2`: stage `s` uses `l_{m-1-s}` and pairs `∂_{m-s}` with
/// `∂_{m-s+1} + ... + ∂_m`, with `γ = α_{m-s+1} + ... + α_m + 2 (l's of earlier stages)`.
pub fn stages(ell: &[usize], weights: &[f64]) -> Result<Vec<StageInfo>> {
    let m = weights.len();
    if m < 2 || ell.len() != m - 2 {
        return Err(JetError::InvalidArgument(format!("ℓ must have m - 2 = {} entries", m.saturating_sub(2))));
    }
    let mut out = Vec::with_capacity(m - 2);
    let mut acc = 0usize;
    for s in 1..=m - 2 {
        let p = m - s; // 1-based
        let l = ell[m - 2 - s]; // l_{m-1-s}, 0-based storage of (l_1, ..., l_{m-2})
        let beta = weights[p - 1];
        let gamma = weights[p..].iter().sum::<f64>() + 2.0 * acc as f64;
        out.push(StageInfo {
            coordinate: p,
            l,
            beta,
            gamma,
            norm_constant: sigma_norm_constant(l, beta, gamma),
            printed_constant: sigma_norm_constant_alternating(l, beta, gamma),
        });
        acc += l;
    }
    Ok(out)
}

/// `P_ℓ` as an operator polynomial in the `m - 1` symbols `∂_2..∂_m`.
pub fn ell_operator(ell: &[usize], weights: &[f64]) -> Result<Polynomial> {
    let m = weights.len();
    let c = m - 1;
    let mut op = Polynomial::constant(c, C64::new(1.0, 0.0));
    for st in stages(ell, weights)? {
        let x = Polynomial::variable(c, st.coordinate - 2);
        let mut y = Polynomial::zero(c);
        for j in st.coordinate - 1..c {
            y = y.add(&Polynomial::variable(c, j));
        }
        let sig = sigma_frame(st.l, st.beta, st.gamma)?.operator();
        op = op.mul(&sig.compose(&[x, y]));
    }
    Ok(op)
}

/// `D = ∂_2 + ... + ∂_m`.
fn normal_operator(c: usize) -> Polynomial {
    (0..c).fold(Polynomial::zero(c), |acc, j| acc.add(&Polynomial::variable(c, j)))
}

pub fn wilkins_kernel(ell: &[usize], weights: &[f64], n: usize) -> Result<WilkinsKernel> {
    let m = weights.len();
    validate_weights(m, weights)?;
    let total: usize = ell.iter().sum();
    if m < 2 || ell.len() != m - 2 {
        return Err(JetError::InvalidArgument(format!("ℓ must have m - 2 = {} entries", m.saturating_sub(2))));
    }
    if total >= n {
        return Err(JetError::InvalidArgument(format!("inadmissible ℓ = {ell:?}: |ℓ| = {total} must be < n = {n}")));
    }
    let constant = if m == 2 {
        1.0
    } else {
        stages(ell, weights)?.iter().map(|s| s.norm_constant).product()
    };
    Ok(WilkinsKernel {
        exponents: (weights[0], weights[1..].iter().sum::<f64>() + 2.0 * total as f64),
        constant,
    })
}

/// Admissible `ℓ = (l_1, ..., l_{m-2})`, `|ℓ| ≤ n - 1`, outer loop `l_{m-2}`, inner `l_1`.
pub fn admissible_ells(m: usize, n: usize) -> Vec<Vec<usize>> {
    let len = m.saturating_sub(2);
    let mut out = Vec::new();
    let mut cur = vec![0; len];
    fn rec(slot: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        // slot counts down from l_{m-2} (index len-1) to l_1 (index 0)
        for l in 0..=left {
            cur[slot] = l;
            if slot == 0 {
                out.push(cur.clone());
            } else {
                rec(slot - 1, left - l, cur, out);
            }
        }
        cur[slot] = 0;
    }
    if n == 0 {
        return out;
    }
    if len == 0 {
        out.push(Vec::new());
    } else {
        rec(len - 1, n - 1, &mut cur, &mut out);
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionNode {
    pub ell: Vec<usize>,
    pub jet_order: usize,
    pub kernel_exponents: (f64, f64),
    pub constant: f64,
    pub frame: Vec<FrameVector>,
}

pub fn decomposition_tree(m: usize, n: usize, weights: &[f64]) -> Result<Vec<DecompositionNode>> {
    if m < 2 || n < 1 {
        return Err(JetError::InvalidArgument(format!("need m >= 2 and n >= 1, got m={m}, n={n}")));
    }
    validate_weights(m, weights)?;
    let c = m - 1;
    let set = JetIndexSet::new(c, n)?;
    let d = normal_operator(c);
    let mut nodes = Vec::new();
    for ell in admissible_ells(m, n) {
        let total: usize = ell.iter().sum();
        let order = n - total;
        let p = if m == 2 { Polynomial::constant(1, C64::new(1.0, 0.0)) } else { ell_operator(&ell, weights)? };
        let mut frame = Vec::with_capacity(order);
        let mut cur = p;
        for _ in 0..order {
            frame.push(FrameVector::from_operator(&set, &cur)?);
            cur = d.mul(&cur);
        }
        let wk = wilkins_kernel(&ell, weights, n)?;
        nodes.push(DecompositionNode { ell, jet_order: order, kernel_exponents: wk.exponents, constant: wk.constant, frame });
    }
    Ok(nodes)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CongruenceTransform {
    pub x: CMat,
    pub grouping: Vec<Vec<usize>>,
    /// Normalized off-block magnitude of `X G X^*` at the base point.
    pub residual: f64,
    pub condition: f64,
}

/// `X` with rows the component frames in nested order, and the row grouping by component.
pub fn congruence_matrix(m: usize, n: usize, weights: &[f64]) -> Result<(CMat, Vec<Vec<usize>>)> {
    let nodes = decomposition_tree(m, n, weights)?;
    let dim = JetIndexSet::new(m - 1, n)?.len();
    let mut x = CMat::zeros(dim, dim);
    let mut groups = Vec::new();
    let mut row = 0;
    for node in &nodes {
        let mut g = Vec::new();
        for f in &node.frame {
            x.set_row(row, &f.coeffs.transpose());
            g.push(row);
            row += 1;
        }
        groups.push(g);
    }
    Ok((x, groups))
}

/// Largest `|M_{ij}| / sqrt(|M_{ii}| |M_{jj}|)` outside the diagonal blocks.
pub fn normalized_off_block(mx: &CMat, groups: &[Vec<usize>]) -> f64 {
    let n = mx.nrows();
    let d: Vec<f64> = (0..n).map(|i| mx[(i, i)].norm().sqrt().max(f64::MIN_POSITIVE)).collect();
    let scaled = CMat::from_fn(n, n, |i, j| mx[(i, j)] / (d[i] * d[j]));
    off_block_max(&scaled, groups).0
}

pub fn block_diagonalize(m: usize, n: usize, weights: &[f64], w: &[C64], tol: f64) -> Result<CongruenceTransform> {
    let (x, grouping) = congruence_matrix(m, n, weights)?;
    let kernel = ProductKernel::new(weights.to_vec())?;
    if w.len() != m || w.iter().any(|c| (c - w[0]).norm() > 1e-12) {
        return Err(JetError::InvalidSubmanifold("base point must lie on the diagonal".into()));
    }
    let axes: Vec<usize> = (1..m).collect();
    let g = jet_gram_axes_with_cap(&kernel, &axes, n, w, w, FRAME_ORDER_CAP)?;
    let mx = &x * g * x.adjoint();
    let n_ = mx.nrows();
    let d: Vec<f64> = (0..n_).map(|i| mx[(i, i)].norm().sqrt().max(f64::MIN_POSITIVE)).collect();
    let scaled = CMat::from_fn(n_, n_, |i, j| mx[(i, j)] / (d[i] * d[j]));
    let (residual, row, col) = off_block_max(&scaled, &grouping);
    if residual > tol {
        return Err(JetError::BlockResidual { row, col, value: residual });
    }
    let condition = condition_number(&x);
    Ok(CongruenceTransform { x, grouping, residual, condition })
}

/// Residuals of one component.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NodeReport {
    pub ell: Vec<usize>,
    pub jet_order: usize,
    pub exponents: (f64, f64),
    pub constant: f64,
    /// `‖P_ℓ s(0)‖²` from the ambient Gram.
    pub gram_constant: f64,
    pub cross_residual: f64,
    pub gram_residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecompositionReport {
    pub m: usize,
    pub n: usize,
    pub ambient_dim: usize,
    pub total_jet_order: usize,
    pub nodes: Vec<NodeReport>,
    pub max_cross_residual: f64,
    pub max_gram_residual: f64,
    pub max_constant_mismatch: f64,
    pub x_condition: f64,
}

/// Cross-component orthogonality and per-component Wilkins Grams at pairs of diagonal
/// parameters `(t_z, t_w)`.
pub fn verify_orthogonal_decomposition(m: usize, n: usize, weights: &[f64], samples: &[(C64, C64)]) -> Result<DecompositionReport> {
    if m > 5 || n > 4 {
        return Err(JetError::InvalidArgument(format!("desk scale is m <= 5, n <= 4, got m={m}, n={n}")));
    }
    let nodes = decomposition_tree(m, n, weights)?;
    let kernel = ProductKernel::new(weights.to_vec())?;
    let axes: Vec<usize> = (1..m).collect();
    let ambient_dim = JetIndexSet::new(m - 1, n)?.len();
    let (x, _) = congruence_matrix(m, n, weights)?;
    let origin = vec![C64::new(0.0, 0.0); m];
    let g0 = jet_gram_axes_with_cap(&kernel, &axes, n, &origin, &origin, FRAME_ORDER_CAP)?;

    use rayon::prelude::*;
    let per_sample: Vec<(Vec<f64>, Vec<f64>)> = samples
        .par_iter()
        .map(|&(tz, tw)| -> Result<(Vec<f64>, Vec<f64>)> {
            let z = vec![tz; m];
            let w = vec![tw; m];
            let gzw = jet_gram_axes_with_cap(&kernel, &axes, n, &z, &w, FRAME_ORDER_CAP)?;
            let gzz = jet_gram_axes_with_cap(&kernel, &axes, n, &z, &z, FRAME_ORDER_CAP)?;
            let gww = jet_gram_axes_with_cap(&kernel, &axes, n, &w, &w, FRAME_ORDER_CAP)?;
            let mut cross = vec![0.0; nodes.len()];
            let mut gram = vec![0.0; nodes.len()];
            for (a, na) in nodes.iter().enumerate() {
                for (b, nb) in nodes.iter().enumerate() {
                    if a == b {
                        continue;
                    }
                    for u in &na.frame {
                        for v in &nb.frame {
                            let num = pair(&u.coeffs, &v.coeffs, &gzw).norm();
                            let den = (pair(&u.coeffs, &u.coeffs, &gzz).re * pair(&v.coeffs, &v.coeffs, &gww).re).sqrt();
                            cross[a] = f64::max(cross[a], num / den);
                        }
                    }
                }
                let wk = ProductKernel::new(vec![na.kernel_exponents.0, na.kernel_exponents.1])?;
                let wz = [tz, tz];
                let ww = [tw, tw];
                let wgram = jet_gram_axes_with_cap(&wk, &[1], na.jet_order, &wz, &ww, FRAME_ORDER_CAP)?;
                for (r1, u) in na.frame.iter().enumerate() {
                    for (r2, v) in na.frame.iter().enumerate() {
                        let got = pair(&u.coeffs, &v.coeffs, &gzw);
                        let expect = wgram[(r1, r2)] * na.constant;
                        let den = (pair(&u.coeffs, &u.coeffs, &gzz).re * pair(&v.coeffs, &v.coeffs, &gww).re).sqrt();
                        gram[a] = f64::max(gram[a], (got - expect).norm() / den);
                    }
                }
            }
            Ok((cross, gram))
        })
        .collect::<Result<_>>()?;

    let mut reports = Vec::with_capacity(nodes.len());
    let mut max_constant_mismatch: f64 = 0.0;
    for (a, node) in nodes.iter().enumerate() {
        let p0 = &node.frame[0].coeffs;
        let gram_constant = pair(p0, p0, &g0).re;
        max_constant_mismatch = max_constant_mismatch.max((gram_constant - node.constant).abs() / node.constant);
        reports.push(NodeReport {
            ell: node.ell.clone(),
            jet_order: node.jet_order,
            exponents: node.kernel_exponents,
            constant: node.constant,
            gram_constant,
            cross_residual: per_sample.iter().map(|s| s.0[a]).fold(0.0, f64::max),
            gram_residual: per_sample.iter().map(|s| s.1[a]).fold(0.0, f64::max),
        });
    }
    Ok(DecompositionReport {
        m,
        n,
        ambient_dim,
        total_jet_order: nodes.iter().map(|n| n.jet_order).sum(),
        max_cross_residual: reports.iter().map(|r| r.cross_residual).fold(0.0, f64::max),
        max_gram_residual: reports.iter().map(|r| r.gram_residual).fold(0.0, f64::max),
        max_constant_mismatch,
        x_condition: condition_number(&x),
        nodes: reports,
    })
}

/// One row of the constants diagnostics table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantDiagnostic {
    pub ell: Vec<usize>,
    pub gram_constant: f64,
    pub stage_product: f64,
    pub printed_alternating: f64,
}

/// Gram-derived constants next to the printed alternating-sign evaluations.
pub fn constants_diagnostics(m: usize, n: usize, weights: &[f64]) -> Result<Vec<ConstantDiagnostic>> {
    let nodes = decomposition_tree(m, n, weights)?;
    let kernel = ProductKernel::new(weights.to_vec())?;
    let axes: Vec<usize> = (1..m).collect();
    let origin = vec![C64::new(0.0, 0.0); m];
    let g0 = jet_gram_axes_with_cap(&kernel, &axes, n, &origin, &origin, FRAME_ORDER_CAP)?;
    nodes
        .iter()
        .map(|node| {
            let p0 = &node.frame[0].coeffs;
            let printed = if m == 2 { 1.0 } else { stages(&node.ell, weights)?.iter().map(|s| s.printed_constant).product() };
            Ok(ConstantDiagnostic {
                ell: node.ell.clone(),
                gram_constant: pair(p0, p0, &g0).re,
                stage_product: node.constant,
                printed_alternating: printed,
            })
        })
        .collect()
}

/// Fixtures from the two worked examples on `D³` and `D⁴`.
pub mod fixtures {
    use super::*;

    /// Printed `JK(z, w)` on the diagonal of `D³`, frame `(s, ∂_2 s, ∂_3 s)`.
    pub fn toy_one_jk(alpha: f64, beta: f64, gamma: f64, z: C64, w: C64) -> CMat {
        let x = z * w.conj();
        let one = C64::new(1.0, 0.0);
        let u = one - x;
        let wb = w.conj();
        let m = CMat::from_row_slice(3, 3, &[
            u * u, z * u * beta, z * u * gamma,
            wb * u * beta, (one + x * beta) * beta, x * beta * gamma,
            wb * u * gamma, x * beta * gamma, (one + x * gamma) * gamma,
        ]);
        m * u.powf(-alpha - beta - gamma - 2.0)
    }

    /// Printed `JK(z, w)` on the diagonal of `D⁴` for weights `(α, β, γ, δ)`.
    ///
    /// The printed overall power omits `δ`; the exponent used here is `-α-β-γ-δ-2`.
    pub fn toy_two_jk(w4: [f64; 4], z: C64, w: C64) -> CMat {
        let [alpha, b, g, d] = w4;
        let x = z * w.conj();
        let one = C64::new(1.0, 0.0);
        let u = one - x;
        let wb = w.conj();
        let m = CMat::from_row_slice(4, 4, &[
            u * u, z * u * b, z * u * g, z * u * d,
            wb * u * b, (one + x * b) * b, x * b * g, x * b * d,
            wb * u * g, x * b * g, (one + x * g) * g, x * g * d,
            wb * u * d, x * b * d, x * g * d, (one + x * d) * d,
        ]);
        m * u.powf(-alpha - b - g - d - 2.0)
    }

    pub fn toy_one_x2(beta: f64, gamma: f64) -> CMat {
        CMat::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, -gamma, beta].map(|v| C64::new(v, 0.0)))
    }

    pub fn toy_one_x2_groups() -> Vec<Vec<usize>> {
        vec![vec![0, 1], vec![2]]
    }

    /// Printed `X J^{(2)} K X^*`.
    pub fn toy_one_blocks(alpha: f64, beta: f64, gamma: f64, z: C64, w: C64) -> CMat {
        let x = z * w.conj();
        let one = C64::new(1.0, 0.0);
        let u = one - x;
        let bg = beta + gamma;
        let zero = C64::new(0.0, 0.0);
        let m = CMat::from_row_slice(3, 3, &[
            u * u, z * u * bg, zero,
            w.conj() * u * bg, (one + x * bg) * bg, zero,
            zero, zero, C64::new(beta * gamma * bg, 0.0),
        ]);
        m * u.powf(-alpha - beta - gamma - 2.0)
    }

    /// Printed 6 × 6 `X` for jet order 3, frame `(1, ∂_2, ∂_3, ∂_2², ∂_2∂_3, ∂_3²)`.
    pub fn toy_one_x3(beta: f64, gamma: f64) -> CMat {
        let (b, g) = (beta, gamma);
        CMat::from_row_slice(6, 6, &[
            1.0, 0.0, 0.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 1.0, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, 1.0, 2.0, 1.0,
            0.0, -g, b, 0.0, 0.0, 0.0,
            0.0, 0.0, 0.0, -g, b - g, b,
            0.0, 0.0, 0.0, g * (g + 1.0), -2.0 * (b + 1.0) * (g + 1.0), b * (b + 1.0),
        ].map(|v| C64::new(v, 0.0)))
    }

    pub fn toy_one_x3_groups() -> Vec<Vec<usize>> {
        vec![vec![0, 1, 2], vec![3, 4], vec![5]]
    }

    pub fn toy_two_x(beta: f64, gamma: f64, delta: f64) -> CMat {
        CMat::from_row_slice(4, 4, &[
            1.0, 0.0, 0.0, 0.0,
            0.0, 1.0, 1.0, 1.0,
            0.0, -(gamma + delta), beta, beta,
            0.0, 0.0, -delta, gamma,
        ].map(|v| C64::new(v, 0.0)))
    }

    /// The `3 + 1` grouping of the printed decomposition.
    pub fn toy_two_groups() -> Vec<Vec<usize>> {
        vec![vec![0, 1, 2], vec![3]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rel_diff, row_normalize};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma_frame(0, 2.0, 3.0).unwrap().coeffs, vec![1.0]);
        assert_eq!(sigma_frame(1, 2.0, 3.0).unwrap().coeffs, vec![3.0, -2.0]);
        let (b, g) = (1.3, 0.6);
        let s2 = sigma_frame(2, b, g).unwrap().coeffs;
        let expect = [pochhammer(g, 2), -2.0 * (b + 1.0) * (g + 1.0), pochhammer(b, 2)];
        for (x, y) in s2.iter().zip(expect) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn sigma_norm_at_origin() {
        let o = [c(0.0, 0.0); 3];
        assert!((sigma_norm_sq(0, [1.0, 2.0, 3.0], &o).unwrap() - 1.0).abs() < 1e-15);
        assert!((sigma_norm_sq(1, [1.0, 2.0, 3.0], &o).unwrap() - 30.0).abs() < 1e-12);
        assert!((sigma_norm_constant(1, 2.0, 3.0) - 30.0).abs() < 1e-12);
        // the alternating form gives βγ(γ - β)
        assert!((sigma_norm_constant_alternating(1, 2.0, 3.0) - 6.0).abs() < 1e-12);
    }

    #[test]
    fn sigma_norm_needs_z() {
        assert!(sigma_norm_sq(1, [1.0, 2.0, 3.0], &[c(0.0, 0.0), c(0.1, 0.0), c(0.2, 0.0)]).is_err());
    }

    #[test]
    fn ell_order() {
        assert_eq!(admissible_ells(3, 2), vec![vec![0], vec![1]]);
        assert_eq!(admissible_ells(4, 2), vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(admissible_ells(2, 3), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn tree_bookkeeping() {
        let t = decomposition_tree(3, 2, &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(t.iter().map(|n| n.jet_order).collect::<Vec<_>>(), vec![2, 1]);
        let t = decomposition_tree(3, 3, &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(t.iter().map(|n| n.jet_order).collect::<Vec<_>>(), vec![3, 2, 1]);
        let w = wilkins_kernel(&[1], &[1.5, 2.0, 3.0], 2).unwrap();
        assert_eq!(w.exponents, (1.5, 7.0));
        assert!((w.constant - 30.0).abs() < 1e-12);
        assert!(wilkins_kernel(&[2], &[1.5, 2.0, 3.0], 2).is_err());
    }

    #[test]
    fn toy_one_x_reproduced() {
        let (b, g) = (2.0, 3.0);
        let (x, groups) = congruence_matrix(3, 2, &[1.0, b, g]).unwrap();
        assert_eq!(groups, fixtures::toy_one_x2_groups());
        let ours = row_normalize(&x, 1e-14);
        let printed = row_normalize(&fixtures::toy_one_x2(b, g), 1e-14);
        assert!(rel_diff(&ours, &printed) < 1e-14);
        let (x3, _) = congruence_matrix(3, 3, &[1.0, b, g]).unwrap();
        assert!(rel_diff(&row_normalize(&x3, 1e-14), &row_normalize(&fixtures::toy_one_x3(b, g), 1e-14)) < 1e-14);
    }

    #[test]
    fn toy_two_x_reproduced() {
        let w = [0.9, 1.1, 1.7, 0.4];
        let (x, groups) = congruence_matrix(4, 2, &w).unwrap();
        assert_eq!(groups, vec![vec![0, 1], vec![2], vec![3]]);
        let printed = fixtures::toy_two_x(w[1], w[2], w[3]);
        assert!(rel_diff(&row_normalize(&x, 1e-14), &row_normalize(&printed, 1e-14)) < 1e-14);
    }

    #[test]
    fn trivial_order_one() {
        let t = block_diagonalize(3, 1, &[1.0, 2.0, 3.0], &[c(0.2, 0.1); 3], 1e-12).unwrap();
        assert_eq!(t.x, CMat::identity(1, 1));
    }
}

#[cfg(test)]
mod numeric_tests {
    use super::*;

    #[test]
    fn sigma_norm_closed_form_matches_gram() {
        let w = [0.7, 1.3, 0.6];
        let p = [C64::new(0.2, -0.1), C64::new(0.3, 0.25), C64::new(0.3, 0.25)];
        for k in 0..=3 {
            let g = sigma_norm_sq(k, w, &p).unwrap();
            let c = sigma_norm_closed_form(k, w, p[0], p[1]);
            assert!((g - c).abs() / c < 1e-11, "k={k} {g} {c}");
        }
    }

    #[test]
    fn sigma_orthogonal_to_n6() {
        let s = vec![vec![C64::new(0.1, 0.2), C64::new(-0.3, 0.1), C64::new(-0.3, 0.1)]];
        let r = verify_sigma_orthogonality(6, [1.0, 0.8, 1.7], &s).unwrap();
        assert!(r < 1e-10, "{r}");
    }

    #[test]
    fn desk_scale_decompositions() {
        let samples = [(C64::new(0.2, 0.1), C64::new(-0.1, 0.3)), (C64::new(0.0, 0.0), C64::new(0.4, -0.2))];
        for (m, w) in [(2, vec![1.1, 0.7]), (3, vec![1.0, 2.0, 3.0]), (4, vec![0.9, 1.1, 1.7, 0.4]), (5, vec![0.5, 1.5, 0.8, 1.2, 2.0])] {
            for n in 1..=4 {
                let r = verify_orthogonal_decomposition(m, n, &w, &samples).unwrap();
                assert_eq!(r.total_jet_order, r.ambient_dim, "m={m} n={n}");
                assert!(r.max_cross_residual < 1e-10, "m={m} n={n} cross {}", r.max_cross_residual);
                assert!(r.max_gram_residual < 1e-10, "m={m} n={n} gram {}", r.max_gram_residual);
                assert!(r.max_constant_mismatch < 1e-10, "m={m} n={n} const {}", r.max_constant_mismatch);
            }
        }
    }
}
