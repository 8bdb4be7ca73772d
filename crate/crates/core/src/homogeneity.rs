//! Quasi-invariance of the product kernel and its jets under products of Möbius maps.
//!
//! The scalar cocycle of a tuple is `J(z) = Π_j p̄_j^{-α_j} (1 - ā_j z_j)^{-α_j}` on the
//! `SU(1,1)` lifts. Since `|p|² = (1 - |a|²)^{-1}` this is `Π (1-|a_j|²)^{α_j/2} (1 - ā_j z_j)^{-α_j}`
//! up to a unimodular constant. For integer weights it equals `Π (q̄_j z_j + p̄_j)^{-α_j}`,
//! which composes exactly.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{JetError, Result};
use crate::jets::{jet_gram_axes, CoordinateMap, JetIndexSet, PullbackKernel, SubmanifoldSpec};
use crate::kernel::{DerivOrder, ProductKernel, C64};
use crate::linalg::{cholesky_lower, condition_number, inverse, lower_inverse, CMat};
use crate::mobius::{AutoTuple, MobiusMap, MobiusParams};
use crate::special::{factorial, pochhammer};

pub const JET_COCYCLE_MAX_ORDER: usize = 4;
/// Anchor Grams with a larger condition number trigger a warning in [`recover_cocycle`].
pub const CONDITION_WARNING: f64 = 1e6;

fn frob(m: &CMat) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn tuple_summary(t: &AutoTuple) -> String {
    let a: Vec<String> = t.maps.iter().map(|g| format!("{:.3}", g.a())).collect();
    format!("a = [{}]", a.join(", "))
}

/// `p̄^{-λ} (1 - ā z)^{-λ}`, principal branches taken separately so the phase is constant in `z`.
fn factor_cocycle(g: &MobiusMap, lambda: f64, z: C64) -> C64 {
    let pb = g.lift().0.conj();
    pb.powf(-lambda) * (g.denominator(z) / pb).powf(-lambda)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarCocycle {
    pub tuple: AutoTuple,
    pub weights: Vec<f64>,
}

pub fn scalar_cocycle(t: &AutoTuple, weights: &[f64]) -> Result<ScalarCocycle> {
    if t.m() != weights.len() {
        return Err(JetError::DimensionMismatch { expected: weights.len(), got: t.m() });
    }
    ProductKernel::new(weights.to_vec())?;
    Ok(ScalarCocycle { tuple: t.clone(), weights: weights.to_vec() })
}

impl ScalarCocycle {
    pub fn eval(&self, z: &[C64]) -> C64 {
        self.tuple
            .maps
            .iter()
            .zip(&self.weights)
            .zip(z)
            .map(|((g, &l), &x)| factor_cocycle(g, l, x))
            .product()
    }

    /// Max `|∂J/∂z̄_j| / |J|` by central differences.
    pub fn cauchy_riemann_residual(&self, samples: &[Vec<C64>]) -> f64 {
        let h = 1e-5;
        let mut worst: f64 = 0.0;
        for z in samples {
            let j0 = self.eval(z).norm();
            for i in 0..z.len() {
                let shift = |d: C64| {
                    let mut x = z.clone();
                    x[i] += d;
                    self.eval(&x)
                };
                let dx = (shift(C64::new(h, 0.0)) - shift(C64::new(-h, 0.0))) / (2.0 * h);
                let dy = (shift(C64::new(0.0, h)) - shift(C64::new(0.0, -h))) / (2.0 * h);
                worst = worst.max(((dx + C64::i() * dy) * 0.5).norm() / j0);
            }
        }
        worst
    }
}

/// Max of `|K(z,w) - J(z) K(gz,gw) conj(J(w))| / |K(z,w)|`.
pub fn verify_quasi_invariance<J: Fn(&[C64]) -> C64 + Sync>(
    kernel: &ProductKernel,
    t: &AutoTuple,
    j: J,
    samples: &[(Vec<C64>, Vec<C64>)],
) -> Result<f64> {
    let res: Vec<f64> = samples
        .par_iter()
        .map(|(z, w)| -> Result<f64> {
            let k = kernel.eval(z, w)?;
            let kg = kernel.eval(&t.apply(z), &t.apply(w))?;
            Ok((k - j(z) * kg * j(w).conj()).norm() / k.norm())
        })
        .collect::<Result<_>>()?;
    Ok(res.into_iter().fold(0.0, f64::max))
}

/// Matrix form: `‖G(z,w) - M(z) G(Φz,Φw) M(w)^*‖_F / ‖G(z,w)‖_F`.
pub fn verify_matrix_quasi_invariance<G, M>(gram: G, t: &AutoTuple, cocycle: M, samples: &[(Vec<C64>, Vec<C64>)]) -> Result<f64>
where
    G: Fn(&[C64], &[C64]) -> Result<CMat> + Sync,
    M: Fn(&[C64]) -> Result<CMat> + Sync,
{
    verify_matrix_quasi_invariance_sided(gram, t, &cocycle, &cocycle, samples)
}

/// As [`verify_matrix_quasi_invariance`] with separate left and right factors.
pub fn verify_matrix_quasi_invariance_sided<G, L, R>(gram: G, t: &AutoTuple, left: L, right: R, samples: &[(Vec<C64>, Vec<C64>)]) -> Result<f64>
where
    G: Fn(&[C64], &[C64]) -> Result<CMat> + Sync,
    L: Fn(&[C64]) -> Result<CMat> + Sync,
    R: Fn(&[C64]) -> Result<CMat> + Sync,
{
    let res: Vec<f64> = samples
        .par_iter()
        .map(|(z, w)| -> Result<f64> {
            let g = gram(z, w)?;
            let gt = gram(&t.apply(z), &t.apply(w))?;
            let rhs = left(z)? * gt * right(w)?.adjoint();
            Ok(frob(&(&g - rhs)) / frob(&g))
        })
        .collect::<Result<_>>()?;
    Ok(res.into_iter().fold(0.0, f64::max))
}

/// Deviation of `r(z) = J_{gh}(z) / (J_h(z) J_g(hz))` from a constant unimodular scalar.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CocycleCheck {
    /// Max `| |r(z)| - 1 |`.
    pub unimodularity: f64,
    /// Max `|arg(r(z) / r(z_0))|`.
    pub phase_spread: f64,
    /// Max `|r(z) - 1|`; zero when the law holds exactly.
    pub exact_deviation: f64,
    /// Matrix case: relative misfit of the best scalar multiple, else 0.
    pub fit_residual: f64,
}

fn summarize_ratios(ratios: &[C64], fit: f64) -> CocycleCheck {
    let r0 = ratios.first().copied().unwrap_or(C64::new(1.0, 0.0));
    CocycleCheck {
        unimodularity: ratios.iter().map(|r| (r.norm() - 1.0).abs()).fold(0.0, f64::max),
        phase_spread: ratios.iter().map(|r| (r / r0).arg().abs()).fold(0.0, f64::max),
        exact_deviation: ratios.iter().map(|r| (r - 1.0).norm()).fold(0.0, f64::max),
        fit_residual: fit,
    }
}

pub fn verify_cocycle_identity<A, B, C>(j_gh: A, j_h: B, j_g: C, h: &AutoTuple, samples: &[Vec<C64>]) -> CocycleCheck
where
    A: Fn(&[C64]) -> C64,
    B: Fn(&[C64]) -> C64,
    C: Fn(&[C64]) -> C64,
{
    let ratios: Vec<C64> = samples.iter().map(|z| j_gh(z) / (j_h(z) * j_g(&h.apply(z)))).collect();
    summarize_ratios(&ratios, 0.0)
}

/// Matrix cocycle law `M_{gh}(z) = c · M_h(z) M_g(hz)`, with `c` fitted per sample.
pub fn verify_matrix_cocycle_identity<A, B, C>(m_gh: A, m_h: B, m_g: C, h: &AutoTuple, samples: &[Vec<C64>]) -> Result<CocycleCheck>
where
    A: Fn(&[C64]) -> Result<CMat>,
    B: Fn(&[C64]) -> Result<CMat>,
    C: Fn(&[C64]) -> Result<CMat>,
{
    let mut ratios = Vec::with_capacity(samples.len());
    let mut fit: f64 = 0.0;
    for z in samples {
        let a = m_gh(z)?;
        let b = m_h(z)? * m_g(&h.apply(z))?;
        let c = a.dotc(&b).conj() / b.dotc(&b);
        fit = fit.max(frob(&(&a - &b * c)) / frob(&a));
        ratios.push(c);
    }
    Ok(summarize_ratios(&ratios, fit))
}

/// Jet transport matrix of a tuple fixing a submanifold.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixCocycle {
    pub tuple: AutoTuple,
    pub weights: Vec<f64>,
    pub axes: Vec<usize>,
    pub index_set: JetIndexSet,
}

/// `(λ)_r / r! (-q̄/(q̄x+p̄))^r j(x)`, the Taylor coefficients of `j(x + h)`.
fn cocycle_series(g: &MobiusMap, lambda: f64, x: C64, len: usize) -> Vec<C64> {
    let j = factor_cocycle(g, lambda, x);
    let ratio = -g.lift().1.conj() / g.denominator(x);
    (0..len).map(|r| j * ratio.powu(r as u32) * (pochhammer(lambda, r) / factorial(r))).collect()
}

fn truncated_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let n = a.len();
    let mut out = vec![C64::new(0.0, 0.0); n];
    for i in 0..n {
        for j in 0..n - i {
            out[i + j] += a[i] * b[j];
        }
    }
    out
}

/// `m_{a,c} = a!/c! [h^a] j(x+h) (φ(x+h) - φ(x))^c` for `a, c < k`.
fn axis_table(g: &MobiusMap, lambda: f64, x: C64, k: usize) -> Vec<Vec<C64>> {
    let js = cocycle_series(g, lambda, x, k);
    let mut u = vec![C64::new(0.0, 0.0); k];
    for (r, slot) in u.iter_mut().enumerate().skip(1) {
        *slot = g.derivative_unchecked(x, r) / factorial(r);
    }
    let mut table = vec![vec![C64::new(0.0, 0.0); k]; k];
    let mut pow = js;
    for c in 0..k {
        for a in 0..k {
            table[a][c] = pow[a] * (factorial(a) / factorial(c));
        }
        pow = truncated_mul(&pow, &u);
    }
    table
}

pub fn jet_cocycle(t: &AutoTuple, weights: &[f64], sub: &SubmanifoldSpec, k: usize) -> Result<MatrixCocycle> {
    if k == 0 || k > JET_COCYCLE_MAX_ORDER {
        return Err(JetError::OrderCapExceeded { order: k, cap: JET_COCYCLE_MAX_ORDER });
    }
    if t.m() != weights.len() || sub.m != weights.len() {
        return Err(JetError::DimensionMismatch { expected: weights.len(), got: t.m() });
    }
    if !t.fixes(sub) {
        return Err(JetError::TupleDoesNotFix(tuple_summary(t)));
    }
    ProductKernel::new(weights.to_vec())?;
    Ok(MatrixCocycle {
        tuple: t.clone(),
        weights: weights.to_vec(),
        axes: sub.axes(),
        index_set: JetIndexSet::new(sub.codim(), k)?,
    })
}

impl MatrixCocycle {
    pub fn dim(&self) -> usize {
        self.index_set.len()
    }

    /// `M(z)`, lower triangular in graded colex order.
    pub fn eval(&self, z: &[C64]) -> Result<CMat> {
        if z.len() != self.weights.len() {
            return Err(JetError::DimensionMismatch { expected: self.weights.len(), got: z.len() });
        }
        let k = self.index_set.order;
        let mut rest = C64::new(1.0, 0.0);
        for (j, (g, &l)) in self.tuple.maps.iter().zip(&self.weights).enumerate() {
            if !self.axes.contains(&j) {
                rest *= factor_cocycle(g, l, z[j]);
            }
        }
        let tables: Vec<Vec<Vec<C64>>> =
            self.axes.iter().map(|&ax| axis_table(&self.tuple.maps[ax], self.weights[ax], z[ax], k)).collect();
        let n = self.dim();
        let idx = &self.index_set.indices;
        Ok(CMat::from_fn(n, n, |r, c| {
            let mut v = rest;
            for (i, tab) in tables.iter().enumerate() {
                v *= tab[idx[r][i]][idx[c][i]];
            }
            v
        }))
    }
}

/// `J(z) = P(z) D Q(z)` from the kernel identity at an anchor `w_0`, with `D` diagonal unimodular.
#[derive(Debug, Clone)]
pub struct RecoveredCocycle {
    kernel: ProductKernel,
    tuple: AutoTuple,
    axes: Vec<usize>,
    k: usize,
    anchor: Vec<C64>,
    lg_inv_adj: CMat,
    lh_adj: CMat,
    pub diagonal: Vec<C64>,
    pub anchor_condition: f64,
    pub warning: Option<String>,
}

impl RecoveredCocycle {
    fn factors(&self, z: &[C64]) -> Result<(CMat, CMat)> {
        let g = jet_gram_axes(&self.kernel, &self.axes, self.k, z, &self.anchor)?;
        let h = jet_gram_axes(&self.kernel, &self.axes, self.k, &self.tuple.apply(z), &self.tuple.apply(&self.anchor))?;
        Ok((g * &self.lg_inv_adj, &self.lh_adj * inverse(&h)?))
    }

    pub fn eval(&self, z: &[C64]) -> Result<CMat> {
        let (p, q) = self.factors(z)?;
        let d = CMat::from_diagonal(&nalgebra::DVector::from_vec(self.diagonal.clone()));
        Ok(p * d * q)
    }
}

/// Least-squares reconstruction of the jet cocycle from Gram values alone.
///
/// `reference` points fix `D` through the lower-triangular structure of `J`.
pub fn recover_cocycle(
    kernel: &ProductKernel,
    sub: &SubmanifoldSpec,
    k: usize,
    t: &AutoTuple,
    anchor: &[C64],
    reference: &[Vec<C64>],
) -> Result<RecoveredCocycle> {
    if !t.fixes(sub) {
        return Err(JetError::TupleDoesNotFix(tuple_summary(t)));
    }
    let axes = sub.axes();
    let g0 = jet_gram_axes(kernel, &axes, k, anchor, anchor)?;
    let ta = t.apply(anchor);
    let h0 = jet_gram_axes(kernel, &axes, k, &ta, &ta)?;
    let anchor_condition = condition_number(&g0);
    let lg = cholesky_lower(&g0, 0)?;
    let lh = cholesky_lower(&h0, 0)?;
    let mut rec = RecoveredCocycle {
        kernel: kernel.clone(),
        tuple: t.clone(),
        axes,
        k,
        anchor: anchor.to_vec(),
        lg_inv_adj: lower_inverse(&lg).adjoint(),
        lh_adj: lh.adjoint(),
        diagonal: Vec::new(),
        anchor_condition,
        warning: None,
    };
    if anchor_condition > CONDITION_WARNING {
        rec.warning = Some(format!("anchor Gram condition number {anchor_condition:.3e} exceeds {CONDITION_WARNING:.0e}"));
    }
    let n = g0.nrows();
    let mut rows: Vec<Vec<C64>> = Vec::new();
    for z in reference {
        let (p, q) = rec.factors(z)?;
        for i in 0..n {
            for j in i + 1..n {
                rows.push((0..n).map(|kk| p[(i, kk)] * q[(kk, j)]).collect());
            }
        }
    }
    if n == 1 {
        rec.diagonal = vec![C64::new(1.0, 0.0)];
        return Ok(rec);
    }
    let a = CMat::from_fn(rows.len().max(n), n, |r, c| rows.get(r).map_or(C64::new(0.0, 0.0), |row| row[c]));
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested v_t");
    let sv = &svd.singular_values;
    let mut order: Vec<usize> = (0..sv.len()).collect();
    order.sort_by(|&x, &y| sv[x].total_cmp(&sv[y]));
    let smax = sv[order[n - 1]];
    if sv[order[1]] <= 1e-8 * smax {
        return Err(JetError::RankDeficient(format!(
            "triangularity constraints leave a {}-dimensional family",
            order.iter().filter(|&&i| sv[i] <= 1e-8 * smax).count()
        )));
    }
    let v: Vec<C64> = (0..n).map(|c| v_t[(order[0], c)].conj()).collect();
    rec.diagonal = v.iter().map(|x| x / v[0]).collect();
    Ok(rec)
}

/// Max entrywise `|A_i - c B_i| / max|B|` for the best unimodular constant `c`.
pub fn compare_up_to_phase(a: &[CMat], b: &[CMat]) -> f64 {
    let mut num = C64::new(0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        num += y.dotc(x);
    }
    let c = if num.norm() > 0.0 { num / num.norm() } else { C64::new(1.0, 0.0) };
    let scale = b.iter().flat_map(|m| m.iter()).map(|v| v.norm()).fold(0.0, f64::max);
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y.iter()).map(move |(p, q)| (p - q * c).norm()))
        .fold(0.0, f64::max)
        / scale
}

/// One group element of a homogeneity report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomogeneityRecord {
    pub group_element: Vec<MobiusParams>,
    pub residual_kernel_identity: f64,
    pub cocycle_unimodularity: f64,
    pub cocycle_phase_spread: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorhomReport {
    pub m: usize,
    pub d: usize,
    pub k: usize,
    pub records: Vec<HomogeneityRecord>,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Jet quasi-invariance of the restricted jet Gram along the diagonal `Δ_d` for each
/// tuple, plus the projective matrix cocycle law for consecutive pairs.
///
/// `samples` are tangential parameters of `Δ_d`, `m - d + 1` coordinates each.
pub fn verify_corhom(
    weights: &[f64],
    d: usize,
    k: usize,
    tuples: &[AutoTuple],
    samples: &[(Vec<C64>, Vec<C64>)],
    corruption: Option<f64>,
    tolerance: f64,
) -> Result<CorhomReport> {
    let m = weights.len();
    let sub = SubmanifoldSpec::diagonal(m, d)?;
    let kernel = ProductKernel::new(weights.to_vec())?;
    let axes = sub.axes();
    let pairs: Vec<(Vec<C64>, Vec<C64>)> = samples
        .iter()
        .map(|(z, w)| Ok((sub.embed(z)?.into_inner(), sub.embed(w)?.into_inner())))
        .collect::<Result<_>>()?;
    let points: Vec<Vec<C64>> = pairs.iter().map(|p| p.0.clone()).collect();
    let gram = |z: &[C64], w: &[C64]| jet_gram_axes(&kernel, &axes, k, z, w);
    let cocycles: Vec<MatrixCocycle> = tuples
        .iter()
        .map(|t| jet_cocycle(t, weights, &sub, k))
        .collect::<Result<_>>()?;
    // a broken cocycle carries an extra phase on the left factor only
    let phase = C64::from_polar(1.0, corruption.unwrap_or(0.0));
    let mut records = Vec::with_capacity(tuples.len());
    for (i, t) in tuples.iter().enumerate() {
        let residual =
            verify_matrix_quasi_invariance_sided(gram, t, |z| cocycles[i].eval(z).map(|m| m * phase), |z| cocycles[i].eval(z), &pairs)?;
        // pair with the next tuple: g = tuples[i+1], h = tuples[i]
        let g = &tuples[(i + 1) % tuples.len()];
        let gh = g.compose(t);
        let c_gh = jet_cocycle(&gh, weights, &sub, k)?;
        let c_g = jet_cocycle(g, weights, &sub, k)?;
        let law = verify_matrix_cocycle_identity(|z| c_gh.eval(z), |z| cocycles[i].eval(z), |z| c_g.eval(z), t, &points)?;
        records.push(HomogeneityRecord {
            group_element: t.params(),
            residual_kernel_identity: residual.max(law.fit_residual),
            cocycle_unimodularity: law.unimodularity,
            cocycle_phase_spread: law.phase_spread,
        });
    }
    let max_residual = records.iter().map(|r| r.residual_kernel_identity).fold(0.0, f64::max);
    let pass = records
        .iter()
        .all(|r| r.residual_kernel_identity < tolerance && r.cocycle_phase_spread < tolerance);
    Ok(CorhomReport { m, d, k, records, max_residual, tolerance, pass })
}

/// Chart `z̃ = (z_1, z_2 - z_1, ..., z_d - z_1, z_{d+1}, ..., z_m)` taking `Δ_d` to a coordinate plane.
pub fn diagonal_chart(m: usize, d: usize) -> Result<crate::jets::AffineMap> {
    let mut a = CMat::identity(m, m);
    for i in 1..d {
        a[(i, 0)] = C64::new(-1.0, 0.0);
    }
    crate::jets::AffineMap::new(a, nalgebra::DVector::zeros(m))
}

/// Residuals of the jet kernel identity before and after the change of variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PullbackAgreement {
    pub direct: f64,
    pub pullback: f64,
}

impl PullbackAgreement {
    /// Same verdict and residuals within a factor 2, both floored at `floor`.
    pub fn agrees(&self, tolerance: f64, floor: f64) -> bool {
        let (a, b) = (self.direct.max(floor), self.pullback.max(floor));
        (self.direct < tolerance) == (self.pullback < tolerance) && a.max(b) <= 2.0 * a.min(b)
    }
}

/// Verifies the jet identity for `K` along `Δ_d` and for `K ∘ θ^{-1}` along `θ(Δ_d)`,
/// with the conjugated tuple and the transported cocycle.
pub fn pullback_homogeneity(weights: &[f64], d: usize, k: usize, t: &AutoTuple, samples: &[(Vec<C64>, Vec<C64>)]) -> Result<PullbackAgreement> {
    let m = weights.len();
    let sub = SubmanifoldSpec::diagonal(m, d)?;
    let kernel = ProductKernel::new(weights.to_vec())?;
    let cocycle = jet_cocycle(t, weights, &sub, k)?;
    let pairs: Vec<(Vec<C64>, Vec<C64>)> = samples
        .iter()
        .map(|(z, w)| Ok((sub.embed(z)?.into_inner(), sub.embed(w)?.into_inner())))
        .collect::<Result<_>>()?;
    let axes = sub.axes();
    let direct = verify_matrix_quasi_invariance(|z, w| jet_gram_axes(&kernel, &axes, k, z, w), t, |z| cocycle.eval(z), &pairs)?;

    let chart = diagonal_chart(m, d)?;
    let image: Vec<Vec<C64>> = pairs.iter().flat_map(|(z, w)| [chart.forward(z), chart.forward(w)]).collect();
    let pb = PullbackKernel::new(kernel.clone(), chart, &image)?;
    let set = JetIndexSet::new(axes.len(), k)?;
    let embed = |alpha: &[usize]| {
        let mut o = vec![0; m];
        for (a, &ax) in alpha.iter().zip(&axes) {
            o[ax] = *a;
        }
        o
    };
    let orders: Vec<Vec<usize>> = set.indices.iter().map(|a| embed(a)).collect();
    let gram2 = |zt: &[C64], wt: &[C64]| -> Result<CMat> {
        let n = orders.len();
        let mut g = CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = pb.mixed_partial(&DerivOrder::new(orders[i].clone(), orders[j].clone())?, zt, wt)?;
            }
        }
        Ok(g)
    };
    let map = pb.map();
    // Φ̃ = θ Φ θ^{-1} acts on image points; wrap it as a tuple-like action
    let conj_pairs: Vec<(Vec<C64>, Vec<C64>)> = pairs.iter().map(|(z, w)| (map.forward(z), map.forward(w))).collect();
    let mut worst: f64 = 0.0;
    for (zt, wt) in &conj_pairs {
        let g = gram2(zt, wt)?;
        let phi = |x: &[C64]| map.forward(&t.apply(&map.inverse(x)));
        let gt = gram2(&phi(zt), &phi(wt))?;
        let mz = cocycle.eval(&map.inverse(zt))?;
        let mw = cocycle.eval(&map.inverse(wt))?;
        worst = worst.max(frob(&(&g - mz * gt * mw.adjoint())) / frob(&g));
    }
    Ok(PullbackAgreement { direct, pullback: worst })
}
