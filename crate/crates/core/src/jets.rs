//! Jet index sets, jet Gram matrices relative to a submanifold, the module action
//! matrix of a multiplier, function jets and kernel pullback under coordinate maps.

use serde::{Deserialize, Serialize};

use crate::error::{JetError, Result};
use crate::fd::fd_partial;
use crate::kernel::{check_in_polydisc, mixed_partial_unchecked, DerivOrder, Point, ProductKernel, C64, DEFAULT_ORDER_CAP};
use crate::linalg::{inverse, min_eigenvalue, CMat, CVec};
use crate::polynomial::Polynomial;
use crate::special::binomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubmanifoldKind {
    /// `{z_1 = ... = z_d = 0}`
    CoordinatePlane,
    /// `{z_1 = ... = z_d}`
    Diagonal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmanifoldSpec {
    pub kind: SubmanifoldKind,
    pub m: usize,
    pub d: usize,
}

impl SubmanifoldSpec {
    pub fn new(kind: SubmanifoldKind, m: usize, d: usize) -> Result<Self> {
        if d > m || d == 0 {
            return Err(JetError::InvalidSubmanifold(format!("need 1 <= d <= m, got d={d}, m={m}")));
        }
        if kind == SubmanifoldKind::Diagonal && d < 2 {
            return Err(JetError::InvalidSubmanifold("the diagonal needs d >= 2".into()));
        }
        Ok(Self { kind, m, d })
    }

    pub fn diagonal(m: usize, d: usize) -> Result<Self> {
        Self::new(SubmanifoldKind::Diagonal, m, d)
    }

    pub fn coordinate_plane(m: usize, d: usize) -> Result<Self> {
        Self::new(SubmanifoldKind::CoordinatePlane, m, d)
    }

    pub fn codim(&self) -> usize {
        match self.kind {
            SubmanifoldKind::CoordinatePlane => self.d,
            SubmanifoldKind::Diagonal => self.d - 1,
        }
    }

    /// 0-based coordinate axes of the transverse directions.
    pub fn axes(&self) -> Vec<usize> {
        match self.kind {
            SubmanifoldKind::CoordinatePlane => (0..self.d).collect(),
            SubmanifoldKind::Diagonal => (1..self.d).collect(),
        }
    }

    pub fn transverse(&self) -> Vec<Vec<C64>> {
        self.axes()
            .into_iter()
            .map(|a| {
                let mut e = vec![C64::new(0.0, 0.0); self.m];
                e[a] = C64::new(1.0, 0.0);
                e
            })
            .collect()
    }

    pub fn contains(&self, p: &[C64], tol: f64) -> bool {
        if p.len() != self.m {
            return false;
        }
        match self.kind {
            SubmanifoldKind::CoordinatePlane => p[..self.d].iter().all(|c| c.norm() <= tol),
            SubmanifoldKind::Diagonal => p[1..self.d].iter().all(|c| (c - p[0]).norm() <= tol),
        }
    }

    /// Embeds a point of `D^{m-d+1}` (diagonal) or `D^{m-d}` (plane) into the submanifold.
    pub fn embed(&self, tangential: &[C64]) -> Result<Point> {
        let zero = C64::new(0.0, 0.0);
        let coords = match self.kind {
            SubmanifoldKind::Diagonal => {
                if tangential.len() != self.m - self.d + 1 {
                    return Err(JetError::DimensionMismatch { expected: self.m - self.d + 1, got: tangential.len() });
                }
                let mut v = vec![tangential[0]; self.d];
                v.extend_from_slice(&tangential[1..]);
                v
            }
            SubmanifoldKind::CoordinatePlane => {
                if tangential.len() != self.m - self.d {
                    return Err(JetError::DimensionMismatch { expected: self.m - self.d, got: tangential.len() });
                }
                let mut v = vec![zero; self.d];
                v.extend_from_slice(tangential);
                v
            }
        };
        Point::new(coords)
    }
}

/// Multi-indices `{α : |α| < k}` in graded colexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetIndexSet {
    pub codim: usize,
    pub order: usize,
    pub indices: Vec<Vec<usize>>,
}

impl JetIndexSet {
    pub fn new(codim: usize, k: usize) -> Result<Self> {
        if codim == 0 || k == 0 {
            return Err(JetError::InvalidArgument(format!("codim={codim}, k={k}: both must be >= 1")));
        }
        let mut indices = Vec::new();
        for g in 0..k {
            indices.extend(grade_colex(codim, g));
        }
        Ok(Self { codim, order: k, indices })
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn position(&self, alpha: &[usize]) -> Option<usize> {
        self.indices.iter().position(|a| a.as_slice() == alpha)
    }

    pub fn grade(&self, i: usize) -> usize {
        self.indices[i].iter().sum()
    }

    /// Positions of all indices of grade `g`.
    pub fn grade_range(&self, g: usize) -> std::ops::Range<usize> {
        let start = self.indices.iter().position(|a| a.iter().sum::<usize>() == g).unwrap_or(self.len());
        let end = self.indices.iter().rposition(|a| a.iter().sum::<usize>() == g).map_or(start, |e| e + 1);
        start..end
    }
}

/// Multi-indices of exact grade `g` in colexicographic order.
fn grade_colex(codim: usize, g: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; codim];
    fn rec(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == 0 {
            cur[0] = left;
            out.push(cur.clone());
            return;
        }
        // colex: the last coordinate varies slowest
        for k in 0..=left {
            cur[i] = k;
            rec(i - 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    rec(codim - 1, g, &mut cur, &mut out);
    out
}

pub fn jet_index_set(codim: usize, k: usize) -> Result<JetIndexSet> {
    JetIndexSet::new(codim, k)
}

/// Sum of `C(codim + j - 1, j)` over `j < k`.
pub fn jet_dimension(codim: usize, k: usize) -> usize {
    (0..k).map(|j| crate::special::binomial_u64(codim + j - 1, j) as usize).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct JetGram {
    pub base_z: Point,
    pub base_w: Point,
    pub index_set: JetIndexSet,
    pub entries: CMat,
}

impl JetGram {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        min_eigenvalue(&self.entries)
    }
}

fn embed_orders(m: usize, axes: &[usize], alpha: &[usize]) -> Vec<usize> {
    let mut o = vec![0; m];
    for (a, &ax) in alpha.iter().zip(axes) {
        o[ax] += a;
    }
    o
}

/// Gram of `∂^α ∂̄^β K` over the coordinate axes `axes`, `|α|, |β| < k`.
pub fn jet_gram_axes(kernel: &ProductKernel, axes: &[usize], k: usize, z: &[C64], w: &[C64]) -> Result<CMat> {
    jet_gram_axes_with_cap(kernel, axes, k, z, w, DEFAULT_ORDER_CAP)
}

pub(crate) fn jet_gram_axes_with_cap(kernel: &ProductKernel, axes: &[usize], k: usize, z: &[C64], w: &[C64], cap: usize) -> Result<CMat> {
    let m = kernel.m();
    for p in [z, w] {
        if p.len() != m {
            return Err(JetError::DimensionMismatch { expected: m, got: p.len() });
        }
        check_in_polydisc(p)?;
    }
    if let Some(&a) = axes.iter().find(|&&a| a >= m) {
        return Err(JetError::InvalidSubmanifold(format!("axis {a} out of range for m={m}")));
    }
    let order = 2 * (k.max(1) - 1);
    if order > cap {
        return Err(JetError::OrderCapExceeded { order, cap });
    }
    let set = JetIndexSet::new(axes.len(), k)?;
    let orders: Vec<Vec<usize>> = set.indices.iter().map(|a| embed_orders(m, axes, a)).collect();
    let n = set.len();
    let w_ = kernel.weights();
    Ok(CMat::from_fn(n, n, |i, j| mixed_partial_unchecked(w_, &orders[i], &orders[j], z, w)))
}

pub fn jet_gram(kernel: &ProductKernel, sub: &SubmanifoldSpec, k: usize, z: &Point, w: &Point) -> Result<JetGram> {
    if sub.m != kernel.m() {
        return Err(JetError::DimensionMismatch { expected: kernel.m(), got: sub.m });
    }
    let entries = jet_gram_axes(kernel, &sub.axes(), k, z, w)?;
    Ok(JetGram {
        base_z: z.clone(),
        base_w: w.clone(),
        index_set: JetIndexSet::new(sub.codim(), k)?,
        entries,
    })
}

/// [`jet_gram`] with both base points required to lie on the submanifold.
pub fn jet_gram_restricted(kernel: &ProductKernel, sub: &SubmanifoldSpec, k: usize, z: &Point, w: &Point) -> Result<JetGram> {
    for p in [z, w] {
        if !sub.contains(p, 1e-12) {
            return Err(JetError::InvalidSubmanifold(format!("point {:?} is not on the submanifold", p.coords())));
        }
    }
    jet_gram(kernel, sub, k, z, w)
}

/// `∂_u` along the direction `u` as a first-order operator polynomial in `∂_1..∂_m`.
fn direction_operator(u: &[C64]) -> Polynomial {
    let mut p = Polynomial::zero(u.len());
    for (j, c) in u.iter().enumerate() {
        let mut e = vec![0; u.len()];
        e[j] = 1;
        p.add_term(e, *c);
    }
    p
}

/// `Π_i D_{u_i}^{α_i}` as an operator polynomial.
fn directional_power(dirs: &[Polynomial], alpha: &[usize], m: usize) -> Polynomial {
    let mut p = Polynomial::constant(m, C64::new(1.0, 0.0));
    for (d, &a) in dirs.iter().zip(alpha) {
        p = p.mul(&d.pow(a));
    }
    p
}

/// Applies `P(∂_z) Q(∂̄_w)` to the kernel, conjugating the coefficients of `Q`.
fn apply_operator_pair(kernel: &ProductKernel, p: &Polynomial, q: &Polynomial, z: &[C64], w: &[C64]) -> C64 {
    let mut sum = C64::new(0.0, 0.0);
    for (ep, cp) in p.terms() {
        for (eq, cq) in q.terms() {
            sum += cp * cq.conj() * mixed_partial_unchecked(kernel.weights(), ep, eq, z, w);
        }
    }
    sum
}

/// Jet Gram along arbitrary transverse directions, expanded by multilinearity.
pub fn directional_jet_gram(kernel: &ProductKernel, directions: &[Vec<C64>], k: usize, z: &[C64], w: &[C64]) -> Result<CMat> {
    let m = kernel.m();
    for p in [z, w] {
        if p.len() != m {
            return Err(JetError::DimensionMismatch { expected: m, got: p.len() });
        }
        check_in_polydisc(p)?;
    }
    let set = JetIndexSet::new(directions.len(), k)?;
    let dirs: Vec<Polynomial> = directions.iter().map(|u| direction_operator(u)).collect();
    let ops: Vec<Polynomial> = set.indices.iter().map(|a| directional_power(&dirs, a, m)).collect();
    let n = set.len();
    Ok(CMat::from_fn(n, n, |i, j| apply_operator_pair(kernel, &ops[i], &ops[j], z, w)))
}

/// Coefficients over the jet frame `{∂^α s}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameVector {
    pub index_set: JetIndexSet,
    pub coeffs: CVec,
}

impl FrameVector {
    pub fn new(index_set: JetIndexSet, coeffs: CVec) -> Result<Self> {
        if coeffs.len() != index_set.len() {
            return Err(JetError::DimensionMismatch { expected: index_set.len(), got: coeffs.len() });
        }
        Ok(Self { index_set, coeffs })
    }

    pub fn unit(index_set: &JetIndexSet, alpha: &[usize]) -> Result<Self> {
        let i = index_set
            .position(alpha)
            .ok_or_else(|| JetError::IndexSetMismatch(format!("{alpha:?} is not in the index set")))?;
        let mut c = CVec::zeros(index_set.len());
        c[i] = C64::new(1.0, 0.0);
        Ok(Self { index_set: index_set.clone(), coeffs: c })
    }

    /// Frame vector `P(∂) s` for an operator polynomial in the transverse symbols.
    pub fn from_operator(index_set: &JetIndexSet, op: &Polynomial) -> Result<Self> {
        if op.nvars() != index_set.codim {
            return Err(JetError::DimensionMismatch { expected: index_set.codim, got: op.nvars() });
        }
        let mut c = CVec::zeros(index_set.len());
        for (e, v) in op.terms() {
            let i = index_set
                .position(e)
                .ok_or_else(|| JetError::IndexSetMismatch(format!("operator term {e:?} exceeds jet order {}", index_set.order)))?;
            c[i] += v;
        }
        Ok(Self { index_set: index_set.clone(), coeffs: c })
    }
}

/// `Σ u_α conj(v_β) G_{αβ}`.
pub fn frame_inner(u: &FrameVector, v: &FrameVector, g: &JetGram) -> Result<C64> {
    if u.index_set != g.index_set || v.index_set != g.index_set {
        return Err(JetError::IndexSetMismatch("frame vectors and Gram use different index sets".into()));
    }
    Ok(pair(&u.coeffs, &v.coeffs, &g.entries))
}

pub(crate) fn pair(u: &CVec, v: &CVec, g: &CMat) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for i in 0..u.len() {
        if u[i] == C64::new(0.0, 0.0) {
            continue;
        }
        for j in 0..v.len() {
            s += u[i] * v[j].conj() * g[(i, j)];
        }
    }
    s
}

/// Source of the jets of a multiplier.
#[derive(Debug, Clone, Copy)]
pub enum JetSource<'a> {
    Polynomial(&'a Polynomial),
    /// `∂^α f(z)` for every `α` of the index set, in its order.
    Jets(&'a [C64]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ModuleActionMatrix {
    pub f_jets: Vec<C64>,
    pub matrix: CMat,
}

fn polynomial_jets(h: &Polynomial, sub: &SubmanifoldSpec, set: &JetIndexSet, z: &[C64]) -> Result<Vec<C64>> {
    if h.nvars() != sub.m {
        return Err(JetError::DimensionMismatch { expected: sub.m, got: h.nvars() });
    }
    if z.len() != sub.m {
        return Err(JetError::DimensionMismatch { expected: sub.m, got: z.len() });
    }
    let axes = sub.axes();
    Ok(set.indices.iter().map(|a| h.derivative(&embed_orders(sub.m, &axes, a)).eval(z)).collect())
}

/// `𝒥(f)_{αβ} = Π C(α_i, β_i) ∂^{α-β} f`, lower triangular in graded colex order.
pub fn module_action_matrix(f: JetSource<'_>, sub: &SubmanifoldSpec, k: usize, z: &[C64]) -> Result<ModuleActionMatrix> {
    let set = JetIndexSet::new(sub.codim(), k)?;
    let jets = match f {
        JetSource::Polynomial(p) => polynomial_jets(p, sub, &set, z)?,
        JetSource::Jets(j) => {
            if j.len() < set.len() {
                return Err(JetError::MissingDerivative(format!("{} jets supplied, {} required", j.len(), set.len())));
            }
            j[..set.len()].to_vec()
        }
    };
    let n = set.len();
    let mut mat = CMat::zeros(n, n);
    for (i, a) in set.indices.iter().enumerate() {
        for (j, b) in set.indices.iter().enumerate() {
            if a.iter().zip(b).any(|(x, y)| y > x) {
                continue;
            }
            let diff: Vec<usize> = a.iter().zip(b).map(|(x, y)| x - y).collect();
            let pos = set.position(&diff).expect("difference stays in the index set");
            let c: f64 = a.iter().zip(b).map(|(&x, &y)| binomial(x, y)).product();
            mat[(i, j)] = jets[pos] * c;
        }
    }
    Ok(ModuleActionMatrix { f_jets: jets, matrix: mat })
}

/// `(∂^α h(z))_{α ∈ A}` along the transverse directions.
pub fn function_jet(h: &Polynomial, sub: &SubmanifoldSpec, k: usize, z: &[C64]) -> Result<FrameVector> {
    let set = JetIndexSet::new(sub.codim(), k)?;
    let v = polynomial_jets(h, sub, &set, z)?;
    FrameVector::new(set, CVec::from_vec(v))
}

/// A biholomorphic change of coordinates `θ` together with its inverse.
pub trait CoordinateMap: Send + Sync {
    fn dim(&self) -> usize;
    fn forward(&self, z: &[C64]) -> Vec<C64>;
    fn inverse(&self, zt: &[C64]) -> Vec<C64>;
    /// `(A, b)` when `θ(z) = A z + b`.
    fn affine(&self) -> Option<(&CMat, &CVec)> {
        None
    }
}

#[derive(Debug, Clone)]
pub struct AffineMap {
    a: CMat,
    b: CVec,
    a_inv: CMat,
}

impl AffineMap {
    pub fn new(a: CMat, b: CVec) -> Result<Self> {
        if a.nrows() != a.ncols() || a.nrows() != b.len() {
            return Err(JetError::DimensionMismatch { expected: a.nrows(), got: b.len() });
        }
        let a_inv = inverse(&a)?;
        Ok(Self { a, b, a_inv })
    }

    pub fn identity(m: usize) -> Self {
        Self { a: CMat::identity(m, m), b: CVec::zeros(m), a_inv: CMat::identity(m, m) }
    }
}

impl CoordinateMap for AffineMap {
    fn dim(&self) -> usize {
        self.b.len()
    }

    fn forward(&self, z: &[C64]) -> Vec<C64> {
        (&self.a * CVec::from_column_slice(z) + &self.b).iter().copied().collect()
    }

    fn inverse(&self, zt: &[C64]) -> Vec<C64> {
        (&self.a_inv * (CVec::from_column_slice(zt) - &self.b)).iter().copied().collect()
    }

    fn affine(&self) -> Option<(&CMat, &CVec)> {
        Some((&self.a, &self.b))
    }
}

/// `K_2(z̃, w̃) = K_1(θ^{-1}(z̃), θ^{-1}(w̃))`.
pub struct PullbackKernel<M: CoordinateMap> {
    base: ProductKernel,
    map: M,
}

const ROUND_TRIP_TOL: f64 = 1e-10;
const PULLBACK_FD_RADIUS: f64 = 0.02;

impl<M: CoordinateMap> PullbackKernel<M> {
    /// `samples` are image-side points used to verify `θ(θ^{-1}(x)) = x`.
    pub fn new(base: ProductKernel, map: M, samples: &[Vec<C64>]) -> Result<Self> {
        if map.dim() != base.m() {
            return Err(JetError::DimensionMismatch { expected: base.m(), got: map.dim() });
        }
        let mut worst: f64 = 0.0;
        for x in samples {
            let back = map.forward(&map.inverse(x));
            let err = back.iter().zip(x).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            worst = worst.max(err / x.iter().map(|c| c.norm()).fold(1.0, f64::max));
        }
        if worst > ROUND_TRIP_TOL {
            return Err(JetError::RoundTrip(worst));
        }
        Ok(Self { base, map })
    }

    pub fn base(&self) -> &ProductKernel {
        &self.base
    }

    pub fn map(&self) -> &M {
        &self.map
    }

    fn preimage(&self, zt: &[C64]) -> Result<Vec<C64>> {
        if zt.len() != self.base.m() {
            return Err(JetError::DimensionMismatch { expected: self.base.m(), got: zt.len() });
        }
        let z = self.map.inverse(zt);
        check_in_polydisc(&z)?;
        Ok(z)
    }

    pub fn eval(&self, zt: &[C64], wt: &[C64]) -> Result<C64> {
        let z = self.preimage(zt)?;
        let w = self.preimage(wt)?;
        self.base.eval(&z, &w)
    }

    /// `∂_{z̃}^{a} ∂̄_{w̃}^{b} K_2`: chain rule for affine maps, circle-stencil differences otherwise.
    pub fn mixed_partial(&self, d: &DerivOrder, zt: &[C64], wt: &[C64]) -> Result<C64> {
        let m = self.base.m();
        let z = self.preimage(zt)?;
        let w = self.preimage(wt)?;
        if let Some((a, _)) = self.map.affine() {
            // z = B(z̃ - b) with B = A^{-1}, so ∂_{z̃_i} = Σ_j B_{ji} ∂_{z_j}
            let b_inv = inverse(a)?;
            let dirs: Vec<Polynomial> = (0..m)
                .map(|i| direction_operator(&(0..m).map(|j| b_inv[(j, i)]).collect::<Vec<_>>()))
                .collect();
            let p = directional_power(&dirs, &d.z_orders, m);
            let q = directional_power(&dirs, &d.w_orders, m);
            return Ok(apply_operator_pair(&self.base, &p, &q, &z, &w));
        }
        let mut x: Vec<C64> = zt.to_vec();
        x.extend(wt.iter().map(|c| c.conj()));
        let mut orders = d.z_orders.clone();
        orders.extend_from_slice(&d.w_orders);
        let f = |v: &[C64]| {
            let zz = self.map.inverse(&v[..m]);
            let ww: Vec<C64> = self.map.inverse(&v[m..].iter().map(|c| c.conj()).collect::<Vec<_>>());
            self.base.eval(&zz, &ww).unwrap_or(C64::new(f64::NAN, f64::NAN))
        };
        let est = fd_partial(f, &x, &orders, PULLBACK_FD_RADIUS);
        if !est.value.is_finite() {
            return Err(JetError::InvalidArgument("difference stencil left the domain".into()));
        }
        Ok(est.value)
    }

    /// `J_2(z̃) = J_1(θ^{-1}(z̃))`.
    pub fn transport_cocycle<'a, F>(&'a self, j1: F) -> impl Fn(&[C64]) -> C64 + 'a
    where
        F: Fn(&[C64]) -> C64 + 'a,
    {
        move |zt: &[C64]| j1(&self.map.inverse(zt))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rel_diff;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn index_set_examples() {
        let s = jet_index_set(2, 2).unwrap();
        assert_eq!(s.indices, vec![vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(jet_index_set(2, 3).unwrap().len(), 6);
        let s3 = jet_index_set(2, 3).unwrap();
        assert_eq!(s3.indices[3..], [vec![2, 0], vec![1, 1], vec![0, 2]]);
        let s1 = jet_index_set(1, 4).unwrap();
        assert_eq!(s1.indices, vec![vec![0], vec![1], vec![2], vec![3]]);
        for codim in 1..5 {
            for k in 1..5 {
                assert_eq!(jet_index_set(codim, k).unwrap().len(), jet_dimension(codim, k));
            }
        }
        assert_eq!(s3.grade_range(1), 1..3);
    }

    #[test]
    fn colex_within_grade() {
        let s = jet_index_set(3, 3).unwrap();
        let g2: Vec<_> = s.indices[s.grade_range(2)].to_vec();
        assert_eq!(
            g2,
            vec![vec![2, 0, 0], vec![1, 1, 0], vec![0, 2, 0], vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 2]]
        );
    }

    #[test]
    fn gram_at_origin_toy_one() {
        let k = ProductKernel::new(vec![1.1, 2.0, 3.0]).unwrap();
        let sub = SubmanifoldSpec::diagonal(3, 3).unwrap();
        let o = Point::origin(3);
        let g = jet_gram(&k, &sub, 2, &o, &o).unwrap();
        let expect = CMat::from_diagonal(&CVec::from_vec(vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]));
        assert!(rel_diff(&g.entries, &expect) < 1e-15);
        let g1 = jet_gram(&k, &sub, 1, &o, &o).unwrap();
        assert_eq!(g1.dim(), 1);
    }

    #[test]
    fn directional_matches_axes() {
        let k = ProductKernel::new(vec![0.8, 1.7, 2.5]).unwrap();
        let sub = SubmanifoldSpec::diagonal(3, 3).unwrap();
        let z = [c(0.2, 0.1), c(-0.3, 0.2), c(0.1, -0.4)];
        let w = [c(0.05, 0.3), c(0.4, 0.0), c(-0.2, -0.2)];
        let a = jet_gram_axes(&k, &sub.axes(), 3, &z, &w).unwrap();
        let b = directional_jet_gram(&k, &sub.transverse(), 3, &z, &w).unwrap();
        assert!(rel_diff(&b, &a) < 1e-13);
    }

    #[test]
    fn frame_inner_examples() {
        let k = ProductKernel::new(vec![1.0, 2.0, 3.0]).unwrap();
        let sub = SubmanifoldSpec::diagonal(3, 3).unwrap();
        let o = Point::origin(3);
        let g = jet_gram(&k, &sub, 2, &o, &o).unwrap();
        let s = &g.index_set;
        let u0 = FrameVector::unit(s, &[0, 0]).unwrap();
        assert!((frame_inner(&u0, &u0, &g).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        let u2 = FrameVector::unit(s, &[1, 0]).unwrap();
        let u3 = FrameVector::unit(s, &[0, 1]).unwrap();
        assert_eq!(frame_inner(&u2, &u3, &g).unwrap(), c(0.0, 0.0));
        let other = FrameVector::unit(&jet_index_set(2, 3).unwrap(), &[0, 0]).unwrap();
        assert!(frame_inner(&other, &u0, &g).is_err());
    }

    #[test]
    fn module_action_examples() {
        let sub = SubmanifoldSpec::diagonal(3, 3).unwrap();
        let z = [c(0.1, 0.0); 3];
        let konst = Polynomial::constant(3, c(2.0, -1.0));
        let m = module_action_matrix(JetSource::Polynomial(&konst), &sub, 3, &z).unwrap();
        assert!(rel_diff(&m.matrix, &(CMat::identity(6, 6) * c(2.0, -1.0))) < 1e-15);

        let v = c(0.7, 0.2);
        let jets = [v, c(1.0, 0.0), c(0.0, 0.0)];
        let m = module_action_matrix(JetSource::Jets(&jets), &sub, 2, &z).unwrap();
        let expect = CMat::from_row_slice(3, 3, &[v, c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), v, c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), v]);
        assert_eq!(m.matrix, expect);
        assert!(matches!(
            module_action_matrix(JetSource::Jets(&jets[..2]), &sub, 2, &z),
            Err(JetError::MissingDerivative(_))
        ));
    }

    #[test]
    fn function_jet_examples() {
        let sub = SubmanifoldSpec::diagonal(3, 3).unwrap();
        let t = c(0.3, -0.2);
        let one = Polynomial::constant(3, c(1.0, 0.0));
        let j = function_jet(&one, &sub, 2, &[t; 3]).unwrap();
        assert_eq!(j.coeffs.as_slice(), &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let z2 = Polynomial::variable(3, 1);
        let j = function_jet(&z2, &sub, 2, &[t; 3]).unwrap();
        assert_eq!(j.coeffs.as_slice(), &[t, c(1.0, 0.0), c(0.0, 0.0)]);
    }

    #[test]
    fn submanifold_validation() {
        assert!(SubmanifoldSpec::diagonal(3, 1).is_err());
        assert!(SubmanifoldSpec::diagonal(3, 4).is_err());
        let p = SubmanifoldSpec::coordinate_plane(3, 2).unwrap();
        assert_eq!(p.axes(), vec![0, 1]);
        assert!(p.contains(&[c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)], 0.0));
        let d = SubmanifoldSpec::diagonal(4, 3).unwrap();
        let e = d.embed(&[c(0.2, 0.0), c(-0.1, 0.0)]).unwrap();
        assert!(d.contains(&e, 0.0));
        assert_eq!(d.transverse().len(), d.codim());
    }

    #[test]
    fn pullback_identity_and_shear() {
        let k = ProductKernel::new(vec![1.5, 0.5]).unwrap();
        let id = PullbackKernel::new(k.clone(), AffineMap::identity(2), &[]).unwrap();
        let z = [c(0.2, 0.1), c(-0.3, 0.05)];
        let w = [c(0.1, -0.2), c(0.25, 0.3)];
        assert_eq!(id.eval(&z, &w).unwrap(), k.eval(&z, &w).unwrap());

        let a = CMat::from_row_slice(2, 2, &[c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let theta = AffineMap::new(a, CVec::zeros(2)).unwrap();
        let zt = theta.forward(&z);
        let wt = theta.forward(&w);
        let pb = PullbackKernel::new(k.clone(), theta, &[zt.clone(), wt.clone()]).unwrap();
        assert!((pb.eval(&zt, &wt).unwrap() - k.eval(&z, &w).unwrap()).norm() < 1e-14);
    }
}
