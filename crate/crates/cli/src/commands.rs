use std::path::Path;

use jetlab_core::decomposition::{
    block_diagonalize, congruence_matrix, constants_diagnostics, fixtures, normalized_off_block, sigma_norm_closed_form,
    sigma_norm_constant, sigma_norm_constant_alternating, sigma_norm_sq, verify_orthogonal_decomposition,
    verify_sigma_orthogonality,
};
use jetlab_core::export::write_matrix_csv;
use jetlab_core::fd::fd_mixed_partial;
use jetlab_core::homogeneity::{
    compare_up_to_phase, jet_cocycle, pullback_homogeneity, recover_cocycle, scalar_cocycle, verify_cocycle_identity,
    verify_corhom, verify_quasi_invariance,
};
use jetlab_core::jets::{jet_gram, jet_gram_axes, module_action_matrix, JetIndexSet, JetSource, SubmanifoldKind, SubmanifoldSpec};
use jetlab_core::linalg::{max_abs, min_eigenvalue, CMat};
use jetlab_core::mobius::{AutoTuple, MobiusMap};
use jetlab_core::polynomial::Polynomial;
use jetlab_core::quotient::{check_reducing_projection, compressed_operator_matrix, orthonormal_basis, quotient_kernel_from_basis, series_gram};
use jetlab_core::{DerivOrder, Point, ProductKernel, C64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::RunConfig;
use crate::report::{CheckRecord, VerificationReport};
use crate::CliError;

/// Independent random stream per check.
fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(id);
    r
}

fn disc<R: Rng>(rng: &mut R, radius: f64) -> C64 {
    C64::from_polar(radius * rng.gen::<f64>().sqrt(), rng.gen::<f64>() * std::f64::consts::TAU)
}

fn polydisc<R: Rng>(rng: &mut R, m: usize, radius: f64) -> Vec<C64> {
    (0..m).map(|_| disc(rng, radius)).collect()
}

fn write_csv(out: Option<&Path>, name: &str, m: &CMat) -> Result<(), CliError> {
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
        let path = dir.join(name);
        let f = std::fs::File::create(&path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        write_matrix_csv(m, std::io::BufWriter::new(f))?;
    }
    Ok(())
}

fn frob(m: &CMat) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn require_diagonal(cfg: &RunConfig, full: bool) -> Result<SubmanifoldSpec, CliError> {
    let sub = cfg.submanifold_spec()?;
    if sub.kind != SubmanifoldKind::Diagonal || sub.d < 2 || (full && sub.d != cfg.m) {
        let need = if full { "the full diagonal (kind diagonal, d = m)" } else { "a diagonal with d >= 2" };
        return Err(CliError::Config(format!("this command needs {need}")));
    }
    Ok(sub)
}

#[derive(Serialize)]
struct JetGramSummary {
    dim: usize,
    index_set: Vec<Vec<usize>>,
    min_eigenvalue_zz: f64,
    min_eigenvalue_ww: f64,
}

pub fn cmd_jetgram(cfg: &RunConfig, out: Option<&Path>) -> Result<VerificationReport, CliError> {
    let mut rep = VerificationReport::new("jetgram", cfg);
    let kernel = ProductKernel::new(cfg.weights.clone())?;
    let sub = cfg.submanifold_spec()?;
    let (z, w) = cfg.base_points();
    let (z, w) = (Point::new(z)?, Point::new(w)?);
    let k = cfg.jet_order;
    let g = jet_gram(&kernel, &sub, k, &z, &w)?;
    let gzz = jet_gram(&kernel, &sub, k, &z, &z)?;
    let gww = jet_gram(&kernel, &sub, k, &w, &w)?;
    let gwz = jet_gram(&kernel, &sub, k, &w, &z)?;

    let sym = frob(&(&g.entries - gwz.entries.adjoint())) / frob(&g.entries);
    rep.push(CheckRecord::new("jet gram hermitian symmetry", "repk", sym, cfg.tolerance("jet gram hermitian symmetry", 1e-13)));

    // entrywise against the contour-integral oracle
    let axes = sub.axes();
    let mut worst: f64 = 0.0;
    let scale = max_abs(&g.entries);
    for (i, a) in g.index_set.indices.iter().enumerate() {
        for (j, b) in g.index_set.indices.iter().enumerate() {
            let mut zo = vec![0; cfg.m];
            let mut wo = vec![0; cfg.m];
            for (t, &ax) in axes.iter().enumerate() {
                zo[ax] = a[t];
                wo[ax] = b[t];
            }
            let d = DerivOrder::new(zo, wo)?;
            let est = fd_mixed_partial(&kernel, &d, &z, &w, 0.05)?;
            worst = worst.max((est.value - g.entries[(i, j)]).norm() / scale);
        }
    }
    rep.push(CheckRecord::new("jet gram vs contour oracle", "ddbar", worst, cfg.tolerance("jet gram vs contour oracle", 1e-6)));

    let (lz, lw) = (min_eigenvalue(&gzz.entries), min_eigenvalue(&gww.entries));
    let pd = if lz > 0.0 && lw > 0.0 { 0.0 } else { 1.0 };
    rep.push(CheckRecord::new("jet gram positive definite", "repk", pd, cfg.tolerance("jet gram positive definite", 0.0)));

    rep.detail(
        "summary",
        &JetGramSummary { dim: g.dim(), index_set: g.index_set.indices.clone(), min_eigenvalue_zz: lz, min_eigenvalue_ww: lw },
    );
    write_csv(out, "jetgram.csv", &g.entries)?;
    Ok(rep)
}

#[derive(Serialize)]
struct SigmaDiagnostic {
    k: usize,
    gram_derived: f64,
    printed_alternating: f64,
}

pub fn cmd_decompose(cfg: &RunConfig, out: Option<&Path>) -> Result<VerificationReport, CliError> {
    let mut rep = VerificationReport::new("decompose", cfg);
    let (m, n, w) = (cfg.m, cfg.jet_order, &cfg.weights);
    if !(2..=5).contains(&m) || n > 4 {
        return Err(CliError::Config(format!("decompose needs 2 <= m <= 5 and jet_order <= 4, got m={m}, jet_order={n}")));
    }
    let mut rng = stream(cfg.seed, 2);
    let samples: Vec<(C64, C64)> = (0..cfg.samples).map(|_| (disc(&mut rng, cfg.sample_radius), disc(&mut rng, cfg.sample_radius))).collect();
    let r = verify_orthogonal_decomposition(m, n, w, &samples)?;
    let anchor = if m == 3 { "mthm2" } else { "mthm3" };
    rep.push(CheckRecord::new("cross-component orthogonality", anchor, r.max_cross_residual, cfg.tolerance("cross-component orthogonality", 1e-9)));
    rep.push(CheckRecord::new("component gram equals wilkins jet gram", "rkjsb", r.max_gram_residual, cfg.tolerance("component gram equals wilkins jet gram", 1e-9)));
    let dim_gap = (r.total_jet_order as f64 - r.ambient_dim as f64).abs();
    rep.push(CheckRecord::new("component jet orders sum to N", "bjb", dim_gap, cfg.tolerance("component jet orders sum to N", 0.0)));
    let nonpositive = r.nodes.iter().filter(|nd| !(nd.constant > 0.0)).count() as f64;
    rep.push(CheckRecord::new(
        "stage constants positive and match the gram",
        "mthm3",
        r.max_constant_mismatch + nonpositive,
        cfg.tolerance("stage constants positive and match the gram", 1e-10),
    ));

    // congruence at each sample point
    let mut off: f64 = 0.0;
    let mut x = CMat::zeros(0, 0);
    for &(t, _) in &samples {
        let ct = block_diagonalize(m, n, w, &vec![t; m], f64::INFINITY)?;
        off = off.max(ct.residual);
        x = ct.x;
    }
    rep.push(CheckRecord::new("congruence block diagonal", "bjb", off, cfg.tolerance("congruence block diagonal", 1e-10)));

    if m == 3 {
        let on_z: Vec<Vec<C64>> = samples.iter().map(|&(a, b)| vec![a, b, b]).collect();
        let orth = verify_sigma_orthogonality(n.max(2), [w[0], w[1], w[2]], &on_z)?;
        rep.push(CheckRecord::new("sigma frame orthogonality", "mthm1", orth, cfg.tolerance("sigma frame orthogonality", 1e-10)));
        let mut worst: f64 = 0.0;
        for p in &on_z {
            for k in 0..n {
                let g = sigma_norm_sq(k, [w[0], w[1], w[2]], p)?;
                let c = sigma_norm_closed_form(k, [w[0], w[1], w[2]], p[0], p[1]);
                worst = worst.max((g - c).abs() / c);
            }
        }
        rep.push(CheckRecord::new("sigma norm closed form", "spv", worst, cfg.tolerance("sigma norm closed form", 1e-10)));
        let table: Vec<SigmaDiagnostic> = (0..n.max(2))
            .map(|k| SigmaDiagnostic {
                k,
                gram_derived: sigma_norm_constant(k, w[1], w[2]),
                printed_alternating: sigma_norm_constant_alternating(k, w[1], w[2]),
            })
            .collect();
        rep.detail("sigma_norm_diagnostics", &table);
    }
    rep.detail("nodes", &r.nodes);
    rep.detail("constant_diagnostics", &constants_diagnostics(m, n, w)?);
    rep.detail("x_condition", &r.x_condition);
    write_csv(out, "congruence.csv", &x)?;
    Ok(rep)
}

fn random_tuple<R: Rng>(rng: &mut R, m: usize, d: usize, radius: f64) -> AutoTuple {
    if radius == 0.0 {
        AutoTuple::identity(m)
    } else {
        AutoTuple::random_fixing(rng, m, d, radius)
    }
}

pub fn cmd_homogeneity(cfg: &RunConfig, _out: Option<&Path>) -> Result<VerificationReport, CliError> {
    let mut rep = VerificationReport::new("homogeneity", cfg);
    let sub = require_diagonal(cfg, false)?;
    let (m, d, k, w) = (cfg.m, sub.d, cfg.jet_order, &cfg.weights);
    if k > 4 {
        return Err(CliError::Config(format!("jet cocycles are limited to jet_order <= 4, got {k}")));
    }
    let kernel = ProductKernel::new(w.clone())?;
    let mut rng = stream(cfg.seed, 3);
    let count = cfg.group_samples.max(1);

    // scalar identity and cocycle law on unconstrained tuples
    let full: Vec<AutoTuple> = (0..count).map(|_| random_tuple(&mut rng, m, 1, cfg.group_radius)).collect();
    let pairs: Vec<(Vec<C64>, Vec<C64>)> =
        (0..cfg.samples).map(|_| (polydisc(&mut rng, m, cfg.sample_radius), polydisc(&mut rng, m, cfg.sample_radius))).collect();
    let points: Vec<Vec<C64>> = pairs.iter().map(|p| p.0.clone()).collect();
    let mut scalar: f64 = 0.0;
    let mut law: f64 = 0.0;
    for (i, t) in full.iter().enumerate() {
        let j = scalar_cocycle(t, w)?;
        scalar = scalar.max(verify_quasi_invariance(&kernel, t, |z| j.eval(z), &pairs)?);
        let g = &full[(i + 1) % full.len()];
        let (jg, jgh) = (scalar_cocycle(g, w)?, scalar_cocycle(&g.compose(t), w)?);
        let chk = verify_cocycle_identity(|z| jgh.eval(z), |z| j.eval(z), |z| jg.eval(z), t, &points);
        law = law.max(chk.unimodularity).max(chk.phase_spread);
    }
    rep.push(CheckRecord::new("scalar quasi-invariance", "quasiinv", scalar, cfg.tolerance("scalar quasi-invariance", 1e-10)));
    rep.push(CheckRecord::new("projective scalar cocycle law", "quasiinv", law, cfg.tolerance("projective scalar cocycle law", 1e-10)));

    // jet level along the diagonal
    let tuples: Vec<AutoTuple> = (0..count).map(|_| random_tuple(&mut rng, m, d, cfg.group_radius)).collect();
    let tangential = m - d + 1;
    let tsamples: Vec<(Vec<C64>, Vec<C64>)> = (0..cfg.samples)
        .map(|_| (polydisc(&mut rng, tangential, cfg.sample_radius), polydisc(&mut rng, tangential, cfg.sample_radius)))
        .collect();
    let tol = cfg.tolerance("jet quasi-invariance", 1e-8);
    let corruption = cfg.test_flags.corrupt_cocycle.then_some(0.5);
    let corhom = verify_corhom(w, d, k, &tuples, &tsamples, corruption, tol)?;
    rep.push(CheckRecord::new("jet quasi-invariance", "corhom", corhom.max_residual, tol));
    let spread = corhom.records.iter().map(|r| r.cocycle_phase_spread.max(r.cocycle_unimodularity)).fold(0.0, f64::max);
    rep.push(CheckRecord::new("projective jet cocycle law", "jpro2", spread, cfg.tolerance("projective jet cocycle law", 1e-8)));

    // cocycle recovered from Gram values alone
    let anchor = sub.embed(&polydisc(&mut rng, tangential, 0.3))?.into_inner();
    let refs: Vec<Vec<C64>> =
        (0..3).map(|_| sub.embed(&polydisc(&mut rng, tangential, cfg.sample_radius)).map(|p| p.into_inner())).collect::<Result<_, _>>()?;
    let mut agree: f64 = 0.0;
    for t in tuples.iter().take(4) {
        let rec = recover_cocycle(&kernel, &sub, k, t, &anchor, &refs)?;
        let mc = jet_cocycle(t, w, &sub, k)?;
        let mut a = Vec::new();
        let mut b = Vec::new();
        for (z, _) in tsamples.iter().take(8) {
            let p = sub.embed(z)?;
            a.push(rec.eval(&p)?);
            b.push(mc.eval(&p)?);
        }
        agree = agree.max(compare_up_to_phase(&a, &b));
    }
    rep.push(CheckRecord::new("recovered cocycle agrees with jet cocycle", "thmhom0", agree, cfg.tolerance("recovered cocycle agrees with jet cocycle", 1e-7)));

    let mut pb: f64 = 0.0;
    for t in tuples.iter().take(4) {
        let a = pullback_homogeneity(w, d, k, t, &tsamples[..tsamples.len().min(4)])?;
        pb = pb.max(if a.agrees(tol, 1e-13) { a.direct.max(a.pullback) } else { f64::INFINITY });
    }
    rep.push(CheckRecord::new("homogeneity verdict invariant under chart", "eqhom", pb, tol));
    rep.detail("records", &corhom.records);
    Ok(rep)
}

#[derive(Serialize)]
struct QuotientSummary {
    truncation: usize,
    max_relative_error: f64,
    max_tail_bound: f64,
    basis_size: usize,
}

pub fn cmd_quotient(cfg: &RunConfig, out: Option<&Path>) -> Result<VerificationReport, CliError> {
    let mut rep = VerificationReport::new("quotient", cfg);
    let sub = require_diagonal(cfg, true)?;
    let (m, k, p) = (cfg.m, cfg.jet_order, cfg.kernel_truncation);
    let kernel = ProductKernel::new(cfg.weights.clone())?;
    let g = series_gram(&kernel, &sub, k, p)?;
    let basis = orthonormal_basis(&g)?;
    let mut rng = stream(cfg.seed, 4);
    let tol = cfg.tolerance("quotient kernel matches restricted jet kernel", 1e-6);
    let axes: Vec<usize> = (1..m).collect();
    let mut err: f64 = 0.0;
    let mut bound_ratio: f64 = 0.0;
    let mut max_bound: f64 = 0.0;
    let mut first = None;
    for _ in 0..cfg.samples {
        let (z, w) = (disc(&mut rng, cfg.sample_radius), disc(&mut rng, cfg.sample_radius));
        let kq = quotient_kernel_from_basis(&basis, z, w, p, tol)?;
        let exact = jet_gram_axes(&kernel, &axes, k, &vec![z; m], &vec![w; m])?;
        let abs = max_abs(&(&kq.matrix - &exact));
        err = err.max(abs / max_abs(&exact));
        bound_ratio = bound_ratio.max(abs / kq.tail_bound);
        max_bound = max_bound.max(kq.tail_bound);
        first.get_or_insert(kq.matrix);
    }
    rep.push(CheckRecord::new("quotient kernel matches restricted jet kernel", "jcon", err, tol));
    rep.push(CheckRecord::new("tail bound dominates observed error", "jcon", bound_ratio, cfg.tolerance("tail bound dominates observed error", 1.0)));

    // 𝒥(fh) = 𝒥(f)𝒥(h) and lower triangularity
    let mut modac: f64 = 0.0;
    for _ in 0..4 {
        let f = Polynomial::random(m, 3, &mut rng);
        let h = Polynomial::random(m, 3, &mut rng);
        let z = sub.embed(&[disc(&mut rng, cfg.sample_radius)])?;
        let jf = module_action_matrix(JetSource::Polynomial(&f), &sub, k, &z)?.matrix;
        let jh = module_action_matrix(JetSource::Polynomial(&h), &sub, k, &z)?.matrix;
        let jfh = module_action_matrix(JetSource::Polynomial(&f.mul(&h)), &sub, k, &z)?.matrix;
        let upper = jf.upper_triangle() - CMat::from_diagonal(&jf.diagonal());
        modac = modac.max(frob(&(&jfh - &jf * &jh)) / frob(&jfh)).max(max_abs(&upper));
    }
    rep.push(CheckRecord::new("module action is multiplicative and lower triangular", "modac", modac, cfg.tolerance("module action is multiplicative and lower triangular", 1e-12)));

    rep.detail(
        "summary",
        &QuotientSummary { truncation: p, max_relative_error: err, max_tail_bound: max_bound, basis_size: basis.len() },
    );
    if let Some(kq) = first {
        write_csv(out, "quotient_kernel.csv", &kq)?;
    }
    Ok(rep)
}

/// Rows of random complex coefficients with the same grade profile as `x`.
fn random_graded_like<R: Rng>(rng: &mut R, x: &CMat, set: &JetIndexSet) -> CMat {
    let n = x.nrows();
    CMat::from_fn(n, n, |i, j| {
        let gi = (0..n).find(|&c| x[(i, c)].norm() > 0.0).map(|c| set.grade(c));
        if gi == Some(set.grade(j)) {
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

#[derive(Serialize)]
struct OperatorSummary {
    truncation: usize,
    dim: usize,
    groups: Vec<Vec<usize>>,
    decomposition_commutator: f64,
    random_partition_commutator: f64,
}

pub fn cmd_operator(cfg: &RunConfig, out: Option<&Path>) -> Result<VerificationReport, CliError> {
    let mut rep = VerificationReport::new("operator", cfg);
    let sub = require_diagonal(cfg, true)?;
    let (m, k, p) = (cfg.m, cfg.jet_order, cfg.operator_truncation);
    let kernel = ProductKernel::new(cfg.weights.clone())?;
    let g = series_gram(&kernel, &sub, k, p)?;
    let t = compressed_operator_matrix(&g)?;
    let (x, groups) = congruence_matrix(m, k, &cfg.weights)?;
    let good = check_reducing_projection(&t, &x, &groups)?;
    let mut rng = stream(cfg.seed, 5);
    let mut bad: f64 = f64::INFINITY;
    for _ in 0..3 {
        let y = random_graded_like(&mut rng, &x, &g.index_set);
        bad = bad.min(check_reducing_projection(&t, &y, &groups)?);
    }
    rep.push(CheckRecord::new("decomposition projections commute with operator", "reducibility", good, cfg.tolerance("decomposition projections commute with operator", 1e-8)));
    // a single group is trivially reducing, so only a nontrivial split can separate
    let separation = if groups.len() > 1 { good.max(f64::MIN_POSITIVE) / bad } else { 0.0 };
    rep.push(CheckRecord::new("random partition fails to reduce", "bundle vs operator", separation, cfg.tolerance("random partition fails to reduce", 1e-3)));
    rep.detail(
        "summary",
        &OperatorSummary { truncation: p, dim: t.dim, groups, decomposition_commutator: good, random_partition_commutator: bad },
    );
    write_csv(out, "operator.csv", &t.matrix)?;
    Ok(rep)
}

/// Fixed-parameter checks run only by `verify-all`.
pub fn fixed_suite(cfg: &RunConfig) -> Result<VerificationReport, CliError> {
    let mut rep = VerificationReport::new("fixed_suite", cfg);
    let mut rng = stream(cfg.seed, 1);

    // closed-form derivatives against the contour oracle
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let m = rng.gen_range(1..=4);
        let weights: Vec<f64> = (0..m).map(|_| rng.gen_range(0.3..3.0)).collect();
        let kernel = ProductKernel::new(weights)?;
        let z = polydisc(&mut rng, m, 0.7);
        let w = polydisc(&mut rng, m, 0.7);
        let zo: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=3)).collect();
        let wo: Vec<usize> = (0..m).map(|_| rng.gen_range(0..=3)).collect();
        let d = DerivOrder::with_cap(zo, wo, 24)?;
        let exact = kernel.mixed_partial(&d, &z, &w)?;
        let est = fd_mixed_partial(&kernel, &d, &z, &w, 0.1)?;
        worst = worst.max((exact - est.value).norm() / exact.norm());
    }
    rep.push(CheckRecord::new("derivative engine vs contour oracle", "ddbar", worst, cfg.tolerance("derivative engine vs contour oracle", 1e-6)));

    // worked example on D^3
    let (a, b, c) = (1.3, 0.7, 2.1);
    let k3 = ProductKernel::new(vec![a, b, c])?;
    let x2 = fixtures::toy_one_x2(b, c);
    let mut jk: f64 = 0.0;
    let mut off: f64 = 0.0;
    let mut blocks: f64 = 0.0;
    for _ in 0..50 {
        let (z, w) = (disc(&mut rng, 0.8), disc(&mut rng, 0.8));
        let g = jet_gram_axes(&k3, &[1, 2], 2, &[z; 3], &[w; 3])?;
        let printed = fixtures::toy_one_jk(a, b, c, z, w);
        jk = jk.max(max_abs(&(&g - &printed)) / max_abs(&printed));
        let xgx = &x2 * &g * x2.adjoint();
        off = off.max(normalized_off_block(&xgx, &fixtures::toy_one_x2_groups()));
        let pb = fixtures::toy_one_blocks(a, b, c, z, w);
        blocks = blocks.max(max_abs(&(&xgx - &pb)) / max_abs(&pb));
    }
    rep.push(CheckRecord::new("toy example I jet kernel", "toy examples I and II", jk, cfg.tolerance("toy example I jet kernel", 1e-12)));
    rep.push(CheckRecord::new("toy example I off-block terms", "toy examples I and II", off, cfg.tolerance("toy example I off-block terms", 1e-12)));
    rep.push(CheckRecord::new("toy example I surviving blocks", "toy examples I and II", blocks, cfg.tolerance("toy example I surviving blocks", 1e-12)));

    // worked example on D^4
    let w4 = [0.9, 1.1, 1.7, 0.4];
    let k4 = ProductKernel::new(w4.to_vec())?;
    let x4 = fixtures::toy_two_x(w4[1], w4[2], w4[3]);
    let mut off4: f64 = 0.0;
    for _ in 0..50 {
        let (z, w) = (disc(&mut rng, 0.8), disc(&mut rng, 0.8));
        let g = jet_gram_axes(&k4, &[1, 2, 3], 2, &[z; 4], &[w; 4])?;
        off4 = off4.max(normalized_off_block(&(&x4 * g * x4.adjoint()), &fixtures::toy_two_groups()));
    }
    rep.push(CheckRecord::new("toy example II off-block terms", "toy examples I and II", off4, cfg.tolerance("toy example II off-block terms", 1e-12)));

    let s1 = sigma_norm_sq(1, [1.0, 2.0, 3.0], &[C64::new(0.0, 0.0); 3])?;
    rep.push(CheckRecord::new("sigma_1 norm at the origin", "mthm1", (s1 - 30.0).abs() / 30.0, cfg.tolerance("sigma_1 norm at the origin", 1e-12)));

    // desk-scale decomposition sweep
    let mut cross: f64 = 0.0;
    let mut gram: f64 = 0.0;
    let mut books: f64 = 0.0;
    for m in 2..=5 {
        let weights: Vec<f64> = (0..m).map(|_| rng.gen_range(0.3..3.0)).collect();
        let samples: Vec<(C64, C64)> = (0..4).map(|_| (disc(&mut rng, 0.8), disc(&mut rng, 0.8))).collect();
        for n in 1..=4 {
            let r = verify_orthogonal_decomposition(m, n, &weights, &samples)?;
            cross = cross.max(r.max_cross_residual);
            gram = gram.max(r.max_gram_residual);
            let bad_consts = r.nodes.iter().filter(|nd| !(nd.constant > 0.0)).count();
            books = books.max((r.total_jet_order as f64 - r.ambient_dim as f64).abs() + bad_consts as f64);
        }
    }
    rep.push(CheckRecord::new("decomposition sweep orthogonality", "mthm3", cross, cfg.tolerance("decomposition sweep orthogonality", 1e-9)));
    rep.push(CheckRecord::new("decomposition sweep wilkins grams", "rkjsb", gram, cfg.tolerance("decomposition sweep wilkins grams", 1e-9)));
    rep.push(CheckRecord::new("decomposition sweep bookkeeping", "bjb", books, cfg.tolerance("decomposition sweep bookkeeping", 0.0)));

    // integer weights compose without a phase
    let wi = [1.0, 2.0, 3.0];
    let mut exact: f64 = 0.0;
    for _ in 0..8 {
        let g = AutoTuple::new((0..3).map(|_| MobiusMap::random(&mut rng, 0.6)).collect());
        let h = AutoTuple::new((0..3).map(|_| MobiusMap::random(&mut rng, 0.6)).collect());
        let (jg, jh, jgh) = (scalar_cocycle(&g, &wi)?, scalar_cocycle(&h, &wi)?, scalar_cocycle(&g.compose(&h), &wi)?);
        let pts: Vec<Vec<C64>> = (0..10).map(|_| polydisc(&mut rng, 3, 0.9)).collect();
        exact = exact.max(verify_cocycle_identity(|z| jgh.eval(z), |z| jh.eval(z), |z| jg.eval(z), &h, &pts).exact_deviation);
    }
    rep.push(CheckRecord::new("integer-weight cocycle law is exact", "quasiinv", exact, cfg.tolerance("integer-weight cocycle law is exact", 1e-12)));
    Ok(rep)
}

pub fn cmd_verify_all(cfg: &RunConfig, out: Option<&Path>) -> Result<VerificationReport, CliError> {
    let mut rep = VerificationReport::new("verify-all", cfg);
    rep.absorb(fixed_suite(cfg)?);
    rep.absorb(cmd_jetgram(cfg, out)?);
    if cfg.m >= 2 && cfg.jet_order <= 4 {
        rep.absorb(cmd_decompose(cfg, out)?);
    }
    let sub = cfg.submanifold_spec()?;
    if sub.kind == SubmanifoldKind::Diagonal && sub.d >= 2 && cfg.jet_order <= 4 {
        rep.absorb(cmd_homogeneity(cfg, out)?);
    }
    if sub.kind == SubmanifoldKind::Diagonal && sub.d == cfg.m && cfg.m >= 2 {
        rep.absorb(cmd_quotient(cfg, out)?);
        rep.absorb(cmd_operator(cfg, out)?);
    }
    Ok(rep)
}
