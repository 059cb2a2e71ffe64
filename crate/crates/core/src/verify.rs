//! The acceptance checks, runnable one at a time or as a suite.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::geometry::{
    analyze_hypersurface_point, boundary_point, is_separable, kernel_product_vector, proof_identity_deviation,
    smoothness_audit, AuditOptions, Hypersurface, ROOT_TOL,
};
use crate::invariants::{compute_invariants, det_pt_direct, det_pt_via_invariants};
use crate::molien::{cross_check, CrossCheckOptions};
use crate::qstate::{
    apply_local_unitary, bloch_decompose, haar_unit_vector, partial_transpose, sample_local_unitary, sample_one,
    sample_product_factors, sample_unitary, stream_rng, ComplexMatrix, DensityMatrix, EnsembleKind, EnsembleSpec,
};
use crate::series::{builtin_series, diagonal_common_factor, expand_poincare, Grading};

/// Taylor coefficients of the single-graded series, degrees 0 through 23.
pub const SINGLE_SERIES_COEFFICIENTS: [u64; 24] = [
    1, 0, 3, 2, 10, 7, 29, 25, 73, 74, 172, 187, 381, 431, 785, 920, 1539, 1827, 2878, 3441, 5151, 6185, 8887,
    10666,
];

/// Every nonzero coefficient of the trigraded series up to total degree 6,
/// as `([deg s, deg p, deg β̂], coefficient)`.
pub const TRIGRADED_LOW_TERMS: [([u32; 3], u64); 34] = [
    ([0, 0, 0], 1),
    ([2, 0, 0], 1),
    ([0, 2, 0], 1),
    ([0, 0, 2], 1),
    ([0, 0, 3], 1),
    ([1, 1, 1], 1),
    ([0, 0, 4], 2),
    ([0, 2, 2], 2),
    ([0, 4, 0], 1),
    ([1, 1, 2], 1),
    ([2, 0, 2], 2),
    ([2, 2, 0], 1),
    ([4, 0, 0], 1),
    ([0, 0, 5], 1),
    ([0, 2, 3], 1),
    ([1, 1, 3], 2),
    ([1, 3, 1], 1),
    ([2, 0, 3], 1),
    ([3, 1, 1], 1),
    ([0, 0, 6], 3),
    ([0, 2, 4], 4),
    ([0, 4, 2], 2),
    ([0, 6, 0], 1),
    ([1, 1, 4], 2),
    ([1, 2, 3], 1),
    ([1, 3, 2], 1),
    ([2, 0, 4], 4),
    ([2, 1, 3], 1),
    ([2, 2, 2], 4),
    ([2, 4, 0], 1),
    ([3, 1, 2], 1),
    ([4, 0, 2], 2),
    ([4, 2, 0], 1),
    ([6, 0, 0], 1),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { seed: 7 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    pub budget_seconds: f64,
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "single-variable series coefficients"),
    (2, "diagonal specialization identity"),
    (3, "trigraded coefficients"),
    (4, "Molien and Lie oracles"),
    (5, "det ρ^Γ formula"),
    (6, "local-unitary invariance"),
    (7, "Augusiak/PPT agreement and Werner root"),
    (8, "singular points of D"),
    (9, "smoothness audit"),
    (10, "product vectors and kernel identity"),
];

fn budget(id: u8) -> Duration {
    Duration::from_secs(match id {
        1..=3 => 1,
        4 => 300,
        5 => 30,
        6 => 10,
        9 => 120,
        _ => 60,
    })
}

/// Runs criterion `id` (1 through 10). Exceeding the time budget fails it.
pub fn run_criterion(id: u8, cfg: &VerifyConfig) -> CriterionResult {
    let (_, name) = CRITERIA
        .iter()
        .copied()
        .find(|(k, _)| *k == id)
        .unwrap_or_else(|| panic!("no criterion {id}"));
    let start = Instant::now();
    let (ok, mut detail) = match id {
        1 => single_series(),
        2 => diagonal_identity(),
        3 => trigraded_terms(),
        4 => molien_oracles(),
        5 => det_formula(cfg.seed),
        6 => local_unitary_invariance(cfg.seed),
        7 => criterion_agreement(cfg.seed),
        8 => singular_points(cfg.seed),
        9 => smoothness(cfg.seed),
        _ => product_vectors(cfg.seed),
    };
    let elapsed = start.elapsed();
    let in_budget = elapsed <= budget(id);
    if !in_budget {
        detail.push_str(&format!("; over time budget of {} s", budget(id).as_secs()));
    }
    CriterionResult {
        id,
        name,
        passed: ok && in_budget,
        detail,
        seconds: elapsed.as_secs_f64(),
        budget_seconds: budget(id).as_secs_f64(),
    }
}

pub fn verify_all(cfg: &VerifyConfig) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|(id, _)| run_criterion(*id, cfg)).collect()
}

fn single_series() -> (bool, String) {
    let got = expand_poincare(Grading::Single, 23).diagonal();
    let want: Vec<BigInt> = SINGLE_SERIES_COEFFICIENTS.iter().map(|&c| BigInt::from(c)).collect();
    match got.iter().zip(&want).position(|(a, b)| a != b) {
        None => (true, "24 of 24 coefficients equal".into()),
        Some(k) => (false, format!("degree {k}: got {}, expected {}", got[k], want[k])),
    }
}

fn diagonal_identity() -> (bool, String) {
    let b = builtin_series();
    let n_diag = b.p3_num.substitute_diagonal();
    let d_diag = b.p3_den.expand().substitute_diagonal();
    let d1 = b.p1_den.expand();
    let cross = &n_diag * &d1 == &b.p1_num * &d_diag;
    let common = diagonal_common_factor();
    let n_ok = n_diag.exact_divide(&common).as_ref() == Ok(&b.p1_num);
    let d_ok = d_diag.exact_divide(&common).as_ref() == Ok(&d1);
    (
        cross && n_ok && d_ok,
        format!("N·D₁ = N₁·D: {cross}; N(z,z,z)/(1+z²)(1−z³) = N₁: {n_ok}; D(z,z,z)/(1+z²)(1−z³) = D₁: {d_ok}"),
    )
}

fn trigraded_terms() -> (bool, String) {
    let table = expand_poincare(Grading::Triple, 6);
    let mut mismatches = Vec::new();
    for (e, c) in &TRIGRADED_LOW_TERMS {
        if table.coeff(e) != &BigInt::from(*c) {
            mismatches.push(format!("{e:?}: got {}, expected {c}", table.coeff(e)));
        }
    }
    let listed = TRIGRADED_LOW_TERMS.len();
    let nonzero = table.iter().filter(|(_, c)| **c != BigInt::from(0)).count();
    if nonzero != listed {
        mismatches.push(format!("{nonzero} nonzero coefficients, {listed} displayed"));
    }
    let sums = table.diagonal();
    let sums_ok = sums.iter().zip(&SINGLE_SERIES_COEFFICIENTS).all(|(a, &b)| *a == BigInt::from(b));
    if !sums_ok {
        mismatches.push(format!("degree sums {sums:?}"));
    }
    if mismatches.is_empty() {
        (true, format!("{listed} displayed terms match; degree sums match"))
    } else {
        (false, mismatches.join("; "))
    }
}

fn molien_oracles() -> (bool, String) {
    let opts = CrossCheckOptions::new(8);
    match cross_check(&opts) {
        Ok(report) => {
            let bad: Vec<String> = report.mismatches().map(|e| format!("{:?}", e.degrees)).collect();
            (
                bad.is_empty() && report.entries.len() == 165 && report.lie_checked() == 35,
                format!(
                    "{} multidegrees, {} Lie-checked, mismatches: {}",
                    report.entries.len(),
                    report.lie_checked(),
                    if bad.is_empty() { "none".into() } else { bad.join(" ") }
                ),
            )
        }
        Err(e) => (false, e.to_string()),
    }
}

/// Largest `|det_pt_direct − det_pt_via_invariants|` over three ensembles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetFormulaReport {
    pub samples: usize,
    pub max_deviation: f64,
    pub worst: Option<(EnsembleKind, u64)>,
}

pub fn det_formula_check(
    hilbert_schmidt: usize,
    rank_deficient: usize,
    separable: usize,
    seed: u64,
) -> DetFormulaReport {
    let mut jobs: Vec<(EnsembleKind, u64)> = Vec::new();
    jobs.extend((0..hilbert_schmidt as u64).map(|i| (EnsembleKind::HilbertSchmidt, i)));
    // ranks 1, 2, 3 in turn
    jobs.extend((0..rank_deficient as u64).map(|i| (EnsembleKind::RankDeficient { rank: 1 + (i % 3) as usize }, i)));
    jobs.extend((0..separable as u64).map(|i| (EnsembleKind::SeparableMixture { terms: 4 }, i)));
    let worst = jobs
        .par_iter()
        .map(|&(kind, i)| {
            let rho = sample_one(&EnsembleSpec::new(kind, seed), i).expect("valid ensemble");
            let via = det_pt_via_invariants(&compute_invariants(&bloch_decompose(&rho)));
            ((det_pt_direct(&rho) - via).abs(), kind, i)
        })
        .reduce_with(|a, b| if b.0 > a.0 { b } else { a });
    DetFormulaReport {
        samples: jobs.len(),
        max_deviation: worst.map_or(0.0, |w| w.0),
        worst: worst.map(|w| (w.1, w.2)),
    }
}

fn det_formula(seed: u64) -> (bool, String) {
    let r = det_formula_check(10_000, 1_000, 1_000, seed);
    (
        r.max_deviation <= 1e-12 && r.samples == 12_000,
        format!("{} samples, max deviation {:.3e}", r.samples, r.max_deviation),
    )
}

/// Relative deviation with an absolute floor for invariants near zero.
fn relative_deviation(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-12)
}

fn local_unitary_invariance(seed: u64) -> (bool, String) {
    let spec = EnsembleSpec::new(EnsembleKind::HilbertSchmidt, seed);
    let worst = (0..1_000u64)
        .into_par_iter()
        .map(|i| {
            let rho = sample_one(&spec, i).expect("valid ensemble");
            let g = sample_local_unitary(seed, i);
            let a = compute_invariants(&bloch_decompose(&rho)).to_array();
            let b = compute_invariants(&bloch_decompose(&apply_local_unitary(&rho, &g))).to_array();
            a.iter().zip(&b).map(|(x, y)| relative_deviation(*x, *y)).fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    (worst <= 1e-10, format!("1000 pairs, max relative deviation {worst:.3e}"))
}

fn criterion_agreement(seed: u64) -> (bool, String) {
    let spec = EnsembleSpec::new(EnsembleKind::HilbertSchmidt, seed ^ 0x7);
    let disagreements: Vec<u64> = (0..10_000u64)
        .into_par_iter()
        .filter(|&i| {
            let rho = sample_one(&spec, i).expect("valid ensemble");
            !is_separable(&rho, 1e-10).is_ok_and(|v| v.criteria_agree())
        })
        .collect();
    let root = boundary_point(&DensityMatrix::bell_phi_plus(), &DensityMatrix::maximally_mixed(), ROOT_TOL);
    let (root_ok, root_detail) = match root {
        Ok(b) => ((b.lambda - 1.0 / 3.0).abs() <= 1e-10, format!("w* − 1/3 = {:.3e}", b.lambda - 1.0 / 3.0)),
        Err(e) => (false, e.to_string()),
    };
    (
        disagreements.is_empty() && root_ok,
        format!("10000 states, {} disagreements; {root_detail}", disagreements.len()),
    )
}

/// Diagonal fixtures with 1, 2 and 3 zero eigenvalues, including indefinite ones.
const SINGULAR_FIXTURES: [([f64; 4], usize); 6] = [
    ([0.5, 0.25, 0.25, 0.0], 1),
    ([0.7, -0.2, 0.5, 0.0], 1),
    ([0.5, 0.5, 0.0, 0.0], 2),
    ([1.5, -0.5, 0.0, 0.0], 2),
    ([1.0, 0.0, 0.0, 0.0], 3),
    ([0.6, 0.3, 0.1, 0.0], 1),
];

fn singular_points(seed: u64) -> (bool, String) {
    let tol = 1e-9;
    let mut failures = Vec::new();
    let mut checked = 0;
    for (k, (d, zeros)) in SINGULAR_FIXTURES.iter().enumerate() {
        let base = ComplexMatrix::from_real_diagonal(d);
        for i in 0..100u64 {
            let u = sample_unitary(seed, (k as u64) * 100 + i, 4);
            let h = (&(&u * &base) * &u.adjoint()).hermitian_part();
            // D at h, and D^Γ at h^Γ
            for (which, point) in [(Hypersurface::D, h.clone()), (Hypersurface::DGamma, partial_transpose(&h))] {
                checked += 1;
                match analyze_hypersurface_point(&point, which, tol) {
                    Ok(p) if p.zero_count == *zeros && p.singular == (*zeros >= 2) => {}
                    Ok(p) => failures.push(format!(
                        "fixture {k} conjugate {i} {which:?}: zero_count {} singular {} |∇| {:.3e}",
                        p.zero_count, p.singular, p.gradient_norm
                    )),
                    Err(e) => failures.push(format!("fixture {k} conjugate {i}: {e}")),
                }
            }
        }
    }
    (
        failures.is_empty(),
        if failures.is_empty() {
            format!("{checked} points, zero misclassifications")
        } else {
            format!("{} misclassified: {}", failures.len(), failures[0])
        },
    )
}

fn smoothness(seed: u64) -> (bool, String) {
    match smoothness_audit(1_000, seed, &AuditOptions::default()) {
        Ok(r) => (
            true,
            format!(
                "1000 boundary points, zero failures; min |∇| {:.3e}, max identity deviation {:.3e}",
                r.min_gradient_norm, r.max_identity_deviation
            ),
        ),
        Err(e) => (false, e.to_string()),
    }
}

/// Orthonormal pairs spanning two-dimensional subspaces: a structured set
/// followed by Haar-random planes.
pub fn product_vector_subspaces(seed: u64, count: usize) -> Vec<([Complex64; 4], [Complex64; 4])> {
    let e = |k: usize| -> [Complex64; 4] { std::array::from_fn(|i| Complex64::new(if i == k { 1.0 } else { 0.0 }, 0.0)) };
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let bell = [Complex64::new(s, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(s, 0.0)];
    let singlet = [Complex64::new(0.0, 0.0), Complex64::new(s, 0.0), Complex64::new(-s, 0.0), Complex64::new(0.0, 0.0)];
    let mut out = vec![(e(1), e(2)), (e(0), e(3)), (bell, e(1)), (e(0), e(1)), (bell, singlet), (e(0), e(2))];
    let mut i = 0u64;
    while out.len() < count {
        let mut rng = stream_rng(seed, 0x5355_4253_5043, i); // "SUBSPC"
        i += 1;
        let a = haar_unit_vector(&mut rng, 4);
        let b = haar_unit_vector(&mut rng, 4);
        let overlap: Complex64 = a.iter().zip(&b).map(|(x, y)| x.conj() * y).sum();
        let mut w: Vec<Complex64> = b.iter().zip(&a).map(|(y, x)| y - overlap * x).collect();
        let n = crate::qstate::vector_norm(&w);
        if n < 1e-6 {
            continue;
        }
        w.iter_mut().for_each(|z| *z /= n);
        out.push((std::array::from_fn(|k| a[k]), std::array::from_fn(|k| w[k])));
    }
    out.truncate(count);
    out
}

fn product_vectors(seed: u64) -> (bool, String) {
    let mut worst_residual: f64 = 0.0;
    let mut errors = 0;
    for (v1, v2) in product_vector_subspaces(seed, 100) {
        match kernel_product_vector(&v1, &v2) {
            Ok(k) => {
                worst_residual = worst_residual.max(k.primary.residual);
                if let Some(s) = k.secondary {
                    worst_residual = worst_residual.max(s.residual);
                }
            }
            Err(_) => errors += 1,
        }
    }
    let spec = EnsembleSpec::new(EnsembleKind::HilbertSchmidt, seed ^ 0x10);
    let worst_identity = (0..1_000u64)
        .into_par_iter()
        .map(|i| {
            let rho = sample_one(&spec, i).expect("valid ensemble");
            let (e, f) = sample_product_factors(seed ^ 0x10, i);
            proof_identity_deviation(rho.matrix(), &e, &f)
        })
        .reduce(|| 0.0, f64::max);
    (
        errors == 0 && worst_residual <= 1e-10 && worst_identity <= 1e-12,
        format!(
            "100 subspaces, max residual {worst_residual:.3e}, {errors} errors; 1000 triples, max identity deviation {worst_identity:.3e}"
        ),
    )
}
