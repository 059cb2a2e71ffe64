use rayon::prelude::*;
use serde::Serialize;

use super::{
    analyze_hypersurface_point, boundary_point, classify, proof_identity_deviation, BoundaryTag, GeometryError,
    Hypersurface, CLASSIFY_TOL, ROOT_TOL,
};
use crate::invariants::det_pt_direct;
use crate::qstate::{eigensystem, sample_one, sample_product_factors, DensityMatrix, EnsembleKind, EnsembleSpec, DEFAULT_ZERO_TOL};

/// Candidate draws per record; record `i` uses state stream indices
/// `i·DRAWS_PER_RECORD ..`.
const DRAWS_PER_RECORD: u64 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AuditOptions {
    /// Candidates need `min-eig(ρ) > delta`.
    pub delta: f64,
    pub root_tol: f64,
    pub gradient_tol: f64,
    pub identity_tol: f64,
}

impl Default for AuditOptions {
    fn default() -> Self {
        Self {
            delta: 1e-3,
            root_tol: ROOT_TOL,
            gradient_tol: 1e-9,
            identity_tol: 1e-12,
        }
    }
}

/// One boundary point reached from an interior entangled state.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRecord {
    pub index: u64,
    pub tag: BoundaryTag,
    pub det: f64,
    pub det_pt: f64,
    pub zero_count: usize,
    /// State stream index of the accepted candidate.
    pub draw: u64,
    pub lambda: f64,
    pub min_eigenvalue: f64,
    pub gradient_norm: f64,
    pub singular: bool,
    pub identity_deviation: f64,
    pub passed: bool,
}

impl AuditRecord {
    fn failure_reason(&self, opts: &AuditOptions) -> Option<String> {
        if self.min_eigenvalue <= 0.0 {
            Some(format!("boundary point left the interior (min eigenvalue {:e})", self.min_eigenvalue))
        } else if self.zero_count != 1 {
            Some(format!("partial transpose has {} zero eigenvalues", self.zero_count))
        } else if self.singular {
            Some(format!("gradient norm {:e} below threshold", self.gradient_norm))
        } else if self.identity_deviation > opts.identity_tol {
            Some(format!("product-vector identity off by {:e}", self.identity_deviation))
        } else {
            None
        }
    }
}

/// Record `index` of the audit for `seed`. Depends only on `(seed, index)`.
pub fn audit_record(seed: u64, index: u64, opts: &AuditOptions) -> Result<AuditRecord, GeometryError> {
    let spec = EnsembleSpec::new(EnsembleKind::HilbertSchmidt, seed);
    let center = DensityMatrix::maximally_mixed();
    for k in 0..DRAWS_PER_RECORD {
        let draw = index * DRAWS_PER_RECORD + k;
        let rho = sample_one(&spec, draw).map_err(|e| GeometryError::InvalidInput(e.to_string()))?;
        if det_pt_direct(&rho) >= 0.0 || rho.min_eigenvalue()? <= opts.delta {
            continue;
        }
        let b = boundary_point(&rho, &center, opts.root_tol)?;
        let class = classify(&b.rho, CLASSIFY_TOL)?;
        let zero_count = eigensystem(&b.rho.partial_transpose(), DEFAULT_ZERO_TOL)?.zero_count;
        let point = analyze_hypersurface_point(b.rho.matrix(), Hypersurface::DGamma, opts.gradient_tol)?;
        let (e, f) = sample_product_factors(seed, index);
        let identity_deviation = proof_identity_deviation(rho.matrix(), &e, &f);
        let mut record = AuditRecord {
            index,
            tag: class.tag,
            det: class.det,
            det_pt: b.det_pt,
            zero_count,
            draw,
            lambda: b.lambda,
            min_eigenvalue: class.min_eigenvalue,
            gradient_norm: point.gradient_norm,
            singular: point.singular,
            identity_deviation,
            passed: false,
        };
        record.passed = record.failure_reason(opts).is_none();
        return Ok(record);
    }
    Err(GeometryError::AuditFailure {
        index,
        reason: format!("no interior entangled state in {DRAWS_PER_RECORD} draws"),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    /// In index order.
    pub records: Vec<AuditRecord>,
    pub max_identity_deviation: f64,
    pub min_gradient_norm: f64,
}

/// Runs `n_samples` records in parallel and fails on the first (lowest
/// index) record that violates the smoothness claim.
pub fn smoothness_audit(n_samples: usize, seed: u64, opts: &AuditOptions) -> Result<AuditReport, GeometryError> {
    let records = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| audit_record(seed, i, opts))
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(bad) = records.iter().find(|r| !r.passed) {
        return Err(GeometryError::AuditFailure {
            index: bad.index,
            reason: bad.failure_reason(opts).unwrap_or_default(),
        });
    }
    let max_identity_deviation = records.iter().map(|r| r.identity_deviation).fold(0.0, f64::max);
    let min_gradient_norm = records.iter().map(|r| r.gradient_norm).fold(f64::INFINITY, f64::min);
    Ok(AuditReport {
        records,
        max_identity_deviation,
        min_gradient_norm,
    })
}
