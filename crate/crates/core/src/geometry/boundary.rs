use serde::Serialize;

use super::GeometryError;
use crate::invariants::det_pt_direct;
use crate::qstate::DensityMatrix;

/// Bisection halves the bracket this many times.
pub const BISECTION_STEPS: usize = 60;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    /// `λ·ρ_out + (1 − λ)·ρ_in`.
    pub rho: DensityMatrix,
    pub lambda: f64,
    pub det_pt: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundaryPointSummary {
    pub lambda: f64,
    pub det_pt: f64,
    pub steps: usize,
}

impl BoundaryPoint {
    pub fn summary(&self) -> BoundaryPointSummary {
        BoundaryPointSummary {
            lambda: self.lambda,
            det_pt: self.det_pt,
            steps: self.steps,
        }
    }
}

/// Bisects `λ ↦ det ρ(λ)^Γ` on the segment from `rho_in` (λ = 0, positive
/// margin) to `rho_out` (λ = 1, negative margin) and returns the bracket end
/// with the smaller `|det ρ^Γ|`, which must not exceed `tol`.
pub fn boundary_point(
    rho_out: &DensityMatrix,
    rho_in: &DensityMatrix,
    tol: f64,
) -> Result<BoundaryPoint, GeometryError> {
    let inner = det_pt_direct(rho_in);
    let outer = det_pt_direct(rho_out);
    if !(inner > 0.0 && outer < 0.0) {
        return Err(GeometryError::SameSign { inner, outer });
    }
    let at = |lambda: f64| DensityMatrix::convex(rho_out, rho_in, lambda);

    // f(lo) > 0 > f(hi)
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let (mut f_lo, mut f_hi) = (inner, outer);
    let mut steps = 0;
    while steps < BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        steps += 1;
        let f_mid = det_pt_direct(&at(mid));
        if f_mid == 0.0 {
            lo = mid;
            f_lo = 0.0;
            break;
        }
        if f_mid > 0.0 {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
            f_hi = f_mid;
        }
    }
    let (lambda, det_pt) = if f_lo.abs() <= f_hi.abs() { (lo, f_lo) } else { (hi, f_hi) };
    if det_pt.abs() > tol {
        return Err(GeometryError::RootNotReached {
            residual: det_pt.abs(),
            steps,
        });
    }
    Ok(BoundaryPoint {
        rho: at(lambda),
        lambda,
        det_pt,
        steps,
    })
}
