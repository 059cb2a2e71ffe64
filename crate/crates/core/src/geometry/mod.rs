//! Separability, the two pieces of the separable boundary, singular points of
//! the determinantal hypersurfaces `det ρ = 0` and `det ρ^Γ = 0`, and product
//! vectors in two-dimensional kernels.

mod audit;
mod boundary;
mod hypersurface;
mod product;

use serde::Serialize;
use thiserror::Error;

use crate::qstate::{eigensystem, DensityMatrix, EigenError, StateError, DEFAULT_ZERO_TOL, POSITIVITY_TOL};

pub use audit::{audit_record, smoothness_audit, AuditOptions, AuditRecord, AuditReport};
pub use boundary::{boundary_point, BoundaryPoint, BoundaryPointSummary, BISECTION_STEPS};
pub use hypersurface::{analyze_hypersurface_point, traceless_part, Hypersurface, HypersurfacePoint};
pub use product::{kernel_product_vector, matricize, proof_identity_deviation, KernelProductVector, ProductFactor};

/// Default tolerance for classification and the separability test.
pub const CLASSIFY_TOL: f64 = 1e-9;
/// Default target for `|det ρ^Γ|` at a located boundary point.
pub const ROOT_TOL: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("not a state: min eigenvalue {min_eigenvalue:e}")]
    NotAState { min_eigenvalue: f64 },
    #[error("endpoints do not bracket the boundary: inner det ρ^Γ = {inner:e}, outer det ρ^Γ = {outer:e}")]
    SameSign { inner: f64, outer: f64 },
    #[error("bisection stopped with |det ρ^Γ| = {residual:e} after {steps} steps")]
    RootNotReached { residual: f64, steps: usize },
    #[error("point is not on the hypersurface: |det| = {det:e} > {tol:e}")]
    NotOnHypersurface { det: f64, tol: f64 },
    #[error("{0}")]
    InvalidInput(String),
    #[error("audit sample {index} failed: {reason}")]
    AuditFailure { index: u64, reason: String },
    #[error(transparent)]
    Eigen(#[from] EigenError),
    #[error(transparent)]
    State(#[from] StateError),
}

/// Separability by the sign of `det ρ^Γ`, with the PPT test alongside.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeparabilityVerdict {
    pub separable: bool,
    /// `det ρ^Γ`.
    pub margin: f64,
    pub ppt_min_eigenvalue: f64,
    pub ppt_separable: bool,
}

impl SeparabilityVerdict {
    pub fn criteria_agree(&self) -> bool {
        self.separable == self.ppt_separable
    }
}

pub fn is_separable(rho: &DensityMatrix, tol: f64) -> Result<SeparabilityVerdict, GeometryError> {
    let min_eigenvalue = rho.min_eigenvalue()?;
    if min_eigenvalue < -POSITIVITY_TOL {
        return Err(GeometryError::NotAState { min_eigenvalue });
    }
    let pt = rho.partial_transpose();
    let margin = crate::qstate::determinant(&pt).re;
    let ppt_min_eigenvalue = eigensystem(&pt, DEFAULT_ZERO_TOL)?.min_eigenvalue();
    Ok(SeparabilityVerdict {
        separable: margin >= -tol,
        margin,
        ppt_min_eigenvalue,
        ppt_separable: ppt_min_eigenvalue >= -tol,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoundaryTag {
    NotAState,
    InteriorSeparable,
    /// `det ρ^Γ < 0`; the state may still lie on the boundary of the state space.
    InteriorEntangled,
    /// `det ρ = 0` and `ρ^Γ ⪰ 0`.
    BoundaryD,
    /// `det ρ^Γ = 0` and `ρ ≻ 0`.
    BoundaryDGamma,
    BoundaryBoth,
}

impl BoundaryTag {
    pub fn is_separable(self) -> bool {
        matches!(
            self,
            Self::InteriorSeparable | Self::BoundaryD | Self::BoundaryDGamma | Self::BoundaryBoth
        )
    }

    pub fn on_separable_boundary(self) -> bool {
        matches!(self, Self::BoundaryD | Self::BoundaryDGamma | Self::BoundaryBoth)
    }
}

impl std::fmt::Display for BoundaryTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundaryClass {
    pub tag: BoundaryTag,
    /// `|det ρ| ≤ tol` for a state.
    #[serde(rename = "on_boundary_M")]
    pub on_boundary_m: bool,
    pub min_eigenvalue: f64,
    pub min_eigenvalue_pt: f64,
    pub det: f64,
    pub det_pt: f64,
}

/// Locates `rho` relative to the state space and the separable set. All
/// comparisons use the absolute tolerance `tol`.
pub fn classify(rho: &DensityMatrix, tol: f64) -> Result<BoundaryClass, GeometryError> {
    let pt = rho.partial_transpose();
    let min_eigenvalue = rho.min_eigenvalue()?;
    let min_eigenvalue_pt = eigensystem(&pt, DEFAULT_ZERO_TOL)?.min_eigenvalue();
    let det = rho.determinant();
    let det_pt = crate::qstate::determinant(&pt).re;

    let is_state = min_eigenvalue >= -tol;
    let on_d = det.abs() <= tol;
    let on_d_gamma = det_pt.abs() <= tol;
    let tag = if !is_state {
        BoundaryTag::NotAState
    } else if det_pt < -tol {
        BoundaryTag::InteriorEntangled
    } else {
        match (on_d, on_d_gamma) {
            (true, true) => BoundaryTag::BoundaryBoth,
            (true, false) => BoundaryTag::BoundaryD,
            (false, true) => BoundaryTag::BoundaryDGamma,
            (false, false) => BoundaryTag::InteriorSeparable,
        }
    };
    Ok(BoundaryClass {
        tag,
        on_boundary_m: is_state && on_d,
        min_eigenvalue,
        min_eigenvalue_pt,
        det,
        det_pt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::{sample, validate_state, ComplexMatrix, EnsembleKind, EnsembleSpec};

    #[test]
    fn maximally_mixed_is_separable_with_margin() {
        let v = is_separable(&DensityMatrix::maximally_mixed(), CLASSIFY_TOL).unwrap();
        assert!(v.separable && v.criteria_agree());
        assert!((v.margin - 1.0 / 256.0).abs() < 1e-16);
    }

    #[test]
    fn bell_is_entangled() {
        let v = is_separable(&DensityMatrix::bell_phi_plus(), CLASSIFY_TOL).unwrap();
        assert!(!v.separable && v.criteria_agree());
        assert!((v.margin + 1.0 / 16.0).abs() < 1e-15);
        assert!((v.ppt_min_eigenvalue + 0.5).abs() < 1e-12);
    }

    #[test]
    fn werner_third_is_marginally_separable() {
        let v = is_separable(&DensityMatrix::werner(1.0 / 3.0), CLASSIFY_TOL).unwrap();
        assert!(v.separable && v.margin.abs() < 1e-16);
    }

    #[test]
    fn non_state_rejected() {
        let m = ComplexMatrix::from_real_diagonal(&[0.5, 0.5, 0.5, -0.5]);
        let rho = validate_state(m, false).unwrap();
        assert!(matches!(is_separable(&rho, CLASSIFY_TOL), Err(GeometryError::NotAState { .. })));
        assert_eq!(classify(&rho, CLASSIFY_TOL).unwrap().tag, BoundaryTag::NotAState);
    }

    #[test]
    fn classify_fixtures() {
        let pure = validate_state(ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0]), true).unwrap();
        let c = classify(&pure, CLASSIFY_TOL).unwrap();
        assert_eq!(c.tag, BoundaryTag::BoundaryBoth);
        assert!(c.on_boundary_m);

        let c = classify(&DensityMatrix::werner(1.0 / 3.0), CLASSIFY_TOL).unwrap();
        assert_eq!(c.tag, BoundaryTag::BoundaryDGamma);
        assert!(c.min_eigenvalue > 0.1 && !c.on_boundary_m);

        let c = classify(&DensityMatrix::bell_phi_plus(), CLASSIFY_TOL).unwrap();
        assert_eq!(c.tag, BoundaryTag::InteriorEntangled);
        assert!(c.on_boundary_m);
        assert!((c.det_pt + 0.0625).abs() < 1e-15);

        let c = classify(&DensityMatrix::maximally_mixed(), CLASSIFY_TOL).unwrap();
        assert_eq!(c.tag, BoundaryTag::InteriorSeparable);

        // |00⟩⟨00| mixed with |01⟩⟨01|: rank two, Γ-fixed
        let rho = validate_state(ComplexMatrix::from_real_diagonal(&[0.5, 0.5, 0.0, 0.0]), true).unwrap();
        assert_eq!(classify(&rho, CLASSIFY_TOL).unwrap().tag, BoundaryTag::BoundaryBoth);
    }

    #[test]
    fn boundary_d_without_d_gamma() {
        // (I − Φ⁺)/3 has a simple zero; its partial transpose (I − SWAP/2)/3 is positive.
        let bell = DensityMatrix::bell_phi_plus();
        let m = &ComplexMatrix::identity(4).scale(1.0 / 3.0) - &bell.matrix().scale(1.0 / 3.0);
        let rho = validate_state(m, true).unwrap();
        let c = classify(&rho, CLASSIFY_TOL).unwrap();
        assert_eq!(c.tag, BoundaryTag::BoundaryD);
        assert!((c.min_eigenvalue_pt - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn separable_mixtures_classify_separable() {
        let spec = EnsembleSpec::new(EnsembleKind::SeparableMixture { terms: 4 }, 17);
        for rho in sample(&spec, 200).unwrap() {
            let c = classify(&rho, CLASSIFY_TOL).unwrap();
            assert!(c.tag.is_separable(), "{c:?}");
            assert!(c.det_pt >= -1e-12);
        }
    }

    #[test]
    fn tags_are_exclusive_and_consistent() {
        let spec = EnsembleSpec::new(EnsembleKind::HilbertSchmidt, 4);
        for rho in sample(&spec, 200).unwrap() {
            let c = classify(&rho, CLASSIFY_TOL).unwrap();
            match c.tag {
                BoundaryTag::InteriorEntangled => assert!(c.det_pt < 0.0 && c.min_eigenvalue_pt < 0.0),
                BoundaryTag::InteriorSeparable => assert!(c.det_pt > 0.0 && c.min_eigenvalue_pt > 0.0),
                other => panic!("generic sample landed on {other}"),
            }
        }
    }
}
