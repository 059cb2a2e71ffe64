use serde::{Deserialize, Serialize};

use super::GeometryError;
use crate::qstate::{adjugate, determinant, eigensystem, partial_transpose, ComplexMatrix, DEFAULT_ZERO_TOL};

/// Trace-one hermitian matrices with `det h = 0`, or with `det h^Γ = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Hypersurface {
    D,
    DGamma,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypersurfacePoint {
    pub h: ComplexMatrix,
    /// Gradient of the defining determinant on the trace-one slice.
    pub gradient: ComplexMatrix,
    pub gradient_norm: f64,
    pub singular: bool,
    /// Zero eigenvalues of `h` (for D) or `h^Γ` (for D^Γ).
    pub zero_count: usize,
}

impl HypersurfacePoint {
    /// Singular points are exactly those with a repeated zero eigenvalue.
    pub fn criterion_holds(&self) -> bool {
        self.singular == (self.zero_count >= 2)
    }
}

/// `m − (tr m / n)·I`.
pub fn traceless_part(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.dim();
    let shift = m.trace() / n as f64;
    let mut out = m.clone();
    for i in 0..n {
        out[(i, i)] -= shift;
    }
    out
}

/// Gradient and singularity of the hypersurface at `h`, a trace-one hermitian
/// matrix of any dimension for D and of dimension 4 for D^Γ. `tol` bounds
/// `|det|` on entry and is the gradient-norm threshold for singularity.
pub fn analyze_hypersurface_point(
    h: &ComplexMatrix,
    which: Hypersurface,
    tol: f64,
) -> Result<HypersurfacePoint, GeometryError> {
    let n = h.dim();
    if !h.is_finite() {
        return Err(GeometryError::InvalidInput("matrix has non-finite entries".into()));
    }
    if which == Hypersurface::DGamma && n != 4 {
        return Err(GeometryError::InvalidInput(format!("partial transpose needs a 4×4 matrix, got {n}×{n}")));
    }
    let h_hat = match which {
        Hypersurface::D => h.clone(),
        Hypersurface::DGamma => partial_transpose(h),
    };
    let det = determinant(&h_hat).norm();
    if det > tol {
        return Err(GeometryError::NotOnHypersurface { det, tol });
    }
    // d/dε det(ĥ + εX) = tr(adj(ĥ)·X), and tr(A·X^Γ) = tr(A^Γ·X).
    let adj = adjugate(&h_hat);
    let pulled_back = match which {
        Hypersurface::D => adj,
        Hypersurface::DGamma => partial_transpose(&adj),
    };
    let gradient = traceless_part(&pulled_back).hermitian_part();
    let gradient_norm = gradient.frobenius_norm();
    let zero_count = eigensystem(&h_hat, DEFAULT_ZERO_TOL)?.zero_count;
    Ok(HypersurfacePoint {
        h: h.clone(),
        gradient,
        gradient_norm,
        singular: gradient_norm <= tol,
        zero_count,
    })
}
