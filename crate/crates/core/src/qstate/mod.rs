//! Two-qubit states: validation, the (s, p, β̂) chart, partial transposition,
//! spectra and sampling.

mod bloch;
pub mod json;
pub mod linalg;
mod matrix;
pub mod sample;

use num_complex::Complex64;
use thiserror::Error;

pub use bloch::{bloch_compose, bloch_decompose, pauli, MakhlinCoordinates};
pub use linalg::{adjugate, determinant, eigensystem, EigenError, SpectralData, DEFAULT_ZERO_TOL};
pub use matrix::{kron_vec, vector_norm, ComplexMatrix};
pub use sample::{
    apply_local_unitary, haar_su2, haar_unit_vector, haar_unitary, sample, sample_local_unitary, sample_one,
    sample_product_factors, sample_unitary, stream_rng, EnsembleKind, EnsembleSpec, LocalUnitary, SampleError,
};

/// Maximum entrywise `|M − M†|` accepted for a state.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Maximum `|tr M − 1|` accepted for a state.
pub const TRACE_TOL: f64 = 1e-12;
/// Strict mode rejects states whose smallest eigenvalue is below `-POSITIVITY_TOL`.
pub const POSITIVITY_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("expected a {expected}×{expected} matrix, got {found}×{found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is not hermitian (max |M - M†| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("trace is {re}{im:+}i, expected 1 (deviation {deviation:e})")]
    TraceNotOne { re: f64, im: f64, deviation: f64 },
    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },
    #[error(transparent)]
    Eigen(#[from] EigenError),
}

/// A hermitian, unit-trace 4×4 matrix.
///
/// Positivity is not part of the type: non-strict construction admits
/// trace-one hermitian matrices outside the state space, which the geometry
/// code needs for points of the determinantal hypersurfaces.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(ComplexMatrix);

impl DensityMatrix {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    /// `I₄/4`.
    pub fn maximally_mixed() -> Self {
        Self(ComplexMatrix::identity(4).scale(0.25))
    }

    /// Projector onto a (normalized internally) pure state vector.
    pub fn from_pure(psi: &[Complex64]) -> Self {
        assert_eq!(psi.len(), 4, "two-qubit state vector has 4 components");
        let norm = vector_norm(psi);
        let unit: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self(ComplexMatrix::outer(&unit, &unit).hermitian_part())
    }

    /// The Bell state `(|00⟩ + |11⟩)/√2` as a projector.
    pub fn bell_phi_plus() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        Self::from_pure(&[one, zero, zero, one])
    }

    /// Werner family `w·Φ⁺ + (1 − w)·I₄/4`.
    pub fn werner(w: f64) -> Self {
        let bell = Self::bell_phi_plus();
        Self::convex(&bell, &Self::maximally_mixed(), w)
    }

    /// `λ·a + (1 − λ)·b`. Stays hermitian with unit trace for any real λ.
    pub fn convex(a: &Self, b: &Self, lambda: f64) -> Self {
        let m = &a.0.scale(lambda) + &b.0.scale(1.0 - lambda);
        Self(m)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn spectrum(&self, zero_tol: f64) -> Result<SpectralData, EigenError> {
        eigensystem(&self.0, zero_tol)
    }

    pub fn min_eigenvalue(&self) -> Result<f64, EigenError> {
        Ok(self.spectrum(DEFAULT_ZERO_TOL)?.min_eigenvalue())
    }

    pub fn determinant(&self) -> f64 {
        determinant(&self.0).re
    }

    /// `ρ^Γ`, partial transpose on the second qubit.
    pub fn partial_transpose(&self) -> ComplexMatrix {
        partial_transpose(&self.0)
    }

    /// Exchanges the two qubits, `SWAP·ρ·SWAP`.
    pub fn swap_qubits(&self) -> Self {
        let idx = |k: usize| (k % 2) * 2 + k / 2;
        Self(ComplexMatrix::from_fn(4, |i, j| self.0[(idx(i), idx(j))]))
    }
}

/// Checks that `m` is a 4×4 hermitian unit-trace matrix; in strict mode also
/// that it is positive semidefinite.
pub fn validate_state(m: ComplexMatrix, strict: bool) -> Result<DensityMatrix, StateError> {
    if m.dim() != 4 {
        return Err(StateError::WrongDimension {
            expected: 4,
            found: m.dim(),
        });
    }
    if !m.is_finite() {
        return Err(StateError::NonFinite);
    }
    let deviation = m.hermiticity_defect();
    if deviation > HERMITIAN_TOL {
        return Err(StateError::NotHermitian { deviation });
    }
    let tr = m.trace();
    let trace_dev = (tr - Complex64::new(1.0, 0.0)).norm();
    if trace_dev > TRACE_TOL {
        return Err(StateError::TraceNotOne {
            re: tr.re,
            im: tr.im,
            deviation: trace_dev,
        });
    }
    let m = m.hermitian_part();
    if strict {
        let min_eigenvalue = eigensystem(&m, DEFAULT_ZERO_TOL)?.min_eigenvalue();
        if min_eigenvalue < -POSITIVITY_TOL {
            return Err(StateError::NotPositive { min_eigenvalue });
        }
    }
    Ok(DensityMatrix(m))
}

/// Transposes the second tensor factor of a 4×4 matrix: in 2×2 block form
/// `[[A, B], [C, D]]` (blocks indexed by the first qubit) the result is
/// `[[Aᵀ, Bᵀ], [Cᵀ, Dᵀ]]`.
pub fn partial_transpose(m: &ComplexMatrix) -> ComplexMatrix {
    assert_eq!(m.dim(), 4, "partial transpose is defined on C²⊗C²");
    ComplexMatrix::from_fn(4, |i, j| {
        let (i1, i2) = (i / 2, i % 2);
        let (j1, j2) = (j / 2, j % 2);
        m[(2 * i1 + j2, 2 * j1 + i2)]
    })
}
