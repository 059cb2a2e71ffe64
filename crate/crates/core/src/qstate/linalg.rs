//! Small dense linear algebra: cyclic Jacobi eigensolver for hermitian
//! matrices, determinants and adjugates.

use num_complex::Complex64;
use thiserror::Error;

use super::matrix::ComplexMatrix;

/// Default absolute threshold below which an eigenvalue counts as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-9;

/// Hermiticity accepted by [`eigensystem`].
pub const EIGEN_HERMITIAN_TOL: f64 = 1e-10;

/// Sweeps stop once the off-diagonal Frobenius mass is below this fraction of ‖H‖.
const OFF_DIAGONAL_RTOL: f64 = 1e-14;

const MAX_SWEEPS: usize = 100;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EigenError {
    #[error("matrix is not hermitian (max |H - H†| = {deviation:e})")]
    NotHermitian { deviation: f64 },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal mass {off_diagonal:e})")]
    NoConvergence { sweeps: usize, off_diagonal: f64 },
    #[error("matrix has non-finite entries")]
    NonFinite,
}

/// Eigen-decomposition of a hermitian matrix.
#[derive(Debug, Clone)]
pub struct SpectralData {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: ComplexMatrix,
    pub zero_count: usize,
    pub zero_tol: f64,
}

impl SpectralData {
    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues.last().expect("non-empty spectrum")
    }

    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        self.eigenvectors.column(k)
    }

    /// `Σ λ_k v_k v_k†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let mut out = ComplexMatrix::zeros(n);
        for (k, &lambda) in self.eigenvalues.iter().enumerate() {
            let v = self.eigenvector(k);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += v[i] * v[j].conj() * lambda;
                }
            }
        }
        out
    }

    /// Largest deviation of `V†V` from the identity.
    pub fn orthonormality_defect(&self) -> f64 {
        let v = &self.eigenvectors;
        let gram = &v.adjoint() * v;
        gram.max_abs_diff(&ComplexMatrix::identity(v.dim()))
    }
}

/// Eigenvalues and eigenvectors of a hermitian matrix by cyclic complex
/// Jacobi rotations.
pub fn eigensystem(h: &ComplexMatrix, zero_tol: f64) -> Result<SpectralData, EigenError> {
    if !h.is_finite() {
        return Err(EigenError::NonFinite);
    }
    let deviation = h.hermiticity_defect();
    if deviation > EIGEN_HERMITIAN_TOL {
        return Err(EigenError::NotHermitian { deviation });
    }

    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let norm = a.frobenius_norm();
    let target = OFF_DIAGONAL_RTOL * norm;

    let mut converged = n == 1 || norm == 0.0;
    let mut sweeps = 0;
    while !converged {
        if off_diagonal_mass(&a) <= target {
            converged = true;
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(EigenError::NoConvergence {
                sweeps,
                off_diagonal: off_diagonal_mass(&a),
            });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let g = a[(p, q)];
                let abs_g = g.norm();
                if abs_g == 0.0 {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                // Late sweeps: drop elements that no longer affect the diagonal.
                if sweeps > 4 && app.abs() + 100.0 * abs_g == app.abs() && aqq.abs() + 100.0 * abs_g == aqq.abs() {
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                rotate(&mut a, &mut v, p, q, g / abs_g, abs_g);
            }
        }
    }
    debug_assert!(converged);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&k| a[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, |i, k| v[(i, order[k])]);
    let zero_count = eigenvalues.iter().filter(|l| l.abs() <= zero_tol).count();

    Ok(SpectralData {
        eigenvalues,
        eigenvectors,
        zero_count,
        zero_tol,
    })
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.dim();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += a[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Applies `A ← J†AJ`, `V ← VJ` with the unitary rotation in the (p, q)
/// plane that annihilates `A[p][q] = |g|·phase`.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize, phase: Complex64, abs_g: f64) {
    let n = a.dim();
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let tau = (aqq - app) / (2.0 * abs_g);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // J_pp = J_qq = c, J_pq = s·phase, J_qp = −s·conj(phase)
    let j_pq = phase * s;
    let j_qp = -phase.conj() * s;

    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c + akq * j_qp;
        a[(k, q)] = akp * j_pq + akq * c;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c + aqk * j_qp.conj();
        a[(q, k)] = apk * j_pq.conj() + aqk * c;
    }
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(app - t * abs_g, 0.0);
    a[(q, q)] = Complex64::new(aqq + t * abs_g, 0.0);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c + vkq * j_qp;
        v[(k, q)] = vkp * j_pq + vkq * c;
    }
}

/// Determinant. Cofactor (Laplace) expansion up to dimension 4, LU with
/// partial pivoting above that.
pub fn determinant(m: &ComplexMatrix) -> Complex64 {
    match m.dim() {
        1 => m[(0, 0)],
        2 => m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)],
        3 => {
            m[(0, 0)] * (m[(1, 1)] * m[(2, 2)] - m[(1, 2)] * m[(2, 1)])
                - m[(0, 1)] * (m[(1, 0)] * m[(2, 2)] - m[(1, 2)] * m[(2, 0)])
                + m[(0, 2)] * (m[(1, 0)] * m[(2, 1)] - m[(1, 1)] * m[(2, 0)])
        }
        4 => {
            let mut det = Complex64::new(0.0, 0.0);
            for j in 0..4 {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                det += m[(0, j)] * determinant(&m.minor(0, j)) * sign;
            }
            det
        }
        _ => lu_determinant(m),
    }
}

fn lu_determinant(m: &ComplexMatrix) -> Complex64 {
    let n = m.dim();
    let mut a = m.clone();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[(i, col)].norm().total_cmp(&a[(j, col)].norm()))
            .expect("non-empty range");
        if a[(pivot, col)].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if pivot != col {
            for k in 0..n {
                let tmp = a[(col, k)];
                a[(col, k)] = a[(pivot, k)];
                a[(pivot, k)] = tmp;
            }
            det = -det;
        }
        let d = a[(col, col)];
        det *= d;
        for r in col + 1..n {
            let factor = a[(r, col)] / d;
            for k in col..n {
                let sub = a[(col, k)] * factor;
                a[(r, k)] -= sub;
            }
        }
    }
    det
}

/// Adjugate (transpose of the cofactor matrix), computed from minors so it
/// is well defined for singular input.
pub fn adjugate(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.dim();
    if n == 1 {
        return ComplexMatrix::identity(1);
    }
    ComplexMatrix::from_fn(n, |i, j| {
        let sign = if (i + j) % 2 == 0 { 1.0 } else { -1.0 };
        determinant(&m.minor(j, i)) * sign
    })
}
