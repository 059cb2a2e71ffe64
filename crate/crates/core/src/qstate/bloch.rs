use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::ComplexMatrix;
use super::DensityMatrix;

/// The chart `ρ = ¼I₄ + X⊗I₂ + I₂⊗Y + Z` with `X = ½Σ sᵢσᵢ`,
/// `Y = ½Σ pᵢσᵢ`, `Z = Σ βᵢⱼ σᵢ⊗σⱼ`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MakhlinCoordinates {
    pub s: [f64; 3],
    pub p: [f64; 3],
    pub beta: [[f64; 3]; 3],
}

impl MakhlinCoordinates {
    pub fn is_finite(&self) -> bool {
        self.s.iter().chain(&self.p).chain(self.beta.iter().flatten()).all(|x| x.is_finite())
    }

    /// Coordinates of the qubit-swapped state: `(s, p, β̂) → (p, s, β̂ᵀ)`.
    pub fn swapped(&self) -> Self {
        let mut beta = [[0.0; 3]; 3];
        for (k, row) in beta.iter_mut().enumerate() {
            for (l, b) in row.iter_mut().enumerate() {
                *b = self.beta[l][k];
            }
        }
        Self {
            s: self.p,
            p: self.s,
            beta,
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let a = self.s.iter().chain(&self.p).chain(self.beta.iter().flatten());
        let b = other.s.iter().chain(&other.p).chain(other.beta.iter().flatten());
        a.zip(b).fold(0.0, |acc, (x, y)| acc.max((x - y).abs()))
    }
}

/// Pauli matrix σ₁, σ₂ or σ₃ for `k` = 0, 1, 2.
pub fn pauli(k: usize) -> ComplexMatrix {
    let z = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    let entries = match k {
        0 => vec![z, one, one, z],
        1 => vec![z, -i, i, z],
        2 => vec![one, z, z, -one],
        _ => panic!("Pauli index must be 0, 1 or 2"),
    };
    ComplexMatrix::from_row_major(2, entries)
}

/// `tr(ρ·(A⊗B))` without forming the Kronecker product.
fn trace_against(rho: &ComplexMatrix, a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            // (A⊗B)_{ji}
            let op = a[(j / 2, i / 2)] * b[(j % 2, i % 2)];
            acc += rho[(i, j)] * op;
        }
    }
    acc
}

/// `s_j = ½tr(ρ(σ_j⊗I))`, `p_j = ½tr(ρ(I⊗σ_j))`, `β_kl = ¼tr(ρ(σ_k⊗σ_l))`.
pub fn bloch_decompose(rho: &DensityMatrix) -> MakhlinCoordinates {
    let m = rho.matrix();
    let id = ComplexMatrix::identity(2);
    let sigmas: Vec<ComplexMatrix> = (0..3).map(pauli).collect();
    let mut c = MakhlinCoordinates::default();
    for j in 0..3 {
        c.s[j] = 0.5 * trace_against(m, &sigmas[j], &id).re;
        c.p[j] = 0.5 * trace_against(m, &id, &sigmas[j]).re;
    }
    for k in 0..3 {
        for l in 0..3 {
            c.beta[k][l] = 0.25 * trace_against(m, &sigmas[k], &sigmas[l]).re;
        }
    }
    c
}

/// Inverse of [`bloch_decompose`]; the result is hermitian with unit trace
/// but need not be positive.
pub fn bloch_compose(c: &MakhlinCoordinates) -> ComplexMatrix {
    let id = ComplexMatrix::identity(2);
    let sigmas: Vec<ComplexMatrix> = (0..3).map(pauli).collect();
    let mut out = ComplexMatrix::identity(4).scale(0.25);
    for j in 0..3 {
        out = &out + &sigmas[j].kron(&id).scale(0.5 * c.s[j]);
        out = &out + &id.kron(&sigmas[j]).scale(0.5 * c.p[j]);
    }
    for k in 0..3 {
        for l in 0..3 {
            if c.beta[k][l] != 0.0 {
                out = &out + &sigmas[k].kron(&sigmas[l]).scale(c.beta[k][l]);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qstate::validate_state;

    fn diag_beta(d: [f64; 3]) -> [[f64; 3]; 3] {
        [[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]]
    }

    #[test]
    fn maximally_mixed_has_zero_coordinates() {
        let c = bloch_decompose(&DensityMatrix::maximally_mixed());
        assert_eq!(c, MakhlinCoordinates::default());
        assert!(bloch_compose(&c).max_abs_diff(&ComplexMatrix::identity(4).scale(0.25)) == 0.0);
    }

    #[test]
    fn bell_coordinates() {
        let c = bloch_decompose(&DensityMatrix::bell_phi_plus());
        let expected = MakhlinCoordinates {
            beta: diag_beta([0.25, -0.25, 0.25]),
            ..Default::default()
        };
        assert!(c.max_abs_diff(&expected) < 1e-15, "{c:?}");
        let back = bloch_compose(&expected);
        assert!(back.max_abs_diff(DensityMatrix::bell_phi_plus().matrix()) < 1e-15);
    }

    #[test]
    fn pure_product_coordinates() {
        let rho = validate_state(ComplexMatrix::from_real_diagonal(&[1.0, 0.0, 0.0, 0.0]), true).unwrap();
        let c = bloch_decompose(&rho);
        let expected = MakhlinCoordinates {
            s: [0.0, 0.0, 0.5],
            p: [0.0, 0.0, 0.5],
            beta: diag_beta([0.0, 0.0, 0.25]),
        };
        assert!(c.max_abs_diff(&expected) < 1e-15);
        assert!(bloch_compose(&expected).max_abs_diff(rho.matrix()) < 1e-15);
    }

    #[test]
    fn swap_of_coordinates_matches_swap_of_state() {
        let c = MakhlinCoordinates {
            s: [0.1, -0.05, 0.02],
            p: [0.0, 0.07, -0.03],
            beta: [[0.01, 0.02, 0.03], [-0.04, 0.05, 0.0], [0.0, -0.01, 0.06]],
        };
        let rho = validate_state(bloch_compose(&c), false).unwrap();
        let swapped = bloch_decompose(&rho.swap_qubits());
        assert!(swapped.max_abs_diff(&c.swapped()) < 1e-15);
    }

    #[test]
    fn pauli_algebra() {
        let s1 = pauli(0);
        let s2 = pauli(1);
        let s3 = pauli(2);
        let prod = &s1 * &s2;
        assert!(prod.max_abs_diff(&s3.scale_complex(Complex64::new(0.0, 1.0))) == 0.0);
        for k in 0..3 {
            let sq = &pauli(k) * &pauli(k);
            assert_eq!(sq, ComplexMatrix::identity(2));
        }
    }
}
