//! Nine polynomial local-unitary invariants of the (s, p, β̂) chart and the
//! closed-form expression of det ρ^Γ in terms of them.

use serde::{Deserialize, Serialize};

use crate::qstate::{determinant, DensityMatrix, MakhlinCoordinates};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct InvariantVector {
    #[serde(rename = "I1")]
    pub i1: f64,
    #[serde(rename = "I2")]
    pub i2: f64,
    #[serde(rename = "I3")]
    pub i3: f64,
    #[serde(rename = "I4")]
    pub i4: f64,
    #[serde(rename = "I5")]
    pub i5: f64,
    #[serde(rename = "I7")]
    pub i7: f64,
    #[serde(rename = "I8")]
    pub i8: f64,
    #[serde(rename = "I12")]
    pub i12: f64,
    #[serde(rename = "I14")]
    pub i14: f64,
}

impl InvariantVector {
    pub const NAMES: [&'static str; 9] = ["I1", "I2", "I3", "I4", "I5", "I7", "I8", "I12", "I14"];

    pub fn to_array(&self) -> [f64; 9] {
        [self.i1, self.i2, self.i3, self.i4, self.i5, self.i7, self.i8, self.i12, self.i14]
    }

    pub fn is_finite(&self) -> bool {
        self.to_array().iter().all(|x| x.is_finite())
    }
}

/// Levi-Civita symbol on indices 0..3.
pub fn levi_civita(i: usize, j: usize, k: usize) -> i32 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

const PERMUTATIONS: [([usize; 3], f64); 6] = [
    ([0, 1, 2], 1.0),
    ([1, 2, 0], 1.0),
    ([2, 0, 1], 1.0),
    ([0, 2, 1], -1.0),
    ([2, 1, 0], -1.0),
    ([1, 0, 2], -1.0),
];

/// `e_ijk e_lmn s_i p_l β_jm β_kn`, summed over the 36 pairs of
/// permutations where both symbols are nonzero.
pub fn double_levi_civita_contraction(s: &[f64; 3], p: &[f64; 3], beta: &[[f64; 3]; 3]) -> f64 {
    let mut acc = 0.0;
    for ([i, j, k], e1) in PERMUTATIONS {
        for ([l, m, n], e2) in PERMUTATIONS {
            acc += e1 * e2 * s[i] * p[l] * beta[j][m] * beta[k][n];
        }
    }
    acc
}

fn det3(b: &[[f64; 3]; 3]) -> f64 {
    b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0])
}

pub fn compute_invariants(c: &MakhlinCoordinates) -> InvariantVector {
    let b = &c.beta;
    let (s, p) = (&c.s, &c.p);

    // βᵀβ
    let mut btb = [[0.0; 3]; 3];
    for (i, row) in btb.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = (0..3).map(|k| b[k][i] * b[k][j]).sum();
        }
    }
    let i2: f64 = (0..3).map(|i| btb[i][i]).sum();
    let i3: f64 = (0..3).flat_map(|i| (0..3).map(move |j| (i, j))).map(|(i, j)| btb[i][j] * btb[j][i]).sum();

    // s as a row vector acting from the left, p as a column acted on by β̂.
    let s_beta: [f64; 3] = std::array::from_fn(|l| (0..3).map(|k| s[k] * b[k][l]).sum());
    let beta_p: [f64; 3] = std::array::from_fn(|k| (0..3).map(|l| b[k][l] * p[l]).sum());
    let dot = |u: &[f64; 3], v: &[f64; 3]| u.iter().zip(v).map(|(a, b)| a * b).sum::<f64>();

    InvariantVector {
        i1: det3(b),
        i2,
        i3,
        i4: dot(s, s),
        i5: dot(&s_beta, &s_beta),
        i7: dot(p, p),
        i8: dot(&beta_p, &beta_p),
        i12: dot(&s_beta, p),
        i14: double_levi_civita_contraction(s, p, b),
    }
}

/// det ρ^Γ as a polynomial in the nine invariants.
pub fn det_pt_via_invariants(v: &InvariantVector) -> f64 {
    let InvariantVector {
        i1,
        i2,
        i3,
        i4,
        i5,
        i7,
        i8,
        i12,
        i14,
    } = *v;
    1.0 / 256.0 - (4.0 * i2 + i4 + i7) / 32.0
        + (4.0 * i1 + i12) / 2.0
        + (32.0 * i3 - 16.0 * i5 - 16.0 * i8 - 16.0 * i14 - 16.0 * i2 * i2 + i4 * i4 + i7 * i7 + 8.0 * i2 * i4
            + 8.0 * i2 * i7
            - 2.0 * i4 * i7)
            / 16.0
}

/// det ρ^Γ by cofactor expansion of the partially transposed matrix.
pub fn det_pt_direct(rho: &DensityMatrix) -> f64 {
    // The imaginary part is rounding residue of a hermitian determinant.
    determinant(&rho.partial_transpose()).re
}
