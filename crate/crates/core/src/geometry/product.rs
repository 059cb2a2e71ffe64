use num_complex::Complex64;
use serde::Serialize;

use super::GeometryError;
use crate::qstate::{kron_vec, partial_transpose, vector_norm, ComplexMatrix};

/// Below this every coefficient of the binary quadratic counts as zero.
const DEGENERATE_TOL: f64 = 1e-12;

/// `M[i][j] = v[2i + j]`, so `v = e ⊗ f` iff `M = e fᵀ`.
pub fn matricize(v: &[Complex64; 4]) -> [[Complex64; 2]; 2] {
    [[v[0], v[1]], [v[2], v[3]]]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProductFactor {
    /// `(α, β)` with `α·v₁ + β·v₂ ≈ e ⊗ f`.
    pub coefficients: [Complex64; 2],
    pub e: [Complex64; 2],
    pub f: [Complex64; 2],
    pub residual: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelProductVector {
    pub primary: ProductFactor,
    /// The other root of the quadratic, when distinct from the first.
    pub secondary: Option<ProductFactor>,
    /// The quadratic vanishes identically: the whole span consists of product
    /// vectors and `primary` factors `v₁`.
    pub degenerate: bool,
}

fn det2(m: &[[Complex64; 2]; 2]) -> Complex64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

/// Rank-one factorization `w/‖·‖ = e ⊗ f` from the dominant column of the
/// matricization.
fn factor(v1: &[Complex64; 4], v2: &[Complex64; 4], alpha: Complex64, beta: Complex64) -> ProductFactor {
    let w: [Complex64; 4] = std::array::from_fn(|k| alpha * v1[k] + beta * v2[k]);
    let m = matricize(&w);
    let col_norm = |j: usize| (m[0][j].norm_sqr() + m[1][j].norm_sqr()).sqrt();
    let j = if col_norm(0) >= col_norm(1) { 0 } else { 1 };
    let cn = col_norm(j);
    let e = [m[0][j] / cn, m[1][j] / cn];
    // f = e†M
    let f_raw: [Complex64; 2] = std::array::from_fn(|c| e[0].conj() * m[0][c] + e[1].conj() * m[1][c]);
    let fnorm = (f_raw[0].norm_sqr() + f_raw[1].norm_sqr()).sqrt();
    let f = [f_raw[0] / fnorm, f_raw[1] / fnorm];
    let w_unit: Vec<Complex64> = w.iter().map(|z| z / fnorm).collect();
    let ef = kron_vec(&e, &f);
    let diff: Vec<Complex64> = w_unit.iter().zip(&ef).map(|(a, b)| a - b).collect();
    ProductFactor {
        coefficients: [alpha / fnorm, beta / fnorm],
        e,
        f,
        residual: vector_norm(&diff),
    }
}

/// A product vector in `span{v₁, v₂}`, found from the roots of the binary
/// quadratic `det(α·M₁ + β·M₂) = a·α² + b·αβ + c·β²`.
pub fn kernel_product_vector(v1: &[Complex64; 4], v2: &[Complex64; 4]) -> Result<KernelProductVector, GeometryError> {
    let (n1, n2) = (vector_norm(v1), vector_norm(v2));
    if !(n1.is_finite() && n2.is_finite()) || n1 == 0.0 || n2 == 0.0 {
        return Err(GeometryError::InvalidInput("basis vectors must be finite and nonzero".into()));
    }
    let overlap: Complex64 = v1.iter().zip(v2).map(|(x, y)| x.conj() * y).sum();
    if (overlap.norm() / (n1 * n2)) > 1.0 - 1e-12 {
        return Err(GeometryError::InvalidInput("basis vectors are linearly dependent".into()));
    }
    let m1 = matricize(v1);
    let m2 = matricize(v2);
    let a = det2(&m1);
    let c = det2(&m2);
    let b = m1[0][0] * m2[1][1] + m2[0][0] * m1[1][1] - m1[0][1] * m2[1][0] - m2[0][1] * m1[1][0];

    let scale = (n1 * n2).max(n1 * n1).max(n2 * n2);
    if a.norm().max(b.norm()).max(c.norm()) <= DEGENERATE_TOL * scale {
        let one = Complex64::new(1.0, 0.0);
        return Ok(KernelProductVector {
            primary: factor(v1, v2, one, Complex64::new(0.0, 0.0)),
            secondary: None,
            degenerate: true,
        });
    }

    // Homogeneous roots (q : a) and (c : q), with q the larger-magnitude root of x² + b·x + a·c.
    let sqrt_disc = (b * b - 4.0 * a * c).sqrt();
    let sign = if (b.conj() * sqrt_disc).re >= 0.0 { 1.0 } else { -1.0 };
    let q = -(b + sqrt_disc * sign) / 2.0;
    let roots = [(q, a), (c, q)];
    let norms = roots.map(|(x, y)| (x.norm_sqr() + y.norm_sqr()).sqrt());
    let (first, second) = if norms[0] >= norms[1] { (0, 1) } else { (1, 0) };
    let normalize = |k: usize| (roots[k].0 / norms[k], roots[k].1 / norms[k]);

    let (alpha, beta) = normalize(first);
    let primary = factor(v1, v2, alpha, beta);
    let secondary = if norms[second] > DEGENERATE_TOL * norms[first] {
        let (alpha2, beta2) = normalize(second);
        // A double root reproduces the first direction.
        let same = (alpha * beta2 - beta * alpha2).norm() < 1e-8;
        (!same).then(|| factor(v1, v2, alpha2, beta2))
    } else {
        None
    };
    Ok(KernelProductVector {
        primary,
        secondary,
        degenerate: false,
    })
}

/// `|⟨e,f|ρ^Γ|e,f⟩ − ⟨e,f̄|ρ|e,f̄⟩|` with `f̄` the componentwise conjugate.
pub fn proof_identity_deviation(rho: &ComplexMatrix, e: &[Complex64; 2], f: &[Complex64; 2]) -> f64 {
    let ef = kron_vec(e, f);
    let f_bar = [f[0].conj(), f[1].conj()];
    let ef_bar = kron_vec(e, &f_bar);
    let lhs = partial_transpose(rho).expectation(&ef);
    let rhs = rho.expectation(&ef_bar);
    (lhs - rhs).norm()
}
