//! Reproducible random states and local unitaries.
//!
//! Every draw comes from a ChaCha20 generator keyed by a 32-byte seed made
//! of the user seed (little-endian u64), a domain tag (little-endian u64)
//! and 16 zero bytes; the ChaCha stream id is the sample index. Sample `i`
//! of a run is therefore independent of how many samples precede it and of
//! how the work is split across threads.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::matrix::{kron_vec, vector_norm, ComplexMatrix};
use super::DensityMatrix;

const DOMAIN_STATES: u64 = 0x5354_4154_4553; // "STATES"
const DOMAIN_LOCAL_UNITARY: u64 = 0x4c4f_4341_4c55; // "LOCALU"
const DOMAIN_UNITARY: u64 = 0x554e_4954_4152; // "UNITAR"
const DOMAIN_PRODUCT_VECTOR: u64 = 0x5052_4f44_5643; // "PRODVC"

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SampleError {
    #[error("invalid ensemble: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum EnsembleKind {
    /// `AA†/tr(AA†)` with `A` a 4×4 complex Ginibre matrix.
    HilbertSchmidt,
    /// Projector onto a normalized complex Gaussian vector.
    Pure,
    /// `|e⟩⟨e| ⊗ |f⟩⟨f|`.
    ProductPure,
    /// Dirichlet(1, …, 1) mixture of `terms` product-pure states.
    SeparableMixture { terms: usize },
    /// `AA†/tr(AA†)` with `A` a 4×`rank` complex Ginibre matrix.
    RankDeficient { rank: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn new(kind: EnsembleKind, seed: u64) -> Self {
        Self { kind, seed }
    }

    fn check(&self) -> Result<(), SampleError> {
        match self.kind {
            EnsembleKind::SeparableMixture { terms: 0 } => {
                Err(SampleError::InvalidSpec("separable mixture needs at least one term".into()))
            }
            EnsembleKind::RankDeficient { rank } if rank == 0 || rank > 4 => {
                Err(SampleError::InvalidSpec(format!("rank must be in 1..=4, got {rank}")))
            }
            _ => Ok(()),
        }
    }
}

/// Generator for draw `index` of `seed` within a domain.
pub fn stream_rng(seed: u64, domain: u64, index: u64) -> ChaCha20Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&domain.to_le_bytes());
    let mut rng = ChaCha20Rng::from_seed(key);
    rng.set_stream(index);
    rng
}

fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = StandardNormal.sample(rng);
    let im: f64 = StandardNormal.sample(rng);
    Complex64::new(re, im)
}

fn gaussian_unit_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..dim).map(|_| gaussian_complex(rng)).collect();
        let norm = vector_norm(&v);
        if norm > 0.0 {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// `AA†/tr(AA†)` for a 4×cols Ginibre matrix.
fn ginibre_state<R: Rng + ?Sized>(rng: &mut R, cols: usize) -> ComplexMatrix {
    let a: Vec<Vec<Complex64>> = (0..4).map(|_| (0..cols).map(|_| gaussian_complex(rng)).collect()).collect();
    let aat = ComplexMatrix::from_fn(4, |i, j| a[i].iter().zip(&a[j]).map(|(x, y)| x * y.conj()).sum());
    let tr = aat.trace().re;
    aat.scale(1.0 / tr).hermitian_part()
}

fn product_pure<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let e = gaussian_unit_vector(rng, 2);
    let f = gaussian_unit_vector(rng, 2);
    let v = kron_vec(&e, &f);
    ComplexMatrix::outer(&v, &v).hermitian_part()
}

/// Draw number `index` of the ensemble.
pub fn sample_one(spec: &EnsembleSpec, index: u64) -> Result<DensityMatrix, SampleError> {
    spec.check()?;
    let mut rng = stream_rng(spec.seed, DOMAIN_STATES, index);
    let m = match spec.kind {
        EnsembleKind::HilbertSchmidt => ginibre_state(&mut rng, 4),
        EnsembleKind::RankDeficient { rank } => ginibre_state(&mut rng, rank),
        EnsembleKind::Pure => {
            let v = gaussian_unit_vector(&mut rng, 4);
            ComplexMatrix::outer(&v, &v).hermitian_part()
        }
        EnsembleKind::ProductPure => product_pure(&mut rng),
        EnsembleKind::SeparableMixture { terms } => {
            let weights: Vec<f64> = (0..terms).map(|_| Exp1.sample(&mut rng)).collect();
            let total: f64 = weights.iter().sum();
            let mut acc = ComplexMatrix::zeros(4);
            for w in weights {
                acc = &acc + &product_pure(&mut rng).scale(w / total);
            }
            acc.hermitian_part()
        }
    };
    Ok(normalize_trace(m))
}

/// Draws `count` states, indices `0..count`.
pub fn sample(spec: &EnsembleSpec, count: usize) -> Result<Vec<DensityMatrix>, SampleError> {
    if count == 0 {
        return Err(SampleError::InvalidSpec("count must be at least 1".into()));
    }
    (0..count as u64).map(|i| sample_one(spec, i)).collect()
}

fn normalize_trace(m: ComplexMatrix) -> DensityMatrix {
    // Rounding in the convex sums can leave |tr − 1| at a few ulps.
    let tr = m.trace().re;
    DensityMatrix(m.scale(1.0 / tr))
}

/// An element `(U, V)` of SU(2)×SU(2), acting as `U⊗V`.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalUnitary {
    pub first: ComplexMatrix,
    pub second: ComplexMatrix,
}

impl LocalUnitary {
    pub fn identity() -> Self {
        Self {
            first: ComplexMatrix::identity(2),
            second: ComplexMatrix::identity(2),
        }
    }

    pub fn tensor(&self) -> ComplexMatrix {
        self.first.kron(&self.second)
    }
}

/// Haar-random element of SU(2): a uniformly distributed unit quaternion
/// `(a, b)` arranged as `[[a, −b̄], [b, ā]]`.
pub fn haar_su2<R: Rng + ?Sized>(rng: &mut R) -> ComplexMatrix {
    let q = gaussian_unit_vector(rng, 2);
    let (a, b) = (q[0], q[1]);
    ComplexMatrix::from_row_major(2, vec![a, -b.conj(), b, a.conj()])
}

/// Haar-random local unitary number `index` for `seed`.
pub fn sample_local_unitary(seed: u64, index: u64) -> LocalUnitary {
    let mut rng = stream_rng(seed, DOMAIN_LOCAL_UNITARY, index);
    LocalUnitary {
        first: haar_su2(&mut rng),
        second: haar_su2(&mut rng),
    }
}

/// Haar-random element of U(n): Gram–Schmidt on the columns of a Ginibre
/// matrix, which leaves R with a positive diagonal.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<Complex64> = (0..n).map(|_| gaussian_complex(rng)).collect();
        for _ in 0..2 {
            for q in &cols {
                let overlap: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, y) in v.iter_mut().zip(q) {
                    *x -= overlap * y;
                }
            }
        }
        let norm = vector_norm(&v);
        if norm > 1e-8 {
            cols.push(v.into_iter().map(|z| z / norm).collect());
        }
    }
    ComplexMatrix::from_fn(n, |i, j| cols[j][i])
}

/// Haar-random n×n unitary number `index` for `seed`.
pub fn sample_unitary(seed: u64, index: u64, n: usize) -> ComplexMatrix {
    haar_unitary(&mut stream_rng(seed, DOMAIN_UNITARY, index), n)
}

/// Haar-random unit vectors `(e, f)` in C² × C², number `index` for `seed`.
pub fn sample_product_factors(seed: u64, index: u64) -> ([Complex64; 2], [Complex64; 2]) {
    let mut rng = stream_rng(seed, DOMAIN_PRODUCT_VECTOR, index);
    let e = gaussian_unit_vector(&mut rng, 2);
    let f = gaussian_unit_vector(&mut rng, 2);
    ([e[0], e[1]], [f[0], f[1]])
}

/// Haar-random unit vector in Cⁿ drawn from `rng`.
pub fn haar_unit_vector<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    gaussian_unit_vector(rng, n)
}

/// `(U⊗V) ρ (U⊗V)†`.
pub fn apply_local_unitary(rho: &DensityMatrix, g: &LocalUnitary) -> DensityMatrix {
    let w = g.tensor();
    let out = &(&w * rho.matrix()) * &w.adjoint();
    DensityMatrix(out.hermitian_part())
}
