//! Chart, spectral and local-unitary properties over sampled states.

use num_complex::Complex64;
use proptest::prelude::*;

use twoqubit::invariants::{compute_invariants, det_pt_direct, det_pt_via_invariants};
use twoqubit::qstate::{
    apply_local_unitary, bloch_compose, bloch_decompose, eigensystem, partial_transpose, sample_local_unitary,
    sample_one, validate_state, ComplexMatrix, DensityMatrix, EnsembleKind, EnsembleSpec, MakhlinCoordinates,
    DEFAULT_ZERO_TOL,
};

const ENSEMBLES: [EnsembleKind; 5] = [
    EnsembleKind::HilbertSchmidt,
    EnsembleKind::Pure,
    EnsembleKind::ProductPure,
    EnsembleKind::SeparableMixture { terms: 3 },
    EnsembleKind::RankDeficient { rank: 2 },
];

fn state(kind: EnsembleKind, seed: u64, index: u64) -> DensityMatrix {
    sample_one(&EnsembleSpec::new(kind, seed), index).unwrap()
}

fn arb_state() -> impl Strategy<Value = DensityMatrix> {
    (0..ENSEMBLES.len(), any::<u64>(), 0u64..1 << 20).prop_map(|(k, seed, i)| state(ENSEMBLES[k], seed, i))
}

fn arb_coords() -> impl Strategy<Value = MakhlinCoordinates> {
    (
        prop::array::uniform3(-1.0f64..1.0),
        prop::array::uniform3(-1.0f64..1.0),
        prop::array::uniform3(prop::array::uniform3(-1.0f64..1.0)),
    )
        .prop_map(|(s, p, beta)| MakhlinCoordinates { s, p, beta })
}

/// Squared singular values of β̂, ascending.
fn squared_singular_values(beta: &[[f64; 3]; 3]) -> Vec<f64> {
    let gram = ComplexMatrix::from_fn(3, |i, j| {
        Complex64::new((0..3).map(|k| beta[k][i] * beta[k][j]).sum(), 0.0)
    });
    eigensystem(&gram, DEFAULT_ZERO_TOL)
        .unwrap()
        .eigenvalues
}

fn norm3(v: &[f64; 3]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

#[test]
fn chart_round_trips_on_a_thousand_states() {
    for i in 0..1000 {
        let rho = state(ENSEMBLES[i % 5], 11, i as u64);
        let c = bloch_decompose(&rho);
        let back = bloch_compose(&c);
        assert!(back.max_abs_diff(rho.matrix()) <= 1e-12, "sample {i}");
    }
}

#[test]
fn eigensystem_bounds_on_a_thousand_hilbert_schmidt_states() {
    for i in 0..1000 {
        let rho = state(EnsembleKind::HilbertSchmidt, 12, i);
        let sd = rho.spectrum(DEFAULT_ZERO_TOL).unwrap();
        assert!(sd.reconstruct().max_abs_diff(rho.matrix()) <= 1e-10);
        assert!(sd.orthonormality_defect() <= 1e-10);
        assert!(sd.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }
}

proptest! {
    #[test]
    fn coordinates_round_trip(c in arb_coords()) {
        let rho = validate_state(bloch_compose(&c), false).unwrap();
        prop_assert!(bloch_decompose(&rho).max_abs_diff(&c) <= 1e-12);
    }

    #[test]
    fn partial_transpose_is_a_trace_preserving_involution(rho in arb_state(), w in -2.0f64..2.0) {
        let m = rho.matrix();
        prop_assert_eq!(&partial_transpose(&partial_transpose(m)), m);
        prop_assert!((partial_transpose(m).trace() - m.trace()).norm() <= 1e-15);
        let other = ComplexMatrix::identity(4);
        let combo = m + &other.scale(w);
        let lhs = partial_transpose(&combo);
        let rhs = &partial_transpose(m) + &partial_transpose(&other).scale(w);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-15);
    }

    #[test]
    fn local_unitaries_preserve_invariants(rho in arb_state(), seed in any::<u64>(), idx in 0u64..1000) {
        let g = sample_local_unitary(seed, idx);
        let moved = apply_local_unitary(&rho, &g);
        prop_assert!((moved.trace() - 1.0).abs() <= 1e-12);
        let a = compute_invariants(&bloch_decompose(&rho)).to_array();
        let b = compute_invariants(&bloch_decompose(&moved)).to_array();
        for (x, y) in a.iter().zip(&b) {
            let bound = if x.abs() < 1e-6 { 1e-12 } else { 1e-10 * x.abs() };
            prop_assert!((x - y).abs() <= bound, "{x} vs {y}");
        }
        let ea = rho.spectrum(DEFAULT_ZERO_TOL).unwrap().eigenvalues;
        let eb = moved.spectrum(DEFAULT_ZERO_TOL).unwrap().eigenvalues;
        for (x, y) in ea.iter().zip(&eb) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn local_unitaries_rotate_coordinates(rho in arb_state(), seed in any::<u64>(), idx in 0u64..1000) {
        let moved = apply_local_unitary(&rho, &sample_local_unitary(seed, idx));
        let (c, d) = (bloch_decompose(&rho), bloch_decompose(&moved));
        prop_assert!((norm3(&c.s) - norm3(&d.s)).abs() <= 1e-10);
        prop_assert!((norm3(&c.p) - norm3(&d.p)).abs() <= 1e-10);
        for (x, y) in squared_singular_values(&c.beta).iter().zip(squared_singular_values(&d.beta)) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    #[test]
    fn det_formula_on_every_ensemble(rho in arb_state()) {
        let v = compute_invariants(&bloch_decompose(&rho));
        prop_assert!((det_pt_direct(&rho) - det_pt_via_invariants(&v)).abs() <= 1e-12);
    }

    #[test]
    fn identical_specs_give_identical_streams(k in 0..ENSEMBLES.len(), seed in any::<u64>(), i in any::<u64>()) {
        prop_assert_eq!(state(ENSEMBLES[k], seed, i), state(ENSEMBLES[k], seed, i));
    }
}
