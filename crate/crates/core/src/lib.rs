//! Local-unitary invariants and separability geometry of two-qubit mixed
//! states, with exact Poincaré-series machinery for the invariant algebra.

pub mod geometry;
pub mod invariants;
pub mod molien;
pub mod qstate;
pub mod series;
pub mod verify;
