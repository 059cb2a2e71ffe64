//! Exact integer polynomials and truncated power-series expansion of the
//! single-graded and trigraded Poincaré series of the invariant algebra.

mod builtin;
mod poly;
mod table;

use thiserror::Error;

pub use builtin::{builtin_series, diagonal_common_factor, BuiltinSeries};
pub use poly::{Exponents, FactoredPoly, IntPoly};
pub use table::{compositions, expand_rational, SeriesTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("polynomial division leaves a nonzero remainder")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("denominator has zero constant term; no power-series expansion exists")]
    ZeroConstantTerm,
    #[error("series coefficient is not an integer (denominator constant term must divide it)")]
    NotIntegral,
    #[error("numerator and denominator have different variable counts ({num} vs {den})")]
    VariableMismatch { num: usize, den: usize },
}

/// Which stored Poincaré series to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grading {
    /// Graded by total degree, one variable `z`.
    Single,
    /// Graded separately by degree in `s`, `p` and `β̂`.
    Triple,
}

impl Grading {
    pub fn from_count(n: u32) -> Option<Self> {
        match n {
            1 => Some(Grading::Single),
            3 => Some(Grading::Triple),
            _ => None,
        }
    }
}

/// Expands the stored Poincaré series with the requested grading.
pub fn expand_poincare(grading: Grading, max_total_degree: u32) -> SeriesTable {
    let b = builtin_series();
    let (num, den) = match grading {
        Grading::Single => (b.p1_num, b.p1_den.expand()),
        Grading::Triple => (b.p3_num, b.p3_den.expand()),
    };
    expand_rational(&num, &den, max_total_degree).expect("stored denominators have constant term 1")
}
