//! Invariant dimensions per multidegree from the torus constant-term form of
//! the Molien–Weyl integral, with a Lie-algebra kernel oracle and a cross
//! check against the stored trigraded Poincaré series.

mod laurent;
mod lie;
mod weights;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use laurent::LaurentPoly;
pub use lie::{invariant_dimension_lie, polynomial_space_dimension, DEFAULT_LIE_CAP};
pub use weights::{
    complete_homogeneous, invariant_dimension, printed_integrand_weight_system, trivial_weight_system,
    two_qubit_weight_system, MolienTables, WeightSystem,
};

use crate::series::{compositions, expand_poincare, Grading};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MolienError {
    #[error("expected {expected} degrees (one per graded slot), got {found}")]
    DegreeCountMismatch { expected: usize, found: usize },
    #[error("slot {slot}: degree {degree} exceeds precomputed maximum {max}")]
    DegreeBeyondTable { slot: usize, degree: u32, max: u32 },
    #[error("constant term {value} at multidegree {degrees:?} is negative; weight system is malformed")]
    NegativeMultiplicity { degrees: Vec<u32>, value: i64 },
    #[error("polynomial space has {size} monomials, above the cap of {cap}")]
    TooLarge { size: usize, cap: usize },
    #[error("multidegree {degrees:?}: constant term {molien}, series {series}, Lie kernel {lie:?}")]
    Mismatch {
        degrees: [u32; 3],
        molien: BigUint,
        series: BigInt,
        lie: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossCheckOptions {
    pub max_total_degree: u32,
    /// The Lie oracle runs on multidegrees up to this total degree ...
    pub lie_max_total_degree: u32,
    /// ... whose polynomial space has at most this many monomials.
    pub lie_cap: usize,
}

impl CrossCheckOptions {
    pub fn new(max_total_degree: u32) -> Self {
        Self {
            max_total_degree,
            lie_max_total_degree: max_total_degree.min(4),
            lie_cap: DEFAULT_LIE_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckEntry {
    pub degrees: [u32; 3],
    #[serde(serialize_with = "decimal")]
    pub molien: BigUint,
    #[serde(serialize_with = "decimal")]
    pub series: BigInt,
    pub lie: Option<usize>,
}

impl CrossCheckEntry {
    pub fn agrees(&self) -> bool {
        let molien = BigInt::from(self.molien.clone());
        molien == self.series && self.lie.is_none_or(|l| BigInt::from(l) == molien)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossCheckReport {
    /// Lexicographic in the multidegree.
    pub entries: Vec<CrossCheckEntry>,
}

impl CrossCheckReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CrossCheckEntry> {
        self.entries.iter().filter(|e| !e.agrees())
    }

    pub fn lie_checked(&self) -> usize {
        self.entries.iter().filter(|e| e.lie.is_some()).count()
    }

    /// Sum of the constant-term dimensions of each total degree.
    pub fn degree_sums(&self) -> Vec<BigUint> {
        let max = self.entries.iter().map(|e| e.degrees.iter().sum::<u32>()).max().unwrap_or(0);
        let mut sums = vec![BigUint::default(); max as usize + 1];
        for e in &self.entries {
            sums[e.degrees.iter().sum::<u32>() as usize] += &e.molien;
        }
        sums
    }

    /// `Err(Mismatch)` for the first disagreeing multidegree.
    pub fn into_result(self) -> Result<Self, MolienError> {
        if let Some(e) = self.mismatches().next() {
            return Err(MolienError::Mismatch {
                degrees: e.degrees,
                molien: e.molien.clone(),
                series: e.series.clone(),
                lie: e.lie,
            });
        }
        Ok(self)
    }
}

fn decimal<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// All multidegrees of total degree at most `max`, in lexicographic order.
pub fn multidegrees(max: u32) -> Vec<[u32; 3]> {
    let mut out: Vec<[u32; 3]> = (0..=max)
        .flat_map(|d| compositions(3, d))
        .map(|e| [e[0], e[1], e[2]])
        .collect();
    out.sort();
    out
}

/// Compares the constant-term dimension, the stored series coefficient and
/// (where enabled) the Lie-kernel dimension for every multidegree.
pub fn cross_check(opts: &CrossCheckOptions) -> Result<CrossCheckReport, MolienError> {
    let max = opts.max_total_degree;
    let ws = two_qubit_weight_system();
    let tables = MolienTables::new(&ws, &[max, max, max]);
    let series = expand_poincare(Grading::Triple, max);
    let entries = multidegrees(max)
        .into_par_iter()
        .map(|d| {
            let molien = tables.dimension(&d)?;
            let lie = if d.iter().sum::<u32>() <= opts.lie_max_total_degree
                && polynomial_space_dimension(d) <= opts.lie_cap
            {
                Some(invariant_dimension_lie(d, opts.lie_cap)?)
            } else {
                None
            };
            Ok(CrossCheckEntry {
                degrees: d,
                molien,
                series: series.coeff(&d).clone(),
                lie,
            })
        })
        .collect::<Result<Vec<_>, MolienError>>()?;
    Ok(CrossCheckReport { entries })
}
