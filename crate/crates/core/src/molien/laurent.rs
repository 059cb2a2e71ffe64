use std::collections::BTreeMap;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Laurent polynomial in `nvars` torus variables with big-integer
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, BigInt>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], 1)
    }

    pub fn monomial(exps: Vec<i32>, c: impl Into<BigInt>) -> Self {
        let nvars = exps.len();
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { nvars, terms }
    }

    /// `1 − x^exps`.
    pub fn one_minus(exps: Vec<i32>) -> Self {
        let nvars = exps.len();
        &Self::one(nvars) - &Self::monomial(exps, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Coefficient of the all-zero exponent.
    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.nvars])
    }

    /// Constant term of `self · other` without forming the product.
    pub fn constant_term_of_product(&self, other: &Self) -> BigInt {
        assert_eq!(self.nvars, other.nvars, "variable counts differ");
        let mut acc = BigInt::zero();
        let mut neg = vec![0i32; self.nvars];
        for (e, c) in &self.terms {
            for (slot, &x) in neg.iter_mut().zip(e) {
                *slot = -x;
            }
            if let Some(d) = other.terms.get(&neg) {
                acc += c * d;
            }
        }
        acc
    }

    /// Substitutes `x_i → x_i⁻¹` for every variable.
    pub fn invert_variables(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Divides every coefficient by `k`; `None` if any division is inexact.
    pub fn exact_div_scalar(&self, k: &BigInt) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(k);
            if !r.is_zero() {
                return None;
            }
            terms.insert(e.clone(), q);
        }
        Some(Self {
            nvars: self.nvars,
            terms,
        })
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            *out.terms.entry(e.clone()).or_insert_with(BigInt::zero) += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            *out.terms.entry(e.clone()).or_insert_with(BigInt::zero) -= c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        let mut terms: BTreeMap<Vec<i32>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<i32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        LaurentPoly {
            nvars: self.nvars,
            terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_term_of_symmetric_product() {
        // (x + x⁻¹)² = x² + 2 + x⁻²
        let f = &LaurentPoly::monomial(vec![1], 1) + &LaurentPoly::monomial(vec![-1], 1);
        let sq = &f * &f;
        assert_eq!(sq.constant_term(), BigInt::from(2));
        assert_eq!(f.constant_term_of_product(&f), BigInt::from(2));
        assert_eq!(sq.invert_variables(), sq);
    }

    #[test]
    fn subtraction_cancels() {
        let f = LaurentPoly::one_minus(vec![-1, 2]);
        assert!((&f - &f).is_zero());
        assert_eq!(f.coeff(&[-1, 2]), BigInt::from(-1));
        assert_eq!(f.num_terms(), 2);
    }

    #[test]
    fn scalar_division() {
        let f = LaurentPoly::monomial(vec![3], 6);
        assert_eq!(f.exact_div_scalar(&BigInt::from(3)).unwrap().coeff(&[3]), BigInt::from(2));
        assert!(f.exact_div_scalar(&BigInt::from(4)).is_none());
    }
}
