use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SeriesError;

pub type Exponents = Vec<u32>;

/// Sparse polynomial with arbitrary-precision integer coefficients.
///
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPoly {
    nvars: usize,
    terms: BTreeMap<Exponents, BigInt>,
}

impl IntPoly {
    pub fn zero(nvars: usize) -> Self {
        assert!(nvars >= 1, "a polynomial needs at least one variable");
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nvars, vec![0; nvars], c)
    }

    pub fn monomial(nvars: usize, exps: Exponents, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(exps, c.into());
        p
    }

    /// The variable `t_{index}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Self::monomial(nvars, e, 1)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(nvars: usize, terms: impl IntoIterator<Item = (Exponents, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Univariate polynomial from ascending coefficients.
    pub fn univariate(coeffs: &[i64]) -> Self {
        Self::from_terms(1, coeffs.iter().enumerate().map(|(k, &c)| (vec![k as u32], c)))
    }

    /// `1 − t^exps`, the building block of Poincaré denominators.
    pub fn one_minus_monomial(nvars: usize, exps: Exponents) -> Self {
        &Self::one(nvars) - &Self::monomial(nvars, exps, 1)
    }

    fn add_term(&mut self, exps: Exponents, c: BigInt) {
        assert_eq!(exps.len(), self.nvars, "exponent tuple length must equal the variable count");
        if c.is_zero() {
            return;
        }
        let sum = self.terms.remove(&exps).unwrap_or_else(BigInt::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(exps, sum);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exps: &[u32]) -> BigInt {
        self.terms.get(exps).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `t_1 = … = t_n = z`.
    pub fn substitute_diagonal(&self) -> Self {
        Self::from_terms(1, self.terms.iter().map(|(e, c)| (vec![e.iter().sum()], c.clone())))
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        Self::from_terms(
            self.nvars,
            self.terms.iter().map(|(e, c)| {
                let mut e = e.clone();
                e.swap(a, b);
                (e, c.clone())
            }),
        )
    }

    /// Leading term under graded lexicographic order.
    fn leading(&self) -> Option<(&Exponents, &BigInt)> {
        self.terms.iter().max_by(|(a, _), (b, _)| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        })
    }

    /// Returns `q` with `self = divisor · q`, or `NotDivisible`.
    pub fn exact_divide(&self, divisor: &IntPoly) -> Result<IntPoly, SeriesError> {
        assert_eq!(self.nvars, divisor.nvars, "variable counts differ");
        let (lead_exp, lead_coeff) = match divisor.leading() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => return Err(SeriesError::DivisionByZero),
        };
        let mut rem = self.clone();
        let mut quotient = IntPoly::zero(self.nvars);
        while let Some((e, c)) = rem.leading() {
            let shift: Option<Exponents> = e.iter().zip(&lead_exp).map(|(a, b)| a.checked_sub(*b)).collect();
            let (q, r) = c.div_rem(&lead_coeff);
            let shift = match shift {
                Some(s) if r.is_zero() => s,
                _ => return Err(SeriesError::NotDivisible),
            };
            let step = IntPoly::monomial(self.nvars, shift, q);
            rem = &rem - &(divisor * &step);
            quotient = &quotient + &step;
        }
        Ok(quotient)
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        self + &(-rhs)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        IntPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: &IntPoly) -> IntPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable counts differ");
        let mut terms: BTreeMap<Exponents, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        IntPoly { nvars: self.nvars, terms }
    }
}

impl fmt::Display for IntPoly {
    /// Graded order, lowest degree first: `1 - t1*t3^2 + ...`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut keys: Vec<&Exponents> = self.terms.keys().collect();
        keys.sort_by(|a, b| a.iter().sum::<u32>().cmp(&b.iter().sum::<u32>()).then_with(|| b.cmp(a)));
        for (idx, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    let name = if self.nvars == 1 { "z".to_string() } else { format!("t{}", i + 1) };
                    if k == 1 {
                        name
                    } else {
                        format!("{name}^{k}")
                    }
                })
                .collect();
            let sign = if c.is_negative() { "-" } else { "+" };
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly[{}]({self})", self.nvars)
    }
}

/// A product of integer polynomials with multiplicities, expanded on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    nvars: usize,
    factors: Vec<(IntPoly, u32)>,
}

impl FactoredPoly {
    pub fn new(nvars: usize, factors: Vec<(IntPoly, u32)>) -> Self {
        assert!(factors.iter().all(|(p, _)| p.nvars() == nvars), "factor variable counts differ");
        Self { nvars, factors }
    }

    pub fn factors(&self) -> &[(IntPoly, u32)] {
        &self.factors
    }

    /// Number of factors counted with multiplicity.
    pub fn factor_count(&self) -> u32 {
        self.factors.iter().map(|(_, m)| m).sum()
    }

    pub fn expand(&self) -> IntPoly {
        self.factors
            .iter()
            .fold(IntPoly::one(self.nvars), |acc, (p, m)| &acc * &p.pow(*m))
    }

    /// Applies `t_i = z` to every factor.
    pub fn substitute_diagonal(&self) -> FactoredPoly {
        FactoredPoly {
            nvars: 1,
            factors: self.factors.iter().map(|(p, m)| (p.substitute_diagonal(), *m)).collect(),
        }
    }
}
