use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::poly::{Exponents, IntPoly};
use super::SeriesError;

/// All exponent tuples of `nvars` entries summing to `degree`, in
/// lexicographic order.
pub fn compositions(nvars: usize, degree: u32) -> Vec<Exponents> {
    fn rec(prefix: &mut Exponents, left: usize, remaining: u32, out: &mut Vec<Exponents>) {
        if left == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in 0..=remaining {
            prefix.push(first);
            rec(prefix, left - 1, remaining - first, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(nvars), nvars, degree, &mut out);
    out
}

/// `C(n, k)` for small arguments.
fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of compositions of `degree` into `nvars` nonnegative parts.
fn composition_count(nvars: usize, degree: u32) -> u64 {
    binomial(degree as u64 + nvars as u64 - 1, nvars as u64 - 1)
}

/// Position of `exps` in [`compositions`]`(exps.len(), Σexps)`.
fn composition_rank(exps: &[u32]) -> usize {
    let mut remaining: u32 = exps.iter().sum();
    let mut rank = 0u64;
    for (pos, &e) in exps.iter().enumerate().take(exps.len().saturating_sub(1)) {
        let rest = exps.len() - pos - 1;
        for a in 0..e {
            rank += composition_count(rest, remaining - a);
        }
        remaining -= e;
    }
    rank as usize
}

/// Power-series coefficients stored densely by total degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTable {
    nvars: usize,
    max_total_degree: u32,
    /// `levels[d][composition_rank(e)]` is the coefficient of `t^e`, `|e| = d`.
    levels: Vec<Vec<BigInt>>,
}

impl SeriesTable {
    fn empty(nvars: usize, max_total_degree: u32) -> Self {
        let levels = (0..=max_total_degree)
            .map(|d| vec![BigInt::zero(); composition_count(nvars, d) as usize])
            .collect();
        Self {
            nvars,
            max_total_degree,
            levels,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_total_degree(&self) -> u32 {
        self.max_total_degree
    }

    /// Coefficient of `t^exps`; `None` beyond the truncation degree.
    pub fn get(&self, exps: &[u32]) -> Option<&BigInt> {
        assert_eq!(exps.len(), self.nvars, "exponent tuple length must equal the variable count");
        let d: u32 = exps.iter().sum();
        self.levels.get(d as usize).map(|level| &level[composition_rank(exps)])
    }

    /// Coefficient of `t^exps`, panicking beyond the truncation degree.
    pub fn coeff(&self, exps: &[u32]) -> &BigInt {
        self.get(exps).expect("exponent beyond truncation degree")
    }

    fn set(&mut self, exps: &[u32], value: BigInt) {
        let d: u32 = exps.iter().sum();
        self.levels[d as usize][composition_rank(exps)] = value;
    }

    /// `(exponents, coefficient)` in order of total degree, then lexicographic.
    pub fn iter(&self) -> impl Iterator<Item = (Exponents, &BigInt)> + '_ {
        self.levels.iter().enumerate().flat_map(move |(d, level)| {
            compositions(self.nvars, d as u32).into_iter().zip(level.iter())
        })
    }

    /// Sum of the coefficients of each total degree, i.e. the series at `t_i = z`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.levels.iter().map(|level| level.iter().sum()).collect()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.levels.iter().flatten().all(|c| !c.is_negative())
    }
}

/// Coefficients of `num/den` as a formal power series through total degree
/// `max_total_degree`, from `num = den · series` solved degree by degree.
pub fn expand_rational(num: &IntPoly, den: &IntPoly, max_total_degree: u32) -> Result<SeriesTable, SeriesError> {
    if num.nvars() != den.nvars() {
        return Err(SeriesError::VariableMismatch {
            num: num.nvars(),
            den: den.nvars(),
        });
    }
    let nvars = num.nvars();
    let den0 = den.constant_term();
    if den0.is_zero() {
        return Err(SeriesError::ZeroConstantTerm);
    }
    let den_rest: Vec<(&Exponents, &BigInt)> = den
        .terms()
        .filter(|(e, _)| e.iter().any(|&k| k > 0) && e.iter().sum::<u32>() <= max_total_degree)
        .collect();

    let mut table = SeriesTable::empty(nvars, max_total_degree);
    for d in 0..=max_total_degree {
        for m in compositions(nvars, d) {
            let mut acc = num.coeff(&m);
            for (k, c) in &den_rest {
                let shifted: Option<Exponents> = m.iter().zip(k.iter()).map(|(a, b)| a.checked_sub(*b)).collect();
                if let Some(prev) = shifted {
                    acc -= *c * table.coeff(&prev);
                }
            }
            let (q, r) = acc.div_rem(&den0);
            if !r.is_zero() {
                return Err(SeriesError::NotIntegral);
            }
            table.set(&m, q);
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_and_ranks_agree() {
        for nvars in 1..=3 {
            for d in 0..7 {
                let list = compositions(nvars, d);
                assert_eq!(list.len() as u64, composition_count(nvars, d));
                for (i, e) in list.iter().enumerate() {
                    assert_eq!(composition_rank(e), i, "{e:?}");
                }
            }
        }
        assert_eq!(compositions(3, 6).len(), 28);
    }

    #[test]
    fn geometric_series() {
        let t = expand_rational(&IntPoly::one(1), &IntPoly::univariate(&[1, -1]), 5).unwrap();
        assert_eq!(t.diagonal(), vec![BigInt::from(1); 6]);
    }

    #[test]
    fn two_variable_geometric() {
        // 1/((1 − x)(1 − y)) has every coefficient 1
        let den = &IntPoly::one_minus_monomial(2, vec![1, 0]) * &IntPoly::one_minus_monomial(2, vec![0, 1]);
        let t = expand_rational(&IntPoly::one(2), &den, 6).unwrap();
        assert!(t.iter().all(|(_, c)| *c == BigInt::from(1)));
        assert_eq!(t.diagonal()[4], BigInt::from(5));
    }

    #[test]
    fn error_cases() {
        assert_eq!(
            expand_rational(&IntPoly::one(1), &IntPoly::univariate(&[0, 1]), 3),
            Err(SeriesError::ZeroConstantTerm)
        );
        assert_eq!(
            expand_rational(&IntPoly::one(1), &IntPoly::univariate(&[2, 1]), 3),
            Err(SeriesError::NotIntegral)
        );
        assert!(matches!(
            expand_rational(&IntPoly::one(1), &IntPoly::one(2), 3),
            Err(SeriesError::VariableMismatch { .. })
        ));
    }

    #[test]
    fn expansion_reproduces_numerator() {
        let num = IntPoly::univariate(&[3, -1, 4]);
        let den = IntPoly::univariate(&[1, 5, 0, -2]);
        let t = expand_rational(&num, &den, 12).unwrap();
        let series = IntPoly::from_terms(1, t.iter().map(|(e, c)| (e, c.clone())));
        let prod = &series * &den;
        for k in 0..=12u32 {
            assert_eq!(prod.coeff(&[k]), num.coeff(&[k]));
        }
    }
}
