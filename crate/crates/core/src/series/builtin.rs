use super::poly::{FactoredPoly, IntPoly};

/// The two stored rational Poincaré series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuiltinSeries {
    /// Numerator of the single-graded series in `z`.
    pub p1_num: IntPoly,
    pub p1_den: FactoredPoly,
    /// Numerator `N(t₁, t₂, t₃)` of the trigraded series.
    pub p3_num: IntPoly,
    /// Denominator `D(t₁, t₂, t₃)`, a product of ten binomials.
    pub p3_den: FactoredPoly,
}

/// Terms of `N`: exponents of (t₁, t₂, t₃) and coefficient.
const P3_NUMERATOR: [([u32; 3], i64); 20] = [
    ([0, 0, 0], 1),
    ([1, 0, 2], -1),
    ([0, 1, 2], -1),
    ([1, 1, 2], 1),
    ([1, 1, 3], 1),
    ([2, 1, 3], 1),
    ([1, 2, 3], 1),
    ([2, 0, 4], 1),
    ([1, 1, 4], 1),
    ([0, 2, 4], 1),
    ([3, 1, 5], -1),
    ([2, 2, 5], -1),
    ([1, 3, 5], -1),
    ([2, 1, 6], -1),
    ([1, 2, 6], -1),
    ([2, 2, 6], -1),
    ([2, 2, 7], -1),
    ([3, 2, 7], 1),
    ([2, 3, 7], 1),
    ([3, 3, 9], -1),
];

/// `D = Π (1 − t^e)` over these exponent vectors.
const P3_DENOMINATOR: [[u32; 3]; 10] = [
    [2, 0, 0],
    [0, 2, 0],
    [0, 0, 2],
    [1, 1, 1],
    [1, 0, 2],
    [0, 1, 2],
    [0, 0, 3],
    [2, 0, 2],
    [0, 2, 2],
    [0, 0, 4],
];

const P1_NUMERATOR: [i64; 11] = [1, 0, -1, -1, 2, 2, 2, -1, -1, 0, 1];

pub fn builtin_series() -> BuiltinSeries {
    let p3_num = IntPoly::from_terms(3, P3_NUMERATOR.iter().map(|(e, c)| (e.to_vec(), *c)));
    let p3_den = FactoredPoly::new(
        3,
        P3_DENOMINATOR
            .iter()
            .map(|e| (IntPoly::one_minus_monomial(3, e.to_vec()), 1))
            .collect(),
    );
    let p1_num = IntPoly::univariate(&P1_NUMERATOR);
    // (1 − z)⁹ (1 + z)⁶ (1 + z²)² (1 + z + z²)³
    let p1_den = FactoredPoly::new(
        1,
        vec![
            (IntPoly::univariate(&[1, -1]), 9),
            (IntPoly::univariate(&[1, 1]), 6),
            (IntPoly::univariate(&[1, 0, 1]), 2),
            (IntPoly::univariate(&[1, 1, 1]), 3),
        ],
    );
    BuiltinSeries {
        p1_num,
        p1_den,
        p3_num,
        p3_den,
    }
}

/// `(1 + z²)(1 − z³)`, shared by `N(z,z,z)` and `D(z,z,z)`.
pub fn diagonal_common_factor() -> IntPoly {
    &IntPoly::univariate(&[1, 0, 1]) * &IntPoly::univariate(&[1, 0, 0, -1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{expand_rational, SeriesError};
    use num_bigint::BigInt;

    #[test]
    fn numerator_low_terms() {
        let b = builtin_series();
        assert_eq!(b.p3_num.constant_term(), BigInt::from(1));
        assert_eq!(b.p3_num.coeff(&[1, 0, 2]), BigInt::from(-1));
        assert_eq!(b.p3_num.coeff(&[0, 1, 2]), BigInt::from(-1));
        // nothing of total degree 1 or 2
        assert!(b.p3_num.terms().all(|(e, _)| e.iter().sum::<u32>() == 0 || e.iter().sum::<u32>() >= 3));
        assert_eq!(b.p3_num.num_terms(), 20);
    }

    #[test]
    fn denominator_has_ten_binomials() {
        let b = builtin_series();
        assert_eq!(b.p3_den.factor_count(), 10);
        let has = |e: Vec<u32>| b.p3_den.factors().iter().any(|(p, _)| *p == IntPoly::one_minus_monomial(3, e.clone()));
        assert!(has(vec![1, 1, 1]));
        assert!(has(vec![0, 0, 4]));
    }

    #[test]
    fn single_denominator_leading_terms() {
        let d = builtin_series().p1_den.expand();
        assert_eq!(d.constant_term(), BigInt::from(1));
        // (1−z)⁹ contributes −9z, (1+z)⁶ +6z, (1+z+z²)³ +3z
        assert_eq!(d.coeff(&[1]), BigInt::from(0));
        assert_eq!(d.total_degree(), Some(25));
        let only_one_minus_z_power = IntPoly::univariate(&[1, -1]).pow(9);
        assert_eq!(only_one_minus_z_power.coeff(&[1]), BigInt::from(-9));
    }

    #[test]
    fn diagonal_division() {
        let b = builtin_series();
        let common = diagonal_common_factor();
        let n_diag = b.p3_num.substitute_diagonal();
        assert_eq!(n_diag.exact_divide(&common).unwrap(), b.p1_num);
        let d_diag = b.p3_den.expand().substitute_diagonal();
        assert_eq!(d_diag.exact_divide(&common).unwrap(), b.p1_den.expand());
        // (1 − z)² is not a factor of the reduced numerator
        assert_eq!(b.p1_num.exact_divide(&IntPoly::univariate(&[1, -2, 1])), Err(SeriesError::NotDivisible));
    }

    #[test]
    fn single_series_start() {
        let b = builtin_series();
        let t = expand_rational(&b.p1_num, &b.p1_den.expand(), 4).unwrap();
        let got: Vec<BigInt> = t.diagonal();
        assert_eq!(got, [1, 0, 3, 2, 10].map(BigInt::from).to_vec());
    }
}
