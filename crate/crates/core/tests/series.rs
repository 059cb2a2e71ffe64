//! The stored rational functions against an independent transcription of the
//! printed formulas, and the diagonal specialization to higher degree.

use num_bigint::BigInt;
use twoqubit::series::{builtin_series, expand_poincare, expand_rational, Grading, IntPoly, SeriesTable};

const NUMERATOR_TEX: &str = include_str!("data/numerator.tex");
const DENOMINATOR_TEX: &str = include_str!("data/denominator.tex");

/// Exponents of a product of `t_{{k}}` and `{t_{{k}}}^{e}` factors.
fn parse_monomial(s: &str) -> [u32; 3] {
    let mut exps = [0u32; 3];
    let mut rest = s;
    while !rest.is_empty() {
        let (braced, body) = match rest.strip_prefix('{') {
            Some(b) => (true, b),
            None => (false, rest),
        };
        let body = body.strip_prefix("t_{{").unwrap_or_else(|| panic!("unexpected factor in {s:?}"));
        let var: usize = body[..1].parse().unwrap();
        let mut after = &body[1..];
        after = after.strip_prefix("}}").unwrap();
        let mut e = 1;
        if braced {
            after = after.strip_prefix("}^{").unwrap();
            let close = after.find('}').unwrap();
            e = after[..close].parse().unwrap();
            after = &after[close + 1..];
        }
        exps[var - 1] += e;
        rest = after;
    }
    exps
}

fn clean(tex: &str) -> String {
    tex.replace("\\\\", "")
        .replace("&&", "")
        .chars()
        .filter(|c| !c.is_whitespace() && *c != ',' && *c != '.')
        .collect()
}

fn parse_numerator() -> IntPoly {
    let s = clean(NUMERATOR_TEX);
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..=bytes.len() {
        if i == bytes.len() || bytes[i] == b'+' || bytes[i] == b'-' {
            let term = &s[start..i];
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (-1, &term[1..]),
                b'+' => (1, &term[1..]),
                _ => (1, term),
            };
            let exps = if body == "1" { [0, 0, 0] } else { parse_monomial(body) };
            terms.push((exps.to_vec(), sign));
            start = i;
        }
    }
    IntPoly::from_terms(3, terms)
}

fn parse_denominator() -> Vec<[u32; 3]> {
    clean(DENOMINATOR_TEX)
        .split("\\left(")
        .filter(|p| !p.is_empty())
        .map(|p| {
            let inner = p.split("\\right)").next().unwrap();
            parse_monomial(inner.strip_prefix("1-").unwrap())
        })
        .collect()
}

#[test]
fn stored_numerator_matches_printed_formula() {
    let printed = parse_numerator();
    assert_eq!(printed.num_terms(), 20);
    assert_eq!(printed, builtin_series().p3_num);
}

#[test]
fn stored_denominator_matches_printed_formula() {
    let printed = parse_denominator();
    assert_eq!(printed.len(), 10);
    let product = printed
        .iter()
        .fold(IntPoly::one(3), |acc, e| &acc * &IntPoly::one_minus_monomial(3, e.to_vec()));
    assert_eq!(product, builtin_series().p3_den.expand());
}

#[test]
fn diagonal_sums_match_single_series_to_degree_thirty() {
    let triple = expand_poincare(Grading::Triple, 30);
    let single = expand_poincare(Grading::Single, 30);
    assert_eq!(triple.diagonal(), single.diagonal());
    assert!(triple.all_nonnegative());
}

#[test]
fn series_is_symmetric_in_first_two_gradings() {
    let t = expand_poincare(Grading::Triple, 12);
    for (e, c) in t.iter() {
        assert_eq!(c, t.coeff(&[e[1], e[0], e[2]]));
    }
}

#[test]
fn expansion_times_denominator_reproduces_numerator() {
    let b = builtin_series();
    let den = b.p3_den.expand();
    let max = 10;
    let t: SeriesTable = expand_rational(&b.p3_num, &den, max).unwrap();
    let series = IntPoly::from_terms(3, t.iter().map(|(e, c)| (e, c.clone())));
    let product = &series * &den;
    for (e, c) in product.terms() {
        if e.iter().sum::<u32>() <= max {
            assert_eq!(*c, b.p3_num.coeff(e), "{e:?}");
        }
    }
}

#[test]
fn single_series_grows_like_degree_eight() {
    // nine algebraically independent generators
    let s = expand_poincare(Grading::Single, 60).diagonal();
    let ratio = |d: usize| {
        let a: f64 = s[d].to_string().parse().unwrap();
        let b: f64 = s[d - 12].to_string().parse().unwrap();
        a / b
    };
    let expected = (60.0f64 / 48.0).powi(8);
    assert!((ratio(60) / expected - 1.0).abs() < 0.35, "{}", ratio(60));
    assert!(s.iter().all(|c| *c >= BigInt::from(0)));
}

#[test]
fn first_two_degrees_are_not_always_even() {
    // Levi-Civita contractions allow odd d1 + d2
    let t = expand_poincare(Grading::Triple, 6);
    let odd: Vec<[u32; 3]> = t
        .iter()
        .filter(|(e, c)| (e[0] + e[1]) % 2 == 1 && **c != BigInt::from(0))
        .map(|(e, _)| [e[0], e[1], e[2]])
        .collect();
    assert_eq!(odd, vec![[1, 2, 3], [2, 1, 3]]);
    assert_eq!(*t.coeff(&[1, 2, 3]), BigInt::from(1));
}
