mod common;

use common::*;
use mzvlab_core::arith::{
    bernoulli, beta, binom, dim_cusp, fmt_rational, parse_rational, positively_proportional, primitive_integer, Series,
};
use mzvlab_core::index::{almost_totally_odd, index_set, set, Pattern};
use mzvlab_core::Index;
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn binomial_edge_cases() {
    assert_eq!(binom(5, 2), 10);
    assert_eq!(binom(0, 0), 1);
    assert_eq!(binom(4, -1), 0);
    assert_eq!(binom(3, 5), 0);
    assert_eq!(binom(-1, 0), 0);
    assert_eq!(binom(60, 30), 118264581564861424);
    // outside the precomputed table
    for (m, n) in [(128, 5), (140, 20), (200, 3), (129, 64)] {
        assert_eq!(BigInt::from(binom(m, n)), oracle_binom(m, n));
    }
}

proptest! {
    #[test]
    fn binomial_pascal(m in 1i64..128, n in -3i64..130) {
        prop_assert_eq!(binom(m, n), binom(m - 1, n - 1) + binom(m - 1, n));
    }

    #[test]
    fn binomial_matches_multiplicative_formula(m in 0i64..126, n in 0i64..126) {
        prop_assert_eq!(BigInt::from(binom(m, n)), oracle_binom(m, n));
    }

    #[test]
    fn rational_string_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = qr(n, d);
        prop_assert_eq!(parse_rational(&fmt_rational(&x)).unwrap(), x);
    }

    #[test]
    fn primitive_vector_is_positive_multiple(v in prop::collection::vec((-50i64..50, 1i64..20), 1..8)) {
        let xs: Vec<_> = v.iter().map(|&(n, d)| qr(n, d)).collect();
        let p = primitive_integer(&xs);
        prop_assert!(same_ray(&xs, &to_q(&p)));
        let g = p.iter().fold(BigInt::from(0), |a, b| num_integer::Integer::gcd(&a, b));
        prop_assert!(g == BigInt::from(1) || g == BigInt::from(0));
    }
}

#[test]
fn rational_format() {
    assert_eq!(fmt_rational(&qr(-4, 3)), "-4/3");
    assert_eq!(fmt_rational(&q(7)), "7");
    assert_eq!(parse_rational(" 25/12 ").unwrap(), qr(25, 12));
    assert_eq!(parse_rational("6/-4").unwrap(), qr(-3, 2));
    assert!(parse_rational("1/0").is_err());
    assert!(parse_rational("x").is_err());
}

#[test]
fn bernoulli_numbers() {
    assert_eq!(bernoulli(0), q(1));
    assert_eq!(bernoulli(1), qr(-1, 2));
    assert_eq!(bernoulli(2), qr(1, 6));
    assert_eq!(bernoulli(12), qr(-691, 2730));
    assert_eq!(bernoulli(13), q(0));
    for n in 0..=60 {
        assert_eq!(bernoulli(n), oracle_bernoulli(n), "B_{n}");
    }
    // beyond the precomputed table
    assert_eq!(bernoulli(140), oracle_bernoulli(140));
}

#[test]
fn beta_values() {
    assert_eq!(beta(0), qr(-1, 2));
    assert_eq!(beta(2), qr(-1, 24));
    assert_eq!(beta(4), qr(1, 1440));
    assert_eq!(beta(3), q(0));
    // τ(2,4) + τ(4,2) + 1 = β2 β4 / β6
    assert_eq!(beta(2) * beta(4) / beta(6), qr(7, 4));
}

#[test]
fn cusp_dimensions_match_series_division() {
    let oracle = oracle_cusp_dims(400);
    for k in 0..=400u32 {
        assert_eq!(dim_cusp(k) as i64, oracle[k as usize], "k = {k}");
    }
    assert_eq!(dim_cusp(12), 1);
    assert_eq!(dim_cusp(14), 0);
    assert_eq!(dim_cusp(24), 2);
}

#[test]
fn series_products() {
    let s = Series::cusp(40);
    let se = s.mul(&Series::even(40));
    let so = s.mul(&Series::odd(40));
    // SE/x^2 + (x + 1/x) SO = x^12 + 2x^14 + ...
    let at = |k: i64| se.coeff(k + 2) + so.coeff(k - 1) + so.coeff(k + 1);
    assert_eq!(at(10), 0);
    assert_eq!(at(12), 1);
    assert_eq!(at(14), 2);
    assert_eq!(se.shift(-2).coeff(12), se.coeff(14));
    assert_eq!(se.sub(&se).coeff(30), 0);
}

#[test]
fn proportionality() {
    assert!(positively_proportional(&qs(&[2, -4]), &qs(&[1, -2])));
    assert!(!positively_proportional(&qs(&[2, -4]), &qs(&[-1, 2])));
    assert!(!positively_proportional(&qs(&[2, -4]), &qs(&[1, 2])));
}

#[test]
fn index_parsing_and_display() {
    let i: Index = "(3,5,4)".parse().unwrap();
    assert_eq!(i, idx(&[3, 5, 4]));
    assert_eq!(i.to_string(), "(3,5,4)");
    assert_eq!(i.weight(), 12);
    assert!("(3,x)".parse::<Index>().is_err());
    assert_eq!(serde_json::to_string(&i).unwrap(), "\"(3,5,4)\"");
}

#[test]
fn index_set_examples() {
    let s = set(10, "ooe").unwrap();
    assert_eq!(s.members(), &[idx(&[3, 3, 4]), idx(&[3, 5, 2]), idx(&[5, 3, 2])]);
    assert_eq!(set(12, "ooe").unwrap().len(), 6);
    assert_eq!(almost_totally_odd(12, 1).unwrap().members()[0], idx(&[2, 3, 7]));
    let hat = set(12, "ooe0").unwrap();
    assert!(hat.contains(&idx(&[3, 9, 0])));
    assert!(!hat.contains(&idx(&[1, 9, 2])));
    assert!(index_set(1, &"o".parse::<Pattern>().unwrap()).is_err());
    assert!(Pattern::almost_totally_odd(4).is_err());
    assert!("oex".parse::<Pattern>().is_err());
}

proptest! {
    #[test]
    fn index_sets_are_exactly_the_admissible_compositions(k in 2u32..30, pat in "[oeaz]{1,3}") {
        let p: Pattern = pat.parse().unwrap();
        let s = index_set(k, &p).unwrap();
        let mut brute = Vec::new();
        let d = pat.len();
        let admits = |c: char, x: u32| match c {
            'o' => x > 1 && x % 2 == 1,
            'e' => x > 1 && x % 2 == 0,
            'a' => x > 1,
            _ => x % 2 == 0,
        };
        let chars: Vec<char> = pat.chars().collect();
        let mut stack = vec![vec![]];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == d {
                if prefix.iter().sum::<u32>() == k {
                    brute.push(Index::new(prefix));
                }
                continue;
            }
            for x in 0..=k {
                if admits(chars[prefix.len()], x) {
                    let mut n = prefix.clone();
                    n.push(x);
                    stack.push(n);
                }
            }
        }
        brute.sort();
        prop_assert_eq!(s.members(), &brute[..]);
        prop_assert!(s.members().windows(2).all(|w| w[0] < w[1]));
    }
}
