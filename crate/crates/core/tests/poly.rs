mod common;

use common::*;
use mzvlab_core::kernels::{c_raw_fast, e_raw};
use mzvlab_core::poly::{
    devectorize, geometric_quotient, ghat, group_ring_apply, mat2_mul, one_plus_sigmas, pgl2_apply, sigma_apply,
    sigma_identity_defect, tau_generating_polynomial, vectorize, Mat2, EPSILON, IDENTITY,
};
use mzvlab_core::{tau, BiLaurentPoly, TriLaurentPoly};
use proptest::prelude::*;
use rayon::prelude::*;

fn mono3(e: [i32; 3]) -> TriLaurentPoly {
    TriLaurentPoly::monomial(e, q(1)).unwrap()
}

fn poly3() -> impl Strategy<Value = TriLaurentPoly> {
    prop::collection::vec(((0i32..5, 0i32..5, 0i32..5), -9i64..10), 0..6)
        .prop_map(|ts| TriLaurentPoly::from_ints(ts.into_iter().map(|((a, b, c), k)| ([a, b, c], k))).unwrap())
}

fn poly2() -> impl Strategy<Value = BiLaurentPoly> {
    prop::collection::vec(((0i32..6, 0i32..6), -9i64..10), 0..6)
        .prop_map(|ts| BiLaurentPoly::from_ints(ts.into_iter().map(|((a, b), k)| ([a, b], k))).unwrap())
}

fn mat2() -> impl Strategy<Value = Mat2> {
    prop::array::uniform4(-2i64..3).prop_map(|[a, b, c, d]| [[a, b], [c, d]])
}

#[test]
fn laurent_basics() {
    let x = TriLaurentPoly::var(0);
    let y = TriLaurentPoly::var(1);
    let p = &(&x + &y) * &(&x - &y);
    assert_eq!(p, TriLaurentPoly::from_ints([([2, 0, 0], 1), ([0, 2, 0], -1)]).unwrap());
    assert!((&p - &p).is_zero());
    assert_eq!((&p - &p).len(), 0);
    assert!(TriLaurentPoly::monomial([-2, 0, 0], q(1)).is_err());
    assert!(p.shift([0, -3, 0]).is_err());
    let inv = mono3([0, 0, -1]);
    assert!(!inv.is_polynomial());
    assert_eq!(p.derivative(0), TriLaurentPoly::from_ints([([1, 0, 0], 2)]).unwrap());
    assert_eq!(p.permute([1, 0, 2]), -p.clone());
    assert_eq!(p.eval(&[q(3), q(2), q(7)]), q(5));
    assert!(p.is_homogeneous(2));
}

#[test]
fn serialization_is_sorted_exponent_list() {
    let p = TriLaurentPoly::from_terms([([1, 0, -1], qr(-2, 3)), ([0, 0, 0], q(5))]).unwrap();
    let json = serde_json::to_string(&p).unwrap();
    assert_eq!(json, r#"[{"exp":[0,0,0],"coef":"5"},{"exp":[1,0,-1],"coef":"-2/3"}]"#);
    let back: TriLaurentPoly = serde_json::from_str(&json).unwrap();
    assert_eq!(back, p);
    assert!(serde_json::from_str::<TriLaurentPoly>(r#"[{"exp":[0,-2,0],"coef":"1"}]"#).is_err());
}

proptest! {
    #[test]
    fn ring_axioms(a in poly3(), b in poly3(), c in poly3()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn sigma_operators_are_linear(a in poly3(), b in poly3(), i in 1u8..6) {
        prop_assert_eq!(sigma_apply(i, &(&a + &b)).unwrap(), sigma_apply(i, &a).unwrap() + sigma_apply(i, &b).unwrap());
    }

    #[test]
    fn pgl2_action_composes(f in poly2(), g in mat2(), h in mat2()) {
        let lhs = pgl2_apply(&f, &mat2_mul(&g, &h)).unwrap();
        let rhs = pgl2_apply(&pgl2_apply(&f, &g).unwrap(), &h).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_agrees_with_evaluation(f in poly2(), g in mat2(), x in -5i64..6, y in -5i64..6) {
        let img = pgl2_apply(&f, &g).unwrap();
        let pt = [q(g[0][0] * x + g[0][1] * y), q(g[1][0] * x + g[1][1] * y)];
        prop_assert_eq!(img.eval(&[q(x), q(y)]), f.eval(&pt));
    }
}

#[test]
fn sigma_examples() {
    for c in 0..6 {
        assert!(sigma_apply(1, &mono3([0, 0, c])).unwrap().is_zero());
    }
    assert!(sigma_apply(6, &mono3([1, 0, 0])).is_err());
    assert!(sigma_apply(1, &mono3([0, 0, -1])).is_err());
}

#[test]
fn pgl2_examples() {
    let f = BiLaurentPoly::from_ints([([5, 0], 1), ([0, 5], -1)]).unwrap();
    assert_eq!(pgl2_apply(&f, &IDENTITY).unwrap(), f);
    assert_eq!(pgl2_apply(&f, &EPSILON).unwrap(), -f.clone());
    assert_eq!(group_ring_apply(&f, &[(1, IDENTITY), (1, EPSILON)]).unwrap(), BiLaurentPoly::zero());
    // (x^5 - y^5)/(x - y)
    assert_eq!(&geometric_quotient(6) * &BiLaurentPoly::from_ints([([1, 0], 1), ([0, 1], -1)]).unwrap(), f);
}

#[test]
fn tau_generating_polynomial_matches_formula() {
    for n in (4..=20u32).step_by(2) {
        let g = tau_generating_polynomial(n).unwrap();
        for n1 in 1..n {
            let n2 = n - n1;
            assert_eq!(g.coeff(&[n2 as i32 - 1, n1 as i32 - 1]), tau(n1, n2), "N={n} ({n1},{n2})");
        }
        assert!(g.is_homogeneous(n as i32 - 2));
    }
    assert!(tau_generating_polynomial(7).is_err());
}

fn compositions(k: u32, min: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in min..=k {
        for b in min..=k.saturating_sub(a) {
            let c = k as i64 - a as i64 - b as i64;
            if c >= min as i64 {
                out.push([a, b, c as u32]);
            }
        }
    }
    out
}

fn exps(m: &[u32; 3]) -> [i32; 3] {
    [m[0] as i32 - 1, m[1] as i32 - 1, m[2] as i32 - 1]
}

#[test]
fn sigma_coefficients_reproduce_e_and_c() {
    let weights: Vec<u32> = (3..=20).collect();
    weights.par_iter().for_each(|&k| {
        let all = compositions(k, 1);
        // the extraction identities are stated for odd m1, m2
        for m in all.iter().filter(|m| m[0] % 2 == 1 && m[1] % 2 == 1) {
            let f = mono3(exps(m));
            let s12 = one_plus_sigmas(&f, &[1, 2]).unwrap();
            let s3 = one_plus_sigmas(&f, &[3]).unwrap();
            for n in &all {
                let e = exps(n);
                assert_eq!(s12.coeff(&e), q(e_raw(m, n) as i64), "e: m={m:?} n={n:?}");
                let d = if m[0] == n[0] { e_raw(&m[1..], &n[1..]) } else { 0 };
                assert_eq!(s3.coeff(&e), q(d as i64), "δe: m={m:?} n={n:?}");
            }
            let admissible = m[0] >= 3 && m[1] >= 3 && m[2] >= 2;
            if admissible {
                let comp = one_plus_sigmas(&s3, &[1, 2]).unwrap();
                for n in &all {
                    assert_eq!(comp.coeff(&exps(n)), q(c_raw_fast(m, n) as i64), "c: m={m:?} n={n:?}");
                }
            }
        }
    });
}

#[test]
fn vectorize_round_trip() {
    let x1 = TriLaurentPoly::var(0);
    let x2 = TriLaurentPoly::var(1);
    let sq = &x1 * &x1;
    let diff = &sq - &(&x2 * &x2);
    let f = (&(&(&sq * &(&x2 * &x2)) * &(&diff * &(&diff * &diff))) * &mono3([0, 0, -1])).clone();
    let v = vectorize(&f, 12).unwrap();
    assert!(!v.is_zero());
    for (idx, c) in v.labels().iter().zip(v.values()) {
        if !num_traits::Zero::is_zero(c) {
            assert_eq!(idx.get(2), 0);
        }
    }
    assert_eq!(devectorize(&v).unwrap(), f);
    assert!(vectorize(&TriLaurentPoly::zero(), 12).unwrap().is_zero());
    let err = vectorize(&mono3([1, 1, 1]), 12).unwrap_err().to_string();
    assert!(err.contains("[1, 1, 1]"), "{err}");
}

#[test]
fn ghat_examples() {
    let g4 = ghat(4).unwrap();
    let expect =
        BiLaurentPoly::from_terms([([-1, 3], qr(-1, 720)), ([3, -1], qr(-1, 720)), ([1, 1], qr(1, 144))]).unwrap();
    assert_eq!(g4, expect);
    assert!(ghat(5).is_err());
    for k in (4..=30).step_by(2) {
        let g = ghat(k).unwrap();
        assert_eq!(g.permute([1, 0]), g);
        // Ĝ(x1,x2) + Ĝ(x2-x1, x2) - Ĝ(x2-x1, x1) vanishes; checked at points off the poles
        let pts = [(q(2), q(5)), (q(-3), q(7)), (qr(1, 2), q(4))];
        for (a, b) in pts {
            let v = g.eval(&[a.clone(), b.clone()]) + g.eval(&[&b - &a, b.clone()]) - g.eval(&[&b - &a, a.clone()]);
            assert_eq!(v, q(0), "k={k}");
        }
    }
}

#[test]
fn sigma_identity_precondition() {
    assert!(sigma_identity_defect(&mono3([1, 2, 0])).is_err());
    assert!(sigma_identity_defect(&mono3([2, 3, 0])).is_err());
    for e in [[0, 0, 3], [0, 4, 1], [6, 0, 2]] {
        assert!(sigma_identity_defect(&mono3(e)).unwrap().is_zero(), "{e:?}");
    }
}
