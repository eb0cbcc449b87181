mod common;

use common::*;
use mzvlab_core::matrices::{build_matrix, MatrixFamily};
use mzvlab_core::period::{
    cusp_coeffs, eisenstein_kernel_vector, kz_functional, lifted_basis, period_basis, period_relation, primitive_on,
    CoeffKind, LiftedFamily, PeriodKind,
};
use mzvlab_core::{BiLaurentPoly, Rational, TriLaurentPoly};
use num_traits::Zero;

fn bi(terms: &[([i32; 2], i64)]) -> BiLaurentPoly {
    BiLaurentPoly::from_ints(terms.iter().copied()).unwrap()
}

// x^2 y^2 (x^2 - y^2)^3
fn w12_even() -> BiLaurentPoly {
    bi(&[([8, 2], 1), ([6, 4], -3), ([4, 6], 3), ([2, 8], -1)])
}

fn w12_odd() -> BiLaurentPoly {
    bi(&[([9, 1], 4), ([7, 3], -25), ([5, 5], 42), ([3, 7], -25), ([1, 9], 4)])
}

fn w12_cusp() -> BiLaurentPoly {
    bi(&[([10, 0], 36), ([8, 2], -691), ([6, 4], 2073), ([4, 6], -2073), ([2, 8], 691), ([0, 10], -36)])
}

fn poly_vec(p: &BiLaurentPoly, deg: i32) -> Vec<Rational> {
    (0..=deg).map(|a| p.coeff(&[a, deg - a])).collect()
}

fn same_line(a: &BiLaurentPoly, b: &BiLaurentPoly, deg: i32) -> bool {
    proportional(&poly_vec(a, deg), &poly_vec(b, deg))
}

// Independent dimension series: S·E and S·O at a given coefficient.
fn se(dims: &[i64], k: i64) -> i64 {
    (2..=k).step_by(2).filter(|m| k - m >= 0).map(|m| dims[(k - m) as usize]).sum()
}

fn so(dims: &[i64], k: i64) -> i64 {
    (3..=k).step_by(2).map(|m| dims[(k - m) as usize]).sum()
}

#[test]
fn reference_bases_at_12() {
    let b = period_basis(PeriodKind::RestrictedEven, 12).unwrap();
    assert_eq!(b.dim, 1);
    assert!(same_line(&b.basis[0], &w12_even(), 10));
    let b = period_basis(PeriodKind::Odd, 12).unwrap();
    assert_eq!(b.dim, 1);
    assert!(same_line(&b.basis[0], &w12_odd(), 10));
    let b = period_basis(PeriodKind::CuspEven, 12).unwrap();
    assert_eq!(b.dim, 1);
    assert!(same_line(&b.basis[0], &w12_cusp(), 10));
}

#[test]
fn dimensions_match_cusp_forms() {
    let dims = oracle_cusp_dims(41);
    for k in (4..=40u32).step_by(2) {
        let d = dims[k as usize] as usize;
        let full = period_basis(PeriodKind::FullEven, k).unwrap();
        let cusp = period_basis(PeriodKind::CuspEven, k).unwrap();
        assert_eq!(period_basis(PeriodKind::RestrictedEven, k).unwrap().dim, d, "W+0 {k}");
        assert_eq!(period_basis(PeriodKind::Odd, k).unwrap().dim, d, "W- {k}");
        assert_eq!(cusp.dim, d, "cusp-even {k}");
        assert_eq!(full.dim, d + 1, "W+full {k}");
    }
}

#[test]
fn basis_elements_satisfy_their_relations() {
    let zero = Rational::zero();
    for k in (4..=30u32).step_by(2) {
        let d = k as i32 - 2;
        for kind in [PeriodKind::RestrictedEven, PeriodKind::Odd, PeriodKind::FullEven, PeriodKind::CuspEven] {
            for p in &period_basis(kind, k).unwrap().basis {
                assert!(p.is_polynomial() && p.is_homogeneous(d));
                assert!(period_relation(p, kind == PeriodKind::Odd).unwrap().is_zero(), "{kind} {k}");
                let want_odd = kind == PeriodKind::Odd;
                assert!(p.terms().all(|(e, _)| (e[0] % 2 == 1) == want_odd));
                if kind == PeriodKind::RestrictedEven {
                    assert_eq!(p.coeff(&[d, 0]), zero);
                }
                if kind == PeriodKind::CuspEven {
                    assert!(kz_functional(p, k).is_zero());
                }
            }
        }
    }
}

#[test]
fn kz_functional_is_nonzero_on_full_even() {
    for k in (4..=30u32).step_by(2) {
        let full = period_basis(PeriodKind::FullEven, k).unwrap();
        assert!(full.basis.iter().any(|p| !kz_functional(p, k).is_zero()), "{k}");
    }
}

#[test]
fn odd_weight_is_rejected() {
    assert!(period_basis(PeriodKind::Odd, 13).is_err());
    assert!(lifted_basis(LiftedFamily::PPlus, 13).is_err());
    assert!(cusp_coeffs(CoeffKind::EvenA, &w12_even(), 13).is_err());
}

#[test]
fn lifted_examples() {
    let p = lifted_basis(LiftedFamily::PPlus, 14).unwrap();
    assert_eq!(p.dim, 1);
    let expect = TriLaurentPoly::from_terms(w12_even().terms().map(|(e, c)| ([e[0], e[1], 1], c.clone()))).unwrap();
    let got = &p.basis[0].poly;
    assert_eq!(p.basis[0].layer, 12);
    assert!(got == &expect || got == &expect.scale(&q(-1)));
    assert_eq!(lifted_basis(LiftedFamily::QPlus, 12).unwrap().dim, 0);
    assert_eq!(lifted_basis(LiftedFamily::QMinus, 12).unwrap().dim, 0);
    let h = lifted_basis(LiftedFamily::PHatPlus, 12).unwrap();
    assert_eq!(h.dim, 1);
    assert!(h.basis[0].poly.terms().all(|(e, _)| e[2] == -1));
}

#[test]
fn lifted_dimensions_follow_series() {
    let dims = oracle_cusp_dims(45);
    for k in (4..=40u32).step_by(2) {
        let ki = k as i64;
        let d = |f| lifted_basis(f, k).unwrap().dim as i64;
        assert_eq!(d(LiftedFamily::PPlus), se(&dims, ki), "P+ {k}");
        assert_eq!(d(LiftedFamily::PHatPlus), se(&dims, ki + 2), "Phat+ {k}");
        assert_eq!(d(LiftedFamily::QPlus), so(&dims, ki + 1), "Q+ {k}");
        assert_eq!(d(LiftedFamily::QMinus), so(&dims, ki - 1), "Q- {k}");
    }
}

#[test]
fn coefficient_fixtures_at_12() {
    let keys = |v: &[(u32, u32)]| v.to_vec();
    let a = cusp_coeffs(CoeffKind::EvenA, &w12_cusp(), 12).unwrap();
    let v = primitive_on(&a, &keys(&[(1, 11), (3, 9), (5, 7), (7, 5), (9, 3)]));
    assert!(proportional(&to_q(&v), &qs(&[22680, 13006, -29145, -35364, 22680])));
    let b = cusp_coeffs(CoeffKind::OddB, &w12_odd(), 12).unwrap();
    // b_{r,s} feeds ζ^{1/2}(r, s+1)
    let v = primitive_on(&b, &keys(&[(1, 11), (3, 9), (5, 7), (7, 5), (9, 3), (11, 1)]));
    assert!(proportional(&to_q(&v), &qs(&[0, -12, -14, 5, 18, 0])));
    let c = cusp_coeffs(CoeffKind::EvenC, &w12_cusp(), 12).unwrap();
    let v = primitive_on(&c, &keys(&[(3, 8), (5, 6), (7, 4)]));
    assert!(proportional(&to_q(&v), &qs(&[14, 10, -21])));
}

#[test]
fn top_even_a_coefficient_vanishes_on_cusp_even() {
    for k in (12..=30u32).step_by(2) {
        for p in &period_basis(PeriodKind::CuspEven, k).unwrap().basis {
            let a = cusp_coeffs(CoeffKind::EvenA, p, k).unwrap();
            assert!(a[&(k - 1, 1)].is_zero(), "{k}");
        }
    }
}

#[test]
fn odd_b_rejects_non_odd_input() {
    let p = bi(&[([10, 0], 1)]);
    assert!(cusp_coeffs(CoeffKind::OddB, &p, 12).is_err());
    assert!(cusp_coeffs(CoeffKind::EvenA, &bi(&[([9, 0], 1)]), 12).is_err());
}

#[test]
fn eisenstein_vectors() {
    let v = eisenstein_kernel_vector(5).unwrap();
    assert_eq!(v.get(&idx(&[3, 2])), Some(&qr(1, 144)));
    assert_eq!(v.get(&idx(&[5, 0])), Some(&qr(-1, 720)));
    let b5 = build_matrix(MatrixFamily::B2hat, 5, None).unwrap();
    assert_eq!(b5.entries(), &[qs(&[-2, 0]), qs(&[-10, 0])][..]);
    let v3 = eisenstein_kernel_vector(3).unwrap();
    assert_eq!(v3.values(), &[qr(1, 12)]);
    assert!(build_matrix(MatrixFamily::B2hat, 3, None).unwrap().is_zero());
    for k in (3..=31u32).step_by(2) {
        let v = eisenstein_kernel_vector(k).unwrap();
        let b = build_matrix(MatrixFamily::B2hat, k, None).unwrap();
        assert!(v.mul_matrix(&b).unwrap().is_zero(), "{k}");
        assert!(!v.get(&idx(&[k, 0])).unwrap().is_zero());
        let beta = |n: u32| mzvlab_core::beta(n as usize);
        assert_eq!(v.get(&idx(&[k, 0])).unwrap(), &(q(4) * beta(k - 1) * beta(0)), "{k}");
    }
    assert!(eisenstein_kernel_vector(4).is_err());
}
