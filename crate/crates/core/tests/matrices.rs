mod common;

use common::*;
use mzvlab_core::linalg::block_diagonal;
use mzvlab_core::matrices::{build_matrix, cached_matrix, MatrixCache, MatrixFamily, ALL_FAMILIES};
use mzvlab_core::{left_kernel, rank, right_kernel, row_space_membership, LabelledVector, QMatrix};
use num_traits::Zero;

fn ints_matrix(rows: &[&[i64]]) -> Vec<Vec<mzvlab_core::Rational>> {
    rows.iter().map(|r| qs(r)).collect()
}

fn reference_b11() -> Vec<Vec<mzvlab_core::Rational>> {
    ints_matrix(&[&[0, 0, 0, -2], &[-6, 0, -4, -4], &[-15, -21, -20, -6], &[-36, -126, -84, -8]])
}

fn reference_b13() -> Vec<Vec<mzvlab_core::Rational>> {
    ints_matrix(&[
        &[0, 0, 0, 0, -2],
        &[-6, 0, 0, -4, -4],
        &[-15, -15, -6, -20, -6],
        &[-28, -78, -84, -56, -8],
        &[-55, -330, -462, -165, -10],
    ])
}

fn reference_c12() -> Vec<Vec<mzvlab_core::Rational>> {
    ints_matrix(&[
        &[0, 0, 0, 0, 0, 4],
        &[0, 0, 12, 0, 8, 8],
        &[0, 0, 42, 0, 70, 12],
        &[0, 0, 12, 20, 8, -12],
        &[60, 100, 64, -20, 16, -24],
        &[42, 70, 42, 0, 0, -30],
    ])
}

#[test]
fn reference_matrices() {
    let b11 = build_matrix(MatrixFamily::B2, 11, None).unwrap();
    assert_eq!(b11.entries(), &reference_b11()[..]);
    assert_eq!(b11.row_labels(), &[idx(&[3, 8]), idx(&[5, 6]), idx(&[7, 4]), idx(&[9, 2])]);
    assert_eq!(build_matrix(MatrixFamily::B2, 13, None).unwrap().entries(), &reference_b13()[..]);
    let c12 = build_matrix(MatrixFamily::C3, 12, Some(3)).unwrap();
    assert_eq!(c12.entries(), &reference_c12()[..]);
}

#[test]
fn reference_kernels() {
    let k = left_kernel(&build_matrix(MatrixFamily::B2, 11, None).unwrap());
    assert_eq!(k.vectors, vec![ints(&[-4, 9, -6, 1])]);
    let k = left_kernel(&build_matrix(MatrixFamily::B2, 13, None).unwrap());
    assert_eq!(k.vectors, vec![ints(&[4, -25, 42, -25, 4])]);
    let c12 = build_matrix(MatrixFamily::C3, 12, Some(3)).unwrap();
    assert_eq!(left_kernel(&c12).vectors, vec![ints(&[20, 14, 20, -63, -63, 90])]);
    let r = right_kernel(&c12);
    assert_eq!(r.vectors, vec![ints(&[-5, 3, 0, 0, 0, 0])]);
    assert_eq!(r.labels[..2], [idx(&[3, 3, 6]), idx(&[3, 5, 4])]);
    assert_eq!(rank(&c12), 5);
    assert_eq!(rank(&build_matrix(MatrixFamily::C3, 10, Some(3)).unwrap()), 3);
}

#[test]
fn parity_and_argument_errors() {
    assert!(build_matrix(MatrixFamily::B2, 12, None).is_err());
    assert!(build_matrix(MatrixFamily::C3, 11, Some(3)).is_err());
    assert!(build_matrix(MatrixFamily::C3, 12, None).is_err());
    assert!(build_matrix(MatrixFamily::C3, 12, Some(4)).is_err());
    assert!(build_matrix(MatrixFamily::H3, 12, None).is_err());
    assert!("b9".parse::<MatrixFamily>().is_err());
    assert_eq!("c3".parse::<MatrixFamily>().unwrap(), MatrixFamily::C3);
}

#[test]
fn every_family_builds_and_kernels_annihilate() {
    for fam in ALL_FAMILIES {
        let weights: Vec<u32> =
            if fam.odd_weight() { (3..=21).step_by(2).collect() } else { (8..=20).step_by(2).collect() };
        let js: Vec<Option<u8>> = if fam.needs_j() { vec![Some(1), Some(2), Some(3)] } else { vec![None] };
        for &k in &weights {
            for &j in &js {
                let m = build_matrix(fam, k, j).unwrap();
                let r = rank(&m);
                let (lk, rk) = (left_kernel(&m), right_kernel(&m));
                assert_eq!(r + lk.dim(), m.nrows(), "{fam} {k}");
                assert_eq!(r + rk.dim(), m.ncols(), "{fam} {k}");
                for v in &lk.vectors {
                    assert!(left_times(&to_q(v), &m).iter().all(Zero::is_zero));
                }
                for v in &rk.vectors {
                    assert!(matrix_times(&m, &to_q(v)).iter().all(Zero::is_zero));
                }
                assert_eq!(r, oracle_rank(m.entries(), m.ncols()), "{fam} {k} rank");
            }
        }
    }
}

#[test]
fn factorizations() {
    for k in (8..=30).step_by(2) {
        let c = build_matrix(MatrixFamily::C3, k, Some(3)).unwrap();
        let b = build_matrix(MatrixFamily::B3, k, None).unwrap();
        let e = build_matrix(MatrixFamily::E3, k, None).unwrap();
        assert_eq!(c, b.mul(&e).unwrap(), "k={k}");
        let blocks: Vec<QMatrix> =
            (3..=k - 5).step_by(2).map(|m1| build_matrix(MatrixFamily::B2, k - m1, None).unwrap()).collect();
        assert_eq!(b.entries(), block_diagonal(&blocks).entries());
        let hat: Vec<QMatrix> =
            (3..=k - 3).step_by(2).map(|m1| build_matrix(MatrixFamily::B2hat, k - m1, None).unwrap()).collect();
        assert_eq!(build_matrix(MatrixFamily::B3hat, k, None).unwrap().entries(), block_diagonal(&hat).entries());
    }
    for k in (8..=20).step_by(2) {
        let f = build_matrix(MatrixFamily::C2Block, k, None).unwrap();
        for j in 1..=3 {
            let c = build_matrix(MatrixFamily::C3, k, Some(j)).unwrap();
            let h = build_matrix(MatrixFamily::H3, k, Some(j)).unwrap();
            assert_eq!(c, f.mul(&h).unwrap(), "k={k} j={j}");
        }
    }
}

#[test]
fn membership_examples() {
    let b12 = build_matrix(MatrixFamily::B3, 12, None).unwrap();
    let zero = LabelledVector::zeros(b12.col_labels().to_vec());
    let res = row_space_membership(&b12, &zero).unwrap();
    assert!(res.member);
    assert!(res.witness.unwrap().is_zero());
    // a nonzero right kernel vector is orthogonal to the row space, so it lies outside it
    let b11 = build_matrix(MatrixFamily::B2, 11, None).unwrap();
    let rk = right_kernel(&b11);
    assert_eq!(rk.dim(), 1);
    let outside = LabelledVector::new(b11.col_labels().to_vec(), to_q(&rk.vectors[0]));
    assert!(!row_space_membership(&b11, &outside).unwrap().member);
}

#[test]
fn cache_returns_identical_matrices() {
    let cache = MatrixCache::new();
    assert!(cache.is_empty());
    let a = cache.get(MatrixFamily::C3, 14, Some(2)).unwrap();
    let b = cache.get(MatrixFamily::C3, 14, Some(2)).unwrap();
    assert!(std::sync::Arc::ptr_eq(&a, &b));
    assert_eq!(cache.len(), 1);
    assert_eq!(*a, build_matrix(MatrixFamily::C3, 14, Some(2)).unwrap());
    assert_eq!(*cached_matrix(MatrixFamily::E3, 12, None).unwrap(), build_matrix(MatrixFamily::E3, 12, None).unwrap());
}
