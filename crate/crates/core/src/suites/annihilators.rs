//! Period polynomials as left annihilators: lifted even period polynomials
//! against `C^(j)`, the `Q±` images against `B^(3)`, derivatives of odd
//! period polynomials against `C^(1)`, the `L` map, and the Eisenstein
//! kernel vectors of `B̂_k`.

use num_traits::Zero;

use super::{yes_no, SuiteReport, Table};
use crate::arith::{fmt_rational, Rational};
use crate::error::{contract, Result};
use crate::index::Index;
use crate::linalg::{rank_of_rows, row_space_membership, LabelledVector, QMatrix};
use crate::matrices::{cached_matrix, MatrixFamily};
use crate::period::{eisenstein_kernel_vector, lifted_basis, period_basis, LiftedFamily, PeriodKind};
use crate::poly::{vectorize, BiLaurentPoly, TriLaurentPoly};

fn fmt_vec(v: &LabelledVector) -> String {
    let ints = v.primitive();
    format!("({})", ints.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn annihilates(v: &LabelledVector, m: &QMatrix) -> Result<bool> {
    Ok(v.mul_matrix(m)?.is_zero())
}

// Coefficient of x1^{i-1} x2^{j-1} x3^{l-1}; indices below 1 read zero
// unless the polynomial carries that Laurent layer.
fn a_coeff(f: &TriLaurentPoly, i: i64, j: i64, l: i64) -> Rational {
    f.coeff(&[(i - 1) as i32, (j - 1) as i32, (l - 1) as i32])
}

/// Image of a `Q+` element on `I_k^(3)`: `a+_n = n3 · a_{(n1, n3+1, n2)}`.
pub fn q_plus_image(f: &TriLaurentPoly, labels: &[Index]) -> LabelledVector {
    let values = labels
        .iter()
        .map(|n| {
            let (n1, n2, n3) = (n.get(0) as i64, n.get(1) as i64, n.get(2) as i64);
            Rational::from_integer(n3.into()) * a_coeff(f, n1, n3 + 1, n2)
        })
        .collect();
    LabelledVector::new(labels.to_vec(), values)
}

/// Image of a `Q-` element on `I_k^(3)`: `a-_n = a_{(n1, n2-1, n3)}`.
pub fn q_minus_image(f: &TriLaurentPoly, labels: &[Index]) -> LabelledVector {
    let values = labels.iter().map(|n| a_coeff(f, n.get(0) as i64, n.get(1) as i64 - 1, n.get(2) as i64)).collect();
    LabelledVector::new(labels.to_vec(), values)
}

/// `(x3/x2)·∂p/∂x1` for an odd period polynomial `p(x1, x2)`, on `I_k^(3)`.
pub fn odd_derivative_vector(p: &BiLaurentPoly, labels: &[Index]) -> Result<LabelledVector> {
    let lifted = TriLaurentPoly::from_terms(p.terms().map(|(e, c)| ([e[0], e[1], 0], c.clone())))?;
    let q = lifted.derivative(0).shift([0, -1, 1])?;
    let values = labels.iter().map(|n| a_coeff(&q, n.get(0) as i64, n.get(1) as i64, n.get(2) as i64)).collect();
    Ok(LabelledVector::new(labels.to_vec(), values))
}

/// Checks at one even weight:
/// (a) lifted `P+` vectors left-annihilate `C^(j)` (all `j` when `j` is
/// `None`); (b) `Q+` and `Q-` images left-annihilate `B^(3)` and are jointly
/// independent; (c) derivatives of odd period polynomials left-annihilate
/// `C^(1)`.
pub fn verify_period_annihilators(weight: u32, j: Option<u8>) -> Result<SuiteReport> {
    if weight % 2 == 1 {
        return contract(format!("period annihilators live in even weight, got {weight}"));
    }
    let js: Vec<u8> = match j {
        Some(j @ 1..=3) => vec![j],
        Some(j) => return contract(format!("j must be 1, 2 or 3, got {j}")),
        None => vec![1, 2, 3],
    };
    let mut report = SuiteReport::new("period-annihilators").param("weight", weight).param("j", j);
    if weight < 8 {
        report.notes.push("I_k^(3) is empty below weight 8; nothing to check".into());
        return Ok(report);
    }
    let b = cached_matrix(MatrixFamily::B3, weight, None)?;
    let labels = b.row_labels().to_vec();

    // (a)
    let pplus = lifted_basis(LiftedFamily::PPlus, weight)?;
    let mut t = Table::new("P+ against C(j)", &["layer", "vector", "j", "annihilates"]);
    let mut rows_a = Vec::new();
    for el in &pplus.basis {
        let v = vectorize(&el.poly, weight)?.restrict(&labels);
        for &jj in &js {
            let c = cached_matrix(MatrixFamily::C3, weight, Some(jj))?;
            let ok = annihilates(&v, &c)?;
            report.check(ok);
            t.push(vec![el.layer.to_string(), fmt_vec(&v), jj.to_string(), yes_no(ok)]);
        }
        rows_a.push(v.values().to_vec());
    }
    let inj = rank_of_rows(&rows_a, labels.len()) == pplus.dim;
    report.check(inj);
    report.notes.push(format!("P+ has dimension {} and its vectors are independent: {}", pplus.dim, yes_no(inj)));
    report.tables.push(t);

    // (b)
    let mut t = Table::new("Q+ and Q- images against B(3)", &["family", "layer", "vector", "annihilates"]);
    let mut stacked = Vec::new();
    for (family, image) in [
        (LiftedFamily::QPlus, q_plus_image as fn(&TriLaurentPoly, &[Index]) -> LabelledVector),
        (LiftedFamily::QMinus, q_minus_image),
    ] {
        for el in &lifted_basis(family, weight)?.basis {
            let v = image(&el.poly, &labels);
            let ok = annihilates(&v, &b)?;
            report.check(ok);
            t.push(vec![family.name().into(), el.layer.to_string(), fmt_vec(&v), yes_no(ok)]);
            stacked.push(v.values().to_vec());
        }
    }
    let inj = rank_of_rows(&stacked, labels.len()) == stacked.len();
    report.check(inj);
    report.notes.push(format!("combined Q+ and Q- map on {} elements is injective: {}", stacked.len(), yes_no(inj)));
    report.tables.push(t);

    // (c)
    let c1 = cached_matrix(MatrixFamily::C3, weight, Some(1))?;
    let mut t = Table::new("odd period derivatives against C(1)", &["vector", "annihilates"]);
    for p in &period_basis(PeriodKind::Odd, weight)?.basis {
        let v = odd_derivative_vector(p, &labels)?;
        let ok = !v.is_zero() && annihilates(&v, &c1)?;
        // An observation rather than a theorem: disagreement is a mismatch.
        report.observe(ok);
        t.push(vec![fmt_vec(&v), yes_no(ok)]);
    }
    report.tables.push(t);
    Ok(report)
}

/// For each `P̂+` element: `w = ρ(p̂)·L` lies in the left kernel of `Ê^(3)`
/// with vanishing `n3 = 0` part, and its restriction to `I_k^(3)` lies in
/// the row space of `B^(3)`; the witness `v` with `v·B = w` is reported and
/// checked to left-annihilate `C^(3)`.
pub fn verify_l_map(weight: u32) -> Result<SuiteReport> {
    if weight % 2 == 1 || weight < 12 {
        return contract(format!("the L map is checked at even weight >= 12, got {weight}"));
    }
    let mut report = SuiteReport::new("l-map").param("weight", weight);
    let l = cached_matrix(MatrixFamily::L, weight, None)?;
    let ehat = cached_matrix(MatrixFamily::E3hat, weight, None)?;
    let b = cached_matrix(MatrixFamily::B3, weight, None)?;
    let c = cached_matrix(MatrixFamily::C3, weight, Some(3))?;
    let inner = b.row_labels().to_vec();
    let mut t = Table::new(
        "L map images",
        &["layer", "w", "w E = 0", "n3 = 0 part vanishes", "in Im B", "witness v", "v C = 0"],
    );
    let phat = lifted_basis(LiftedFamily::PHatPlus, weight)?;
    let mut images = Vec::new();
    for el in &phat.basis {
        let w = vectorize(&el.poly, weight)?.mul_matrix(&l)?;
        images.push(w.values().to_vec());
        let in_ker_e = w.mul_matrix(&ehat)?.is_zero();
        let zero_layer = w.labels().iter().zip(w.values()).all(|(n, x)| n.get(2) != 0 || x.is_zero());
        let restricted = w.restrict(&inner);
        let m = row_space_membership(&b, &restricted)?;
        let (wit, v_ok) = match &m.witness {
            Some(v) => (fmt_vec(v), annihilates(v, &c)?),
            None => ("-".to_string(), false),
        };
        report.check(in_ker_e && zero_layer && m.member && v_ok);
        t.push(vec![
            el.layer.to_string(),
            fmt_vec(&restricted),
            yes_no(in_ker_e),
            yes_no(zero_layer),
            yes_no(m.member),
            wit,
            yes_no(v_ok),
        ]);
    }
    report.tables.push(t);
    // Injectivity is measured, not asserted.
    let r = rank_of_rows(&images, l.ncols());
    report.notes.push(format!("rank of the L images is {r} for dim Phat+ = {}", phat.dim));
    Ok(report)
}

/// For odd `k <= max_weight`: the Eisenstein vector left-annihilates `B̂_k`
/// and has nonzero `(k, 0)` entry.
pub fn verify_eisenstein_vectors(max_weight: u32) -> Result<SuiteReport> {
    if max_weight < 3 {
        return contract(format!("max_weight must be at least 3, got {max_weight}"));
    }
    let mut report = SuiteReport::new("eisenstein-vectors").param("max_weight", max_weight);
    let mut t = Table::new("Eisenstein kernel vectors", &["k", "(k,0) entry", "annihilates B2hat"]);
    for k in (3..=max_weight).step_by(2) {
        let v = eisenstein_kernel_vector(k)?;
        let m = cached_matrix(MatrixFamily::B2hat, k, None)?;
        let top = v.get(&Index::new(vec![k, 0])).cloned().unwrap_or_else(Rational::zero);
        let ok = annihilates(&v, &m)?;
        report.check(ok && !top.is_zero());
        t.push(vec![k.to_string(), fmt_rational(&top), yes_no(ok)]);
    }
    report.tables.push(t);
    Ok(report)
}
