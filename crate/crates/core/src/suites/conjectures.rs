//! Dimension tables for the conjectured generating series of kernel
//! dimensions and ranks.

use rayon::prelude::*;
use serde::Serialize;

use super::{yes_no, SuiteReport, Table};
use crate::arith::Series;
use crate::error::{contract, Result};
use crate::linalg::{intersect_row_spaces, left_kernel, rank};
use crate::matrices::{cached_matrix, MatrixFamily};

/// Observed and predicted values at one weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureRow {
    pub weight: u32,
    /// Quantity name, e.g. `dim ker C(3)`.
    pub quantity: String,
    pub observed: i64,
    pub predicted: i64,
}

impl ConjectureRow {
    pub fn matches(&self) -> bool {
        self.observed == self.predicted
    }
}

// S·E, S·O and E·O·O, where S is the cusp-form dimension series, E the
// even series x^2/(1-x^2) and O the odd series x^3/(1-x^2).
fn series(top: i64) -> (Series, Series, Series) {
    let (s, e, o) = (Series::cusp(top), Series::even(top), Series::odd(top));
    (s.mul(&e), s.mul(&o), e.mul(&o.mul(&o)))
}

/// Per-weight data: kernel dimensions of `C^(j)`, `B^(3)`, `E^(3)`, the
/// dimension of `Im B ∩ ker E`, and the rank of `C^(eee)`.
fn weight_rows(k: u32, se: &Series, so: &Series, eoo: &Series) -> Result<(Vec<ConjectureRow>, bool)> {
    let ki = k as i64;
    let kc: Vec<usize> = (1..=3)
        .map(|j| cached_matrix(MatrixFamily::C3, k, Some(j)).map(|m| left_kernel(&m).dim()))
        .collect::<Result<_>>()?;
    let b = cached_matrix(MatrixFamily::B3, k, None)?;
    let e = cached_matrix(MatrixFamily::E3, k, None)?;
    let kb = left_kernel(&b).dim();
    let ker_e = left_kernel(&e);
    let im_b: Vec<_> = b.entries().to_vec();
    let cap = intersect_row_spaces(&im_b, &ker_e.rational_rows(), b.ncols()).len();
    let ceee = rank(&*cached_matrix(MatrixFamily::Ceee, k, None)?);
    let odd_pair = so.coeff(ki - 1) + so.coeff(ki + 1);
    let row =
        |q: &str, o: usize, p: i64| ConjectureRow { weight: k, quantity: q.into(), observed: o as i64, predicted: p };
    let rows = vec![
        row("dim ker C(1)", kc[0], se.coeff(ki + 2)),
        row("dim ker C(2)", kc[1], se.coeff(ki)),
        row("dim ker C(3)", kc[2], se.coeff(ki + 2) + odd_pair),
        row("dim ker B(3)", kb, odd_pair),
        row("dim ker E(3)", ker_e.dim(), se.coeff(ki + 2)),
        row("dim Im B ∩ ker E", cap, ker_e.dim() as i64),
        row("rank C(eee)", ceee, eoo.coeff(ki) - se.coeff(ki)),
    ];
    // Exact bookkeeping: v·C = 0 iff v·B ∈ ker E, so
    // dim ker C = dim ker B + dim (Im B ∩ ker E).
    Ok((rows, kc[2] == kb + cap))
}

/// Observed dimensions against the conjectured series for even
/// `12 <= k <= max_weight`. Series disagreements mark the report as a
/// mismatch; a failure of the exact kernel bookkeeping marks it failed.
pub fn conjecture_report(max_weight: u32) -> Result<SuiteReport> {
    if max_weight < 12 || max_weight % 2 == 1 {
        return contract(format!("max_weight must be even and at least 12, got {max_weight}"));
    }
    let top = max_weight as i64 + 4;
    let (se, so, eoo) = series(top);
    let weights: Vec<u32> = (12..=max_weight).step_by(2).collect();
    let results: Vec<_> = weights.par_iter().map(|&k| weight_rows(k, &se, &so, &eoo)).collect();
    let mut report = SuiteReport::new("conjectures").param("max_weight", max_weight);
    let mut t = Table::new("dimension table", &["k", "quantity", "observed", "predicted", "match"]);
    let mut book = Table::new("dim ker C(3) = dim ker B(3) + dim (Im B ∩ ker E)", &["k", "holds"]);
    for (k, r) in weights.iter().zip(results) {
        let (rows, holds) = r?;
        for row in rows {
            report.observe(row.matches());
            t.push(vec![
                k.to_string(),
                row.quantity.clone(),
                row.observed.to_string(),
                row.predicted.to_string(),
                if row.matches() { "match" } else { "mismatch" }.into(),
            ]);
        }
        report.check(holds);
        book.push(vec![k.to_string(), yes_no(holds)]);
    }
    report.tables.push(t);
    report.tables.push(book);
    Ok(report)
}

/// Raw rows for one weight, without a report wrapper.
pub fn conjecture_rows(weight: u32) -> Result<Vec<ConjectureRow>> {
    if weight % 2 == 1 {
        return contract(format!("conjecture rows are tabulated at even weight, got {weight}"));
    }
    let (se, so, eoo) = series(weight as i64 + 4);
    Ok(weight_rows(weight, &se, &so, &eoo)?.0)
}
