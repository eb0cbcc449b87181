//! Linear relations among double zeta values attached to cusp-form period
//! polynomials, the depth-2 parity relation, and the depth-3 `h` rows.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use super::{Residual, Status, SuiteReport, Table};
use crate::arith::{dim_cusp, int, primitive_integer, rational_str, Rational};
use crate::error::{contract, Result};
use crate::index::Index;
use crate::kernels::{e_raw, tau};
use crate::matrices::{cached_matrix, MatrixFamily};
use crate::numeric::{describe_relation, eval_relation, NumericResult, PrecisionBudget, ZetaTerm};
use crate::period::{cusp_coeffs, period_basis, CoeffKind, PeriodKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RelationKind {
    /// `sum a_{r,s} ζ^{1/2}(r,s) = 0`, `r, s` odd.
    Even,
    /// `sum b_{r,s} ζ^{1/2}(r,s+1) = 0`, `r, s` odd.
    OddI,
    /// `sum c_{r,s} ζ^{1/2}(r,s) = 0`, `r` odd, `s` even.
    OddIi,
    /// Depth-2 parity: `ζ(n1,n2)` in terms of products and `ζ(N)`.
    Parity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OddPart {
    I,
    II,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationTerm {
    pub term: ZetaTerm,
    #[serde(with = "rational_str")]
    pub coeff: Rational,
}

/// One relation `sum coeff · term = 0`, zero coefficients dropped.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Relation {
    pub terms: Vec<RelationTerm>,
    /// Coefficients scaled to the primitive integer vector on the same
    /// positive ray.
    #[serde(serialize_with = "ser_ints")]
    pub primitive: Vec<BigInt>,
    pub text: String,
    pub residual: Option<NumericResult>,
    pub pass: Option<bool>,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl Relation {
    fn new(pairs: Vec<(ZetaTerm, Rational)>) -> Self {
        let pairs: Vec<_> = pairs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let coeffs: Vec<Rational> = pairs.iter().map(|(_, c)| c.clone()).collect();
        Relation {
            primitive: primitive_integer(&coeffs),
            text: format!("{} = 0", describe_relation(&pairs)),
            terms: pairs.into_iter().map(|(term, coeff)| RelationTerm { term, coeff }).collect(),
            residual: None,
            pass: None,
        }
    }

    pub fn pairs(&self) -> Vec<(ZetaTerm, Rational)> {
        self.terms.iter().map(|t| (t.term, t.coeff.clone())).collect()
    }

    /// Coefficient of one term, zero if absent.
    pub fn coeff(&self, term: ZetaTerm) -> Rational {
        self.terms.iter().find(|t| t.term == term).map_or_else(Rational::zero, |t| t.coeff.clone())
    }

    fn attach(&mut self, budget: &PrecisionBudget) -> Result<()> {
        let r = eval_relation(&self.pairs(), budget)?;
        self.pass = Some(r.passes(budget.target_error()));
        self.residual = Some(r);
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelationReport {
    pub kind: RelationKind,
    pub weight: u32,
    pub relations: Vec<Relation>,
    /// Target residual when numeric checking was requested.
    pub threshold: Option<f64>,
    pub status: Status,
}

impl RelationReport {
    fn finish(
        kind: RelationKind,
        weight: u32,
        mut relations: Vec<Relation>,
        budget: Option<&PrecisionBudget>,
    ) -> Result<Self> {
        let mut status = Status::Pass;
        if let Some(b) = budget {
            for r in &mut relations {
                r.attach(b)?;
                status = status.and(Status::from_bool(r.pass == Some(true)));
            }
        }
        Ok(RelationReport { kind, weight, relations, threshold: budget.map(|b| b.target_error()), status })
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }
}

fn check_cusp_weight(weight: u32) -> Result<bool> {
    if weight % 2 == 1 {
        return contract(format!("cusp-form relations need even weight, got {weight}"));
    }
    Ok(dim_cusp(weight) > 0)
}

/// One relation `sum a_{r,s} ζ^{1/2}(r,s) = 0` (`r >= 1`, `s >= 3` odd) per
/// cusp-even basis polynomial; with a budget each carries its residual.
pub fn relation_even_weight(weight: u32, budget: Option<&PrecisionBudget>) -> Result<RelationReport> {
    let mut relations = Vec::new();
    if check_cusp_weight(weight)? {
        for p in &period_basis(PeriodKind::CuspEven, weight)?.basis {
            let a = cusp_coeffs(CoeffKind::EvenA, p, weight)?;
            let pairs = (1..=weight - 3)
                .step_by(2)
                .map(|r| (ZetaTerm::Half(r, weight - r), a[&(r, weight - r)].clone()))
                .collect();
            relations.push(Relation::new(pairs));
        }
    }
    RelationReport::finish(RelationKind::Even, weight, relations, budget)
}

/// Part I: `sum b_{r,s} ζ^{1/2}(r,s+1) = 0` over odd `r + s = k` from each
/// odd period polynomial. Part II: `sum c_{r,s} ζ^{1/2}(r,s) = 0` over odd
/// `r`, even `s >= 2`, `r + s = k - 1`, from each cusp-even polynomial.
pub fn relation_odd_weight(weight: u32, part: OddPart, budget: Option<&PrecisionBudget>) -> Result<RelationReport> {
    let mut relations = Vec::new();
    let kind = match part {
        OddPart::I => RelationKind::OddI,
        OddPart::II => RelationKind::OddIi,
    };
    if check_cusp_weight(weight)? {
        match part {
            OddPart::I => {
                for p in &period_basis(PeriodKind::Odd, weight)?.basis {
                    let b = cusp_coeffs(CoeffKind::OddB, p, weight)?;
                    let pairs = (1..weight)
                        .step_by(2)
                        .map(|r| (ZetaTerm::Half(r, weight - r + 1), b[&(r, weight - r)].clone()))
                        .collect();
                    relations.push(Relation::new(pairs));
                }
            }
            OddPart::II => {
                for p in &period_basis(PeriodKind::CuspEven, weight)?.basis {
                    let c = cusp_coeffs(CoeffKind::EvenC, p, weight)?;
                    let pairs = (1..=weight - 3)
                        .step_by(2)
                        .map(|r| (ZetaTerm::Half(r, weight - 1 - r), c[&(r, weight - 1 - r)].clone()))
                        .collect();
                    relations.push(Relation::new(pairs));
                }
            }
        }
    }
    RelationReport::finish(kind, weight, relations, budget)
}

/// `ζ(n1,n2) - sum e((m1,m2),(n1,n2)) ζ(m1)ζ(m2) - τ(n1,n2) ζ(N) = 0` with
/// `m1 >= 3` odd and `m2 >= 2`, for odd `N = n1 + n2`.
pub fn parity_depth2(n1: u32, n2: u32, budget: Option<&PrecisionBudget>) -> Result<RelationReport> {
    let n = n1 + n2;
    if n1 < 1 || n2 < 2 {
        return contract(format!("parity relation needs n1 >= 1 and n2 >= 2, got ({n1},{n2})"));
    }
    if n % 2 == 0 {
        return contract(format!("parity relation needs odd weight, got {n}"));
    }
    let mut pairs = vec![(ZetaTerm::Double(n1, n2), int(1))];
    for m1 in (3..=n - 2).step_by(2) {
        let c = e_raw(&[m1, n - m1], &[n1, n2]);
        pairs.push((ZetaTerm::Product(m1, n - m1), -int(c)));
    }
    pairs.push((ZetaTerm::Single(n), -tau(n1, n2)));
    RelationReport::finish(RelationKind::Parity, n, vec![Relation::new(pairs)], budget)
}

/// `h(k, n)` rows of the depth-3 parity result, one row per
/// `n ∈ I_k^(j)` over the columns `I_k(aae)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HRows {
    pub weight: u32,
    pub j: u8,
    pub columns: Vec<Index>,
    pub rows: Vec<(Index, Vec<String>)>,
    /// `C^(j) = F·H^(j)` with `F` the block-diagonal depth-2 matrix.
    pub factorization_holds: bool,
    pub note: &'static str,
}

pub fn parity_depth3_coeffs(weight: u32, j: u8) -> Result<HRows> {
    if weight % 2 == 1 || weight < 8 {
        return contract(format!("depth-3 parity rows need even weight >= 8, got {weight}"));
    }
    let h = cached_matrix(MatrixFamily::H3, weight, Some(j))?;
    let f = cached_matrix(MatrixFamily::C2Block, weight, None)?;
    let c = cached_matrix(MatrixFamily::C3, weight, Some(j))?;
    // H3 is indexed (k, n); rows here are per n.
    let ht = h.transpose();
    let rows = ht
        .row_labels()
        .iter()
        .zip(ht.entries())
        .map(|(n, r)| (n.clone(), r.iter().map(crate::arith::fmt_rational).collect()))
        .collect();
    Ok(HRows {
        weight,
        j,
        columns: ht.col_labels().to_vec(),
        rows,
        factorization_holds: *c == f.mul(&h)?,
        note: "validated structurally through the factorization; the relations hold modulo depth 2 and are not checked numerically",
    })
}

impl RelationReport {
    /// The same content as a generic suite report.
    pub fn to_suite_report(&self, suite: &str) -> SuiteReport {
        let mut report = SuiteReport::new(suite).param("weight", self.weight).param("threshold", self.threshold);
        report.status = self.status;
        let mut t = Table::new("relations", &["relation", "primitive coefficients", "text"]);
        for (i, r) in self.relations.iter().enumerate() {
            let prim: Vec<String> = r.primitive.iter().map(|x| x.to_string()).collect();
            t.push(vec![(i + 1).to_string(), format!("({})", prim.join(",")), r.text.clone()]);
            if let (Some(res), Some(pass), Some(th)) = (&r.residual, r.pass, self.threshold) {
                report.residuals.push(Residual {
                    label: format!("relation {}", i + 1),
                    result: res.clone(),
                    threshold: th,
                    pass,
                });
            }
        }
        if self.relations.is_empty() {
            report.notes.push(format!("no cusp forms of weight {}; nothing to emit", self.weight));
        }
        report.tables.push(t);
        report
    }
}

impl HRows {
    pub fn to_suite_report(&self) -> SuiteReport {
        let mut report = SuiteReport::new("parity-depth3").param("weight", self.weight).param("j", self.j);
        report.check(self.factorization_holds);
        let mut cols = vec!["n".to_string()];
        cols.extend(self.columns.iter().map(|c| c.to_string()));
        let mut t = Table { name: "h(k, n)".into(), columns: cols, rows: Vec::new() };
        for (n, row) in &self.rows {
            let mut cells = vec![n.to_string()];
            cells.extend(row.iter().cloned());
            t.rows.push(cells);
        }
        report.tables.push(t);
        report.notes.push(self.note.into());
        report
    }
}
