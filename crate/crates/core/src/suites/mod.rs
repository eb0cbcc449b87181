//! Verification suites: each builds its inputs from the other modules,
//! checks a family of identities exactly (or within a numeric bound) and
//! returns a structured, reproducible report.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::numeric::NumericResult;

mod annihilators;
mod conjectures;
mod identities;
mod relations;

pub use annihilators::{
    odd_derivative_vector, q_minus_image, q_plus_image, verify_eisenstein_vectors, verify_l_map,
    verify_period_annihilators,
};
pub use conjectures::{conjecture_report, conjecture_rows, ConjectureRow};
pub use identities::{
    symbol_reduction_defect, verify_factorizations, verify_lambda_kz, verify_sigma_identity, verify_tau_double_shuffle,
};
pub use relations::{
    parity_depth2, parity_depth3_coeffs, relation_even_weight, relation_odd_weight, HRows, OddPart, Relation,
    RelationKind, RelationReport, RelationTerm,
};

/// Library version embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// A conjectural or observational check disagreed.
    Mismatch,
    Fail,
}

impl Status {
    /// Worse of two statuses (`Fail` > `Mismatch` > `Pass`).
    pub fn and(self, other: Status) -> Status {
        self.max(other)
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// A named table of string cells.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// A numeric residual with the threshold it was checked against.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Residual {
    pub label: String,
    #[serde(flatten)]
    pub result: NumericResult,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub version: &'static str,
    pub params: BTreeMap<String, serde_json::Value>,
    pub status: Status,
    pub tables: Vec<Table>,
    pub residuals: Vec<Residual>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            version: VERSION,
            params: BTreeMap::new(),
            status: Status::Pass,
            tables: Vec::new(),
            residuals: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.into(), serde_json::to_value(value).expect("serializable parameter"));
        self
    }

    pub fn check(&mut self, ok: bool) {
        self.status = self.status.and(Status::from_bool(ok));
    }

    pub fn observe(&mut self, ok: bool) {
        if !ok {
            self.status = self.status.and(Status::Mismatch);
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Short human-readable rendering.
    pub fn summary(&self) -> String {
        use std::fmt::Write;
        let mut s = String::new();
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Mismatch => "MISMATCH",
            Status::Fail => "FAIL",
        };
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        writeln!(s, "{} [{}] {}", self.suite, params.join(" "), status).unwrap();
        for t in &self.tables {
            writeln!(s, "  {}", t.name).unwrap();
            writeln!(s, "    {}", t.columns.join(" | ")).unwrap();
            for r in &t.rows {
                writeln!(s, "    {}", r.join(" | ")).unwrap();
            }
        }
        for r in &self.residuals {
            writeln!(
                s,
                "  {}: value {} bound {:e} ({})",
                r.label,
                r.result.value,
                r.result.bound,
                if r.pass { "ok" } else { "FAILED" }
            )
            .unwrap();
        }
        for n in &self.notes {
            writeln!(s, "  note: {n}").unwrap();
        }
        s
    }
}

pub(crate) fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}
