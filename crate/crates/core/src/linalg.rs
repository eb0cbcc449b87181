//! Exact matrices over the rationals with index labels, fraction-free
//! Gauss–Jordan elimination, rank, canonical kernels and row-space membership.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rational, int, parse_rational, primitive_integer, rational_vec, Rational};
use crate::error::{contract, Error, Result};
use crate::index::Index;

/// A rational vector whose coordinates are labelled by indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledVector {
    labels: Vec<Index>,
    #[serde(with = "rational_vec")]
    values: Vec<Rational>,
}

impl LabelledVector {
    pub fn new(labels: Vec<Index>, values: Vec<Rational>) -> Self {
        assert_eq!(labels.len(), values.len(), "label/value length mismatch");
        LabelledVector { labels, values }
    }

    pub fn zeros(labels: Vec<Index>) -> Self {
        let n = labels.len();
        LabelledVector { labels, values: vec![Rational::zero(); n] }
    }

    pub fn labels(&self) -> &[Index] {
        &self.labels
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn get(&self, idx: &Index) -> Option<&Rational> {
        self.labels.iter().position(|l| l == idx).map(|p| &self.values[p])
    }

    /// Keep only the coordinates whose labels appear in `labels`, in that order.
    pub fn restrict(&self, labels: &[Index]) -> LabelledVector {
        let values = labels.iter().map(|l| self.get(l).cloned().unwrap_or_else(Rational::zero)).collect();
        LabelledVector::new(labels.to_vec(), values)
    }

    pub fn primitive(&self) -> Vec<BigInt> {
        primitive_integer(&self.values)
    }

    /// `v·M`.
    pub fn mul_matrix(&self, m: &QMatrix) -> Result<LabelledVector> {
        if self.labels != m.row_labels {
            return contract("vector labels do not match matrix row labels");
        }
        let mut out = vec![Rational::zero(); m.ncols()];
        for (i, vi) in self.values.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                let a = &m.entries[i][j];
                if !a.is_zero() {
                    *o += vi * a;
                }
            }
        }
        Ok(LabelledVector::new(m.col_labels.clone(), out))
    }
}

/// Dense exact matrix with index labels on rows and columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    row_labels: Vec<Index>,
    col_labels: Vec<Index>,
    entries: Vec<Vec<Rational>>,
}

impl QMatrix {
    pub fn new(row_labels: Vec<Index>, col_labels: Vec<Index>, entries: Vec<Vec<Rational>>) -> Result<Self> {
        if entries.len() != row_labels.len() || entries.iter().any(|r| r.len() != col_labels.len()) {
            return contract("matrix dimensions do not match label counts");
        }
        Ok(QMatrix { row_labels, col_labels, entries })
    }

    pub fn from_fn(row_labels: &[Index], col_labels: &[Index], mut f: impl FnMut(&Index, &Index) -> Rational) -> Self {
        let entries = row_labels.iter().map(|m| col_labels.iter().map(|n| f(m, n)).collect()).collect();
        QMatrix { row_labels: row_labels.to_vec(), col_labels: col_labels.to_vec(), entries }
    }

    pub fn zeros(row_labels: Vec<Index>, col_labels: Vec<Index>) -> Self {
        let entries = vec![vec![Rational::zero(); col_labels.len()]; row_labels.len()];
        QMatrix { row_labels, col_labels, entries }
    }

    pub fn nrows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn row_labels(&self) -> &[Index] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[Index] {
        &self.col_labels
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let entries =
            (0..self.ncols()).map(|j| (0..self.nrows()).map(|i| self.entries[i][j].clone()).collect()).collect();
        QMatrix { row_labels: self.col_labels.clone(), col_labels: self.row_labels.clone(), entries }
    }

    /// `self · other`; the inner labels must agree.
    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.col_labels != other.row_labels {
            return contract("matrix product: inner labels differ");
        }
        let mut entries = vec![vec![Rational::zero(); other.ncols()]; self.nrows()];
        for (i, row) in self.entries.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in other.entries[k].iter().enumerate() {
                    if !b.is_zero() {
                        entries[i][j] += a * b;
                    }
                }
            }
        }
        Ok(QMatrix { row_labels: self.row_labels.clone(), col_labels: other.col_labels.clone(), entries })
    }

    /// Submatrix with the given row and column positions.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        QMatrix {
            row_labels: rows.iter().map(|&i| self.row_labels[i].clone()).collect(),
            col_labels: cols.iter().map(|&j| self.col_labels[j].clone()).collect(),
            entries: rows.iter().map(|&i| cols.iter().map(|&j| self.entries[i][j].clone()).collect()).collect(),
        }
    }

    /// Entries as a primitive-free integer matrix; each row is scaled by the
    /// lcm of its denominators (row scaling preserves rank and null space).
    fn integer_rows(rows: &[Vec<Rational>]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| {
                let den = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                r.iter().map(|x| (x * int(den.clone())).to_integer()).collect()
            })
            .collect()
    }

    /// CSV with a header of column labels and one labelled line per row.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("\"\"");
        for c in &self.col_labels {
            write!(s, ",\"{c}\"").unwrap();
        }
        s.push('\n');
        for (l, row) in self.row_labels.iter().zip(&self.entries) {
            write!(s, "\"{l}\"").unwrap();
            for x in row {
                write!(s, ",{}", fmt_rational(x)).unwrap();
            }
            s.push('\n');
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<QMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty CSV".into()))?;
        let split = |line: &str| -> Vec<String> {
            // Labels are quoted and contain commas; split on commas outside quotes.
            let mut out = Vec::new();
            let mut cur = String::new();
            let mut quoted = false;
            for ch in line.chars() {
                match ch {
                    '"' => quoted = !quoted,
                    ',' if !quoted => out.push(std::mem::take(&mut cur)),
                    _ => cur.push(ch),
                }
            }
            out.push(cur);
            out
        };
        let col_labels = split(header)[1..].iter().map(|s| s.parse::<Index>()).collect::<Result<Vec<_>>>()?;
        let mut row_labels = Vec::new();
        let mut entries = Vec::new();
        for line in lines {
            let cells = split(line);
            row_labels.push(cells[0].parse::<Index>()?);
            entries.push(cells[1..].iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>()?);
        }
        QMatrix::new(row_labels, col_labels, entries)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rows": self.row_labels,
            "cols": self.col_labels,
            "entries": self.entries.iter().map(|r| r.iter().map(fmt_rational).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<QMatrix> {
        #[derive(Deserialize)]
        struct Repr {
            rows: Vec<Index>,
            cols: Vec<Index>,
            entries: Vec<Vec<String>>,
        }
        let r: Repr = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let entries = r
            .entries
            .iter()
            .map(|row| row.iter().map(|c| parse_rational(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        QMatrix::new(r.rows, r.cols, entries)
    }
}

/// Reduced echelon form over the integers. Every pivot equals `det`, and
/// non-pivot columns carry `det` times the rational reduced echelon entries.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
    pub det: BigInt,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Fraction-free Gauss–Jordan elimination (Bareiss updates applied to every
/// row, so all pivots end equal). With `pivot_limit`, pivots are only sought
/// in columns `< pivot_limit`; later columns are carried along (augmented part).
pub fn fraction_free_rref(mut a: Vec<Vec<BigInt>>, ncols: usize, pivot_limit: Option<usize>) -> Echelon {
    let nrows = a.len();
    let limit = pivot_limit.unwrap_or(ncols).min(ncols);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..limit {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = std::mem::take(&mut a[r]);
        let piv = pivot_row[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for (x, pr) in row.iter_mut().zip(&pivot_row) {
                let v = &piv * &*x - &f * pr;
                let (q, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact fraction-free division");
                *x = q;
            }
        }
        a[r] = pivot_row;
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { rows: a, pivots, det: prev }
}

fn echelon_of(rows: &[Vec<Rational>], ncols: usize) -> Echelon {
    fraction_free_rref(QMatrix::integer_rows(rows), ncols, None)
}

/// Exact rank.
pub fn rank(m: &QMatrix) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    // Eliminate along the shorter side.
    if m.nrows() <= m.ncols() {
        echelon_of(&m.entries, m.ncols()).rank()
    } else {
        echelon_of(&m.transpose().entries, m.nrows()).rank()
    }
}

/// Rank of a list of rational row vectors of common length `ncols`.
pub fn rank_of_rows(rows: &[Vec<Rational>], ncols: usize) -> usize {
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    echelon_of(rows, ncols).rank()
}

/// Null-space basis of the rows, one vector per free column `f`: entry `f`
/// positive, entries after `f` zero, scaled to a primitive integer vector.
pub fn null_space_rows(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return (0..ncols).map(|f| (0..ncols).map(|j| BigInt::from((j == f) as i32)).collect()).collect();
    }
    let ech = echelon_of(rows, ncols);
    let mut is_pivot = vec![None; ncols];
    for (i, &c) in ech.pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let mut out = Vec::new();
    for f in 0..ncols {
        if is_pivot[f].is_some() {
            continue;
        }
        let mut v = vec![BigInt::zero(); ncols];
        v[f] = ech.det.clone();
        for (i, &c) in ech.pivots.iter().enumerate() {
            v[c] = -ech.rows[i][f].clone();
        }
        out.push(make_primitive(v));
    }
    out
}

/// Divide by the content and make the last nonzero entry positive.
pub fn make_primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let negate = v.iter().rev().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    v.into_iter().map(|x| if negate { -(x / &g) } else { x / &g }).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Canonical basis of a left or right null space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelBasis {
    pub side: Side,
    pub labels: Vec<Index>,
    #[serde(with = "bigint_rows")]
    pub vectors: Vec<Vec<BigInt>>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn labelled(&self) -> Vec<LabelledVector> {
        self.vectors
            .iter()
            .map(|v| LabelledVector::new(self.labels.clone(), v.iter().map(|x| int(x.clone())).collect()))
            .collect()
    }

    pub fn rational_rows(&self) -> Vec<Vec<Rational>> {
        self.vectors.iter().map(|v| v.iter().map(|x| int(x.clone())).collect()).collect()
    }
}

mod bigint_rows {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.into_iter().map(|r| r.into_iter().map(|x| x.parse().map_err(serde::de::Error::custom)).collect()).collect()
    }
}

/// Basis of `{v : v·M = 0}`, labelled by the rows of `M`.
pub fn left_kernel(m: &QMatrix) -> KernelBasis {
    let t = m.transpose();
    KernelBasis { side: Side::Left, labels: m.row_labels.clone(), vectors: null_space_rows(&t.entries, m.nrows()) }
}

/// Basis of `{v : M·v = 0}`, labelled by the columns of `M`.
pub fn right_kernel(m: &QMatrix) -> KernelBasis {
    KernelBasis { side: Side::Right, labels: m.col_labels.clone(), vectors: null_space_rows(&m.entries, m.ncols()) }
}

/// Outcome of solving `w·M = v`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<LabelledVector>,
}

/// Decide whether `v` lies in the row space of `M` and return a preimage.
pub fn row_space_membership(m: &QMatrix, v: &LabelledVector) -> Result<Membership> {
    if v.labels() != m.col_labels() {
        return contract("row_space_membership: vector labels differ from matrix column labels");
    }
    let nr = m.nrows();
    // Solve M^T w = v^T: one equation per column of M, augmented by v.
    let aug: Vec<Vec<Rational>> = (0..m.ncols())
        .map(|j| {
            let mut row: Vec<Rational> = (0..nr).map(|i| m.entries[i][j].clone()).collect();
            row.push(v.values()[j].clone());
            row
        })
        .collect();
    if aug.is_empty() {
        return Ok(Membership { member: true, witness: Some(LabelledVector::zeros(m.row_labels.clone())) });
    }
    let ech = fraction_free_rref(QMatrix::integer_rows(&aug), nr + 1, None);
    // A pivot in the augmented column means the system is inconsistent.
    if ech.pivots.last() == Some(&nr) {
        return Ok(Membership { member: false, witness: None });
    }
    let mut w = vec![Rational::zero(); nr];
    for (i, &c) in ech.pivots.iter().enumerate() {
        w[c] = Rational::new(ech.rows[i][nr].clone(), ech.det.clone());
    }
    Ok(Membership { member: true, witness: Some(LabelledVector::new(m.row_labels.clone(), w)) })
}

/// Basis (as rational rows) of the intersection of two row spaces.
pub fn intersect_row_spaces(u: &[Vec<Rational>], v: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    if u.is_empty() || v.is_empty() {
        return Vec::new();
    }
    // (a, b) with a·U = b·V, i.e. the left kernel of [U; -V].
    let mut stacked: Vec<Vec<Rational>> = u.to_vec();
    stacked.extend(v.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
    let t: Vec<Vec<Rational>> = (0..ncols).map(|j| stacked.iter().map(|r| r[j].clone()).collect()).collect();
    let coeffs = null_space_rows(&t, stacked.len());
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for a in coeffs {
        let mut row = vec![Rational::zero(); ncols];
        for (k, ak) in a.iter().take(u.len()).enumerate() {
            if ak.is_zero() {
                continue;
            }
            for j in 0..ncols {
                row[j] += int(ak.clone()) * &u[k][j];
            }
        }
        out.push(row);
    }
    // Drop dependent combinations (U or V rows may be dependent).
    row_basis(&out, ncols)
}

/// A basis of the row space, as the nonzero rows of the reduced echelon form.
pub fn row_basis(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let ech = echelon_of(rows, ncols);
    ech.rows.iter().map(|r| r.iter().map(|x| Rational::new(x.clone(), ech.det.clone())).collect()).collect()
}

/// Reduced echelon rows scaled to primitive integers with positive pivots.
pub fn canonical_row_basis(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<BigInt>> {
    row_basis(rows, ncols).iter().map(|r| primitive_integer(r)).collect()
}

/// Block-diagonal assembly (labels taken from the blocks in order).
pub fn block_diagonal(blocks: &[QMatrix]) -> QMatrix {
    let rows: Vec<Index> = blocks.iter().flat_map(|b| b.row_labels.iter().cloned()).collect();
    let cols: Vec<Index> = blocks.iter().flat_map(|b| b.col_labels.iter().cloned()).collect();
    let mut out = QMatrix::zeros(rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for b in blocks {
        for i in 0..b.nrows() {
            for j in 0..b.ncols() {
                out.entries[r0 + i][c0 + j] = b.entries[i][j].clone();
            }
        }
        r0 += b.nrows();
        c0 += b.ncols();
    }
    out
}
