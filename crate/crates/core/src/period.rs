//! Rational bases of period-polynomial spaces, their lifts to three
//! variables, the cusp-form coefficient extractions, and the Eisenstein
//! kernel vectors of the extended depth-2 matrices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::arith::{beta, binom, int, primitive_integer, Rational};
use crate::error::{contract, Error, Result};
use crate::index::{set, Index};
use crate::kernels::lambda_coeff;
use crate::linalg::{canonical_row_basis, null_space_rows, LabelledVector};
use crate::poly::{ghat, BiLaurentPoly, TriLaurentPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PeriodKind {
    /// Restricted even period polynomials `W_k^{+,0}`.
    RestrictedEven,
    /// Odd period polynomials `W_k^-`.
    Odd,
    /// All even solutions of the period relation, `W_k^+`.
    FullEven,
    /// Even period polynomials of cusp forms: `W_k^+` cut by the
    /// Kohnen–Zagier functional.
    CuspEven,
}

impl PeriodKind {
    pub fn name(self) -> &'static str {
        match self {
            PeriodKind::RestrictedEven => "W+0",
            PeriodKind::Odd => "W-",
            PeriodKind::FullEven => "W+full",
            PeriodKind::CuspEven => "cusp-even",
        }
    }
}

impl fmt::Display for PeriodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for PeriodKind {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for PeriodKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [PeriodKind::RestrictedEven, PeriodKind::Odd, PeriodKind::FullEven, PeriodKind::CuspEven]
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown period kind {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodBasis {
    pub kind: PeriodKind,
    pub weight: u32,
    pub dim: usize,
    pub basis: Vec<BiLaurentPoly>,
}

// Exponents (a, b) with a + b = k - 2 admitted by the kind.
fn monomials(kind: PeriodKind, weight: u32) -> Vec<[i32; 2]> {
    let d = weight as i32 - 2;
    // Lex order with the x1 exponent descending, so echelon pivots lead.
    (0..=d)
        .rev()
        .map(|a| [a, d - a])
        .filter(|[a, b]| match kind {
            PeriodKind::RestrictedEven => a % 2 == 0 && *b > 0,
            PeriodKind::Odd => a % 2 == 1,
            PeriodKind::FullEven | PeriodKind::CuspEven => a % 2 == 0,
        })
        .collect()
}

/// `p - p(x1+x2, x2) ± p(x1+x2, x1)`, plus for odd polynomials the minus sign.
pub fn period_relation(p: &BiLaurentPoly, odd: bool) -> Result<BiLaurentPoly> {
    let t1 = p.substitute(&[[1, 1], [0, 1]])?;
    let t2 = p.substitute(&[[1, 1], [1, 0]])?;
    Ok(if odd { p - &t1 - t2 } else { p - &t1 + t2 })
}

fn to_poly(mons: &[[i32; 2]], coeffs: &[Rational]) -> BiLaurentPoly {
    BiLaurentPoly::from_terms(mons.iter().copied().zip(coeffs.iter().cloned())).expect("non-negative exponents")
}

fn canonical_polys(mons: &[[i32; 2]], vectors: &[Vec<Rational>]) -> Vec<BiLaurentPoly> {
    canonical_row_basis(vectors, mons.len())
        .iter()
        .map(|v| to_poly(mons, &v.iter().map(|x| int(x.clone())).collect::<Vec<_>>()))
        .collect()
}

// Solution space of the period relation over the admitted monomials.
fn solve_period_space(kind: PeriodKind, weight: u32) -> (Vec<[i32; 2]>, Vec<Vec<Rational>>) {
    let mons = monomials(kind, weight);
    let odd = kind == PeriodKind::Odd;
    let images: Vec<BiLaurentPoly> =
        mons.iter().map(|e| period_relation(&BiLaurentPoly::monomial(*e, int(1)).unwrap(), odd).unwrap()).collect();
    let mut support: Vec<[i32; 2]> = images.iter().flat_map(|p| p.terms().map(|(e, _)| *e)).collect();
    support.sort();
    support.dedup();
    // One equation per output monomial; unknowns are the admitted monomials.
    let rows: Vec<Vec<Rational>> = support.iter().map(|e| images.iter().map(|p| p.coeff(e)).collect()).collect();
    let kernel = null_space_rows(&rows, mons.len());
    let vectors = kernel.into_iter().map(|v| v.into_iter().map(int).collect()).collect();
    (mons, vectors)
}

/// `sum_{s odd} λ(k-s, s) · coef(x1^{k-s-1} x2^{s-1}) / C(k-2, s-1)`.
pub fn kz_functional(p: &BiLaurentPoly, weight: u32) -> Rational {
    let k = weight as i64;
    let mut acc = Rational::zero();
    for s in (1..k).step_by(2) {
        let c = p.coeff(&[(k - s - 1) as i32, (s - 1) as i32]);
        if c.is_zero() {
            continue;
        }
        let lam = lambda_coeff((k - s) as u32, s as u32).expect("even weight");
        acc += lam * c / int(binom(k - 2, s - 1));
    }
    acc
}

fn compute_period_basis(kind: PeriodKind, weight: u32) -> PeriodBasis {
    let (mons, vectors) = if kind == PeriodKind::CuspEven {
        let (mons, full) = solve_period_space(PeriodKind::FullEven, weight);
        let values: Vec<Rational> = full.iter().map(|v| kz_functional(&to_poly(&mons, v), weight)).collect();
        let combos = null_space_rows(&[values], full.len());
        let cut = combos
            .iter()
            .map(|w| {
                let mut acc = vec![Rational::zero(); mons.len()];
                for (wi, v) in w.iter().zip(&full) {
                    for (a, x) in acc.iter_mut().zip(v) {
                        *a += int(wi.clone()) * x;
                    }
                }
                acc
            })
            .collect();
        (mons, cut)
    } else {
        solve_period_space(kind, weight)
    };
    let basis = canonical_polys(&mons, &vectors);
    PeriodBasis { kind, weight, dim: basis.len(), basis }
}

/// Canonical basis of a period space. Odd weights are rejected; weights
/// below 4 give the empty basis.
pub fn period_basis(kind: PeriodKind, weight: u32) -> Result<Arc<PeriodBasis>> {
    if weight % 2 == 1 {
        return contract(format!("period spaces live in even weight, got {weight}"));
    }
    if weight < 4 {
        return Ok(Arc::new(PeriodBasis { kind, weight, dim: 0, basis: Vec::new() }));
    }
    type Cache = RwLock<HashMap<(PeriodKind, u32), Arc<PeriodBasis>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.read().expect("period cache poisoned").get(&(kind, weight)) {
        return Ok(b.clone());
    }
    let b = Arc::new(compute_period_basis(kind, weight));
    Ok(cache.write().expect("period cache poisoned").entry((kind, weight)).or_insert(b).clone())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LiftedFamily {
    PPlus,
    QPlus,
    QMinus,
    PHatPlus,
}

impl LiftedFamily {
    pub fn name(self) -> &'static str {
        match self {
            LiftedFamily::PPlus => "P+",
            LiftedFamily::QPlus => "Q+",
            LiftedFamily::QMinus => "Q-",
            LiftedFamily::PHatPlus => "Phat+",
        }
    }
}

impl fmt::Display for LiftedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for LiftedFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for LiftedFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [LiftedFamily::PPlus, LiftedFamily::QPlus, LiftedFamily::QMinus, LiftedFamily::PHatPlus]
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown lifted family {s:?}")))
    }
}

/// A lifted basis element together with the layer `n` it came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftedElement {
    pub layer: u32,
    pub poly: TriLaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftedBasis {
    pub family: LiftedFamily,
    pub weight: u32,
    pub dim: usize,
    pub basis: Vec<LiftedElement>,
}

impl LiftedBasis {
    pub fn polys(&self) -> impl Iterator<Item = &TriLaurentPoly> {
        self.basis.iter().map(|e| &e.poly)
    }
}

// p(x_a, x_b) placed into three variables, times x1^s1 x3^s3.
fn lift(p: &BiLaurentPoly, slots: [usize; 2], shift: [i32; 3]) -> TriLaurentPoly {
    let terms = p.terms().map(|(e, c)| {
        let mut ne = shift;
        ne[slots[0]] += e[0];
        ne[slots[1]] += e[1];
        (ne, c.clone())
    });
    TriLaurentPoly::from_terms(terms).expect("lifted exponents stay >= -1")
}

/// Basis of a lifted family, assembled layer by layer from period bases.
pub fn lifted_basis(family: LiftedFamily, weight: u32) -> Result<LiftedBasis> {
    if weight % 2 == 1 {
        return contract(format!("lifted bases live in even weight, got {weight}"));
    }
    let k = weight as i32;
    let mut basis = Vec::new();
    match family {
        LiftedFamily::PPlus | LiftedFamily::PHatPlus => {
            let top = if family == LiftedFamily::PPlus { k - 1 } else { k };
            for n in (2..=top).step_by(2) {
                for p in &period_basis(PeriodKind::RestrictedEven, n as u32)?.basis {
                    basis.push(LiftedElement { layer: n as u32, poly: lift(p, [0, 1], [0, 0, k - n - 1]) });
                }
            }
        }
        LiftedFamily::QPlus => {
            for n in (3..k).step_by(2) {
                for p in &period_basis(PeriodKind::RestrictedEven, (k - n + 1) as u32)?.basis {
                    basis.push(LiftedElement { layer: n as u32, poly: lift(p, [1, 2], [n - 1, 0, 0]) });
                }
            }
        }
        LiftedFamily::QMinus => {
            for n in (3..k).step_by(2) {
                if k - n - 1 < 2 {
                    continue;
                }
                for p in &period_basis(PeriodKind::Odd, (k - n - 1) as u32)?.basis {
                    basis.push(LiftedElement { layer: n as u32, poly: lift(p, [1, 2], [n - 1, 0, 0]) });
                }
            }
        }
    }
    Ok(LiftedBasis { family, weight, dim: basis.len(), basis })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffKind {
    /// `a_{i,j}` from an even period polynomial.
    EvenA,
    /// `b_{i,j}` from an odd period polynomial.
    OddB,
    /// `c_{i,j}` from an even period polynomial.
    EvenC,
}

impl FromStr for CoeffKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even-a" => Ok(CoeffKind::EvenA),
            "odd-b" => Ok(CoeffKind::OddB),
            "even-c" => Ok(CoeffKind::EvenC),
            _ => Err(Error::Parse(format!("unknown coefficient kind {s:?}"))),
        }
    }
}

/// Coefficient map `(i, j) -> value` attached to a period polynomial:
///
/// * `EvenA`: `p(x+y, x) = sum_{i+j=k} C(k-2, i-1) a_{i,j} x^{i-1} y^{j-1}`;
/// * `OddB`: `p(x+y, y) - (x/y) p(x+y, x) = sum_{i+j=k} C(k-1, i-1) b_{i,j} x^{i-1} y^{j-1}`;
/// * `EvenC`: `∂_x[p(x+y, y)] - ∂_y[p(x+y, x)] = sum_{i+j=k-1} C(k-3, i-1) c_{i,j} x^{i-1} y^{j-1}`.
pub fn cusp_coeffs(kind: CoeffKind, p: &BiLaurentPoly, weight: u32) -> Result<BTreeMap<(u32, u32), Rational>> {
    if weight % 2 == 1 || weight < 4 {
        return contract(format!("cusp_coeffs needs even weight >= 4, got {weight}"));
    }
    if !p.is_polynomial() || !p.is_homogeneous(weight as i32 - 2) {
        return contract(format!("input is not a homogeneous polynomial of degree {}", weight - 2));
    }
    let k = weight as i64;
    let swap_sub = p.substitute(&[[1, 1], [1, 0]])?; // p(x+y, x)
    let mut out = BTreeMap::new();
    match kind {
        CoeffKind::EvenA => {
            for i in 1..k {
                let c = swap_sub.coeff(&[(i - 1) as i32, (k - i - 1) as i32]);
                out.insert((i as u32, (k - i) as u32), c / int(binom(k - 2, i - 1)));
            }
        }
        CoeffKind::OddB => {
            let q = p.substitute(&[[1, 1], [0, 1]])? - swap_sub.shift([1, -1])?;
            if let Some((e, _)) = q.terms().find(|(e, _)| e[1] < 0) {
                return contract(format!("nonvanishing y^-1 layer (monomial {e:?}); not an odd period polynomial"));
            }
            for i in 1..k {
                let c = q.coeff(&[(i - 1) as i32, (k - i - 1) as i32]);
                out.insert((i as u32, (k - i) as u32), c / int(binom(k - 1, i - 1)));
            }
        }
        CoeffKind::EvenC => {
            let q = p.substitute(&[[1, 1], [0, 1]])?.derivative(0) - swap_sub.derivative(1);
            for i in 1..k - 1 {
                let c = q.coeff(&[(i - 1) as i32, (k - i - 2) as i32]);
                out.insert((i as u32, (k - 1 - i) as u32), c / int(binom(k - 3, i - 1)));
            }
        }
    }
    Ok(out)
}

/// Kernel vector of `B̂_k` (odd `k`) with nonzero `(k, 0)` entry: the
/// coefficients of `p - p(0, x2)` for `p = x1·Ĝ_{k-1}`, placed at
/// `(n1, n2)` for the monomial `x1^{n1-1} x2^{n2-1}`.
pub fn eisenstein_kernel_vector(weight: u32) -> Result<LabelledVector> {
    if weight % 2 == 0 || weight < 3 {
        return contract(format!("eisenstein_kernel_vector needs odd weight >= 3, got {weight}"));
    }
    let labels = set(weight, "oe0")?;
    let mut values = vec![Rational::zero(); labels.len()];
    if weight == 3 {
        values[0] = int(4) * beta(2) * beta(0);
        return Ok(LabelledVector::new(labels.members().to_vec(), values));
    }
    let p = ghat(weight - 1)?.shift([1, 0])?;
    for (e, c) in p.terms() {
        if e[0] == 0 {
            continue; // p(0, x2)
        }
        let idx = Index::new(vec![(e[0] + 1) as u32, (e[1] + 1) as u32]);
        match labels.position(&idx) {
            Some(pos) => values[pos] = c.clone(),
            None => return contract(format!("unexpected monomial {e:?} in x1·Ĝ")),
        }
    }
    Ok(LabelledVector::new(labels.members().to_vec(), values))
}

/// Coefficients on `(r, s)` pairs scaled to the primitive integer vector on
/// the same ray.
pub fn primitive_on(map: &BTreeMap<(u32, u32), Rational>, keys: &[(u32, u32)]) -> Vec<num_bigint::BigInt> {
    let v: Vec<Rational> = keys.iter().map(|k| map.get(k).cloned().unwrap_or_else(Rational::zero)).collect();
    primitive_integer(&v)
}
