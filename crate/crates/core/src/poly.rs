//! Sparse Laurent polynomials in two or three variables, the σ substitution
//! operators, the PGL2 action on two-variable polynomials, vectorization over
//! the extended index set, and the Eisenstein Laurent polynomial `Ĝ_k`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{beta, binom, fmt_rational, int, parse_rational, Rational};
use crate::error::{contract, Result};
use crate::index::{set, Index, IndexSet};
use crate::linalg::LabelledVector;

/// Smallest exponent any stored monomial may carry.
pub const MIN_EXPONENT: i32 = -1;

/// Sparse Laurent polynomial in `N` variables with rational coefficients.
/// No zero coefficient is ever stored; exponents are at least `-1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly<const N: usize> {
    terms: BTreeMap<[i32; N], Rational>,
}

pub type BiLaurentPoly = LaurentPoly<2>;
pub type TriLaurentPoly = LaurentPoly<3>;

impl<const N: usize> Default for LaurentPoly<N> {
    fn default() -> Self {
        Self::zero()
    }
}

fn check_exponent<const N: usize>(exp: &[i32; N]) -> Result<()> {
    if exp.iter().any(|&e| e < MIN_EXPONENT) {
        return contract(format!("exponent {exp:?} below -1"));
    }
    Ok(())
}

impl<const N: usize> LaurentPoly<N> {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term([0; N], c);
        p
    }

    pub fn monomial(exp: [i32; N], coef: Rational) -> Result<Self> {
        check_exponent(&exp)?;
        let mut p = Self::zero();
        p.add_term(exp, coef);
        Ok(p)
    }

    /// The variable `x_{i+1}`.
    pub fn var(i: usize) -> Self {
        let mut e = [0; N];
        e[i] = 1;
        let mut p = Self::zero();
        p.add_term(e, Rational::one());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ([i32; N], Rational)>) -> Result<Self> {
        let mut p = Self::zero();
        for (e, c) in terms {
            check_exponent(&e)?;
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Build from integer coefficients, e.g. `BiLaurentPoly::from_ints([([9,1], 4), ...])`.
    pub fn from_ints(terms: impl IntoIterator<Item = ([i32; N], i64)>) -> Result<Self> {
        Self::from_terms(terms.into_iter().map(|(e, c)| (e, int(c))))
    }

    fn add_term(&mut self, exp: [i32; N], coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i32; N], &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: &[i32; N]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Whether every monomial has total degree `d`.
    pub fn is_homogeneous(&self, d: i32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<i32>() == d)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect() }
    }

    /// Multiply by the monomial `x^shift`.
    pub fn shift(&self, shift: [i32; N]) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut ne = *e;
            for i in 0..N {
                ne[i] += shift[i];
            }
            check_exponent(&ne)?;
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Formal partial derivative in variable `var` (0-based).
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = *e;
            ne[var] -= 1;
            out.add_term(ne, c * int(e[var]));
        }
        out
    }

    /// Reorder variables: new variable `i` is old variable `perm[i]`.
    pub fn permute(&self, perm: [usize; N]) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut ne = [0; N];
            for i in 0..N {
                ne[perm[i]] = e[i];
            }
            out.add_term(ne, c.clone());
        }
        out
    }

    /// `f(L x)`: variable `x_i` is replaced by `sum_j forms[i][j] x_j`.
    /// Only defined on genuine polynomials.
    pub fn substitute(&self, forms: &[[i64; N]; N]) -> Result<Self> {
        if !self.is_polynomial() {
            return contract("substitution requires a polynomial (no negative exponents)");
        }
        let mut cache: HashMap<(usize, i32), Self> = HashMap::new();
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for i in 0..N {
                if e[i] == 0 {
                    continue;
                }
                let pw = cache.entry((i, e[i])).or_insert_with(|| linear_form_power(&forms[i], e[i] as u32));
                acc = &acc * &*pw;
            }
            out = out + acc;
        }
        Ok(out)
    }

    /// Evaluate at a rational point; negative exponents need nonzero coordinates.
    pub fn eval(&self, point: &[Rational; N]) -> Rational {
        let mut s = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..N {
                t *= num_traits::pow::Pow::pow(&point[i], e[i]);
            }
            s += t;
        }
        s
    }
}

/// `(sum_j form[j] x_j)^e`, expanded by repeated binomial splitting.
pub fn linear_form_power<const N: usize>(form: &[i64; N], e: u32) -> LaurentPoly<N> {
    fn rec<const N: usize>(
        form: &[i64; N],
        from: usize,
        e: u32,
        exp: &mut [i32; N],
        coef: BigInt,
        out: &mut LaurentPoly<N>,
    ) {
        let Some(i) = (from..N).find(|&i| form[i] != 0) else {
            if e == 0 {
                out.add_term(*exp, Rational::from_integer(coef));
            }
            return;
        };
        let rest_nonzero = (i + 1..N).any(|j| form[j] != 0);
        let range: Vec<u32> = if rest_nonzero { (0..=e).collect() } else { vec![e] };
        for t in range {
            // choose t copies of form[i] x_i
            let c = &coef * BigInt::from(binom(e as i64, t as i64)) * BigInt::from(form[i]).pow(t);
            exp[i] += t as i32;
            rec(form, i + 1, e - t, exp, c, out);
            exp[i] -= t as i32;
        }
    }
    let mut out = LaurentPoly::zero();
    rec(form, 0, e, &mut [0; N], BigInt::one(), &mut out);
    out
}

impl<const N: usize> Add for LaurentPoly<N> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (e, c) in rhs.terms {
            self.add_term(e, c);
        }
        self
    }
}

impl<const N: usize> Add for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn add(self, rhs: Self) -> LaurentPoly<N> {
        self.clone() + rhs.clone()
    }
}

impl<const N: usize> Neg for LaurentPoly<N> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentPoly { terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect() }
    }
}

impl<const N: usize> Sub for LaurentPoly<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<const N: usize> Sub for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;
    fn sub(self, rhs: Self) -> LaurentPoly<N> {
        self.clone() - rhs.clone()
    }
}

impl<const N: usize> Mul for &LaurentPoly<N> {
    type Output = LaurentPoly<N>;

    /// Panics if the product has an exponent below -1.
    fn mul(self, rhs: Self) -> LaurentPoly<N> {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for i in 0..N {
                    e[i] += eb[i];
                }
                assert!(e.iter().all(|&x| x >= MIN_EXPONENT), "product exponent {e:?} below -1");
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl<const N: usize> fmt::Display for LaurentPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", fmt_rational(c))?;
            for (i, x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, x)?,
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<i32>,
    coef: String,
}

impl<const N: usize> Serialize for LaurentPoly<N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().map(|(e, c)| TermRepr { exp: e.to_vec(), coef: fmt_rational(c) }))
    }
}

impl<'de, const N: usize> Deserialize<'de> for LaurentPoly<N> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<TermRepr>::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for t in raw {
            let exp: [i32; N] =
                t.exp.try_into().map_err(|_| D::Error::custom(format!("exponent must have {N} entries")))?;
            terms.push((exp, parse_rational(&t.coef).map_err(D::Error::custom)?));
        }
        LaurentPoly::from_terms(terms).map_err(D::Error::custom)
    }
}

/// Substitution pairs `(A, B)` with `f|σ_i = f(A x) - f(B x)`, rows giving the
/// image of each variable.
type Forms = [[i64; 3]; 3];

fn sigma_forms(i: u8) -> Option<(Forms, Forms)> {
    const X1: [i64; 3] = [1, 0, 0];
    const X2: [i64; 3] = [0, 1, 0];
    const X3: [i64; 3] = [0, 0, 1];
    const X2_X1: [i64; 3] = [-1, 1, 0];
    const X1_X2: [i64; 3] = [1, -1, 0];
    const X3_X2: [i64; 3] = [0, -1, 1];
    const X2_X3: [i64; 3] = [0, 1, -1];
    const X3_X1: [i64; 3] = [-1, 0, 1];
    Some(match i {
        1 => ([X2_X1, X1, X3], [X2_X1, X2, X3]),
        2 => ([X3_X2, X1, X2], [X3_X2, X1, X3]),
        3 => ([X1, X2_X3, X2], [X1, X2_X3, X3]),
        4 => ([X2_X1, X3_X1, X1], [X1_X2, X3_X2, X2]),
        5 => ([X3_X2, X3_X1, X3], [X2_X3, X2_X1, X2]),
        _ => return None,
    })
}

/// `f|σ_i` for `i` in 1..=5.
pub fn sigma_apply(i: u8, f: &TriLaurentPoly) -> Result<TriLaurentPoly> {
    let Some((a, b)) = sigma_forms(i) else {
        return contract(format!("sigma index must be 1..=5, got {i}"));
    };
    if !f.is_polynomial() {
        return contract("sigma operators act on polynomials only");
    }
    Ok(f.substitute(&a)? - f.substitute(&b)?)
}

/// `f|(1 + sum_{i in ops} σ_i)`.
pub fn one_plus_sigmas(f: &TriLaurentPoly, ops: &[u8]) -> Result<TriLaurentPoly> {
    let mut out = f.clone();
    for &i in ops {
        out = out + sigma_apply(i, f)?;
    }
    Ok(out)
}

/// `(f|(1+σ3))|(1+σ1+σ2) - (f|(1+σ1))|(1+σ2+σ3+σ4+σ5)`; zero for every
/// admissible `f` (even in `x1` and in `x2`).
pub fn sigma_identity_defect(f: &TriLaurentPoly) -> Result<TriLaurentPoly> {
    if f.terms().any(|(e, _)| e[0].rem_euclid(2) != 0 || e[1].rem_euclid(2) != 0) {
        return contract("sigma_identity_defect needs f even in x1 and in x2");
    }
    let lhs = one_plus_sigmas(&one_plus_sigmas(f, &[3])?, &[1, 2])?;
    let rhs = one_plus_sigmas(&one_plus_sigmas(f, &[1])?, &[2, 3, 4, 5])?;
    Ok(lhs - rhs)
}

/// Integer 2×2 matrix `[[a, b], [c, d]]` acting by `F|g = F(ax+by, cx+dy)`.
pub type Mat2 = [[i64; 2]; 2];

pub fn mat2_mul(g: &Mat2, h: &Mat2) -> Mat2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = g[i][0] * h[0][j] + g[i][1] * h[1][j];
        }
    }
    out
}

pub const IDENTITY: Mat2 = [[1, 0], [0, 1]];
/// `ε`, the variable swap.
pub const EPSILON: Mat2 = [[0, 1], [1, 0]];
pub const T_INV: Mat2 = [[1, -1], [0, 1]];
pub const U: Mat2 = [[1, -1], [1, 0]];

/// Right action `F|g`.
pub fn pgl2_apply(f: &BiLaurentPoly, g: &Mat2) -> Result<BiLaurentPoly> {
    f.substitute(g)
}

/// `F|(sum c_g g)` for an element of the integral group ring.
pub fn group_ring_apply(f: &BiLaurentPoly, element: &[(i64, Mat2)]) -> Result<BiLaurentPoly> {
    let mut out = BiLaurentPoly::zero();
    for (c, g) in element {
        out = out + pgl2_apply(f, g)?.scale(&int(*c));
    }
    Ok(out)
}

/// `4 sum_{n1+n2=k, ni>=0} β_{n1} β_{n2} x1^{n1-1} x2^{n2-1}`.
pub fn ghat(k: u32) -> Result<BiLaurentPoly> {
    if k % 2 == 1 || k < 4 {
        return contract(format!("ghat needs even k >= 4, got {k}"));
    }
    let mut out = BiLaurentPoly::zero();
    for n1 in 0..=k {
        let n2 = k - n1;
        let c = beta(n1 as usize) * beta(n2 as usize) * int(4);
        out.add_term([n1 as i32 - 1, n2 as i32 - 1], c);
    }
    Ok(out)
}

/// Coefficient vector of `f` over the extended set `Î_k^(3)`, where the
/// monomial `x1^{n1-1} x2^{n2-1} x3^{n3-1}` sits at index `(n1,n2,n3)`.
pub fn vectorize(f: &TriLaurentPoly, weight: u32) -> Result<LabelledVector> {
    let labels = extended_set(weight)?;
    let mut values = vec![Rational::zero(); labels.len()];
    for (e, c) in f.terms() {
        let idx = Index::new(e.iter().map(|&x| (x + 1) as u32).collect::<Vec<_>>());
        match labels.position(&idx) {
            Some(p) => values[p] = c.clone(),
            None => {
                return contract(format!(
                    "monomial with exponent {e:?} lies outside the extended index set of weight {weight}"
                ))
            }
        }
    }
    Ok(LabelledVector::new(labels.members().to_vec(), values))
}

/// Inverse of [`vectorize`].
pub fn devectorize(v: &LabelledVector) -> Result<TriLaurentPoly> {
    let mut out = TriLaurentPoly::zero();
    for (idx, c) in v.labels().iter().zip(v.values()) {
        if idx.depth() != 3 {
            return contract(format!("devectorize expects depth-3 labels, got {idx}"));
        }
        let p = idx.parts();
        let e = [p[0] as i32 - 1, p[1] as i32 - 1, p[2] as i32 - 1];
        check_exponent(&e)?;
        out.add_term(e, c.clone());
    }
    Ok(out)
}

/// `Î_k^(3) = I_k(o, o, e0)`.
pub fn extended_set(weight: u32) -> Result<IndexSet> {
    if weight % 2 == 1 {
        return contract(format!("the extended depth-3 set is used at even weight, got {weight}"));
    }
    set(weight, "ooe0")
}

/// `(x1^{N-1} - x2^{N-1}) / (x1 - x2)`.
pub fn geometric_quotient(n: u32) -> BiLaurentPoly {
    let mut out = BiLaurentPoly::zero();
    for i in 0..=(n as i32 - 2) {
        out.add_term([i, n as i32 - 2 - i], Rational::one());
    }
    out
}

/// The even-weight `τ` generating polynomial assembled from its PGL2 pieces:
/// `G_N|(T^{-1}+1)/(3β_N) - (1/12)·Q_N|(5 - 3U + Uε)`, where
/// `G_N = sum β_{n1} β_{n2} x1^{n1-1} x2^{n2-1}` (n1, n2 >= 1) and `Q_N` is
/// [`geometric_quotient`]. Its `x1^{n2-1} x2^{n1-1}` coefficient is `τ(n1, n2)`.
pub fn tau_generating_polynomial(n: u32) -> Result<BiLaurentPoly> {
    if n % 2 == 1 || n < 4 {
        return contract(format!("tau generating polynomial needs even N >= 4, got {n}"));
    }
    let mut g = BiLaurentPoly::zero();
    for n1 in 1..n {
        let c = beta(n1 as usize) * beta((n - n1) as usize);
        g.add_term([n1 as i32 - 1, (n - n1) as i32 - 1], c);
    }
    let bn = beta(n as usize) * int(3);
    let first = group_ring_apply(&g, &[(1, T_INV), (1, IDENTITY)])?.scale(&(Rational::one() / bn));
    let second = group_ring_apply(&geometric_quotient(n), &[(5, IDENTITY), (-3, U), (1, mat2_mul(&U, &EPSILON))])?
        .scale(&crate::arith::rat(1, 12));
    Ok(first - second)
}
