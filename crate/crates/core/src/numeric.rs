//! High-precision single and double zeta values with rigorous error bounds.
//!
//! The default method sums the first `N` terms exactly and replaces the tail
//! by Euler–Maclaurin expansions whose remainders are bounded by the first
//! omitted term (valid because `x^{-t}` is completely monotone). The exact
//! rational approximant is then rounded once to a fixed-point decimal. The
//! plain method sums in fixed point with an integral tail bound and tracks
//! every rounding.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::arith::{bernoulli, factorial, fmt_rational, int, to_f64, Rational};
use crate::error::{contract, Result};

/// Extra decimal digits carried beyond the target accuracy.
pub const DEFAULT_GUARD_DIGITS: u32 = 10;
/// Cap on Euler–Maclaurin correction terms (keeps Bernoulli numbers tabulated).
const MAX_EM_TERMS: u32 = 60;
/// Largest truncation point the plain method will attempt.
pub const PLAIN_MAX_N: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    EulerMaclaurin,
    Plain,
}

/// Accuracy request for numerical evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PrecisionBudget {
    target_error: f64,
    working_digits: u32,
    method: Method,
}

impl PrecisionBudget {
    /// Requires `working_digits >= digits(target_error) + guard`.
    pub fn new(target_error: f64, working_digits: u32, method: Method) -> Result<Self> {
        if !(target_error > 0.0 && target_error.is_finite()) {
            return contract(format!("target error must be positive, got {target_error}"));
        }
        let need = target_digits(target_error) + DEFAULT_GUARD_DIGITS;
        if working_digits < need {
            return contract(format!(
                "working digits {working_digits} below required {need} for target {target_error:e}"
            ));
        }
        if working_digits > 280 {
            return contract("working digits above 280 are not supported");
        }
        Ok(PrecisionBudget { target_error, working_digits, method })
    }

    /// Budget with `working_digits` digits and target `10^-(digits - guard)`.
    pub fn with_digits(working_digits: u32) -> Result<Self> {
        if working_digits <= DEFAULT_GUARD_DIGITS {
            return contract(format!("need more than {DEFAULT_GUARD_DIGITS} working digits"));
        }
        let target = 10f64.powi(-((working_digits - DEFAULT_GUARD_DIGITS) as i32));
        Self::new(target, working_digits, Method::EulerMaclaurin)
    }

    /// Plain summation budget for the given target.
    pub fn plain(target_error: f64) -> Result<Self> {
        let digits = target_digits(target_error) + DEFAULT_GUARD_DIGITS;
        Self::new(target_error, digits, Method::Plain)
    }

    // Internal budgets for sub-evaluations skip the guard-digit check.
    fn split(&self, factor: f64) -> Self {
        PrecisionBudget { target_error: self.target_error / factor, ..*self }
    }

    pub fn target_error(&self) -> f64 {
        self.target_error
    }

    pub fn working_digits(&self) -> u32 {
        self.working_digits
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Same budget with the target divided by `factor` and digits raised to match.
    pub fn tightened(&self, factor: f64) -> Result<Self> {
        let target = self.target_error / factor;
        let digits = self.working_digits.max(target_digits(target) + DEFAULT_GUARD_DIGITS);
        Self::new(target, digits, self.method)
    }

    /// Truncation point the evaluator uses for `ζ(r, s)` (`r = 0` for single zeta).
    pub fn truncation_n(&self, r: u32, s: u32) -> Result<u64> {
        match self.method {
            Method::EulerMaclaurin => Ok(em_plan(r, s, self.target_error / 10.0).0),
            Method::Plain if r == 0 => Ok(em_plan(r, s, self.target_error / 10.0).0),
            Method::Plain => plain_n(r, s, self.target_error / 2.0),
        }
    }
}

impl Default for PrecisionBudget {
    fn default() -> Self {
        PrecisionBudget { target_error: 1e-20, working_digits: 30, method: Method::EulerMaclaurin }
    }
}

/// Decimal digits implied by a target error: `ceil(-log10(target))`.
pub fn target_digits(target: f64) -> u32 {
    (-target.log10()).ceil().max(0.0) as u32
}

/// Fixed-point decimal `mantissa · 10^-digits`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighPrecision {
    pub mantissa: BigInt,
    pub digits: u32,
}

impl HighPrecision {
    pub fn to_f64(&self) -> f64 {
        self.mantissa.to_f64().unwrap_or(f64::NAN) / 10f64.powi(self.digits as i32)
    }

    pub fn to_rational(&self) -> Rational {
        Rational::new(self.mantissa.clone(), pow10(self.digits))
    }
}

impl fmt::Display for HighPrecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let neg = self.mantissa.is_negative();
        let digits = self.mantissa.abs().to_string();
        let d = self.digits as usize;
        let padded = if digits.len() <= d { format!("{}{}", "0".repeat(d + 1 - digits.len()), digits) } else { digits };
        let (int_part, frac) = padded.split_at(padded.len() - d);
        write!(f, "{}{}", if neg { "-" } else { "" }, int_part)?;
        if d > 0 {
            write!(f, ".{frac}")?;
        }
        Ok(())
    }
}

/// A value with a rigorous absolute error bound.
#[derive(Clone, Debug, PartialEq)]
pub struct NumericResult {
    pub value: HighPrecision,
    pub bound: f64,
    pub truncation_n: u64,
}

impl NumericResult {
    /// `|value| < bound` and `bound < threshold`.
    pub fn passes(&self, threshold: f64) -> bool {
        self.value.to_f64().abs() < self.bound && self.bound < threshold
    }
}

impl Serialize for NumericResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("NumericResult", 3)?;
        st.serialize_field("value", &self.value.to_string())?;
        st.serialize_field("bound", &format!("{:e}", self.bound))?;
        st.serialize_field("digits", &self.value.digits)?;
        st.end()
    }
}

fn pow10(d: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), d as usize)
}

fn ulp(digits: u32) -> f64 {
    10f64.powi(-(digits as i32))
}

// Small safety margin on accumulated f64 bounds.
fn inflate(b: f64) -> f64 {
    b * (1.0 + 1e-9) + f64::MIN_POSITIVE
}

/// Round to nearest at `digits` decimals (error at most half an ulp).
pub fn round_rational(q: &Rational, digits: u32) -> BigInt {
    let scaled = q * int(pow10(digits));
    let two = BigInt::from(2);
    let (n, d) = (scaled.numer().clone(), scaled.denom().clone());
    (n * &two + &d).div_floor(&(d * two))
}

// Rising factorial t (t+1) ... (t+m-1).
fn rising(t: u32, m: u32) -> BigInt {
    (0..m).fold(BigInt::one(), |acc, i| acc * BigInt::from(t + i))
}

/// `c_j(t) = B_{2j}/(2j)! · (t)_{2j-1}`.
fn em_coeff(t: u32, j: u32) -> Rational {
    bernoulli(2 * j as usize) / int(factorial(2 * j as usize)) * int(rising(t, 2 * j - 1))
}

fn pow_rational(a: u64, e: u32) -> Rational {
    int(num_traits::pow(BigInt::from(a), e as usize))
}

/// `sum_{n >= a} n^-t` via Euler–Maclaurin with `j_terms` corrections;
/// returns the exact approximant and its remainder bound.
fn hurwitz_tail(t: u32, a: u64, j_terms: u32) -> (Rational, f64) {
    let inv = |e: u32| Rational::one() / pow_rational(a, e);
    let mut s = inv(t - 1) / int(t - 1) + inv(t) / int(2);
    for j in 1..=j_terms {
        s += em_coeff(t, j) * inv(t + 2 * j - 1);
    }
    (s, em_term_bound(t, a, j_terms + 1))
}

// |c_j(t)| a^{1-t-2j}
fn em_term_bound(t: u32, a: u64, j: u32) -> f64 {
    to_f64(&em_coeff(t, j)).abs() * (a as f64).powi(-((t + 2 * j - 1) as i32))
}

// sum_{m>N} m^-r |c_j(s)| m^{1-s-2j}: the omitted Euler–Maclaurin term of
// Z(s, m+1), summed against m^-r, bounded by the integral.
fn double_tail_bound(r: u32, s: u32, n: u64, j: u32) -> f64 {
    let c = to_f64(&em_coeff(s, j)).abs();
    let e = r + s + 2 * j - 1;
    c * (n as f64).powi(-((e - 1) as i32)) / (e - 1) as f64
}

/// Pick `(N, J)` so the Euler–Maclaurin truncation error is below `goal`.
/// `r = 0` plans a single zeta.
fn em_plan(r: u32, s: u32, goal: f64) -> (u64, u32) {
    let mut n: u64 = 8;
    loop {
        for j in 1..=MAX_EM_TERMS.min(3 * n as u32) {
            let b = em_bound(r, s, n, j);
            if b < goal {
                return (n, j);
            }
            if j > 2 && b > em_bound(r, s, n, j - 1) {
                break; // asymptotic series started diverging
            }
        }
        n *= 2;
    }
}

fn em_bound(r: u32, s: u32, n: u64, j: u32) -> f64 {
    if r == 0 {
        return em_term_bound(s, n, j + 1);
    }
    let h = harmonic_bound(r, n);
    let mut b = h * em_term_bound(s, n + 1, j + 1);
    b += double_tail_bound(r, s, n, j + 1);
    let t0 = r + s;
    b += em_term_bound(t0 - 1, n + 1, j + 1) / (s - 1) as f64;
    b += em_term_bound(t0, n + 1, j + 1) / 2.0;
    for i in 1..=j {
        b += to_f64(&em_coeff(s, i)).abs() * em_term_bound(t0 + 2 * i - 1, n + 1, j + 1);
    }
    b
}

// Upper bound on H^{(r)}_N.
fn harmonic_bound(r: u32, n: u64) -> f64 {
    if r == 1 {
        1.0 + (n as f64).ln()
    } else {
        r as f64 / (r as f64 - 1.0)
    }
}

fn finish(q: Rational, truncation: f64, digits: u32, n: u64) -> NumericResult {
    NumericResult {
        value: HighPrecision { mantissa: round_rational(&q, digits), digits },
        bound: inflate(truncation + 0.5 * ulp(digits)),
        truncation_n: n,
    }
}

fn zeta_em(s: u32, digits: u32, n: u64, j: u32) -> NumericResult {
    let mut q = Rational::zero();
    for k in 1..n {
        q += Rational::one() / pow_rational(k, s);
    }
    let (tail, b) = hurwitz_tail(s, n, j);
    finish(q + tail, b, digits, n)
}

/// Exact rational approximant of `ζ(r, s)` with truncation `(N, J)` and its bound.
fn double_zeta_em_exact(r: u32, s: u32, n: u64, j: u32) -> (Rational, f64) {
    let mut h = Rational::zero(); // H^{(r)}_{m}
    let mut head = Rational::zero();
    for m in 1..=n {
        if m >= 2 {
            head += &h / pow_rational(m, s);
        }
        h += Rational::one() / pow_rational(m, r);
    }
    let mut bound = 0.0;
    let (zs, b) = hurwitz_tail(s, n + 1, j);
    bound += to_f64(&h) * b;
    let mut total = head + &h * zs;
    // sum_{m>N} m^{-r} Z(s, m+1), with Z(s, m+1) expanded at m.
    let t0 = r + s;
    let (z1, b1) = hurwitz_tail(t0 - 1, n + 1, j);
    total += z1 / int(s - 1);
    bound += b1 / (s - 1) as f64;
    let (z2, b2) = hurwitz_tail(t0, n + 1, j);
    total -= z2 / int(2);
    bound += b2 / 2.0;
    for i in 1..=j {
        let c = em_coeff(s, i);
        let (zi, bi) = hurwitz_tail(t0 + 2 * i - 1, n + 1, j);
        bound += to_f64(&c).abs() * bi;
        total += c * zi;
    }
    bound += double_tail_bound(r, s, n, j + 1);
    (total, bound)
}

fn plain_n(r: u32, s: u32, goal: f64) -> Result<u64> {
    let tail = |n: u64| plain_tail_bound(r, s, n);
    let mut n: u64 = 16;
    while tail(n) >= goal {
        n *= 2;
        if n > PLAIN_MAX_N {
            return contract(format!("plain summation cannot reach {goal:e} for ({r},{s}) within N = {PLAIN_MAX_N}"));
        }
    }
    // Refine downwards by bisection between n/2 and n.
    let (mut lo, mut hi) = (n / 2, n);
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if tail(mid) < goal {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Integral tail bound of the plain method after `N` terms.
pub fn plain_tail_bound(r: u32, s: u32, n: u64) -> f64 {
    let nf = n as f64;
    let sf = s as f64;
    let base = nf.powf(1.0 - sf);
    match r {
        0 => base / (sf - 1.0),
        1 => base * ((nf.ln() + 1.0) / (sf - 1.0) + 1.0 / ((sf - 1.0) * (sf - 1.0))),
        _ => harmonic_bound(r, n) * base / (sf - 1.0),
    }
}

/// Fixed-point plain summation; `r = 0` sums a single zeta.
fn plain_sum(r: u32, s: u32, n: u64, digits: u32) -> NumericResult {
    let scale = pow10(digits);
    let half_up = |num: BigInt, den: &BigInt| -> BigInt {
        let two = BigInt::from(2);
        (num * &two + den).div_floor(&(den * &two))
    };
    let mut acc = BigInt::zero();
    let mut h = BigInt::zero(); // scaled H^{(r)}_{m-1}
    let mut h_err = 0.0f64; // in ulps
    let mut acc_err = 0.0f64; // in ulps
    for m in 1..=n {
        let ms = num_traits::pow(BigInt::from(m), s as usize);
        if r == 0 {
            acc += half_up(scale.clone(), &ms);
            acc_err += 0.5;
        } else {
            if m >= 2 {
                acc += half_up(h.clone(), &ms);
                acc_err += 0.5 + h_err / (m as f64).powi(s as i32);
            }
            let mr = num_traits::pow(BigInt::from(m), r as usize);
            h += half_up(scale.clone(), &mr);
            h_err += 0.5;
        }
    }
    NumericResult {
        value: HighPrecision { mantissa: acc, digits },
        bound: inflate(plain_tail_bound(r, s, n) + acc_err * ulp(digits)),
        truncation_n: n,
    }
}

/// `ζ(s)` to within the budget's target error.
pub fn zeta(s: u32, budget: &PrecisionBudget) -> Result<NumericResult> {
    if s < 2 {
        return contract(format!("zeta({s}) diverges"));
    }
    // Single values always use Euler–Maclaurin: plain summation of ζ(2) to
    // 1e-9 would need ~1e9 terms.
    let (n, j) = em_plan(0, s, budget.target_error / 10.0);
    Ok(zeta_em(s, budget.working_digits, n, j))
}

/// `ζ(r, s) = sum_{0<m<n} m^-r n^-s` to within the budget's target error.
pub fn double_zeta(r: u32, s: u32, budget: &PrecisionBudget) -> Result<NumericResult> {
    if r < 1 {
        return contract("double_zeta needs r >= 1");
    }
    if s < 2 {
        return contract(format!("double_zeta({r},{s}) diverges (s must be >= 2)"));
    }
    let n = budget.truncation_n(r, s)?;
    double_zeta_at(r, s, budget, n)
}

/// As [`double_zeta`] but with an explicit truncation point `N`.
pub fn double_zeta_at(r: u32, s: u32, budget: &PrecisionBudget, n: u64) -> Result<NumericResult> {
    if r < 1 || s < 2 {
        return contract(format!("double_zeta({r},{s}) is outside the convergent range"));
    }
    let d = budget.working_digits;
    Ok(match budget.method {
        Method::EulerMaclaurin => {
            let j = em_best_j(r, s, n);
            let (q, b) = double_zeta_em_exact(r, s, n, j);
            finish(q, b, d, n)
        }
        Method::Plain => plain_sum(r, s, n, d),
    })
}

// Smallest-bound J at fixed N (bounded search).
fn em_best_j(r: u32, s: u32, n: u64) -> u32 {
    let mut best = (f64::INFINITY, 1);
    for j in 1..=MAX_EM_TERMS.min(3 * n as u32) {
        let b = em_bound(r, s, n, j);
        if b < best.0 {
            best = (b, j);
        } else if j > best.1 + 3 {
            break;
        }
    }
    best.1
}

/// A zeta-value term in a linear relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZetaTerm {
    /// `ζ(s)`
    Single(u32),
    /// `ζ(r, s)`
    Double(u32, u32),
    /// `ζ^{1/2}(r, s) = ζ(r, s) + ζ(r+s)/2`
    Half(u32, u32),
    /// `ζ(a) ζ(b)`
    Product(u32, u32),
}

impl fmt::Display for ZetaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZetaTerm::Single(s) => write!(f, "z({s})"),
            ZetaTerm::Double(r, s) => write!(f, "z({r},{s})"),
            ZetaTerm::Half(r, s) => write!(f, "z^1/2({r},{s})"),
            ZetaTerm::Product(a, b) => write!(f, "z({a})z({b})"),
        }
    }
}

impl Serialize for ZetaTerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Evaluate a term to a value with bound, at the budget's working digits.
pub fn eval_term(term: ZetaTerm, budget: &PrecisionBudget) -> Result<NumericResult> {
    let d = budget.working_digits;
    match term {
        ZetaTerm::Single(s) => zeta(s, budget),
        ZetaTerm::Double(r, s) => double_zeta(r, s, budget),
        ZetaTerm::Half(r, s) => {
            let a = double_zeta(r, s, budget)?;
            let b = zeta(r + s, budget)?;
            let half = (b.value.mantissa + BigInt::one()).div_floor(&BigInt::from(2));
            Ok(NumericResult {
                value: HighPrecision { mantissa: a.value.mantissa + half, digits: d },
                bound: inflate(a.bound + b.bound / 2.0 + 0.5 * ulp(d)),
                truncation_n: a.truncation_n.max(b.truncation_n),
            })
        }
        ZetaTerm::Product(x, y) => {
            let a = zeta(x, budget)?;
            let b = zeta(y, budget)?;
            let prod = Rational::new(&a.value.mantissa * &b.value.mantissa, pow10(d));
            let (fa, fb) = (a.value.to_f64().abs(), b.value.to_f64().abs());
            Ok(NumericResult {
                value: HighPrecision { mantissa: round_rational(&(prod / int(pow10(d))), d), digits: d },
                bound: inflate(fa * b.bound + fb * a.bound + a.bound * b.bound + 0.5 * ulp(d)),
                truncation_n: a.truncation_n.max(b.truncation_n),
            })
        }
    }
}

/// `sum coeff · term` with the accumulated error bound
/// `sum |coeff| · bound(term)` plus rounding. Terms are evaluated to the
/// target divided by `2 sum |coeff|`, so the total stays within target.
pub fn eval_relation(terms: &[(ZetaTerm, Rational)], budget: &PrecisionBudget) -> Result<NumericResult> {
    let d = budget.working_digits;
    let weight: f64 = terms.iter().map(|(_, c)| to_f64(c).abs()).sum();
    let term_budget = budget.split((2.0 * weight).max(1.0));
    let budget = &term_budget;
    let mut acc = Rational::zero();
    let mut bound = 0.0;
    let mut n_max = 0;
    for (t, c) in terms {
        if c.is_zero() {
            continue;
        }
        let v = eval_term(*t, budget)?;
        acc += c * v.value.to_rational();
        bound += to_f64(c).abs() * v.bound;
        n_max = n_max.max(v.truncation_n);
    }
    if terms.is_empty() {
        return Ok(NumericResult {
            value: HighPrecision { mantissa: BigInt::zero(), digits: d },
            bound: 0.0,
            truncation_n: 0,
        });
    }
    // acc is exact in units of 10^-d times rational coefficients; one rounding.
    Ok(NumericResult {
        value: HighPrecision { mantissa: round_rational(&acc, d), digits: d },
        bound: inflate(bound + 0.5 * ulp(d)),
        truncation_n: n_max,
    })
}

/// Human-readable `c1*t1 - c2*t2 + ...`, unit coefficients elided.
pub fn describe_relation(terms: &[(ZetaTerm, Rational)]) -> String {
    let mut s = String::new();
    for (i, (t, c)) in terms.iter().enumerate() {
        let sign = match (i, c.is_negative()) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        let mag = c.abs();
        if mag.is_one() {
            s.push_str(&format!("{sign}{t}"));
        } else {
            s.push_str(&format!("{sign}{}*{t}", fmt_rational(&mag)));
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}
