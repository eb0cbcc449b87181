//! Exact scalars: rationals, Bernoulli numbers, the normalized `β_k`, binomials
//! with zero conventions, and the cusp-form dimension series.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational. Always reduced, denominator positive.
pub type Rational = BigRational;

/// Rows of the memoized binomial triangle.
pub const BINOMIAL_TABLE_BOUND: usize = 128;
const BERNOULLI_TABLE_BOUND: usize = 130;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// `(-1)^e` for any integer exponent.
#[inline]
pub fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Triangular table of binomials `C(m, n)` for `0 <= n <= m < bound`.
pub struct BinomialTable {
    rows: Vec<Vec<i128>>,
}

impl BinomialTable {
    pub fn new(bound: usize) -> Self {
        let mut rows: Vec<Vec<i128>> = Vec::with_capacity(bound);
        for m in 0..bound {
            let mut row = vec![1i128; m + 1];
            for n in 1..m {
                let prev = &rows[m - 1];
                row[n] = prev[n - 1].checked_add(prev[n]).expect("binomial table overflow; lower the bound");
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn bound(&self) -> usize {
        self.rows.len()
    }

    /// `C(m, n)`, zero when `n < 0` or `m < n`.
    pub fn get(&self, m: i64, n: i64) -> i128 {
        if n < 0 || m < n {
            return 0;
        }
        match self.rows.get(m as usize) {
            Some(row) => row[n as usize],
            None => binom_direct(m, n),
        }
    }
}

fn binom_direct(m: i64, n: i64) -> i128 {
    let n = n.min(m - n);
    let mut acc: i128 = 1;
    for i in 0..n {
        // acc * (m - i) is divisible by (i + 1); cancel first to delay overflow.
        let d = (i + 1) as i128;
        let g = num_integer::gcd(acc, d);
        acc = (acc / g).checked_mul((m - i) as i128 / (d / g)).expect("binomial overflows i128");
    }
    acc
}

fn table() -> &'static BinomialTable {
    static TABLE: OnceLock<BinomialTable> = OnceLock::new();
    TABLE.get_or_init(|| BinomialTable::new(BINOMIAL_TABLE_BOUND))
}

/// Binomial coefficient with `C(m, n) = 0` whenever `n < 0` or `m < n`.
/// Negative `m` therefore also gives 0 (since then `m < n` or `n < 0`).
#[inline]
pub fn binom(m: i64, n: i64) -> i128 {
    table().get(m, n)
}

fn bernoulli_table() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| bernoulli_upto(BERNOULLI_TABLE_BOUND))
}

// Recurrence sum_{k<=n} C(n+1,k) B_k = 0.
fn bernoulli_upto(bound: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(bound + 1);
    b.push(Rational::one());
    for n in 1..=bound {
        if n > 1 && n % 2 == 1 {
            b.push(Rational::zero());
            continue;
        }
        let mut c = BigInt::one(); // C(n+1, 0)
        let mut s = Rational::zero();
        for (k, bk) in b.iter().enumerate() {
            if !bk.is_zero() {
                s += bk * Rational::from_integer(c.clone());
            }
            c = c * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-s / Rational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    match bernoulli_table().get(n) {
        Some(v) => v.clone(),
        None => bernoulli_upto(n)[n].clone(),
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `β_k = -B_k / (2·k!)` for even `k`, zero for odd `k`.
pub fn beta(k: usize) -> Rational {
    if k % 2 == 1 {
        return Rational::zero();
    }
    -bernoulli(k) / Rational::from_integer(BigInt::from(2) * factorial(k))
}

/// Coefficient of `x^k` in `x^12 / ((1 - x^4)(1 - x^6))`, i.e. `dim S_k`.
pub fn dim_cusp(k: u32) -> usize {
    if k < 12 {
        return 0;
    }
    let r = k - 12;
    (0..=r / 6).filter(|b| (r - 6 * b) % 4 == 0).count()
}

/// Coefficient of `x^k` in `O(x) = x^3 / (1 - x^2)`.
pub fn odd_series_coeff(k: i64) -> i64 {
    (k >= 3 && k % 2 == 1) as i64
}

/// Coefficient of `x^k` in `E(x) = x^2 / (1 - x^2)`.
pub fn even_series_coeff(k: i64) -> i64 {
    (k >= 2 && k % 2 == 0) as i64
}

/// Coefficient of `x^k` in `S(x)`; zero for negative `k`.
pub fn cusp_series_coeff(k: i64) -> i64 {
    if k < 0 {
        0
    } else {
        dim_cusp(k as u32) as i64
    }
}

/// Truncated Laurent series with integer coefficients, used for the
/// dimension generating functions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    /// Exponent of `coeffs[0]`.
    pub low: i64,
    /// Coefficients are known exactly up to and including this exponent.
    pub high: i64,
    pub coeffs: Vec<i64>,
}

impl Series {
    pub fn from_fn(low: i64, high: i64, f: impl Fn(i64) -> i64) -> Self {
        Series { low, high, coeffs: (low..=high).map(f).collect() }
    }

    pub fn odd(high: i64) -> Self {
        Self::from_fn(0, high, odd_series_coeff)
    }

    pub fn even(high: i64) -> Self {
        Self::from_fn(0, high, even_series_coeff)
    }

    pub fn cusp(high: i64) -> Self {
        Self::from_fn(0, high, cusp_series_coeff)
    }

    pub fn coeff(&self, k: i64) -> i64 {
        assert!(k <= self.high, "series coefficient x^{k} beyond truncation {}", self.high);
        if k < self.low {
            0
        } else {
            self.coeffs[(k - self.low) as usize]
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let low = self.low + other.low;
        let high = (self.high + other.low).min(other.high + self.low);
        Series::from_fn(low, high, |k| (self.low..=k - other.low).map(|i| self.coeff(i) * other.coeff(k - i)).sum())
    }

    pub fn add(&self, other: &Series) -> Series {
        Series::from_fn(self.low.min(other.low), self.high.min(other.high), |k| self.coeff(k) + other.coeff(k))
    }

    pub fn sub(&self, other: &Series) -> Series {
        Series::from_fn(self.low.min(other.low), self.high.min(other.high), |k| self.coeff(k) - other.coeff(k))
    }

    /// Multiply by `x^s`.
    pub fn shift(&self, s: i64) -> Series {
        Series { low: self.low + s, high: self.high + s, coeffs: self.coeffs.clone() }
    }
}

/// Render as `"p/q"`, or `"p"` when the denominator is 1.
pub fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(n, d))
}

/// Serde adapter storing a [`Rational`] as its `"p/q"` string.
pub mod rational_str {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rational>`.
pub mod rational_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rational(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// Scale a rational vector to the primitive integer vector on the same ray
/// (positive multiple). Zero vectors stay zero.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Whether `a = c·b` for some rational `c > 0`. Two zero vectors count as proportional.
pub fn positively_proportional(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut ratio: Option<Rational> = None;
    for (x, y) in a.iter().zip(b) {
        match (x.is_zero(), y.is_zero()) {
            (true, true) => continue,
            (false, false) => {
                let r = x / y;
                if !r.is_positive() {
                    return false;
                }
                match &ratio {
                    Some(q) if *q != r => return false,
                    Some(_) => {}
                    None => ratio = Some(r),
                }
            }
            _ => return false,
        }
    }
    true
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
