//! Independent oracles used by the integration tests. Nothing here calls
//! into the library's own linear algebra or series code.
#![allow(dead_code)]

use mzvlab_core::{Index, QMatrix, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn qr(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn idx(parts: &[u32]) -> Index {
    Index::new(parts.to_vec())
}

pub fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Plain rational Gauss–Jordan elimination; returns (rref rows, pivot columns).
pub fn gauss_jordan(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut a: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = Rational::one() / &a[r][c];
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row).take(ncols) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

pub fn oracle_rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    gauss_jordan(rows, ncols).1.len()
}

/// Right null space basis from the reduced echelon form.
pub fn oracle_null_space(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (rref, pivots) = gauss_jordan(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -rref[i][f].clone();
            }
            v
        })
        .collect()
}

pub fn transpose(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    (0..ncols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

pub fn left_times(v: &[Rational], m: &QMatrix) -> Vec<Rational> {
    (0..m.ncols()).map(|j| (0..m.nrows()).map(|i| &v[i] * m.get(i, j)).fold(Rational::zero(), |a, b| a + b)).collect()
}

pub fn matrix_times(m: &QMatrix, v: &[Rational]) -> Vec<Rational> {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m.get(i, j) * &v[j]).fold(Rational::zero(), |a, b| a + b)).collect()
}

/// Whether two vectors span the same line, with a positive ratio.
pub fn same_ray(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else { return b.iter().all(|x| x.is_zero()) };
    if b[i].is_zero() {
        return false;
    }
    let r = &b[i] / &a[i];
    r.is_positive() && a.iter().zip(b).all(|(x, y)| x * &r == *y)
}

/// Whether two vectors are nonzero multiples of each other.
pub fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    let neg: Vec<Rational> = b.iter().map(|x| -x.clone()).collect();
    same_ray(a, b) || same_ray(a, &neg)
}

pub fn to_q(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

pub fn qs(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| q(x)).collect()
}

/// `C(m, n)` by the multiplicative formula; zero outside `0 <= n <= m`.
pub fn oracle_binom(m: i64, n: i64) -> BigInt {
    if n < 0 || m < 0 || n > m {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..n {
        acc = acc * BigInt::from(m - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bernoulli numbers (B_1 = -1/2) by the Akiyama–Tanigawa algorithm.
pub fn oracle_bernoulli(n: usize) -> Rational {
    let mut a: Vec<Rational> = (0..=n).map(|m| qr(1, m as i64 + 1)).collect();
    let mut out = Vec::new();
    for m in 0..=n {
        out.push(a[0].clone());
        for j in 0..(n - m) {
            a[j] = q(j as i64 + 1) * (&a[j] - &a[j + 1]);
        }
    }
    // Akiyama–Tanigawa yields B_1 = +1/2.
    let b = out[n].clone();
    if n == 1 {
        -b
    } else {
        b
    }
}

/// Coefficients of `x^12 / ((1 - x^4)(1 - x^6))` by naive series division.
pub fn oracle_cusp_dims(max: usize) -> Vec<i64> {
    // denominator 1 - x^4 - x^6 + x^10
    let mut den = vec![0i64; max + 1];
    for (e, c) in [(0, 1), (4, -1), (6, -1), (10, 1)] {
        if e <= max {
            den[e] += c;
        }
    }
    let mut num = vec![0i64; max + 1];
    if 12 <= max {
        num[12] = 1;
    }
    let mut out = vec![0i64; max + 1];
    for n in 0..=max {
        let mut s = num[n];
        for k in 1..=n {
            s -= den[k] * out[n - k];
        }
        out[n] = s;
    }
    out
}

/// `ζ(s)` in double precision by summation plus a two-term tail.
pub fn f64_zeta(s: u32) -> f64 {
    let n = 100_000u64;
    let mut acc = 0.0;
    for m in (1..=n).rev() {
        acc += (m as f64).powi(-(s as i32));
    }
    let nf = n as f64;
    acc + nf.powi(1 - s as i32) / (s as f64 - 1.0) - 0.5 * nf.powi(-(s as i32))
}

/// `ζ(r, s) = sum_{0<m<n} m^-r n^-s` in double precision for `s >= 2`.
pub fn f64_double_zeta(r: u32, s: u32) -> f64 {
    let n = 200_000u64;
    let mut inner = 0.0;
    let mut acc = 0.0;
    for m in 1..=n {
        acc += inner * (m as f64).powi(-(s as i32));
        inner += (m as f64).powi(-(r as i32));
    }
    acc
}

/// Reference digits of `ζ(2)`, `ζ(3)`, `ζ(5)`.
pub const ZETA2: &str = "1.6449340668482264364724151666460251892189499012067984377355582293700074704032008738336";
pub const ZETA3: &str = "1.2020569031595942853997381615114499907649862923404988817922715553418382057863130901864";
pub const ZETA5: &str = "1.0369277551433699263313654864570341680570809195019128119741926779038035897862814845600";

/// Parse a decimal string into an exact rational.
pub fn decimal(s: &str) -> Rational {
    let (i, f) = s.split_once('.').unwrap_or((s, ""));
    let num: BigInt = format!("{i}{f}").parse().unwrap();
    Rational::new(num, num_traits::pow(BigInt::from(10), f.len()))
}

pub fn abs_f64(x: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    x.abs().to_f64().unwrap()
}
