//! Integer and rational coefficient kernels: `b`, `e` (depths 1 to 3), `c`,
//! `h`, and the rational families `τ` and `λ`.
//!
//! Integer kernels use `i128`. Entries stay far below that bound for the
//! weights this crate targets (binomials are tabulated to `C(127, n)`).

use num_traits::Zero;

use crate::arith::{beta, binom, int, rat, sign, Rational};
use crate::error::{contract, Result};
use crate::index::Index;

#[inline]
fn delta(a: &[u32], b: &[u32]) -> i128 {
    (a == b) as i128
}

/// `b^m_{n,n'} = (-1)^n C(m-1, n-1) + (-1)^{n'-m} C(m-1, n'-1)`.
#[inline]
pub fn b_coeff(n: i64, n2: i64, m: i64) -> i128 {
    sign(n) as i128 * binom(m - 1, n - 1) + sign(n2 - m) as i128 * binom(m - 1, n2 - 1)
}

/// `e` on raw parts; both slices must have the same length 1..=3.
/// Zero parts are accepted (the extended index sets use `n3 = 0`).
pub fn e_raw(m: &[u32], n: &[u32]) -> i128 {
    let d = delta(m, n);
    match m.len() {
        1 => d,
        2 => d + b_coeff(n[0] as i64, n[1] as i64, m[0] as i64),
        3 => {
            let m1 = m[0] as i64;
            let mut v = d;
            if m[2] == n[2] {
                v += b_coeff(n[0] as i64, n[1] as i64, m1);
            }
            if m[1] == n[0] {
                v += b_coeff(n[1] as i64, n[2] as i64, m1);
            }
            v
        }
        _ => unreachable!("depth checked by caller"),
    }
}

pub fn e_coeff(m: &Index, n: &Index) -> Result<i128> {
    if m.depth() != n.depth() {
        return contract(format!("e: length mismatch between {m} and {n}"));
    }
    if m.depth() == 0 || m.depth() > 3 {
        return contract(format!("e: depth must be 1..=3, got {}", m.depth()));
    }
    Ok(e_raw(m.parts(), n.parts()))
}

fn check_c_args(m: &Index, n: &Index) -> Result<()> {
    if m.depth() != 3 || n.depth() != 3 {
        return contract(format!("c: expects depth-3 indices, got {m} and {n}"));
    }
    if m.weight() != n.weight() {
        return contract(format!("c: weight mismatch between {m} and {n}"));
    }
    let p = m.parts();
    if p[0] < 3 || p[0] % 2 == 0 || p[1] < 3 || p[1] % 2 == 0 || p[2] < 2 {
        return contract(format!("c: row index {m} must have m1, m2 odd >= 3 and m3 >= 2"));
    }
    Ok(())
}

/// `c(m, n) = sum_{k1+k2+k3=N, ki>=1} δ(m1,k1) e((m2,m3),(k2,k3)) e((k1,k2,k3), n)`,
/// summed literally over the full range.
pub fn c_coeff(m: &Index, n: &Index) -> Result<i128> {
    check_c_args(m, n)?;
    let big_n = m.weight();
    let (m1, m2, m3) = (m.get(0), m.get(1), m.get(2));
    let mut s = 0i128;
    for k1 in 1..big_n {
        for k2 in 1..big_n - k1 {
            let k3 = big_n - k1 - k2;
            let d = delta(&[m1], &[k1]);
            if d == 0 {
                continue;
            }
            s += d * e_raw(&[m2, m3], &[k2, k3]) * e_raw(&[k1, k2, k3], n.parts());
        }
    }
    Ok(s)
}

/// Same value as [`c_coeff`]; only visits `k2` where `e((m2,m3),(k2,k3))` can be nonzero.
pub fn c_raw_fast(m: &[u32], n: &[u32]) -> i128 {
    let big_n: u32 = m.iter().sum();
    let (m1, m2, m3) = (m[0], m[1], m[2]);
    let top = big_n - m1; // k2 + k3
    if top < 2 {
        return 0;
    }
    let mut s = 0i128;
    let mut visit = |k2: u32| {
        let k3 = top - k2;
        let f = e_raw(&[m2, m3], &[k2, k3]);
        if f != 0 {
            s += f * e_raw(&[m1, k2, k3], n);
        }
    };
    // Nonzero only if k2 <= m2 or k3 <= m2; the diagonal (m2,m3) lies in the first range.
    let lo_end = m2.min(top - 1);
    for k2 in 1..=lo_end {
        visit(k2);
    }
    let hi_start = top.saturating_sub(m2).max(lo_end + 1).max(1);
    for k2 in hi_start..top {
        visit(k2);
    }
    s
}

pub fn c_coeff_fast(m: &Index, n: &Index) -> Result<i128> {
    check_c_args(m, n)?;
    Ok(c_raw_fast(m.parts(), n.parts()))
}

/// Five-term integer `h(m, n)` on depth-3 indices.
pub fn h_raw(m: &[u32], n: &[u32]) -> i128 {
    let (m1, m2) = (m[0] as i64, m[1] as i64);
    let (n1, n2, n3) = (n[0] as i64, n[1] as i64, n[2] as i64);
    let s = |e: i64| sign(e) as i128;
    let mut v = delta(m, n);
    if m[1] == n[0] {
        v += b_coeff(n2, n3, m1);
    }
    if m[0] == n[0] {
        v += b_coeff(n2, n3, m2);
    }
    v += s(m1 + m2 + n3) * binom(m2 - 1, n3 - 1) * (s(n2) * binom(m1 - 1, n2 - 1) - s(n1) * binom(m1 - 1, n1 - 1));
    v += s(n1) * binom(m2 - 1, n1 - 1) * (s(n2) * binom(m1 - 1, n2 - 1) - s(n3) * binom(m1 - 1, n3 - 1));
    v
}

pub fn h_coeff(m: &Index, n: &Index) -> Result<i128> {
    if m.depth() != 3 || n.depth() != 3 {
        return contract(format!("h: expects depth-3 indices, got {m} and {n}"));
    }
    if m.weight() != n.weight() {
        return contract(format!("h: weight mismatch between {m} and {n}"));
    }
    if m.parts().contains(&0) {
        return contract(format!("h: row index {m} must have positive parts"));
    }
    Ok(h_raw(m.parts(), n.parts()))
}

// sum_{j=2..k} C(j-1, s-1) β_j β_{k-j}
fn beta_convolution(k: i64, s: i64) -> Rational {
    let mut acc = Rational::zero();
    for j in 2..=k {
        let c = binom(j - 1, s - 1);
        if c == 0 {
            continue;
        }
        let bb = beta(j as usize) * beta((k - j) as usize);
        if !bb.is_zero() {
            acc += bb * int(c);
        }
    }
    acc
}

/// The depth-2 coefficient `τ(n1, n2)` of `ζ(N)`, with separate closed forms
/// for even and odd `N = n1 + n2`.
pub fn tau(n1: u32, n2: u32) -> Rational {
    assert!(n1 >= 1 && n2 >= 1, "tau needs n1, n2 >= 1");
    let (a, b) = (n1 as i64, n2 as i64);
    let n = a + b;
    if n % 2 == 1 {
        let inner = sign(a) as i128 + binom(n - 1, a - 1) + binom(n - 1, b - 1);
        return rat(sign(a + 1), 2) * int(inner);
    }
    let bn = beta(n as usize);
    let first = -rat(1, 12) * int(5 + sign(b) as i128 * (binom(n - 1, b - 1) - binom(n - 1, b)));
    let second = beta(n1 as usize) * beta(n2 as usize) / (int(3) * &bn);
    let third = int(sign(b)) / (int(3) * &bn) * beta_convolution(n, b);
    first + second + third
}

/// `λ(r, s)` for even `r + s`.
pub fn lambda_coeff(r: u32, s: u32) -> Result<Rational> {
    if r < 1 || s < 1 {
        return contract("lambda needs r, s >= 1");
    }
    if (r + s) % 2 == 1 {
        return contract(format!("lambda needs r + s even, got ({r},{s})"));
    }
    let (r, s) = (r as i64, s as i64);
    let k = r + s;
    let first = -rat(1, 12) * int(1 - sign(s) as i128 * binom(k - 1, s - 1) + sign(s) as i128 * binom(k - 1, s));
    let second = int(sign(s)) / (int(3) * beta(k as usize)) * beta_convolution(k, s);
    Ok(first - second)
}
