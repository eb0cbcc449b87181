//! Every annihilator matrix family, built from the coefficient kernels, plus
//! a process-wide cache of built matrices.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use crate::arith::int;
use crate::error::{contract, Error, Result};
use crate::index::{almost_totally_odd, set, Index};
use crate::kernels::{c_raw_fast, e_raw, h_raw};
use crate::linalg::QMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MatrixFamily {
    /// `C_k^(j)`: `c(m, n)`, rows `I_k^(3)`, columns `I_k^(j)`.
    C3,
    /// `B_k^(3)`: `δ(m1,n1) e((m2,m3),(n2,n3))` on `I_k^(3)`.
    B3,
    /// `E_k^(3)`: `e(m, n)` on `I_k^(3)`.
    E3,
    /// `B̂_k^(3)`: as `B3` on the extended set `Î_k^(3)`.
    B3hat,
    /// `Ê_k^(3)`: as `E3` on `Î_k^(3)`.
    E3hat,
    /// `L_k`: `e(m, n) - δ(m, n)` on `Î_k^(3)`.
    L,
    /// Depth-2 `C_k`: `e(m, n)`, rows `I_k(oo)`, columns `I_k(aa)`.
    C2depth2,
    /// `B_k` (odd k): `e(m, n)` on `I_k(oe)`.
    B2,
    /// `B̂_k` (odd k): `e(m, n)` on `Î_k(oe) = I_k(o e0)`.
    B2hat,
    /// `C_k^(eee)`: `c(m, n)`, rows `I_k^(3)`, columns `I_k(eee)`.
    Ceee,
    /// `H_k^(j)`: `h(m, n)`, rows `I_k(aae)`, columns `I_k^(j)`.
    H3,
    /// Left factor of `C_k^(j) = F·H_k^(j)`: `e((m1,m2),(n1,n2)) δ(m3,n3)`,
    /// rows `I_k^(3)`, columns `I_k(aae)`.
    C2Block,
}

pub const ALL_FAMILIES: [MatrixFamily; 12] = [
    MatrixFamily::C3,
    MatrixFamily::B3,
    MatrixFamily::E3,
    MatrixFamily::B3hat,
    MatrixFamily::E3hat,
    MatrixFamily::L,
    MatrixFamily::C2depth2,
    MatrixFamily::B2,
    MatrixFamily::B2hat,
    MatrixFamily::Ceee,
    MatrixFamily::H3,
    MatrixFamily::C2Block,
];

impl MatrixFamily {
    pub fn name(self) -> &'static str {
        match self {
            MatrixFamily::C3 => "C3",
            MatrixFamily::B3 => "B3",
            MatrixFamily::E3 => "E3",
            MatrixFamily::B3hat => "B3hat",
            MatrixFamily::E3hat => "E3hat",
            MatrixFamily::L => "L",
            MatrixFamily::C2depth2 => "C2depth2",
            MatrixFamily::B2 => "B2",
            MatrixFamily::B2hat => "B2hat",
            MatrixFamily::Ceee => "Ceee",
            MatrixFamily::H3 => "H3",
            MatrixFamily::C2Block => "C2block",
        }
    }

    pub fn needs_j(self) -> bool {
        matches!(self, MatrixFamily::C3 | MatrixFamily::H3)
    }

    pub fn odd_weight(self) -> bool {
        matches!(self, MatrixFamily::B2 | MatrixFamily::B2hat)
    }
}

impl fmt::Display for MatrixFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatrixFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ALL_FAMILIES.iter().copied().find(|f| f.name().eq_ignore_ascii_case(s)).ok_or_else(|| {
            let names: Vec<_> = ALL_FAMILIES.iter().map(|f| f.name()).collect();
            Error::Parse(format!("unknown matrix family {s:?}; expected one of {}", names.join(", ")))
        })
    }
}

fn from_kernel(rows: &[Index], cols: &[Index], f: impl Fn(&[u32], &[u32]) -> i128) -> QMatrix {
    QMatrix::from_fn(rows, cols, |m, n| int(f(m.parts(), n.parts())))
}

fn b3_entry(m: &[u32], n: &[u32]) -> i128 {
    if m[0] == n[0] {
        e_raw(&m[1..], &n[1..])
    } else {
        0
    }
}

fn c2_block_entry(m: &[u32], n: &[u32]) -> i128 {
    if m[2] == n[2] {
        e_raw(&m[..2], &n[..2])
    } else {
        0
    }
}

/// Build a matrix of the given family. `j` is required for `C3` and `H3`
/// and ignored otherwise.
pub fn build_matrix(family: MatrixFamily, weight: u32, j: Option<u8>) -> Result<QMatrix> {
    if family.odd_weight() && weight % 2 == 0 {
        return contract(format!("{family} is defined for odd weight, got {weight}"));
    }
    if !family.odd_weight() && weight % 2 == 1 {
        return contract(format!("{family} is defined for even weight, got {weight}"));
    }
    if weight < 2 {
        return contract(format!("weight must be at least 2, got {weight}"));
    }
    let jj = match (family.needs_j(), j) {
        (true, Some(j)) if (1..=3).contains(&j) => j,
        (true, Some(j)) => return contract(format!("j must be 1, 2 or 3, got {j}")),
        (true, None) => return contract(format!("{family} needs j")),
        (false, _) => 0,
    };
    let i3 = || almost_totally_odd(weight, 3);
    let hat3 = || set(weight, "ooe0");
    Ok(match family {
        MatrixFamily::C3 => {
            let cols = almost_totally_odd(weight, jj)?;
            from_kernel(i3()?.members(), cols.members(), c_raw_fast)
        }
        MatrixFamily::B3 => {
            let s = i3()?;
            from_kernel(s.members(), s.members(), b3_entry)
        }
        MatrixFamily::E3 => {
            let s = i3()?;
            from_kernel(s.members(), s.members(), e_raw)
        }
        MatrixFamily::B3hat => {
            let s = hat3()?;
            from_kernel(s.members(), s.members(), b3_entry)
        }
        MatrixFamily::E3hat => {
            let s = hat3()?;
            from_kernel(s.members(), s.members(), e_raw)
        }
        MatrixFamily::L => {
            let s = hat3()?;
            from_kernel(s.members(), s.members(), |m, n| e_raw(m, n) - (m == n) as i128)
        }
        MatrixFamily::C2depth2 => from_kernel(set(weight, "oo")?.members(), set(weight, "aa")?.members(), e_raw),
        MatrixFamily::B2 => {
            let s = set(weight, "oe")?;
            from_kernel(s.members(), s.members(), e_raw)
        }
        MatrixFamily::B2hat => {
            let s = set(weight, "oe0")?;
            from_kernel(s.members(), s.members(), e_raw)
        }
        MatrixFamily::Ceee => from_kernel(i3()?.members(), set(weight, "eee")?.members(), c_raw_fast),
        MatrixFamily::H3 => {
            let cols = almost_totally_odd(weight, jj)?;
            from_kernel(set(weight, "aae")?.members(), cols.members(), h_raw)
        }
        MatrixFamily::C2Block => from_kernel(i3()?.members(), set(weight, "aae")?.members(), c2_block_entry),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Key {
    family: MatrixFamily,
    weight: u32,
    j: u8,
}

/// Shared cache of built matrices: concurrent readers, single-writer inserts.
#[derive(Default)]
pub struct MatrixCache {
    map: RwLock<HashMap<Key, Arc<QMatrix>>>,
}

impl MatrixCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, family: MatrixFamily, weight: u32, j: Option<u8>) -> Result<Arc<QMatrix>> {
        let key = Key { family, weight, j: if family.needs_j() { j.unwrap_or(0) } else { 0 } };
        if let Some(m) = self.map.read().expect("matrix cache poisoned").get(&key) {
            return Ok(m.clone());
        }
        let built = Arc::new(build_matrix(family, weight, j)?);
        let mut w = self.map.write().expect("matrix cache poisoned");
        Ok(w.entry(key).or_insert(built).clone())
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("matrix cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Process-wide matrix cache.
pub fn cached_matrix(family: MatrixFamily, weight: u32, j: Option<u8>) -> Result<Arc<QMatrix>> {
    static CACHE: OnceLock<MatrixCache> = OnceLock::new();
    CACHE.get_or_init(MatrixCache::new).get(family, weight, j)
}

/// Positions of rows (resp. columns) of `m` grouped by a key on their labels,
/// in first-appearance order.
pub fn group_positions(labels: &[Index], key: impl Fn(&Index) -> u32) -> Vec<(u32, Vec<usize>)> {
    let mut out: Vec<(u32, Vec<usize>)> = Vec::new();
    for (i, l) in labels.iter().enumerate() {
        let k = key(l);
        match out.iter_mut().find(|(kk, _)| *kk == k) {
            Some((_, v)) => v.push(i),
            None => out.push((k, vec![i])),
        }
    }
    out
}

/// Zero matrix check helper used by factorization suites.
pub fn entries_equal(a: &QMatrix, b: &QMatrix) -> bool {
    a.nrows() == b.nrows() && a.ncols() == b.ncols() && a.entries().iter().zip(b.entries()).all(|(x, y)| x == y)
}
