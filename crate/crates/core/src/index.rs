//! Weight compositions and their parity-pattern index sets.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{contract, Error, Result};

/// A composition `(n1, ..., nr)`, `1 <= r <= 3`. Ordered lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        Index(parts.into())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }
}

impl From<&[u32]> for Index {
    fn from(p: &[u32]) -> Self {
        Index(p.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for Index {
    fn from(p: [u32; N]) -> Self {
        Index(p.to_vec())
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("index {s:?} must look like (n1,n2,n3)")))?;
        let parts = inner
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad index part in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        if parts.is_empty() || parts.len() > 3 {
            return Err(Error::Parse(format!("index {s:?} must have 1 to 3 parts")));
        }
        Ok(Index(parts))
    }
}

impl Serialize for Index {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Constraint on one slot of an index.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Slot {
    /// odd, > 1
    Odd,
    /// even, >= 2
    Even,
    /// anything >= 2
    Any,
    /// even, >= 0
    EvenOrZero,
}

impl Slot {
    pub fn admits(self, x: u32) -> bool {
        match self {
            Slot::Odd => x > 1 && x % 2 == 1,
            Slot::Even => x >= 2 && x % 2 == 0,
            Slot::Any => x >= 2,
            Slot::EvenOrZero => x % 2 == 0,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Slot::Odd => "o",
            Slot::Even => "e",
            Slot::Any => "a",
            Slot::EvenOrZero => "e0",
        }
    }
}

/// A parity pattern such as `ooe` or `oe0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Pattern(Vec<Slot>);

impl Pattern {
    pub fn new(slots: impl Into<Vec<Slot>>) -> Self {
        Pattern(slots.into())
    }

    pub fn slots(&self) -> &[Slot] {
        &self.0
    }

    /// Pattern of the almost totally odd indices `I^(j)`: even slot at position `j`.
    pub fn almost_totally_odd(j: u8) -> Result<Self> {
        match j {
            1 => Ok(Pattern(vec![Slot::Even, Slot::Odd, Slot::Odd])),
            2 => Ok(Pattern(vec![Slot::Odd, Slot::Even, Slot::Odd])),
            3 => Ok(Pattern(vec![Slot::Odd, Slot::Odd, Slot::Even])),
            _ => contract(format!("j must be 1, 2 or 3, got {j}")),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(s.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// Letters `o`, `e`, `a`; `e0` (or `z`) for even-or-zero.
    fn from_str(s: &str) -> Result<Self> {
        let mut slots = Vec::new();
        let mut chars = s.chars().peekable();
        while let Some(c) = chars.next() {
            let slot = match c {
                'o' => Slot::Odd,
                'a' => Slot::Any,
                'z' => Slot::EvenOrZero,
                'e' if chars.peek() == Some(&'0') => {
                    chars.next();
                    Slot::EvenOrZero
                }
                'e' => Slot::Even,
                _ => return Err(Error::Parse(format!("bad pattern {s:?}"))),
            };
            slots.push(slot);
        }
        Ok(Pattern(slots))
    }
}

/// All indices of a given weight matching a pattern, ascending lexicographic.
#[derive(Clone, Debug)]
pub struct IndexSet {
    weight: u32,
    pattern: Pattern,
    members: Vec<Index>,
    position: HashMap<Index, usize>,
}

impl PartialEq for IndexSet {
    fn eq(&self, other: &Self) -> bool {
        self.weight == other.weight && self.pattern == other.pattern
    }
}

impl Eq for IndexSet {}

impl IndexSet {
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn members(&self) -> &[Index] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, idx: &Index) -> Option<usize> {
        self.position.get(idx).copied()
    }

    pub fn contains(&self, idx: &Index) -> bool {
        self.position.contains_key(idx)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Index> {
        self.members.iter()
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.members.iter())
    }
}

/// Enumerate the index set of `weight` with the given pattern.
pub fn index_set(weight: u32, pattern: &Pattern) -> Result<IndexSet> {
    if weight < 2 {
        return contract(format!("index_set needs weight >= 2, got {weight}"));
    }
    let slots = pattern.slots();
    if slots.is_empty() || slots.len() > 3 {
        return contract(format!("pattern length must be 1..=3, got {}", slots.len()));
    }
    let mut members = Vec::new();
    let mut prefix = Vec::with_capacity(slots.len());
    enumerate(slots, weight, &mut prefix, &mut members);
    // Recursion emits ascending parts slot by slot, hence already lex sorted.
    debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
    let position = members.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    Ok(IndexSet { weight, pattern: pattern.clone(), members, position })
}

fn enumerate(slots: &[Slot], rem: u32, prefix: &mut Vec<u32>, out: &mut Vec<Index>) {
    let (slot, rest) = slots.split_first().expect("non-empty");
    if rest.is_empty() {
        if slot.admits(rem) {
            let mut p = prefix.clone();
            p.push(rem);
            out.push(Index(p));
        }
        return;
    }
    for x in 0..=rem {
        if slot.admits(x) {
            prefix.push(x);
            enumerate(rest, rem - x, prefix, out);
            prefix.pop();
        }
    }
}

/// Parse-and-enumerate convenience, e.g. `set(12, "ooe")`.
pub fn set(weight: u32, pattern: &str) -> Result<IndexSet> {
    index_set(weight, &pattern.parse()?)
}

/// `I_k^(j)`.
pub fn almost_totally_odd(weight: u32, j: u8) -> Result<IndexSet> {
    index_set(weight, &Pattern::almost_totally_odd(j)?)
}
