//! n-paths encoded as integers, and the bit statistics built on them.
//!
//! An n-path `γ₀γ₁…γₙ` always starts at site 0 (`γ₀ = 0`); the remaining
//! `n` sites are the big-endian binary expansion of an index `j < 2^n`, so
//! the literal `01101` is `(n = 4, j = 13)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest level representable with a `u64` index.
pub const MAX_LEVEL: u32 = 63;

/// Default level cap for materialized count vectors (2^24 entries).
pub const DEFAULT_VECTOR_CAP: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PathIndex {
    level: u32,
    index: u64,
}

impl PathIndex {
    pub fn new(level: u32, index: u64) -> Result<Self> {
        if level == 0 || level > MAX_LEVEL {
            return Err(Error::Invalid(format!(
                "path level must be in 1..={MAX_LEVEL}, got {level}"
            )));
        }
        if index >> level != 0 {
            return Err(Error::Invalid(format!(
                "index {index} out of range for level {level}"
            )));
        }
        Ok(PathIndex { level, index })
    }

    pub fn level(self) -> u32 {
        self.level
    }

    pub fn index(self) -> u64 {
        self.index
    }

    /// Site occupied at the final time step.
    pub fn end_site(self) -> u8 {
        (self.index & 1) as u8
    }

    /// The path as a string of sites, `γ₀` included.
    pub fn to_path_string(self) -> String {
        format!("0{:0width$b}", self.index, width = self.level as usize)
    }
}

impl fmt::Display for PathIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_path_string())
    }
}

impl FromStr for PathIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_path(s)
    }
}

/// Parse a path literal such as `"01101"` into `(n = len − 1, j)`.
pub fn parse_path(literal: &str) -> Result<PathIndex> {
    let literal = literal.trim();
    if !literal.bytes().all(|b| b == b'0' || b == b'1') || literal.is_empty() {
        return Err(Error::Parse(format!(
            "path literal must be a non-empty string over {{0,1}}: {literal:?}"
        )));
    }
    if !literal.starts_with('0') {
        return Err(Error::Parse(format!(
            "path literal must start at site 0: {literal:?}"
        )));
    }
    let level = (literal.len() - 1) as u32;
    if level == 0 {
        return Err(Error::Parse(
            "path literal needs at least one step after the initial site".into(),
        ));
    }
    if level > MAX_LEVEL {
        return Err(Error::Parse(format!(
            "path literal longer than {MAX_LEVEL} steps"
        )));
    }
    let index = u64::from_str_radix(&literal[1..], 2).map_err(|e| Error::Parse(e.to_string()))?;
    PathIndex::new(level, index)
}

/// Number of adjacent unequal pairs in `0, γ₁, …, γₙ`.
pub fn switch_count(p: PathIndex) -> u32 {
    // Bit n−1 of (j >> 1) is zero, which compares γ₁ against γ₀ = 0.
    (p.index ^ (p.index >> 1)).count_ones()
}

/// Number of 1-bits in the n-bit expansion of the index.
pub fn ones_count(p: PathIndex) -> u32 {
    p.index.count_ones()
}

/// `1` if `j ≡ k (mod 2)`, else `0`.
pub fn parity(j: u64, k: u64) -> u8 {
    (((j ^ k) & 1) ^ 1) as u8
}

/// A vector of `2^level` small counts indexed by path index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountVector {
    level: u32,
    values: Vec<u8>,
}

impl CountVector {
    pub fn new(level: u32, values: Vec<u8>) -> Result<Self> {
        if level == 0 || level > MAX_LEVEL {
            return Err(Error::Invalid(format!("bad level {level}")));
        }
        if values.len() as u128 != 1u128 << level {
            return Err(Error::Invalid(format!(
                "count vector at level {level} needs {} entries, got {}",
                1u128 << level,
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|&&v| v as u32 > level) {
            return Err(Error::Invalid(format!("count {v} exceeds level {level}")));
        }
        Ok(CountVector { level, values })
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, j: usize) -> Option<u8> {
        self.values.get(j).copied()
    }

    /// Value multiset as a histogram of length `level + 1`.
    pub fn histogram(&self) -> Vec<u64> {
        let mut hist = vec![0u64; self.level as usize + 1];
        for &v in &self.values {
            hist[v as usize] += 1;
        }
        hist
    }
}

fn check_vector_cap(what: &'static str, n: u32, cap: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid(format!("{what}: level must be positive")));
    }
    if n > cap.min(MAX_LEVEL) {
        return Err(Error::capacity(what, n, cap.min(MAX_LEVEL)));
    }
    Ok(())
}

/// `z(n)` from `z(1) = (0,1)` and `z(n+1) = (z(n), z(n) + 1)`.
pub fn z_vector(n: u32) -> Result<CountVector> {
    z_vector_with_cap(n, DEFAULT_VECTOR_CAP)
}

pub fn z_vector_with_cap(n: u32, cap: u32) -> Result<CountVector> {
    check_vector_cap("z_vector", n, cap)?;
    let mut values = Vec::with_capacity(1usize << n);
    values.extend_from_slice(&[0u8, 1]);
    for _ in 1..n {
        let len = values.len();
        values.extend_from_within(..len);
        values[len..].iter_mut().for_each(|v| *v += 1);
    }
    Ok(CountVector { level: n, values })
}

/// `y(n)` from `y(1) = (0,1)` and `y(n+1) = (y(n), reverse(y(n) + 1))`.
pub fn y_vector(n: u32) -> Result<CountVector> {
    y_vector_with_cap(n, DEFAULT_VECTOR_CAP)
}

pub fn y_vector_with_cap(n: u32, cap: u32) -> Result<CountVector> {
    check_vector_cap("y_vector", n, cap)?;
    let mut values = Vec::with_capacity(1usize << n);
    values.extend_from_slice(&[0u8, 1]);
    for _ in 1..n {
        let len = values.len();
        // reversal as index reflection j -> 2^n - 1 - j
        for j in 0..len {
            let v = values[len - 1 - j] + 1;
            values.push(v);
        }
    }
    Ok(CountVector { level: n, values })
}

/// Counts of components by residue mod 4: `(c₀, c₁, c₂, c₃)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassCounts {
    pub level: u32,
    pub counts: [u64; 4],
}

impl ClassCounts {
    /// `c_j(n+1) = c_j(n) + c_{j−1 mod 4}(n)`.
    pub fn next_level(&self) -> ClassCounts {
        let c = self.counts;
        ClassCounts {
            level: self.level + 1,
            counts: [c[0] + c[3], c[1] + c[0], c[2] + c[1], c[3] + c[2]],
        }
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().map(|&c| c as u128).sum()
    }
}

pub fn class_counts(v: &CountVector) -> ClassCounts {
    let mut counts = [0u64; 4];
    for &x in &v.values {
        counts[(x & 3) as usize] += 1;
    }
    ClassCounts {
        level: v.level,
        counts,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(level: u32, index: u64) -> PathIndex {
        PathIndex::new(level, index).unwrap()
    }

    /// Count switches by walking the literal site string.
    fn switches_by_scan(level: u32, index: u64) -> u32 {
        let s = p(level, index).to_path_string();
        s.as_bytes().windows(2).filter(|w| w[0] != w[1]).count() as u32
    }

    #[test]
    fn path_literals() {
        assert_eq!(parse_path("01101").unwrap(), p(4, 13));
        assert_eq!(parse_path("010").unwrap(), p(2, 2));
        assert_eq!(p(4, 13).to_path_string(), "01101");
        assert_eq!(p(3, 0).to_string(), "0000");
        assert!(parse_path("1101").is_err());
        assert!(parse_path("0").is_err());
        assert!(parse_path("").is_err());
        assert!(parse_path("0120").is_err());
        assert!(PathIndex::new(2, 4).is_err());
        assert!(PathIndex::new(0, 0).is_err());
    }

    #[test]
    fn switch_count_examples() {
        assert_eq!(switch_count(p(2, 2)), 2);
        assert_eq!(switch_count(p(5, 0)), 0);
        assert_eq!(switch_count(p(4, 13)), 3);
        let s2: Vec<u32> = (0..4).map(|j| switch_count(p(2, j))).collect();
        assert_eq!(s2, [0, 1, 2, 1]);
    }

    #[test]
    fn switch_count_matches_string_scan() {
        for n in 1..=12 {
            for j in 0..1u64 << n {
                assert_eq!(switch_count(p(n, j)), switches_by_scan(n, j));
            }
        }
        assert_eq!(switch_count(p(63, u64::MAX >> 1)), 1);
        assert_eq!(switch_count(p(63, 0x2AAA_AAAA_AAAA_AAAA)), 62);
    }

    #[test]
    fn ones_count_examples() {
        assert_eq!(ones_count(p(3, 5)), 2);
        assert_eq!(ones_count(p(7, 0)), 0);
        assert_eq!(ones_count(p(7, 127)), 7);
    }

    #[test]
    fn vectors_from_recursion() {
        assert_eq!(z_vector(1).unwrap().values(), [0, 1]);
        assert_eq!(z_vector(3).unwrap().values(), [0, 1, 1, 2, 1, 2, 2, 3]);
        assert_eq!(
            z_vector(4).unwrap().values(),
            [0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4]
        );
        assert_eq!(y_vector(1).unwrap().values(), [0, 1]);
        assert_eq!(y_vector(2).unwrap().values(), [0, 1, 2, 1]);
        assert_eq!(y_vector(3).unwrap().values(), [0, 1, 2, 1, 2, 3, 2, 1]);
        assert_eq!(
            y_vector(4).unwrap().values(),
            [0, 1, 2, 1, 2, 3, 2, 1, 2, 3, 4, 3, 2, 3, 2, 1]
        );
    }

    #[test]
    fn vector_caps() {
        assert!(matches!(
            z_vector_with_cap(9, 8),
            Err(Error::Capacity {
                level: 9,
                cap: 8,
                ..
            })
        ));
        assert!(y_vector(0).is_err());
        assert!(z_vector(25).is_err());
        assert_eq!(y_vector_with_cap(8, 8).unwrap().len(), 256);
    }

    #[test]
    fn count_vector_validation() {
        assert!(CountVector::new(2, vec![0, 1, 1, 2]).is_ok());
        assert!(CountVector::new(2, vec![0, 1, 1]).is_err());
        assert!(CountVector::new(2, vec![0, 1, 1, 3]).is_err());
    }

    #[test]
    fn class_count_examples() {
        assert_eq!(class_counts(&z_vector(4).unwrap()).counts, [2, 4, 6, 4]);
        assert_eq!(class_counts(&z_vector(1).unwrap()).counts, [1, 1, 0, 0]);
        assert_eq!(class_counts(&z_vector(2).unwrap()).counts, [1, 2, 1, 0]);
        assert_eq!(class_counts(&z_vector(3).unwrap()).counts, [1, 3, 3, 1]);
        // y(4) = (0,1,2,1,2,3,2,1,2,3,4,3,2,3,2,1): residues 0:{0,4} 1:{1,1,1,1} 2:{2×6} 3:{3×4}
        assert_eq!(class_counts(&y_vector(4).unwrap()).counts, [2, 4, 6, 4]);
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity(0, 2), 1);
        assert_eq!(parity(0, 1), 0);
        assert_eq!(parity(7, 7), 1);
        assert_eq!(parity(3, 8), 0);
    }

    #[test]
    fn reflection_identity() {
        for n in 1..=12u32 {
            for j in 0..1u64 << n {
                let reflected = (1u64 << (n + 1)) - 1 - j;
                assert_eq!(switch_count(p(n + 1, reflected)), switch_count(p(n, j)) + 1);
            }
        }
    }

    #[test]
    fn class_count_recurrence() {
        let mut c = class_counts(&z_vector(1).unwrap());
        for n in 2..=14 {
            c = c.next_level();
            assert_eq!(c, class_counts(&z_vector(n).unwrap()));
            assert_eq!(c.total(), 1u128 << n);
        }
    }
}
