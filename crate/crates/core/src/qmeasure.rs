//! Events, cylinder sets and the quantum measure.
//!
//! `μ_n(A) = Σ_{γ,γ' ∈ A} D^n(γ, γ')`. Two routes compute it:
//! [`mu_pairsum`] is the literal double sum and [`mu_fast`] uses
//! `D^n = w₀w₀* + w₁w₁*` to collapse it into two squared phase sums.
//! The complement `A'_n = Ω_n \ {00…0}` additionally has a boundary
//! row-sum formula and a closed form through `(1+i)^n`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::gaussian::{gauss_pow_1pi, GaussianInt};
use crate::pathspace::{switch_count, PathIndex};

/// Largest level an [`Event`] may live at (linear scans up to 2^30 paths).
pub const SCAN_CAP: u32 = 30;

/// Default level cap for [`mu_pairsum`].
pub const DEFAULT_PAIRSUM_CAP: u32 = 14;

/// A subset of `Ω_n`, stored as a bitset over path indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Event {
    level: u32,
    words: Vec<u64>,
}

fn check_event_level(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::Invalid("event level must be positive".into()));
    }
    if n > SCAN_CAP {
        return Err(Error::capacity("event", n, SCAN_CAP));
    }
    Ok(())
}

impl Event {
    pub fn empty(level: u32) -> Result<Self> {
        check_event_level(level)?;
        let bits = 1u64 << level;
        Ok(Event {
            level,
            words: vec![0; bits.div_ceil(64) as usize],
        })
    }

    /// The whole sample space `Ω_n`.
    pub fn full(level: u32) -> Result<Self> {
        Ok(Event::empty(level)?.complement())
    }

    pub fn from_indices<I: IntoIterator<Item = u64>>(level: u32, indices: I) -> Result<Self> {
        let mut e = Event::empty(level)?;
        for j in indices {
            e.insert(j)?;
        }
        Ok(e)
    }

    pub fn singleton(p: PathIndex) -> Result<Self> {
        Event::from_indices(p.level(), [p.index()])
    }

    /// Parse a hex mask where bit `j` marks index `j` as a member.
    pub fn from_hex_mask(level: u32, mask: &str) -> Result<Self> {
        let mut e = Event::empty(level)?;
        let digits = mask
            .trim()
            .trim_start_matches("0x")
            .trim_start_matches("0X")
            .replace('_', "");
        if digits.is_empty() {
            return Err(Error::Parse("empty hex mask".into()));
        }
        for (pos, ch) in digits.bytes().rev().enumerate() {
            let nibble = (ch as char)
                .to_digit(16)
                .ok_or_else(|| Error::Parse(format!("bad hex digit {:?} in mask", ch as char)))?
                as u64;
            for b in 0..4u64 {
                if nibble >> b & 1 == 1 {
                    let j = pos as u64 * 4 + b;
                    e.insert(j).map_err(|_| {
                        Error::Parse(format!(
                            "mask has bit {j} set but level {level} has only {} paths",
                            1u64 << level
                        ))
                    })?;
                }
            }
        }
        Ok(e)
    }

    /// Hex mask with bit `j` set for each member `j`, most significant first.
    pub fn to_hex_mask(&self) -> String {
        let nibbles = (1u64 << self.level).div_ceil(4);
        let mut out = String::with_capacity(nibbles as usize + 2);
        out.push_str("0x");
        for pos in (0..nibbles).rev() {
            let word = self.words[(pos / 16) as usize];
            let nibble = (word >> ((pos % 16) * 4)) & 0xF;
            out.push(
                char::from_digit(nibble as u32, 16)
                    .unwrap()
                    .to_ascii_uppercase(),
            );
        }
        out
    }

    /// Each path is a member independently with probability 1/2.
    pub fn random<R: Rng + ?Sized>(level: u32, rng: &mut R) -> Result<Self> {
        let mut e = Event::empty(level)?;
        for w in e.words.iter_mut() {
            *w = rng.gen();
        }
        e.clear_padding();
        Ok(e)
    }

    /// Three mutually disjoint events: each path lands in A, B, C or none.
    pub fn random_disjoint_triple<R: Rng + ?Sized>(level: u32, rng: &mut R) -> Result<[Event; 3]> {
        let mut out = [
            Event::empty(level)?,
            Event::empty(level)?,
            Event::empty(level)?,
        ];
        for j in 0..1u64 << level {
            let slot = rng.gen_range(0..4usize);
            if slot < 3 {
                out[slot].insert(j)?;
            }
        }
        Ok(out)
    }

    fn clear_padding(&mut self) {
        if self.level < 6 {
            self.words[0] &= (1u64 << (1u64 << self.level)) - 1;
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn size(&self) -> u64 {
        1u64 << self.level
    }

    pub fn contains(&self, j: u64) -> bool {
        j < self.size() && self.words[(j / 64) as usize] >> (j % 64) & 1 == 1
    }

    pub fn insert(&mut self, j: u64) -> Result<()> {
        if j >= self.size() {
            return Err(Error::Invalid(format!(
                "index {j} out of range for level {}",
                self.level
            )));
        }
        self.words[(j / 64) as usize] |= 1u64 << (j % 64);
        Ok(())
    }

    pub fn remove(&mut self, j: u64) {
        if j < self.size() {
            self.words[(j / 64) as usize] &= !(1u64 << (j % 64));
        }
    }

    /// Number of member paths.
    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Member indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as u64;
                    w &= w - 1;
                    Some(wi as u64 * 64 + b)
                }
            })
        })
    }

    pub fn complement(&self) -> Event {
        let mut e = Event {
            level: self.level,
            words: self.words.iter().map(|w| !w).collect(),
        };
        e.clear_padding();
        e
    }

    fn zip_with(&self, other: &Event, f: impl Fn(u64, u64) -> u64) -> Result<Event> {
        Error::check_level(self.level, other.level)?;
        Ok(Event {
            level: self.level,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn union(&self, other: &Event) -> Result<Event> {
        self.zip_with(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Event) -> Result<Event> {
        self.zip_with(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Event) -> Result<Event> {
        self.zip_with(other, |a, b| a & !b)
    }

    pub fn is_disjoint(&self, other: &Event) -> Result<bool> {
        Ok(self.intersection(other)?.is_empty())
    }

    pub fn is_subset(&self, other: &Event) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Event(level {}, ", self.level)?;
        if self.level <= 8 {
            f.debug_set().entries(self.iter()).finish()?;
        } else {
            write!(f, "{} members", self.len())?;
        }
        write!(f, ")")
    }
}

/// `A₁ × {0,1} × {0,1} × …` for a base event `A₁ ⊆ Ω_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderEvent {
    base: Event,
}

impl CylinderEvent {
    pub fn new(base: Event) -> Self {
        CylinderEvent { base }
    }

    /// Elementary cylinder of a single path prefix.
    pub fn elementary(prefix: PathIndex) -> Result<Self> {
        Ok(CylinderEvent::new(Event::singleton(prefix)?))
    }

    pub fn base_level(&self) -> u32 {
        self.base.level
    }

    pub fn base(&self) -> &Event {
        &self.base
    }
}

/// Represent the same cylinder at level `m ≥ base_level`: index `j` is a
/// member iff `j >> (m − n)` is a member of the base.
pub fn refine(c: &CylinderEvent, m: u32) -> Result<CylinderEvent> {
    let n = c.base_level();
    if m < n {
        return Err(Error::Precondition(format!(
            "cannot refine a level-{n} cylinder down to level {m}"
        )));
    }
    let shift = m - n;
    let mut out = Event::empty(m)?;
    for i in c.base.iter() {
        let start = i << shift;
        for j in start..start + (1u64 << shift) {
            out.insert(j)?;
        }
    }
    Ok(CylinderEvent::new(out))
}

/// `μ` of a cylinder set is `μ_n` of its base.
pub fn mu_cylinder(c: &CylinderEvent) -> Dyadic {
    mu_fast(&c.base)
}

/// Literal `Σ_{j,k ∈ A} D^n(j,k)`, with a cap because it costs `O(|A|²)`.
pub fn mu_pairsum(a: &Event) -> Result<Dyadic> {
    mu_pairsum_with_cap(a, DEFAULT_PAIRSUM_CAP)
}

pub fn mu_pairsum_with_cap(a: &Event, cap: u32) -> Result<Dyadic> {
    if a.level > cap {
        return Err(Error::Capacity {
            what: "mu_pairsum",
            level: a.level,
            cap,
            hint: "; use mu_fast for larger levels",
        });
    }
    let members: Vec<u64> = a.iter().collect();
    // per member: switch count mod 4 and end site
    let phase: Vec<u8> = members
        .iter()
        .map(|&j| (switch_count(PathIndex::new(a.level, j).expect("member in range")) & 3) as u8)
        .collect();
    let end: Vec<u8> = members.iter().map(|&j| (j & 1) as u8).collect();

    let mut total: i64 = 0;
    for (&pj, &ej) in phase.iter().zip(&end) {
        // entry sign = p_jk · i^{s_j − s_k}; on equal end sites s_j − s_k is even
        let row: i32 = phase
            .iter()
            .zip(&end)
            .map(|(&pk, &ek)| {
                let same_end = 1 - (ej ^ ek) as i32;
                let diff = (pj.wrapping_sub(pk) & 3) as i32;
                same_end * (1 - diff)
            })
            .sum();
        total += row as i64;
    }
    Ok(Dyadic::new(total, a.level))
}

/// Sum of the unit phases `i^{s_j}` over members ending at each site.
pub fn end_site_phase_sums(a: &Event) -> [GaussianInt; 2] {
    let mut counts = [[0i64; 4]; 2];
    for j in a.iter() {
        let s = (j ^ (j >> 1)).count_ones();
        counts[(j & 1) as usize][(s & 3) as usize] += 1;
    }
    counts.map(|c| GaussianInt::new(c[0] - c[2], c[1] - c[3]))
}

/// `μ_n(A) = (|Σ_{A, end 0} i^s|² + |Σ_{A, end 1} i^s|²) / 2^n`.
pub fn mu_fast(a: &Event) -> Dyadic {
    let [z0, z1] = end_site_phase_sums(a);
    Dyadic::new(z0.norm() + z1.norm(), a.level)
}

/// Both sides of the grade-2 additivity identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grade2Report {
    pub level: u32,
    pub lhs: Dyadic,
    pub rhs: Dyadic,
    pub holds: bool,
}

/// `μ(A∪B∪C) = μ(A∪B) + μ(A∪C) + μ(B∪C) − μ(A) − μ(B) − μ(C)` for mutually
/// disjoint `A, B, C`.
pub fn grade2_check(a: &Event, b: &Event, c: &Event) -> Result<Grade2Report> {
    Error::check_level(a.level, b.level)?;
    Error::check_level(a.level, c.level)?;
    if !a.is_disjoint(b)? || !a.is_disjoint(c)? || !b.is_disjoint(c)? {
        return Err(Error::Precondition(
            "grade-2 additivity needs mutually disjoint events".into(),
        ));
    }
    let ab = a.union(b)?;
    let ac = a.union(c)?;
    let bc = b.union(c)?;
    let abc = ab.union(c)?;
    let lhs = mu_fast(&abc);
    let rhs = mu_fast(&ab) + mu_fast(&ac) + mu_fast(&bc) - mu_fast(a) - mu_fast(b) - mu_fast(c);
    Ok(Grade2Report {
        level: a.level,
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

/// `A'_n ∩ Ω_n`: every n-path except the all-zeros one.
pub fn complement_event(n: u32) -> Result<Event> {
    let mut e = Event::full(n)?;
    e.remove(0);
    Ok(e)
}

/// Intermediate values of the boundary row-sum route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowsumBreakdown {
    pub level: u32,
    /// `Σ_{j < 2^{n−1}} i^{s_{2j}(n)}`; each term is ±1.
    pub phase_sum: i64,
    pub value: Dyadic,
}

/// `μ(A'_n) = 1 + 1/2^n − (1/2^{n−1}) Σ_{j=0}^{2^{n−1}−1} i^{s_{2j}(n)}`.
pub fn mu_complement_rowsum(n: u32) -> Result<Dyadic> {
    Ok(complement_rowsum_breakdown(n)?.value)
}

pub fn complement_rowsum_breakdown(n: u32) -> Result<RowsumBreakdown> {
    check_event_level(n)?;
    let mut counts = [0i64; 4];
    for j in 0..1u64 << (n - 1) {
        let s = switch_count(PathIndex::new(n, 2 * j)?);
        counts[(s & 3) as usize] += 1;
    }
    if counts[1] != 0 || counts[3] != 0 {
        return Err(Error::Inconsistency(format!(
            "odd switch count on an even index at level {n}"
        )));
    }
    let phase_sum = counts[0] - counts[2];
    let value = Dyadic::one() + Dyadic::inv_pow2(n) - Dyadic::new(phase_sum, n - 1);
    Ok(RowsumBreakdown {
        level: n,
        phase_sum,
        value,
    })
}

/// The individual `i^{s_{2j}(n)}` terms of the row-sum route, in order.
pub fn complement_phase_terms(n: u32) -> Result<Vec<i8>> {
    check_event_level(n)?;
    if n > crate::pathspace::DEFAULT_VECTOR_CAP {
        return Err(Error::capacity(
            "complement_phase_terms",
            n,
            crate::pathspace::DEFAULT_VECTOR_CAP,
        ));
    }
    (0..1u64 << (n - 1))
        .map(|j| {
            let s = switch_count(PathIndex::new(n, 2 * j)?);
            Ok(if s & 3 == 0 { 1 } else { -1 })
        })
        .collect()
}

/// `μ(A'_n) = 1 + 1/2^n − Re((1+i)^n) / 2^{n−1}`, exact for any `n ≥ 1`.
pub fn mu_complement_closed(n: u32) -> Result<Dyadic> {
    if n == 0 {
        return Err(Error::Invalid("level must be positive".into()));
    }
    let re = gauss_pow_1pi(n as u64).re;
    Ok(Dyadic::one() + Dyadic::inv_pow2(n) - Dyadic::new(re, n - 1))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n: u32,
    pub mu: Dyadic,
    pub deviation: Dyadic,
    /// `2^{−n} + 2^{1−n/2}`, rounded for display.
    pub bound: f64,
    pub within_bound: bool,
}

/// Exact test of `|μ − 1| ≤ 2^{−n} + 2^{1−n/2}`.
pub fn within_convergence_bound(n: u32, deviation: &Dyadic) -> bool {
    let excess = deviation.abs() - Dyadic::inv_pow2(n);
    if excess.signum() <= 0 {
        return true;
    }
    // excess ≤ 2^{1−n/2}  ⇔  excess² ≤ 2^{2−n}
    &excess * &excess <= Dyadic::pow2_signed(2 - n as i64)
}

pub fn convergence_report(max_n: u32) -> Result<Vec<ConvergenceRow>> {
    if max_n == 0 {
        return Err(Error::Invalid("max_n must be positive".into()));
    }
    let mut rows = Vec::with_capacity(max_n as usize);
    for n in 1..=max_n {
        let mu = mu_complement_closed(n)?;
        let deviation = &mu - &Dyadic::one();
        let within_bound = within_convergence_bound(n, &deviation);
        if !within_bound {
            return Err(Error::Inconsistency(format!(
                "|μ(A'_{n}) − 1| = {deviation} exceeds 2^-{n} + 2^(1-{n}/2)"
            )));
        }
        let bound = 2f64.powi(-(n as i32)) + 2f64.powf(1.0 - n as f64 / 2.0);
        rows.push(ConvergenceRow {
            n,
            mu,
            deviation,
            bound,
            within_bound,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathspace::parse_path;
    use crate::sampling;

    fn ev(level: u32, idx: &[u64]) -> Event {
        Event::from_indices(level, idx.iter().copied()).unwrap()
    }

    fn q(m: i64, e: u32) -> Dyadic {
        Dyadic::new(m, e)
    }

    #[test]
    fn event_set_algebra() {
        let a = ev(3, &[0, 2, 5]);
        let b = ev(3, &[2, 7]);
        assert_eq!(
            a.union(&b).unwrap().iter().collect::<Vec<_>>(),
            [0, 2, 5, 7]
        );
        assert_eq!(a.intersection(&b).unwrap().iter().collect::<Vec<_>>(), [2]);
        assert_eq!(a.complement().iter().collect::<Vec<_>>(), [1, 3, 4, 6, 7]);
        assert!(!a.is_disjoint(&b).unwrap());
        assert!(ev(3, &[2]).is_subset(&a).unwrap());
        assert_eq!(Event::full(3).unwrap().len(), 8);
        assert!(Event::empty(3).unwrap().is_empty());
        assert!(matches!(
            a.union(&ev(2, &[0])),
            Err(Error::LevelMismatch { left: 3, right: 2 })
        ));
        assert!(Event::from_indices(2, [4]).is_err());
        assert!(Event::empty(31).is_err());
        assert!(Event::empty(0).is_err());
    }

    #[test]
    fn large_events_use_many_words() {
        let mut e = Event::empty(8).unwrap();
        e.insert(255).unwrap();
        e.insert(64).unwrap();
        assert_eq!(e.iter().collect::<Vec<_>>(), [64, 255]);
        assert_eq!(e.complement().len(), 254);
    }

    #[test]
    fn hex_masks() {
        let e = Event::from_hex_mask(4, "0xFFFE").unwrap();
        assert_eq!(e, complement_event(4).unwrap());
        assert_eq!(e.to_hex_mask(), "0xFFFE");
        assert_eq!(Event::from_hex_mask(2, "0xA").unwrap(), ev(2, &[1, 3]));
        assert_eq!(ev(1, &[1]).to_hex_mask(), "0x2");
        assert!(Event::from_hex_mask(2, "0x10").is_err());
        assert!(Event::from_hex_mask(2, "0xG").is_err());
        assert!(Event::from_hex_mask(2, "").is_err());
    }

    #[test]
    fn example_one_battery() {
        let cases: [(&[u64], Dyadic); 16] = [
            (&[], q(0, 0)),
            (&[0], q(1, 2)),
            (&[1], q(1, 2)),
            (&[2], q(1, 2)),
            (&[3], q(1, 2)),
            (&[0, 2], q(0, 0)),
            (&[0, 1], q(1, 1)),
            (&[0, 3], q(1, 1)),
            (&[1, 2], q(1, 1)),
            (&[2, 3], q(1, 1)),
            (&[1, 3], q(1, 0)),
            (&[0, 1, 2], q(1, 2)),
            (&[0, 1, 2, 3], q(1, 0)),
            (&[0, 1, 3], q(5, 2)),
            (&[1, 2, 3], q(5, 2)),
            (&[0, 2, 3], q(1, 2)),
        ];
        for (idx, expected) in cases {
            let a = ev(2, idx);
            assert_eq!(mu_pairsum(&a).unwrap(), expected, "pairsum {idx:?}");
            assert_eq!(mu_fast(&a), expected, "fast {idx:?}");
        }
    }

    #[test]
    fn singletons_have_measure_inverse_size() {
        for n in 1..=12 {
            for j in [0u64, 1, (1 << n) - 1] {
                assert_eq!(mu_fast(&ev(n, &[j])), Dyadic::inv_pow2(n));
            }
        }
    }

    #[test]
    fn pairsum_cap() {
        let a = Event::empty(15).unwrap();
        match mu_pairsum(&a) {
            Err(
                e @ Error::Capacity {
                    level: 15, cap: 14, ..
                },
            ) => {
                assert!(e.to_string().contains("mu_fast"))
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(mu_pairsum_with_cap(&a, 15).unwrap(), Dyadic::zero());
    }

    #[test]
    fn pairsum_matches_matrix_entries() {
        let mut rng = sampling::rng(11);
        for n in 1..=7 {
            let m = crate::decoherence::decoherence_matrix(n).unwrap();
            for _ in 0..50 {
                let a = Event::random(n, &mut rng).unwrap();
                let mut total = Dyadic::zero();
                for j in a.iter() {
                    for k in a.iter() {
                        total = total + m.entry(j as usize, k as usize);
                    }
                }
                assert_eq!(mu_pairsum(&a).unwrap(), total);
            }
        }
    }

    #[test]
    fn exhaustive_oracle_small_levels() {
        for n in 1..=3u32 {
            let size = 1u64 << n;
            for mask in 0..1u64 << size {
                let a = Event::from_indices(n, (0..size).filter(|j| mask >> j & 1 == 1)).unwrap();
                assert_eq!(mu_pairsum(&a).unwrap(), mu_fast(&a));
            }
        }
    }

    #[test]
    fn grade2_examples() {
        let r = grade2_check(&ev(2, &[0]), &ev(2, &[1]), &ev(2, &[2])).unwrap();
        assert_eq!(r.lhs, q(1, 2));
        assert_eq!(r.rhs, q(1, 2));
        assert!(r.holds);
        let e = Event::empty(5).unwrap();
        let r = grade2_check(&e, &e, &e).unwrap();
        assert!(r.holds && r.lhs.is_zero());
        assert!(matches!(
            grade2_check(&ev(2, &[0]), &ev(2, &[0, 1]), &ev(2, &[3])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn grade2_random_triples() {
        let mut rng = sampling::rng(3);
        for _ in 0..1000 {
            let [a, b, c] = Event::random_disjoint_triple(3, &mut rng).unwrap();
            assert!(grade2_check(&a, &b, &c).unwrap().holds);
        }
    }

    #[test]
    fn cylinders() {
        let c = CylinderEvent::new(ev(1, &[0]));
        assert_eq!(mu_cylinder(&c), q(1, 1));
        assert_eq!(refine(&c, 2).unwrap().base(), &ev(2, &[0, 1]));
        let full = CylinderEvent::new(Event::full(1).unwrap());
        for m in 1..=8 {
            assert_eq!(refine(&full, m).unwrap().base(), &Event::full(m).unwrap());
            assert_eq!(mu_cylinder(&refine(&full, m).unwrap()), Dyadic::one());
        }
        let c = CylinderEvent::new(ev(2, &[0, 2]));
        let r = refine(&c, 4).unwrap();
        assert_eq!(
            r.base().iter().collect::<Vec<_>>(),
            [0, 1, 2, 3, 8, 9, 10, 11]
        );
        assert_eq!(mu_cylinder(&r), mu_cylinder(&c));
        assert_eq!(mu_cylinder(&refine(&c, 3).unwrap()), q(0, 0));
        assert!(matches!(refine(&c, 1), Err(Error::Precondition(_))));
        let elem = CylinderEvent::elementary(parse_path("01101").unwrap()).unwrap();
        assert_eq!(mu_cylinder(&elem), q(1, 4));
    }

    #[test]
    fn complement_event_members() {
        assert_eq!(complement_event(1).unwrap().iter().collect::<Vec<_>>(), [1]);
        assert_eq!(
            complement_event(2).unwrap().iter().collect::<Vec<_>>(),
            [1, 2, 3]
        );
        assert_eq!(complement_event(3).unwrap().len(), 7);
    }

    #[test]
    fn complement_routes() {
        let expected = [q(1, 1), q(5, 2), q(13, 3), q(25, 4)];
        for (n, want) in (1..=4).zip(expected) {
            assert_eq!(mu_complement_rowsum(n).unwrap(), want);
            assert_eq!(mu_complement_closed(n).unwrap(), want);
            assert_eq!(mu_fast(&complement_event(n).unwrap()), want);
        }
        assert_eq!(mu_complement_closed(8).unwrap(), q(225, 8));
        assert_eq!(mu_fast(&complement_event(8).unwrap()), q(225, 8));
        assert!(mu_complement_closed(0).is_err());
    }

    #[test]
    fn rowsum_breakdown_at_four() {
        let b = complement_rowsum_breakdown(4).unwrap();
        assert_eq!(b.phase_sum, -4);
        assert_eq!(b.value, q(25, 4));
        assert_eq!(
            complement_phase_terms(4).unwrap(),
            [1, -1, -1, -1, -1, 1, -1, -1]
        );
    }

    #[test]
    fn convergence_rows() {
        let rows = convergence_report(64).unwrap();
        assert_eq!(rows.len(), 64);
        assert_eq!(rows[0].mu, q(1, 1));
        assert_eq!(rows[3].mu, q(25, 4));
        for r in &rows {
            assert!(r.within_bound);
            if r.n % 4 == 2 {
                assert_eq!(r.deviation, Dyadic::inv_pow2(r.n));
            }
        }
        let far = mu_complement_closed(100).unwrap() - Dyadic::one();
        assert!(far.abs() < Dyadic::inv_pow2(48));
        assert!(!within_convergence_bound(4, &q(1, 0)));
        assert!(within_convergence_bound(4, &q(9, 4)));
        assert!(convergence_report(0).is_err());
    }
}
