//! Path amplitudes, decoherence entries and the decoherence matrix.
//!
//! With the fixed one-step unitary `(1/√2)[[1, i], [i, 1]]` the amplitude of
//! an n-path is `i^s / 2^{n/2}` where `s` is its switch count. All values here
//! are exact: phases live in ℤ/4, magnitudes are powers of two.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::gaussian::{GaussianInt, SmallGaussian};
use crate::pathspace::{parity, switch_count, PathIndex};

/// Default level cap for fully materialized decoherence matrices.
pub const DEFAULT_MATRIX_CAP: u32 = 12;

/// Largest level accepted when rebuilding a matrix from raw signs.
pub const MAX_MATRIX_LEVEL: u32 = 16;

/// The exact complex number `i^phase / 2^{level/2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Amplitude {
    phase: u8,
    level: u32,
}

impl Amplitude {
    pub fn new(phase: u32, level: u32) -> Self {
        Amplitude {
            phase: (phase % 4) as u8,
            level,
        }
    }

    /// One time step: stay (`1/√2`) or switch site (`i/√2`).
    pub fn step(switch: bool) -> Self {
        Amplitude::new(switch as u32, 1)
    }

    pub fn phase(self) -> u8 {
        self.phase
    }

    pub fn level(self) -> u32 {
        self.level
    }

    /// `i^phase` as a Gaussian integer; the amplitude is this over `2^{level/2}`.
    pub fn unit(self) -> GaussianInt {
        GaussianInt::i_pow(self.phase as i64)
    }

    /// `|a|² = 1 / 2^level`.
    pub fn probability(self) -> Dyadic {
        Dyadic::inv_pow2(self.level)
    }
}

impl Mul for Amplitude {
    type Output = Amplitude;
    fn mul(self, rhs: Amplitude) -> Amplitude {
        Amplitude::new(self.phase as u32 + rhs.phase as u32, self.level + rhs.level)
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let unit = ["1", "i", "-1", "-i"][self.phase as usize];
        if self.level.is_multiple_of(2) {
            write!(f, "{unit}/2^{}", self.level / 2)
        } else {
            write!(f, "{unit}/2^({}/2)", self.level)
        }
    }
}

pub fn amplitude(p: PathIndex) -> Amplitude {
    Amplitude::new(switch_count(p), p.level())
}

/// Sign of `2^n · D^n(j, k)` given the switch counts of both paths.
#[inline]
pub(crate) fn sign_from_switches(j: u64, sj: u32, k: u64, sk: u32) -> i8 {
    if parity(j, k) == 0 {
        0
    } else if sj.wrapping_sub(sk) & 3 == 0 {
        1
    } else {
        // same end site forces sj − sk even, so this is the ≡ 2 case
        -1
    }
}

/// `D^n(j, k) = i^{s_j − s_k} p_{jk} / 2^n`, always one of `0, ±1/2^n`.
pub fn decoherence_entry(j: PathIndex, k: PathIndex) -> Result<Dyadic> {
    Error::check_level(j.level(), k.level())?;
    let sign = sign_from_switches(j.index(), switch_count(j), k.index(), switch_count(k));
    Ok(Dyadic::new(sign as i64, j.level()))
}

/// `D^n` stored as a dense sign array with a single scale `1/2^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoherenceMatrix {
    level: u32,
    signs: Vec<i8>,
}

impl DecoherenceMatrix {
    /// Rebuild from a raw sign array, checking the structural invariants.
    pub fn from_signs(level: u32, signs: Vec<i8>) -> Result<Self> {
        if level == 0 || level > MAX_MATRIX_LEVEL {
            return Err(Error::Invalid(format!("bad matrix level {level}")));
        }
        let dim = 1usize << level;
        if signs.len() != dim * dim {
            return Err(Error::Invalid(format!(
                "expected {} entries for level {level}, got {}",
                dim * dim,
                signs.len()
            )));
        }
        let m = DecoherenceMatrix { level, signs };
        for j in 0..dim {
            if m.sign(j, j) != 1 {
                return Err(Error::Invalid(format!("diagonal entry {j} is not +1")));
            }
            for k in 0..dim {
                let s = m.sign(j, k);
                if !(-1..=1).contains(&s) {
                    return Err(Error::Invalid(format!("entry ({j},{k}) = {s} not a sign")));
                }
                if s != m.sign(k, j) {
                    return Err(Error::Invalid(format!("not symmetric at ({j},{k})")));
                }
                if (s != 0) != (parity(j as u64, k as u64) == 1) {
                    return Err(Error::Invalid(format!(
                        "zero pattern at ({j},{k}) disagrees with parity"
                    )));
                }
            }
        }
        Ok(m)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dim(&self) -> usize {
        1usize << self.level
    }

    /// Each entry is `sign / 2^scale_exponent`.
    pub fn scale_exponent(&self) -> u32 {
        self.level
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn row(&self, j: usize) -> &[i8] {
        let d = self.dim();
        &self.signs[j * d..(j + 1) * d]
    }

    pub fn sign(&self, j: usize, k: usize) -> i8 {
        self.signs[j * self.dim() + k]
    }

    pub fn entry(&self, j: usize, k: usize) -> Dyadic {
        Dyadic::new(self.sign(j, k) as i64, self.level)
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim();
        (0..d).all(|j| (j + 1..d).all(|k| self.sign(j, k) == self.sign(k, j)))
    }

    /// Sum of all entries; equals `μ_n(Ω_n)`.
    pub fn entry_sum(&self) -> Dyadic {
        let total: i64 = self.signs.iter().map(|&s| s as i64).sum();
        Dyadic::new(total, self.level)
    }

    /// `xᵀ D x` for an integer vector `x`.
    pub fn quadratic_form(&self, x: &[i64]) -> Result<Dyadic> {
        if x.len() != self.dim() {
            return Err(Error::Invalid(format!(
                "vector length {} does not match dimension {}",
                x.len(),
                self.dim()
            )));
        }
        let mut acc: i128 = 0;
        for (j, &xj) in x.iter().enumerate() {
            let row: i128 = self
                .row(j)
                .iter()
                .zip(x)
                .map(|(&s, &xk)| s as i128 * xk as i128)
                .sum();
            acc += xj as i128 * row;
        }
        Ok(Dyadic::new(acc, self.level))
    }
}

pub fn decoherence_matrix(n: u32) -> Result<DecoherenceMatrix> {
    decoherence_matrix_with_cap(n, DEFAULT_MATRIX_CAP)
}

pub fn decoherence_matrix_with_cap(n: u32, cap: u32) -> Result<DecoherenceMatrix> {
    if n == 0 {
        return Err(Error::Invalid("matrix level must be positive".into()));
    }
    if n > cap {
        return Err(Error::capacity("decoherence_matrix", n, cap));
    }
    let dim = 1usize << n;
    let switches: Vec<u32> = (0..dim as u64)
        .map(|j| (j ^ (j >> 1)).count_ones())
        .collect();
    let mut signs = Vec::with_capacity(dim * dim);
    for (j, &sj) in switches.iter().enumerate() {
        signs.extend(
            switches
                .iter()
                .enumerate()
                .map(|(k, &sk)| sign_from_switches(j as u64, sj, k as u64, sk)),
        );
    }
    Ok(DecoherenceMatrix { level: n, signs })
}

/// Outcome of the rank-2 positivity certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsdCertificate {
    pub level: u32,
    pub rank_bound: u32,
    pub entries_checked: u64,
    pub certified: bool,
}

/// Certify `D^n ⪰ 0` by rebuilding every entry as `w₀w₀* + w₁w₁*`, where
/// `w_e` holds the amplitudes of the paths ending at site `e`.
pub fn psd_certificate(n: u32) -> Result<PsdCertificate> {
    let matrix = decoherence_matrix(n)?;
    certify_matrix(&matrix)
}

pub fn certify_matrix(matrix: &DecoherenceMatrix) -> Result<PsdCertificate> {
    let n = matrix.level();
    let dim = matrix.dim();
    // numerators of the amplitude vectors; each carries the scale 2^{-n/2}
    let mut w = [
        vec![SmallGaussian::default(); dim],
        vec![SmallGaussian::default(); dim],
    ];
    for j in 0..dim {
        let a = amplitude(PathIndex::new(n, j as u64)?);
        let unit = SmallGaussian::i_pow(a.phase() as u32);
        w[j & 1][j] = unit;
    }
    let conj: [Vec<SmallGaussian>; 2] = [
        w[0].iter().map(|z| z.conj()).collect(),
        w[1].iter().map(|z| z.conj()).collect(),
    ];
    let mut checked = 0u64;
    for (j, (&w0, &w1)) in w[0].iter().zip(&w[1]).enumerate() {
        for (k, &held) in matrix.row(j).iter().enumerate() {
            let rebuilt = (w0 * conj[0][k]) + (w1 * conj[1][k]);
            if rebuilt.im != 0 || rebuilt.re != held as i64 {
                return Err(Error::Inconsistency(format!(
                    "rank-2 reconstruction of D^{n}({j},{k}) gave {} + {}i, matrix holds {held}",
                    rebuilt.re, rebuilt.im
                )));
            }
            checked += 1;
        }
    }
    Ok(PsdCertificate {
        level: n,
        rank_bound: 2,
        entries_checked: checked,
        certified: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pathspace::parse_path;

    fn p(level: u32, index: u64) -> PathIndex {
        PathIndex::new(level, index).unwrap()
    }

    #[test]
    fn amplitude_examples() {
        let a = amplitude(parse_path("01101").unwrap());
        assert_eq!((a.phase(), a.level()), (3, 4));
        assert_eq!(a.unit(), GaussianInt::new(0, -1));
        assert_eq!(a.to_string(), "-i/2^2");
        let zero_path = amplitude(p(6, 0));
        assert_eq!((zero_path.phase(), zero_path.level()), (0, 6));
        let one_step = amplitude(p(1, 1));
        assert_eq!((one_step.phase(), one_step.level()), (1, 1));
        assert_eq!(one_step.to_string(), "i/2^(1/2)");
        assert_eq!(one_step.probability(), Dyadic::new(1, 1));
    }

    #[test]
    fn amplitude_is_product_of_steps() {
        for n in 1..=10u32 {
            for j in 0..1u64 << n {
                let path = p(n, j).to_path_string();
                let product = path
                    .as_bytes()
                    .windows(2)
                    .map(|w| Amplitude::step(w[0] != w[1]))
                    .reduce(|a, b| a * b)
                    .unwrap();
                assert_eq!(product, amplitude(p(n, j)));
            }
        }
    }

    #[test]
    fn entry_examples() {
        assert_eq!(
            decoherence_entry(p(2, 0), p(2, 2)).unwrap(),
            Dyadic::new(-1, 2)
        );
        assert_eq!(
            decoherence_entry(p(2, 1), p(2, 3)).unwrap(),
            Dyadic::new(1, 2)
        );
        assert_eq!(decoherence_entry(p(2, 0), p(2, 1)).unwrap(), Dyadic::zero());
        for j in 0..32 {
            assert_eq!(
                decoherence_entry(p(5, j), p(5, j)).unwrap(),
                Dyadic::inv_pow2(5)
            );
        }
        assert!(matches!(
            decoherence_entry(p(2, 0), p(3, 0)),
            Err(Error::LevelMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn entry_matches_amplitude_product() {
        // D(j,k) = a(j) conj(a(k)) δ(end sites), evaluated as Gaussian integers
        for n in 1..=6u32 {
            for j in 0..1u64 << n {
                for k in 0..1u64 << n {
                    let (a, b) = (amplitude(p(n, j)), amplitude(p(n, k)));
                    let prod = &a.unit() * &b.unit().conj();
                    let expected = if j & 1 == k & 1 {
                        assert_eq!(prod.im, 0.into());
                        Dyadic::new(prod.re, n)
                    } else {
                        Dyadic::zero()
                    };
                    assert_eq!(decoherence_entry(p(n, j), p(n, k)).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn matrix_level_two() {
        let m = decoherence_matrix(2).unwrap();
        #[rustfmt::skip]
        let expected: [i8; 16] = [
             1, 0, -1, 0,
             0, 1,  0, 1,
            -1, 0,  1, 0,
             0, 1,  0, 1,
        ];
        assert_eq!(m.signs(), expected);
        assert_eq!(m.scale_exponent(), 2);
        assert_eq!(m.entry(0, 2), Dyadic::new(-1, 2));
    }

    #[test]
    fn matrix_level_one() {
        let m = decoherence_matrix(1).unwrap();
        assert_eq!(m.signs(), [1, 0, 0, 1]);
    }

    #[test]
    fn matrix_properties() {
        for n in 1..=10 {
            let m = decoherence_matrix(n).unwrap();
            assert!(m.is_symmetric());
            assert_eq!(m.entry_sum(), Dyadic::one(), "n = {n}");
            for j in 0..m.dim() {
                assert_eq!(m.sign(j, j), 1);
                for k in 0..m.dim() {
                    assert_eq!(m.sign(j, k) == 0, parity(j as u64, k as u64) == 0);
                }
            }
            assert_eq!(
                DecoherenceMatrix::from_signs(n, m.signs().to_vec()).unwrap(),
                m
            );
        }
    }

    #[test]
    fn matrix_cap() {
        assert!(matches!(
            decoherence_matrix(13),
            Err(Error::Capacity {
                level: 13,
                cap: 12,
                ..
            })
        ));
        assert!(decoherence_matrix_with_cap(5, 4).is_err());
        assert!(decoherence_matrix(0).is_err());
    }

    #[test]
    fn from_signs_rejects_broken_matrices() {
        let mut signs = decoherence_matrix(2).unwrap().signs().to_vec();
        signs[2] = 1; // breaks symmetry
        assert!(DecoherenceMatrix::from_signs(2, signs).is_err());
        let mut signs = decoherence_matrix(2).unwrap().signs().to_vec();
        signs[1] = 1;
        signs[4] = 1; // symmetric but wrong zero pattern
        assert!(DecoherenceMatrix::from_signs(2, signs).is_err());
        assert!(DecoherenceMatrix::from_signs(2, vec![1; 3]).is_err());
    }

    #[test]
    fn certificates() {
        let c = psd_certificate(2).unwrap();
        assert!(c.certified);
        assert_eq!(c.entries_checked, 16);
        assert!(psd_certificate(1).unwrap().certified);
        assert_eq!(psd_certificate(10).unwrap().entries_checked, 1 << 20);
    }

    #[test]
    fn certificate_catches_tampering() {
        let m = decoherence_matrix(3).unwrap();
        let mut signs = m.signs().to_vec();
        // flip a symmetric pair of nonzero off-diagonal entries
        signs[2] = -signs[2];
        signs[2 * 8] = -signs[2 * 8];
        let tampered = DecoherenceMatrix::from_signs(3, signs).unwrap();
        assert!(matches!(
            certify_matrix(&tampered),
            Err(Error::Inconsistency(_))
        ));
    }

    #[test]
    fn quadratic_form_nonnegative() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 1..=6 {
            let m = decoherence_matrix(n).unwrap();
            for _ in 0..200 {
                let x: Vec<i64> = (0..m.dim()).map(|_| rng.gen_range(-50..=50)).collect();
                assert!(!m.quadratic_form(&x).unwrap().is_negative());
            }
        }
    }
}
