//! Gaussian integers `a + b·i`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

/// Unbounded Gaussian integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussianInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussianInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        GaussianInt {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        GaussianInt::new(0, 0)
    }

    pub fn one() -> Self {
        GaussianInt::new(1, 0)
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GaussianInt::new(1, 0),
            1 => GaussianInt::new(0, 1),
            2 => GaussianInt::new(-1, 0),
            _ => GaussianInt::new(0, -1),
        }
    }

    pub fn conj(&self) -> Self {
        GaussianInt {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `a² + b²`.
    pub fn norm(&self) -> BigInt {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianInt::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiply by `i^k` without a full multiplication.
    pub fn rotate(&self, k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => GaussianInt::new(-&self.im, self.re.clone()),
            2 => GaussianInt::new(-&self.re, -&self.im),
            _ => GaussianInt::new(self.im.clone(), -&self.re),
        }
    }
}

/// `(1 + i)^n`.
///
/// The real and imaginary parts are the exact integers
/// `2^{n/2} cos(nπ/4)` and `2^{n/2} sin(nπ/4)`.
pub fn gauss_pow_1pi(n: u64) -> GaussianInt {
    GaussianInt::new(1, 1).pow(n)
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im < BigInt::zero() {
            write!(f, "{} - {}i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}i", self.re, self.im)
        }
    }
}

impl<'a> Add<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a GaussianInt> for &'a GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: &GaussianInt) -> GaussianInt {
        GaussianInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Add for GaussianInt {
    type Output = GaussianInt;
    fn add(self, rhs: GaussianInt) -> GaussianInt {
        &self + &rhs
    }
}

impl Sub for GaussianInt {
    type Output = GaussianInt;
    fn sub(self, rhs: GaussianInt) -> GaussianInt {
        &self - &rhs
    }
}

impl Mul for GaussianInt {
    type Output = GaussianInt;
    fn mul(self, rhs: GaussianInt) -> GaussianInt {
        &self * &rhs
    }
}

impl Neg for GaussianInt {
    type Output = GaussianInt;
    fn neg(self) -> GaussianInt {
        GaussianInt {
            re: -self.re,
            im: -self.im,
        }
    }
}

/// Gaussian integer with machine-word parts, for hot loops over unit phases.
/// Arithmetic panics on overflow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SmallGaussian {
    pub re: i64,
    pub im: i64,
}

impl SmallGaussian {
    pub const fn new(re: i64, im: i64) -> Self {
        SmallGaussian { re, im }
    }

    pub const fn i_pow(k: u32) -> Self {
        match k % 4 {
            0 => SmallGaussian::new(1, 0),
            1 => SmallGaussian::new(0, 1),
            2 => SmallGaussian::new(-1, 0),
            _ => SmallGaussian::new(0, -1),
        }
    }

    pub fn conj(self) -> Self {
        SmallGaussian::new(self.re, -self.im)
    }

    pub fn checked_add(self, rhs: Self) -> Option<Self> {
        Some(SmallGaussian::new(
            self.re.checked_add(rhs.re)?,
            self.im.checked_add(rhs.im)?,
        ))
    }

    pub fn checked_mul(self, rhs: Self) -> Option<Self> {
        let re = self
            .re
            .checked_mul(rhs.re)?
            .checked_sub(self.im.checked_mul(rhs.im)?)?;
        let im = self
            .re
            .checked_mul(rhs.im)?
            .checked_add(self.im.checked_mul(rhs.re)?)?;
        Some(SmallGaussian::new(re, im))
    }

    pub fn norm(self) -> i128 {
        let (a, b) = (self.re as i128, self.im as i128);
        a * a + b * b
    }
}

impl Add for SmallGaussian {
    type Output = SmallGaussian;
    fn add(self, rhs: SmallGaussian) -> SmallGaussian {
        self.checked_add(rhs).expect("SmallGaussian overflow")
    }
}

impl Mul for SmallGaussian {
    type Output = SmallGaussian;
    fn mul(self, rhs: SmallGaussian) -> SmallGaussian {
        self.checked_mul(rhs).expect("SmallGaussian overflow")
    }
}

impl From<SmallGaussian> for GaussianInt {
    fn from(z: SmallGaussian) -> Self {
        GaussianInt::new(z.re, z.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pow_1pi_small_cases() {
        assert_eq!(gauss_pow_1pi(0), GaussianInt::new(1, 0));
        assert_eq!(gauss_pow_1pi(1), GaussianInt::new(1, 1));
        assert_eq!(gauss_pow_1pi(2), GaussianInt::new(0, 2));
        assert_eq!(gauss_pow_1pi(3), GaussianInt::new(-2, 2));
        assert_eq!(gauss_pow_1pi(4), GaussianInt::new(-4, 0));
        assert_eq!(gauss_pow_1pi(8), GaussianInt::new(16, 0));
        assert_eq!(gauss_pow_1pi(12), GaussianInt::new(-64, 0));
    }

    #[test]
    fn pow_matches_iterated_product() {
        let step = GaussianInt::new(1, 1);
        let mut acc = GaussianInt::one();
        for n in 0..=300u64 {
            assert_eq!(gauss_pow_1pi(n), acc, "n = {n}");
            assert_eq!(acc.norm(), BigInt::from(1) << n);
            acc = &acc * &step;
        }
    }

    #[test]
    fn unit_rotation() {
        let z = GaussianInt::new(3, -5);
        for k in -8..8 {
            assert_eq!(z.rotate(k), &z * &GaussianInt::i_pow(k));
        }
        for k in 0..8u32 {
            assert_eq!(
                GaussianInt::from(SmallGaussian::i_pow(k)),
                GaussianInt::i_pow(k as i64)
            );
        }
    }

    #[test]
    fn display() {
        assert_eq!(GaussianInt::new(-64, 0).to_string(), "-64 + 0i");
        assert_eq!(GaussianInt::new(1, -2).to_string(), "1 - 2i");
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in -1000i64..1000, b in -1000i64..1000,
                                  c in -1000i64..1000, d in -1000i64..1000) {
            let x = GaussianInt::new(a, b);
            let y = GaussianInt::new(c, d);
            prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
            prop_assert_eq!(&x * &x.conj(), GaussianInt::new(x.norm(), 0));
            let small = SmallGaussian::new(a, b) * SmallGaussian::new(c, d);
            prop_assert_eq!(GaussianInt::from(small), &x * &y);
        }
    }
}
