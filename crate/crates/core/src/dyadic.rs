//! Exact dyadic rationals `m / 2^e`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number of the form `numerator / 2^exponent`.
///
/// Always normalized: the numerator is odd, or it is zero and the exponent
/// is zero. Two values are equal iff their representations are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: impl Into<BigInt>, exp: u32) -> Self {
        let mut d = Dyadic {
            num: num.into(),
            exp,
        };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic {
            num: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            num: BigInt::one(),
            exp: 0,
        }
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Dyadic::new(n, 0)
    }

    /// `1 / 2^e`.
    pub fn inv_pow2(e: u32) -> Self {
        Dyadic {
            num: BigInt::one(),
            exp: e,
        }
    }

    /// `2^e` as an integer-valued dyadic.
    pub fn pow2(e: u32) -> Self {
        Dyadic {
            num: BigInt::one() << e,
            exp: 0,
        }
    }

    /// `2^e` for a possibly negative exponent.
    pub fn pow2_signed(e: i64) -> Self {
        if e >= 0 {
            Dyadic::pow2(e as u32)
        } else {
            Dyadic::inv_pow2((-e) as u32)
        }
    }

    fn normalize(&mut self) {
        match self.num.trailing_zeros() {
            None => self.exp = 0,
            Some(tz) => {
                let shift = tz.min(self.exp as u64) as u32;
                if shift > 0 {
                    self.num >>= shift;
                    self.exp -= shift;
                }
            }
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.num.clone())
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic {
            num: self.num.abs(),
            exp: self.exp,
        }
    }

    pub fn signum(&self) -> i32 {
        match self.num.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Multiply by `2^k` for any signed `k`.
    pub fn scale_pow2(&self, k: i64) -> Dyadic {
        if k >= 0 {
            let k = k as u32;
            let drop = k.min(self.exp);
            Dyadic::new(&self.num << (k - drop), self.exp - drop)
        } else {
            Dyadic::new(self.num.clone(), self.exp + (-k) as u32)
        }
    }

    /// Nearest `f64`; presentation only.
    pub fn to_f64(&self) -> f64 {
        if self.num.is_zero() {
            return 0.0;
        }
        let bits = self.num.bits();
        let shift = bits.saturating_sub(62);
        let mantissa = (&self.num >> shift).to_f64().unwrap_or(f64::NAN);
        let e = shift as i64 - self.exp as i64;
        mantissa * 2f64.powi(e.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// Exact decimal rendering rounded half-to-even to `sig` significant
    /// digits. Plain notation for moderate magnitudes, scientific otherwise.
    pub fn to_decimal_string(&self, sig: usize) -> String {
        assert!(sig >= 1);
        if self.num.is_zero() {
            return "0".to_string();
        }
        // |m| / 2^e = |m| * 5^e / 10^e
        let digits_int: BigUint = self.num.magnitude() * BigUint::from(5u32).pow(self.exp);
        let mut digits = digits_int.to_str_radix(10);
        let mut exp10 = digits.len() as i64 - 1 - self.exp as i64;
        if digits.len() > sig {
            let cut = digits.len() - sig;
            let pow = BigUint::from(10u32).pow(cut as u32);
            let (mut q, r) = digits_int.div_rem(&pow);
            let half = &pow >> 1u32;
            let round_up = match r.cmp(&half) {
                Ordering::Greater => true,
                Ordering::Less => false,
                Ordering::Equal => q.is_odd(),
            };
            if round_up {
                q += 1u32;
            }
            digits = q.to_str_radix(10);
            if digits.len() > sig {
                digits.truncate(sig);
                exp10 += 1;
            }
        }
        let trimmed = digits.trim_end_matches('0');
        let digits = if trimmed.is_empty() { "0" } else { trimmed };
        let sign = if self.is_negative() { "-" } else { "" };

        if (-6..15).contains(&exp10) {
            let mut out = String::from(sign);
            if exp10 < 0 {
                out.push_str("0.");
                out.extend(std::iter::repeat_n('0', (-exp10 - 1) as usize));
                out.push_str(digits);
            } else {
                let int_len = exp10 as usize + 1;
                if digits.len() <= int_len {
                    out.push_str(digits);
                    out.extend(std::iter::repeat_n('0', int_len - digits.len()));
                } else {
                    out.push_str(&digits[..int_len]);
                    out.push('.');
                    out.push_str(&digits[int_len..]);
                }
            }
            out
        } else {
            let (head, tail) = digits.split_at(1);
            if tail.is_empty() {
                format!("{sign}{head}e{exp10}")
            } else {
                format!("{sign}{head}.{tail}e{exp10}")
            }
        }
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = a.exp.max(b.exp);
        (&a.num << (e - a.exp), &b.num << (e - b.exp), e)
    }
}

impl Default for Dyadic {
    fn default() -> Self {
        Dyadic::zero()
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.num, self.exp)
    }
}

impl FromStr for Dyadic {
    type Err = Error;

    /// Accepts `m/2^e` or a bare integer `m`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a dyadic literal: {s:?}"));
        match s.split_once('/') {
            None => Ok(Dyadic::from_integer(
                s.parse::<BigInt>().map_err(|_| bad())?,
            )),
            Some((m, rest)) => {
                let e = rest.trim().strip_prefix("2^").ok_or_else(bad)?;
                let num = m.trim().parse::<BigInt>().map_err(|_| bad())?;
                let exp = e.parse::<u32>().map_err(|_| bad())?;
                Ok(Dyadic::new(num, exp))
            }
        }
    }
}

impl Serialize for Dyadic {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Dyadic {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = Dyadic::aligned(self, other);
        a.cmp(&b)
    }
}

impl<'a> Add<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn add(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic::new(a + b, e)
    }
}

impl<'a> Sub<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn sub(self, rhs: &Dyadic) -> Dyadic {
        let (a, b, e) = Dyadic::aligned(self, rhs);
        Dyadic::new(a - b, e)
    }
}

impl<'a> Mul<&'a Dyadic> for &'a Dyadic {
    type Output = Dyadic;
    fn mul(self, rhs: &Dyadic) -> Dyadic {
        // product of odd numerators is odd, so this is already normalized
        // unless one side is zero
        Dyadic::new(&self.num * &rhs.num, self.exp + rhs.exp)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: Dyadic) -> Dyadic {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Dyadic> for Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: &Dyadic) -> Dyadic {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Dyadic> for &'a Dyadic {
            type Output = Dyadic;
            fn $method(self, rhs: Dyadic) -> Dyadic {
                self.$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        Dyadic {
            num: -self.num,
            exp: self.exp,
        }
    }
}

impl Neg for &Dyadic {
    type Output = Dyadic;
    fn neg(self) -> Dyadic {
        -self.clone()
    }
}

impl std::iter::Sum for Dyadic {
    fn sum<I: Iterator<Item = Dyadic>>(iter: I) -> Dyadic {
        iter.fold(Dyadic::zero(), |acc, x| acc + x)
    }
}
