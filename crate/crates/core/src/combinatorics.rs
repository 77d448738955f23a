//! Evenly spaced binomial sums and the recurrences that share their values.
//!
//! For `n ≥ 1` and `j ∈ {0,1,2,3}` the following all coincide:
//! * `b_j(n) = C(n, j) + C(n, j+4) + …`
//! * the coupled first-order recurrences seeded with `(1, 1, 0, 0)`
//! * the third-order recurrence `w(n+3) = 4w(n+2) − 6w(n+1) + 4w(n)`
//! * the closed form `2^{n−2} + 2^{n/2−1} cos((n − 2j)π/4)`
//! * the number of indices in `Ω_n` whose popcount is `≡ j (mod 4)`.

use std::ops::Index;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::gaussian::gauss_pow_1pi;

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binom(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc = C(n, i) here, so the division is exact
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Row `n` of Pascal's triangle, `C(n, 0) … C(n, n)`.
pub fn binomial_row(n: u64) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigUint::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * BigUint::from(n - k) / BigUint::from(k + 1);
        row.push(c.clone());
    }
    row
}

/// `b_j(n) = Σ_k C(n, 4k + j)`.
pub fn binom_sum_mod4(n: u64, j: u32) -> BigUint {
    assert!(j < 4, "residue must be in 0..4");
    binomial_row(n)
        .into_iter()
        .skip(j as usize)
        .step_by(4)
        .sum()
}

/// `Σ_k C(n, 2k + parity)`; equals `2^{n−1}` for both parities.
pub fn spaced_sum_mod2(n: u64, parity: u32) -> BigUint {
    assert!(parity < 2, "parity must be 0 or 1");
    binomial_row(n)
        .into_iter()
        .skip(parity as usize)
        .step_by(2)
        .sum()
}

/// `(Σ_k (−1)^k C(n, 2k), Σ_k (−1)^k C(n, 2k+1))`, the real and imaginary
/// parts of `(1+i)^n` expanded by the binomial theorem.
pub fn alternating_sums(n: u64) -> (BigInt, BigInt) {
    let mut even = BigInt::zero();
    let mut odd = BigInt::zero();
    for (k, c) in binomial_row(n).into_iter().enumerate() {
        let c = BigInt::from(c);
        match k % 4 {
            0 => even += c,
            1 => odd += c,
            2 => even -= c,
            _ => odd -= c,
        }
    }
    (even, odd)
}

/// `(s(n), t(n), u(n), v(n))`, equivalently `(b₀, b₁, b₂, b₃)` or `(c₀, c₁, c₂, c₃)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SequenceQuad {
    pub n: u64,
    pub s: BigUint,
    pub t: BigUint,
    pub u: BigUint,
    pub v: BigUint,
}

impl SequenceQuad {
    pub fn from_array(n: u64, [s, t, u, v]: [BigUint; 4]) -> Self {
        SequenceQuad { n, s, t, u, v }
    }

    pub fn to_array(&self) -> [BigUint; 4] {
        [
            self.s.clone(),
            self.t.clone(),
            self.u.clone(),
            self.v.clone(),
        ]
    }

    pub fn total(&self) -> BigUint {
        &self.s + &self.t + &self.u + &self.v
    }

    /// One step of `x_j(n+1) = x_j(n) + x_{j−1 mod 4}(n)`.
    pub fn next(&self) -> SequenceQuad {
        SequenceQuad {
            n: self.n + 1,
            s: &self.s + &self.v,
            t: &self.t + &self.s,
            u: &self.u + &self.t,
            v: &self.v + &self.u,
        }
    }

    /// The comparison column `2^{n−2}` (a half at `n = 1`).
    pub fn reference(&self) -> Dyadic {
        Dyadic::pow2_signed(self.n as i64 - 2)
    }
}

impl Index<usize> for SequenceQuad {
    type Output = BigUint;
    fn index(&self, j: usize) -> &BigUint {
        match j {
            0 => &self.s,
            1 => &self.t,
            2 => &self.u,
            3 => &self.v,
            _ => panic!("SequenceQuad index {j} out of range"),
        }
    }
}

fn check_positive(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::Invalid("sequences are indexed from n = 1".into()))
    } else {
        Ok(())
    }
}

fn first_quad() -> SequenceQuad {
    SequenceQuad::from_array(
        1,
        [
            BigUint::one(),
            BigUint::one(),
            BigUint::zero(),
            BigUint::zero(),
        ],
    )
}

/// Iterate the coupled recurrences from `s(1) = t(1) = 1, u(1) = v(1) = 0`.
pub fn quad_by_recurrence(n: u64) -> Result<SequenceQuad> {
    check_positive(n)?;
    let mut q = first_quad();
    while q.n < n {
        q = q.next();
    }
    Ok(q)
}

/// All quads for `1..=max_n` by iterating the coupled recurrences once.
pub fn quads_by_recurrence(max_n: u64) -> Vec<SequenceQuad> {
    std::iter::successors(Some(first_quad()), |q| Some(q.next()))
        .take(max_n as usize)
        .collect()
}

/// Initial values `(w(1), w(2), w(3))` for `s, t, u, v`.
pub const THIRD_ORDER_INITS: [[i64; 3]; 4] = [[1, 1, 1], [1, 2, 3], [0, 1, 3], [0, 0, 1]];

/// Three consecutive terms `w(n), w(n+1), w(n+2)` of
/// `w(n+3) = 4w(n+2) − 6w(n+1) + 4w(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceState {
    pub n: u64,
    pub window: [BigInt; 3],
}

impl RecurrenceState {
    pub fn new(init: [BigInt; 3]) -> Self {
        RecurrenceState { n: 1, window: init }
    }

    pub fn current(&self) -> &BigInt {
        &self.window[0]
    }

    pub fn advance(&mut self) {
        let [a, b, c] = &self.window;
        let next = BigInt::from(4) * c - BigInt::from(6) * b + BigInt::from(4) * a;
        self.window.rotate_left(1);
        self.window[2] = next;
        self.n += 1;
    }
}

impl Iterator for RecurrenceState {
    type Item = BigInt;
    fn next(&mut self) -> Option<BigInt> {
        let out = self.current().clone();
        self.advance();
        Some(out)
    }
}

/// `w(n)` for the third-order recurrence with `(w(1), w(2), w(3)) = init`.
pub fn third_order_sequence(init: [i64; 3], n: u64) -> Result<BigInt> {
    check_positive(n)?;
    let mut state = RecurrenceState::new(init.map(BigInt::from));
    while state.n < n {
        state.advance();
    }
    Ok(state.current().clone())
}

/// `v_j(n) = (2^n + 2·Re((1+i)^n (−i)^j)) / 4`, i.e.
/// `2^{n−2} + 2^{n/2−1} cos((n − 2j)π/4)` without floating point.
pub fn quad_closed_form(n: u64) -> Result<SequenceQuad> {
    check_positive(n)?;
    let z = gauss_pow_1pi(n);
    let pow = BigInt::one() << n;
    let mut values: [BigUint; 4] = Default::default();
    for (j, slot) in values.iter_mut().enumerate() {
        let re = z.rotate(-(j as i64)).re;
        let numerator = &pow + BigInt::from(2) * re;
        let (q, r) = numerator.div_rem(&BigInt::from(4));
        if !r.is_zero() || q.is_negative() {
            return Err(Error::Inconsistency(format!(
                "closed form for v_{j}({n}) is {numerator}/4, not a nonnegative integer"
            )));
        }
        *slot = q.to_biguint().expect("nonnegative");
    }
    Ok(SequenceQuad::from_array(n, values))
}

/// Whether `|v_j(n) − 2^{n−2}| ≤ 2^{n/2−1}`, and whether it is tight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeviationCheck {
    pub within: bool,
    pub tight: bool,
}

pub fn deviation_check(n: u64, value: &BigUint) -> DeviationCheck {
    // |v − 2^{n−2}| ≤ 2^{n/2−1}  ⇔  (4v − 2^n)² ≤ 2^{n+2}
    let d = BigInt::from(value.clone()) * 4 - (BigInt::one() << n);
    let lhs = &d * &d;
    let rhs = BigInt::one() << (n + 2);
    DeviationCheck {
        within: lhs <= rhs,
        tight: lhs == rhs,
    }
}
