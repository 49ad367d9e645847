//! Exact integer kernels: integer square roots, square tests, `⌊b√c⌋` and
//! the half-floor identity `⌊(⌊x⌋ - 1)/2⌋ = ⌊(x - 1)/2⌋`.
//!
//! Nothing in here touches floating point. Every routine has a generic form
//! over [`Int`] so that hot loops can run on machine words; the public
//! [`Nat`] entry points pick the word path automatically when the input
//! fits and fall back to the unbounded path otherwise.

use std::fmt::Debug;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative integer.
pub type Nat = BigUint;

/// Unsigned integer types the kernels can run on.
pub trait Int: Clone + Ord + Debug + Integer + From<u8> + Send + Sync {
    /// Number of significant bits; zero for zero.
    fn bit_len(&self) -> u64;
    /// `2^exp`. Callers keep `exp` inside the type's range.
    fn power_of_two(exp: u64) -> Self;
    fn to_nat(&self) -> Nat;
    fn from_nat(n: &Nat) -> Option<Self>;
}

impl Int for u64 {
    fn bit_len(&self) -> u64 {
        u64::from(64 - self.leading_zeros())
    }
    fn power_of_two(exp: u64) -> Self {
        1u64 << exp
    }
    fn to_nat(&self) -> Nat {
        Nat::from(*self)
    }
    fn from_nat(n: &Nat) -> Option<Self> {
        n.to_u64()
    }
}

impl Int for u128 {
    fn bit_len(&self) -> u64 {
        u64::from(128 - self.leading_zeros())
    }
    fn power_of_two(exp: u64) -> Self {
        1u128 << exp
    }
    fn to_nat(&self) -> Nat {
        Nat::from(*self)
    }
    fn from_nat(n: &Nat) -> Option<Self> {
        n.to_u128()
    }
}

impl Int for BigUint {
    fn bit_len(&self) -> u64 {
        self.bits()
    }
    fn power_of_two(exp: u64) -> Self {
        BigUint::from(1u8) << exp
    }
    fn to_nat(&self) -> Nat {
        self.clone()
    }
    fn from_nat(n: &Nat) -> Option<Self> {
        Some(n.clone())
    }
}

/// `⌊√n⌋` by Heron's iteration from above, followed by an exact correction.
pub fn isqrt_in<T: Int>(n: &T) -> T {
    if n.is_zero() {
        return T::zero();
    }
    let two = T::from(2u8);
    let one = T::one();
    // 2^ceil(bits/2) > √n, so the iteration decreases monotonically.
    let mut x = T::power_of_two(n.bit_len().div_ceil(2));
    loop {
        let y = (x.clone() + n.clone() / x.clone()) / two.clone();
        if y >= x {
            break;
        }
        x = y;
    }
    // Division-based comparisons keep the check overflow-free on words.
    while x > n.clone() / x.clone() {
        x = x - one.clone();
    }
    loop {
        let next = x.clone() + one.clone();
        if next <= n.clone() / next.clone() {
            x = next;
        } else {
            break;
        }
    }
    x
}

pub fn is_perfect_square_in<T: Int>(n: &T) -> bool {
    let s = isqrt_in(n);
    s.clone() * s == *n
}

/// `⌊√n⌋`, on a machine word when `n < 2^128`.
pub fn isqrt(n: &Nat) -> Nat {
    match n.to_u128() {
        Some(w) => Nat::from(isqrt_in(&w)),
        None => isqrt_in(n),
    }
}

pub fn is_perfect_square(n: &Nat) -> bool {
    let s = isqrt(n);
    &s * &s == *n
}

/// `⌊b·√c⌋`, computed as `⌊√(c·b²)⌋`.
pub fn floor_mul_sqrt(b: &Nat, c: u32) -> Nat {
    isqrt(&(b * b * c))
}

/// `⌊(m - 1)/2⌋` for a positive floor `m`.
pub fn half_floor_minus_one(m: &Nat) -> Result<Nat> {
    if m.is_zero() {
        return Err(Error::ZeroFloor);
    }
    Ok((m - 1u32) >> 1)
}

/// `2·⌊m/2⌋`: the largest even number not above `m`.
pub fn even_floor(m: &Nat) -> Nat {
    (m >> 1) << 1
}
