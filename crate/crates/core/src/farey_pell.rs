//! The sequence `1, 2, 3, 5, 7, 12, 17, 29, …`, classification of integers by
//! the residue of their index mod 4, and solution families of `x² - d·y² = N`
//! for `d ∈ {2, 3}`.
//!
//! The sequence obeys `u(2n) = u(2n-1) + u(2n-2)` and
//! `u(2n+1) = u(2n) + u(2n-2)` from `u(1), u(2), u(3) = 1, 2, 3`. Its terms
//! interleave the solutions of `x² - 2y² = ±1`:
//! `(u(4n-1), u(4n-2))` solve `+1` and `(u(4n+1), u(4n))` solve `-1`.

use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::{is_perfect_square, isqrt, Nat};

/// Iterator over `u(1), u(2), …`.
#[derive(Debug, Clone, Default)]
pub struct USeq {
    terms: Vec<Nat>,
}

impl Iterator for USeq {
    type Item = Nat;

    fn next(&mut self) -> Option<Nat> {
        let k = self.terms.len() + 1;
        let next = match k {
            1..=3 => Nat::from(k as u32),
            _ if k.is_multiple_of(2) => &self.terms[k - 2] + &self.terms[k - 3],
            _ => &self.terms[k - 2] + &self.terms[k - 4],
        };
        self.terms.push(next.clone());
        Some(next)
    }
}

/// `u(1)..u(count)`.
pub fn u_seq(count: usize) -> Vec<Nat> {
    USeq::default().take(count).collect()
}

// Shared prefix of the sequence. Readers take the read lock; an extension
// re-checks the length under the write lock so it happens at most once.
static PREFIX: LazyLock<RwLock<Vec<Nat>>> = LazyLock::new(|| RwLock::new(u_seq(8)));

fn with_prefix_covering<R>(b: &Nat, f: impl FnOnce(&[Nat]) -> R) -> R {
    {
        let terms = PREFIX.read().expect("prefix lock poisoned");
        if terms.last().is_some_and(|last| last >= b) {
            return f(&terms);
        }
    }
    let mut terms = PREFIX.write().expect("prefix lock poisoned");
    let mut gen = USeq { terms: std::mem::take(&mut *terms) };
    while gen.terms.last().is_none_or(|last| last < b) {
        gen.next();
    }
    *terms = gen.terms;
    f(&terms)
}

/// Residue class of a term's index mod 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum UClass {
    /// index ≡ 1 (mod 4)
    C1,
    /// index ≡ 2 (mod 4)
    C2,
    /// index ≡ 3 (mod 4)
    C3,
    /// index ≡ 0 (mod 4)
    C0,
    NotInU,
}

impl UClass {
    fn of_index(k: usize) -> UClass {
        match k % 4 {
            1 => UClass::C1,
            2 => UClass::C2,
            3 => UClass::C3,
            _ => UClass::C0,
        }
    }
}

impl fmt::Display for UClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            UClass::C1 => "C1",
            UClass::C2 => "C2",
            UClass::C3 => "C3",
            UClass::C0 => "C0",
            UClass::NotInU => "NotInU",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BClass {
    pub class: UClass,
    /// The `k` with `u(k) = b`, when there is one.
    pub index: Option<usize>,
}

/// Locates `b` in the sequence.
pub fn classify(b: &Nat) -> Result<BClass> {
    if b.is_zero() {
        return Err(Error::ArgumentTooSmall { min: 1, got: "0".into() });
    }
    Ok(with_prefix_covering(b, |terms| match terms.binary_search(b) {
        Ok(pos) => BClass { class: UClass::of_index(pos + 1), index: Some(pos + 1) },
        Err(_) => BClass { class: UClass::NotInU, index: None },
    }))
}

/// Same classes, read off from which of `2b² + 1`, `2b² + 2`, `2b² - 2`,
/// `2b² - 1` is a perfect square.
pub fn classify_by_pell(b: &Nat) -> Result<UClass> {
    if *b < Nat::from(2u32) {
        return Err(Error::ArgumentTooSmall { min: 2, got: b.to_string() });
    }
    let t = b * b * 2u32;
    Ok(if is_perfect_square(&(&t + 1u32)) {
        UClass::C2
    } else if is_perfect_square(&(&t + 2u32)) {
        UClass::C1
    } else if is_perfect_square(&(&t - 2u32)) {
        UClass::C3
    } else if is_perfect_square(&(&t - 1u32)) {
        UClass::C0
    } else {
        UClass::NotInU
    })
}

/// A solution of `x² - d·y² = rhs` with `x, y ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellSolution {
    pub x: Nat,
    pub y: Nat,
    pub d: u32,
    pub rhs: i64,
}

fn pell_value(x: &Nat, y: &Nat, d: u32) -> BigInt {
    BigInt::from_biguint(Sign::Plus, x * x) - BigInt::from_biguint(Sign::Plus, y * y * d)
}

impl PellSolution {
    pub fn new(x: Nat, y: Nat, d: u32, rhs: i64) -> Option<PellSolution> {
        (pell_value(&x, &y, d) == BigInt::from(rhs)).then_some(PellSolution { x, y, d, rhs })
    }

    fn checked(x: Nat, y: Nat, d: u32, rhs: i64) -> PellSolution {
        let s = PellSolution::new(x, y, d, rhs);
        s.expect("family step left the solution set")
    }

    pub fn is_positive(&self) -> bool {
        !self.x.is_zero() && !self.y.is_zero()
    }
}

/// Fundamental unit `(t, u)` of `t² - d·u² = 1`.
pub fn fundamental_unit(d: u32) -> Result<(u32, u32)> {
    match d {
        2 => Ok((3, 2)),
        3 => Ok((2, 1)),
        _ => Err(Error::UnsupportedDiscriminant(d)),
    }
}

/// All nonnegative solutions reachable from `base` by multiplying with the
/// fundamental unit `t + u√d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PellFamily {
    pub d: u32,
    pub rhs: i64,
    pub base: PellSolution,
    pub unit: (u32, u32),
}

impl PellFamily {
    /// Base first, then increasing `y`.
    pub fn iter(&self) -> FamilyIter {
        FamilyIter { next: Some(self.base.clone()), unit: self.unit }
    }

    /// Solutions with `x, y > 0`, in increasing `y`.
    pub fn positive(&self) -> impl Iterator<Item = PellSolution> {
        self.iter().filter(PellSolution::is_positive)
    }

    pub fn first_positive(&self, count: usize) -> Vec<PellSolution> {
        self.positive().take(count).collect()
    }
}

#[derive(Debug, Clone)]
pub struct FamilyIter {
    next: Option<PellSolution>,
    unit: (u32, u32),
}

impl Iterator for FamilyIter {
    type Item = PellSolution;

    fn next(&mut self) -> Option<PellSolution> {
        let cur = self.next.take()?;
        let (t, u) = self.unit;
        let x = &cur.x * t + &cur.y * (cur.d * u);
        let y = &cur.x * u + &cur.y * t;
        self.next = Some(PellSolution::checked(x, y, cur.d, cur.rhs));
        Some(cur)
    }
}

/// One step backward, `(x + y√d)(t - u√d)`, if it stays nonnegative.
fn step_back(s: &PellSolution, (t, u): (u32, u32)) -> Option<(Nat, Nat)> {
    let x = BigInt::from(s.x.clone()) * t - BigInt::from(s.y.clone()) * (s.d * u);
    let y = BigInt::from(s.y.clone()) * t - BigInt::from(s.x.clone()) * u;
    (!x.is_negative() && !y.is_negative()).then(|| (x.magnitude().clone(), y.magnitude().clone()))
}

/// Every family of `x² - d·y² = rhs`, ordered by the `y` of its base.
///
/// Bases are the nonnegative solutions whose backward step leaves the
/// nonnegative quadrant; every nonnegative solution descends to exactly one
/// of them. They are found by scanning `y` up to
/// `isqrt(|rhs|)·(t + u·isqrt(d) + 1)`.
pub fn gen_pell_family(d: u32, rhs: i64) -> Result<Vec<PellFamily>> {
    let unit = fundamental_unit(d)?;
    if rhs == 0 || rhs.unsigned_abs() > 64 {
        return Err(Error::RhsOutOfRange(rhs.to_string()));
    }
    let (t, u) = unit;
    let root_d = isqrt(&Nat::from(d)).to_u32().expect("small");
    let bound = isqrt(&Nat::from(rhs.unsigned_abs())).to_u64().expect("small")
        * u64::from(t + u * root_d + 1);

    let mut families = Vec::new();
    for y in 0..=bound {
        let x_sq = BigInt::from(rhs) + BigInt::from(d) * BigInt::from(y * y);
        let Some(x_sq) = x_sq.to_biguint() else { continue };
        if !is_perfect_square(&x_sq) {
            continue;
        }
        let sol = PellSolution::checked(isqrt(&x_sq), Nat::from(y), d, rhs);
        if step_back(&sol, unit).is_none() {
            families.push(PellFamily { d, rhs, base: sol, unit });
        }
    }
    Ok(families)
}

/// Positive solutions of `x² - 2y² = ±1` straight from the unit recurrence
/// `x' = 3x + 4y`, `y' = 2x + 3y`.
pub fn pell_2_units(rhs: i64, count: usize) -> Result<Vec<PellSolution>> {
    let (mut x, mut y) = match rhs {
        1 => (Nat::from(3u32), Nat::from(2u32)),
        -1 => (Nat::from(1u32), Nat::from(1u32)),
        _ => return Err(Error::RhsOutOfRange(rhs.to_string())),
    };
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let next = (&x * 3u32 + &y * 4u32, &x * 2u32 + &y * 3u32);
        out.push(PellSolution::checked(x, y, 2, rhs));
        (x, y) = next;
    }
    Ok(out)
}
