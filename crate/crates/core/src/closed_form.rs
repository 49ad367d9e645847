//! Closed-form square Frobenius numbers.
//!
//! Every formula computes the offset `j` first and returns `r2 = (a - j)²`.
//! Membership in the residue classes of the sequence `u` decides between a
//! `√2` branch and a `√3` branch:
//!
//! | pair              | `√3` branch when      | `√3` offset                 |
//! |-------------------|-----------------------|-----------------------------|
//! | `a = b²`, gap 1   | `b ∈ C1 ∪ C2`         | `⌊b√3⌋`                     |
//! | `a = b²-1`, gap 1 | `b ∈ C3 ∪ C0`, `b≠3`  | `⌊b√3⌋`                     |
//! | `a = v²`, gap 2   | `v ∈ C1`, index ≥ 5   | `2⌊(⌊v√3⌋ - 1)/2⌋ + 1`      |
//! | `a = v²-2`, gap 2 | `v ∈ C3`              | `2⌊(⌊v√3⌋ - 1)/2⌋ + 1`      |
//!
//! The `√2` offsets are `⌊b√2⌋` for gap 1 and `2⌊⌊v√2⌋/2⌋` for gap 2. The
//! pair `(8, 9)` is the lone exception, with `r2 = 2²`.
//!
//! The legacy gap 2 formulas use the plain `⌊v√3⌋` offset instead of the odd
//! rounding; they first go wrong at `v = 1393`.

use std::fmt;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_arith::{even_floor, floor_mul_sqrt, half_floor_minus_one, is_perfect_square, isqrt, Nat};
use crate::farey_pell::{classify, UClass};
use crate::semigroup::{j_search, Gap, GenPair, Method, SquareFrobResult};

/// Which closed form produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FormulaTag {
    Thm1,
    Thm2,
    Conj1Part1,
    Conj1Part2,
    Thm3Part1,
    Thm3Part2,
    LegacyConj2Part1,
    LegacyConj2Part2,
    CriterionFallback,
}

impl FormulaTag {
    pub fn name(self) -> &'static str {
        match self {
            FormulaTag::Thm1 => "Thm1",
            FormulaTag::Thm2 => "Thm2",
            FormulaTag::Conj1Part1 => "Conj1Part1",
            FormulaTag::Conj1Part2 => "Conj1Part2",
            FormulaTag::Thm3Part1 => "Thm3Part1",
            FormulaTag::Thm3Part2 => "Thm3Part2",
            FormulaTag::LegacyConj2Part1 => "LegacyConj2Part1",
            FormulaTag::LegacyConj2Part2 => "LegacyConj2Part2",
            FormulaTag::CriterionFallback => "CriterionFallback",
        }
    }
}

impl fmt::Display for FormulaTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn closed(a: &Nat, j: Nat, tag: FormulaTag) -> SquareFrobResult {
    SquareFrobResult::from_offset(a, j, Method::Closed(tag))
}

fn at_least(n: &Nat, min: u32) -> Result<()> {
    if *n < Nat::from(min) {
        return Err(Error::ArgumentTooSmall { min, got: n.to_string() });
    }
    Ok(())
}

fn odd_at_least_three(v: &Nat) -> Result<()> {
    if !v.bit(0) {
        return Err(Error::EvenArgument(v.to_string()));
    }
    at_least(v, 3)
}

fn class_of(n: &Nat) -> (UClass, usize) {
    let c = classify(n).expect("argument is positive");
    (c.class, c.index.unwrap_or(0))
}

// 2⌊(⌊v√3⌋ - 1)/2⌋ + 1: the largest odd number not above ⌊v√3⌋
fn odd_sqrt3_offset(v: &Nat) -> Nat {
    let f = floor_mul_sqrt(v, 3);
    half_floor_minus_one(&f).expect("v ≥ 1 gives a positive floor") * 2u32 + 1u32
}

// 2⌊v√2/2⌋, computed as 2⌊⌊v√2⌋/2⌋
fn even_sqrt2_offset(v: &Nat) -> Nat {
    even_floor(&floor_mul_sqrt(v, 2))
}

/// `b² < a < a + 1 < (b + 1)²` gives `r2 = (a - b)²`.
pub fn thm1(a: &Nat) -> Result<SquareFrobResult> {
    at_least(a, 2)?;
    if is_perfect_square(a) || is_perfect_square(&(a + 1u32)) {
        return Err(Error::Hypothesis(a.to_string(), "the non-square gap 1 formula"));
    }
    Ok(closed(a, isqrt(a), FormulaTag::Thm1))
}

/// Odd `a` strictly between consecutive odd squares `(2b+1)²` and `(2b+3)²`
/// gives `r2 = (a - (2b+1))²`.
pub fn thm2(a: &Nat) -> Result<SquareFrobResult> {
    if !a.bit(0) {
        return Err(Error::EvenGenerator(a.to_string()));
    }
    at_least(a, 11)?;
    if is_perfect_square(a) || is_perfect_square(&(a + 2u32)) {
        return Err(Error::Hypothesis(a.to_string(), "the non-square gap 2 formula"));
    }
    let s = isqrt(a);
    let j = if s.bit(0) { s } else { s - 1u32 };
    Ok(closed(a, j, FormulaTag::Thm2))
}

/// `a = b²`, gap 1.
pub fn conj1_part1(b: &Nat) -> Result<SquareFrobResult> {
    at_least(b, 2)?;
    let a = b * b;
    let j = match class_of(b).0 {
        UClass::C1 | UClass::C2 => floor_mul_sqrt(b, 3),
        _ => floor_mul_sqrt(b, 2),
    };
    Ok(closed(&a, j, FormulaTag::Conj1Part1))
}

/// `a = b² - 1`, gap 1.
pub fn conj1_part2(b: &Nat) -> Result<SquareFrobResult> {
    at_least(b, 2)?;
    let a = b * b - 1u32;
    let j = if *b == Nat::from(3u32) {
        Nat::from(6u32)
    } else {
        match class_of(b).0 {
            UClass::C3 | UClass::C0 => floor_mul_sqrt(b, 3),
            _ => floor_mul_sqrt(b, 2),
        }
    };
    Ok(closed(&a, j, FormulaTag::Conj1Part2))
}

/// `a = v²`, gap 2, `v` odd.
pub fn thm3_part1(v: &Nat) -> Result<SquareFrobResult> {
    odd_at_least_three(v)?;
    let a = v * v;
    let j = match class_of(v) {
        (UClass::C1, k) if k >= 5 => odd_sqrt3_offset(v),
        _ => even_sqrt2_offset(v),
    };
    Ok(closed(&a, j, FormulaTag::Thm3Part1))
}

/// `a = v² - 2`, gap 2, `v` odd.
pub fn thm3_part2(v: &Nat) -> Result<SquareFrobResult> {
    odd_at_least_three(v)?;
    let a = v * v - 2u32;
    let j = match class_of(v).0 {
        UClass::C3 => odd_sqrt3_offset(v),
        _ => even_sqrt2_offset(v),
    };
    Ok(closed(&a, j, FormulaTag::Thm3Part2))
}

/// The original `a = v²` formula: `38²` at `v = 7`, `⌊v√3⌋` for `v` in `C1`
/// from index 9 on, the `√2` offset otherwise.
pub fn legacy_conj2_part1(v: &Nat) -> Result<SquareFrobResult> {
    odd_at_least_three(v)?;
    let a = v * v;
    let j = if *v == Nat::from(7u32) {
        Nat::from(11u32)
    } else {
        match class_of(v) {
            (UClass::C1, k) if k >= 9 => floor_mul_sqrt(v, 3),
            _ => even_sqrt2_offset(v),
        }
    };
    Ok(SquareFrobResult::from_offset(&a, j, Method::Legacy(FormulaTag::LegacyConj2Part1)))
}

/// The original `a = v² - 2` formula: `⌊v√3⌋` for `v` in `C3`, the `√2`
/// offset otherwise.
pub fn legacy_conj2_part2(v: &Nat) -> Result<SquareFrobResult> {
    odd_at_least_three(v)?;
    let a = v * v - 2u32;
    let j = match class_of(v).0 {
        UClass::C3 => floor_mul_sqrt(v, 3),
        _ => even_sqrt2_offset(v),
    };
    Ok(SquareFrobResult::from_offset(&a, j, Method::Legacy(FormulaTag::LegacyConj2Part2)))
}

/// The legacy formula for a gap 2 pair, when `a` or `a + 2` is a square.
pub fn r2_legacy(p: &GenPair) -> Result<SquareFrobResult> {
    let a = p.a();
    if p.gap() == Gap::Two {
        let v = isqrt(a);
        if &v * &v == *a {
            return legacy_conj2_part1(&v);
        }
        let v = isqrt(&(a + 2u32));
        if &v * &v == a + 2u32 {
            return legacy_conj2_part2(&v);
        }
    }
    Err(Error::Hypothesis(
        format!("(a = {a}, gap {})", p.gap()),
        "the legacy formulas (gap 2 with a or a + 2 square)",
    ))
}

// Below this the closed form is double-checked against the criterion search.
const SMALL_A: u32 = 50;

fn formula_for(p: &GenPair) -> Result<Option<SquareFrobResult>> {
    let a = p.a();
    match p.gap() {
        Gap::One => {
            let b = isqrt(a);
            if &b * &b == *a {
                return conj1_part1(&b).map(Some);
            }
            let a1 = a + 1u32;
            let b = isqrt(&a1);
            if &b * &b == a1 {
                return conj1_part2(&b).map(Some);
            }
            thm1(a).map(Some)
        }
        Gap::Two => {
            let v = isqrt(a);
            if &v * &v == *a {
                return thm3_part1(&v).map(Some);
            }
            let a2 = a + 2u32;
            let v = isqrt(&a2);
            if &v * &v == a2 {
                return thm3_part2(&v).map(Some);
            }
            if *a >= Nat::from(11u32) {
                return thm2(a).map(Some);
            }
            Ok(None)
        }
    }
}

/// Picks the closed form whose hypotheses `p` satisfies.
///
/// Pairs with no applicable formula (gap 2 with `a` = 3 or 5) get the
/// criterion value tagged [`FormulaTag::CriterionFallback`]. Below `a = 50`
/// the formula is also compared with the criterion search and the criterion
/// value is served if they ever differ.
pub fn r2_closed(p: &GenPair) -> Result<SquareFrobResult> {
    let a = p.a();
    if *a < Nat::from(2u32) || (p.gap() == Gap::Two && *a < Nat::from(3u32)) {
        return Err(Error::GeneratorTooSmall { min: 2, got: a.to_string() });
    }
    let formula = formula_for(p)?;
    let small = a.to_u32().is_some_and(|v| v < SMALL_A);
    match formula {
        Some(res) if !small => Ok(res),
        Some(res) => {
            let crit = j_search(p)?;
            Ok(if crit.j == res.j { res } else { fallback(crit) })
        }
        None => Ok(fallback(j_search(p)?)),
    }
}

fn fallback(crit: SquareFrobResult) -> SquareFrobResult {
    SquareFrobResult { method: Method::Closed(FormulaTag::CriterionFallback), ..crit }
}

/// Tag carried by a closed-form result; [`FormulaTag::CriterionFallback`]
/// for any other method.
pub fn tag_of(r: &SquareFrobResult) -> FormulaTag {
    r.method.tag().unwrap_or(FormulaTag::CriterionFallback)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::{brute_square_frobenius, j_search_gap1, j_search_gap2};

    fn n(v: u64) -> Nat {
        Nat::from(v)
    }

    fn pair(a: u64, gap: Gap) -> GenPair {
        GenPair::new(n(a), gap).unwrap()
    }

    fn brute(a: u64, gap: Gap) -> Nat {
        brute_square_frobenius(&pair(a, gap)).unwrap().r2
    }

    #[test]
    fn thm1_fixtures() {
        assert_eq!(thm1(&n(5)).unwrap().r2, brute(5, Gap::One));
        assert_eq!(thm1(&n(5)).unwrap().r2, n(9));
        assert_eq!(thm1(&n(7)).unwrap().r2, n(25));
        assert_eq!(thm1(&n(10)).unwrap().r2, n(49));
        assert_eq!(brute(10, Gap::One), n(49));
        assert!(thm1(&n(8)).is_err());
        assert!(thm1(&n(9)).is_err());
    }

    #[test]
    fn thm2_fixtures() {
        assert_eq!(thm2(&n(11)).unwrap().r2, n(64));
        assert_eq!(thm2(&n(27)).unwrap().r2, n(484));
        assert_eq!(thm2(&n(13)).unwrap().r2, n(100));
        for a in [11, 27, 13] {
            assert_eq!(thm2(&n(a)).unwrap().r2, brute(a, Gap::Two));
        }
        assert!(thm2(&n(23)).is_err());
        assert!(thm2(&n(12)).is_err());
        assert!(thm2(&n(5)).is_err());
    }

    #[test]
    fn conj1_fixtures() {
        assert_eq!(conj1_part1(&n(8)).unwrap().r2, n(2809));
        assert_eq!(j_search_gap1(&n(64)).unwrap().r2, n(2809));
        assert_eq!(conj1_part1(&n(7)).unwrap().r2, n(1369));
        assert_eq!(j_search_gap1(&n(49)).unwrap().r2, n(1369));
        assert_eq!(conj1_part1(&n(2)).unwrap().r2, n(1));
        assert_eq!(brute(4, Gap::One), n(1));

        assert_eq!(conj1_part2(&n(3)).unwrap().r2, n(4));
        assert_eq!(conj1_part2(&n(5)).unwrap().r2, n(256));
        assert_eq!(brute(24, Gap::One), n(256));
        assert_eq!(conj1_part2(&n(8)).unwrap().r2, n(2704));
        assert_eq!(j_search_gap1(&n(63)).unwrap().r2, n(2704));
    }

    #[test]
    fn thm3_fixtures() {
        let r = thm3_part1(&n(7)).unwrap();
        assert_eq!((r.j, r.r2), (n(11), n(1444)));
        let r = thm3_part1(&n(9)).unwrap();
        assert_eq!((r.j.clone(), r.r2.clone()), (n(12), n(4761)));
        assert_eq!(j_search_gap2(&n(81)).unwrap().r2, r.r2);

        let r = thm3_part1(&n(1393)).unwrap();
        assert_eq!(r.j, n(2411));
        assert_eq!(r.r2, n(1_938_038) * n(1_938_038));
        assert_eq!(j_search_gap2(&n(1_940_449)).unwrap(), SquareFrobResult { method: Method::Criterion, ..r });

        let r = thm3_part2(&n(3)).unwrap();
        assert_eq!((r.j, r.r2), (n(5), n(4)));
        assert_eq!(brute(7, Gap::Two), n(4));
        let r = thm3_part2(&n(5)).unwrap();
        assert_eq!((r.j, r.r2), (n(6), n(289)));
        assert_eq!(brute(23, Gap::Two), n(289));
        let r = thm3_part2(&n(17)).unwrap();
        // ⌊17√3⌋ = 29 is odd, so the offset is 29 itself
        assert_eq!(r.j, n(29));
        assert_eq!(r.r2, j_search_gap2(&n(287)).unwrap().r2);

        assert!(thm3_part1(&n(8)).is_err());
        assert!(thm3_part2(&n(1)).is_err());
    }

    #[test]
    fn legacy_fixtures() {
        assert_eq!(legacy_conj2_part1(&n(7)).unwrap().r2, n(1444));
        let r = legacy_conj2_part1(&n(41)).unwrap();
        assert_eq!(r.j, n(71));
        assert_eq!(r.r2, n(1610) * n(1610));
        assert_eq!(r.r2, j_search_gap2(&n(1681)).unwrap().r2);
        let r = legacy_conj2_part1(&n(1393)).unwrap();
        assert_eq!(r.j, n(2412));
        assert_eq!(r.r2, n(1_938_037) * n(1_938_037));
        assert_ne!(r.r2, j_search_gap2(&n(1_940_449)).unwrap().r2);
    }

    #[test]
    fn dispatcher_fixtures() {
        let r = r2_closed(&pair(8, Gap::One)).unwrap();
        assert_eq!((r.r2, r.method), (n(4), Method::Closed(FormulaTag::Conj1Part2)));
        let r = r2_closed(&pair(10, Gap::One)).unwrap();
        assert_eq!((r.r2, r.method), (n(49), Method::Closed(FormulaTag::Thm1)));
        let r = r2_closed(&pair(49, Gap::Two)).unwrap();
        assert_eq!((r.r2, r.method), (n(1444), Method::Closed(FormulaTag::Thm3Part1)));
        let r = r2_closed(&pair(5, Gap::Two)).unwrap();
        assert_eq!(r.method, Method::Closed(FormulaTag::CriterionFallback));
        assert!(r2_closed(&pair(1, Gap::One)).is_err());
    }

    #[test]
    fn legacy_dispatch() {
        assert_eq!(r2_legacy(&pair(49, Gap::Two)).unwrap().method.tag(), Some(FormulaTag::LegacyConj2Part1));
        assert_eq!(r2_legacy(&pair(47, Gap::Two)).unwrap().method.tag(), Some(FormulaTag::LegacyConj2Part2));
        assert!(r2_legacy(&pair(11, Gap::Two)).is_err());
        assert!(r2_legacy(&pair(8, Gap::One)).is_err());
    }

    #[test]
    fn dispatcher_matches_criterion() {
        for a in 2u64..=2000 {
            let p = pair(a, Gap::One);
            assert_eq!(r2_closed(&p).unwrap().r2, j_search(&p).unwrap().r2, "gap 1, a = {a}");
        }
        for a in (3u64..=1999).step_by(2) {
            let p = pair(a, Gap::Two);
            assert_eq!(r2_closed(&p).unwrap().r2, j_search(&p).unwrap().r2, "gap 2, a = {a}");
        }
    }

    #[test]
    fn formulas_only_fall_back_where_none_applies() {
        for a in 2u64..50 {
            let t = tag_of(&r2_closed(&pair(a, Gap::One)).unwrap());
            assert_ne!(t, FormulaTag::CriterionFallback, "gap 1, a = {a}");
        }
        for a in (3u64..50).step_by(2) {
            let t = tag_of(&r2_closed(&pair(a, Gap::Two)).unwrap());
            assert_eq!(t == FormulaTag::CriterionFallback, a == 3 || a == 5, "gap 2, a = {a}");
        }
    }

    #[test]
    fn square_formulas_match_criterion() {
        for b in 2u64..=2000 {
            let b = n(b);
            assert_eq!(conj1_part1(&b).unwrap().r2, j_search_gap1(&(&b * &b)).unwrap().r2);
            assert_eq!(conj1_part2(&b).unwrap().r2, j_search_gap1(&(&b * &b - 1u32)).unwrap().r2);
        }
        for v in (3u64..=1999).step_by(2) {
            let v = n(v);
            assert_eq!(thm3_part1(&v).unwrap().r2, j_search_gap2(&(&v * &v)).unwrap().r2, "v = {v}");
            assert_eq!(thm3_part2(&v).unwrap().r2, j_search_gap2(&(&v * &v - 2u32)).unwrap().r2);
        }
    }

    #[test]
    fn legacy_diverges_exactly_on_even_floor() {
        for (k, v) in crate::farey_pell::u_seq(40).into_iter().enumerate() {
            let index = k + 1;
            if index % 4 != 1 || index < 9 {
                continue;
            }
            let legacy = legacy_conj2_part1(&v).unwrap();
            let fixed = thm3_part1(&v).unwrap();
            let even = !floor_mul_sqrt(&v, 3).bit(0);
            assert_eq!(legacy.j != fixed.j, even, "v = u({index})");
        }
    }
}
