//! Representability in `⟨a, a+1⟩` and `⟨a, a+2⟩`.
//!
//! Three ways to get at the square Frobenius number live here:
//!
//! * [`brute_square_frobenius`] scans squares downward from the Frobenius
//!   number and decides each one by exhaustive witness search. It never uses
//!   the quotient criteria, so it is an independent oracle.
//! * [`j_search_gap1`] and [`j_search_gap2`] scan the offset `j` upward and
//!   stop at the first one whose square `(a - j)²` fails the quotient
//!   criterion.
//! * The closed forms in [`crate::closed_form`].
//!
//! All comparisons are cross-multiplied integer inequalities; nothing is ever
//! divided into a rational.

use std::fmt;

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::closed_form::FormulaTag;
use crate::error::{Error, Result};
use crate::exact_arith::{isqrt_in, Int, Nat};

/// Difference between the two generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gap {
    One,
    Two,
}

impl Gap {
    pub fn value(self) -> u32 {
        match self {
            Gap::One => 1,
            Gap::Two => 2,
        }
    }

    pub fn from_value(v: u32) -> Option<Gap> {
        match v {
            1 => Some(Gap::One),
            2 => Some(Gap::Two),
            _ => None,
        }
    }
}

impl Serialize for Gap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_u32(self.value())
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A coprime pair `(a, a + gap)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenPair {
    a: Nat,
    gap: Gap,
}

impl GenPair {
    /// Rejects `a = 0`, and even `a` when the gap is 2.
    pub fn new(a: Nat, gap: Gap) -> Result<GenPair> {
        if a.is_zero() {
            return Err(Error::GeneratorTooSmall { min: 1, got: a.to_string() });
        }
        if gap == Gap::Two && !a.bit(0) {
            return Err(Error::EvenGenerator(a.to_string()));
        }
        Ok(GenPair { a, gap })
    }

    pub fn a(&self) -> &Nat {
        &self.a
    }

    pub fn gap(&self) -> Gap {
        self.gap
    }

    /// The second generator `a + gap`.
    pub fn b(&self) -> Nat {
        &self.a + self.gap.value()
    }

    /// Errors unless `a` is large enough for the Frobenius number to be positive.
    pub fn require_frobenius_domain(&self) -> Result<()> {
        let min = match self.gap {
            Gap::One => 2u32,
            Gap::Two => 3,
        };
        if self.a < Nat::from(min) {
            return Err(Error::GeneratorTooSmall { min, got: self.a.to_string() });
        }
        Ok(())
    }
}

/// A pair `(x, y)` with `m = a·x + (a + gap)·y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReprWitness {
    pub x: Nat,
    pub y: Nat,
}

/// Which route produced a square Frobenius value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Brute,
    Criterion,
    Closed(FormulaTag),
    Legacy(FormulaTag),
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Criterion => "criterion",
            Method::Closed(_) => "closed",
            Method::Legacy(_) => "legacy",
        }
    }

    pub fn tag(self) -> Option<FormulaTag> {
        match self {
            Method::Closed(t) | Method::Legacy(t) => Some(t),
            _ => None,
        }
    }
}

/// `r2 = (a - j)²` together with the offset and the route that found it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFrobResult {
    pub j: Nat,
    pub r2: Nat,
    pub method: Method,
}

impl SquareFrobResult {
    pub(crate) fn from_offset(a: &Nat, j: Nat, method: Method) -> SquareFrobResult {
        debug_assert!(!j.is_zero() && j < *a);
        let s = a - &j;
        SquareFrobResult { r2: &s * &s, j, method }
    }

    /// `√r2`, i.e. `a - j`.
    pub fn root(&self, a: &Nat) -> Nat {
        a - &self.j
    }
}

// Values below this run the scans on u64: a² and (a + 2)² stay below 2^63.
const WORD_LIMIT: u64 = 1 << 31;

fn as_word(n: &Nat, limit: u64) -> Option<u64> {
    n.to_u64().filter(|&w| w < limit)
}

// ---- generic kernels -------------------------------------------------------

pub(crate) fn representable_in<T: Int>(a: &T, gap: Gap, m: &T) -> bool {
    let (q, r) = m.div_rem(a);
    let b = a.clone() + T::from(gap.value() as u8);
    match gap {
        Gap::One => b * q >= *m,
        Gap::Two if r.is_even() => b * q >= *m,
        Gap::Two => b.clone() * q >= m.clone() + b,
    }
}

fn witness_in<T: Int>(a: &T, gap: Gap, m: &T) -> Option<(T, T)> {
    let (q, r) = m.div_rem(a);
    let two = T::from(2u8);
    let (x_sub, y) = match gap {
        Gap::One => (r.clone(), r),
        Gap::Two if r.is_even() => {
            let half = r / two;
            (half.clone(), half)
        }
        Gap::Two => (
            (r.clone() + a.clone() + two.clone()) / two.clone(),
            (r + a.clone()) / two,
        ),
    };
    (q >= x_sub).then(|| (q - x_sub, y))
}

/// Tries every `x ≤ m/a` and checks whether the remainder is a multiple of
/// `a + gap`.
pub(crate) fn exhaustive_in<T: Int>(a: &T, gap: Gap, m: &T) -> bool {
    let b = a.clone() + T::from(gap.value() as u8);
    let mut rest = m.clone();
    loop {
        if (rest.clone() % b.clone()).is_zero() {
            return true;
        }
        if rest < *a {
            return false;
        }
        rest = rest - a.clone();
    }
}

fn j_search_gap1_in<T: Int>(a: &T) -> T {
    let one = T::one();
    let a1 = a.clone() + one.clone();
    let mut j = one.clone();
    while j < *a {
        let lambda = j.clone() * j.clone() / a.clone();
        let jp = j.clone() + one.clone();
        if jp.clone() * jp > (lambda + one.clone()) * a1.clone() {
            return j;
        }
        j = j + one.clone();
    }
    unreachable!("criterion always fires at j = a - 1")
}

fn j_search_gap2_in<T: Int>(a: &T) -> T {
    let one = T::one();
    let two = T::from(2u8);
    let a2 = a.clone() + two.clone();
    let mut j = one.clone();
    while j < *a {
        let sq = j.clone() * j.clone();
        let (lambda, rem) = sq.div_rem(a);
        let shift = if rem.is_even() { two.clone() } else { one.clone() };
        let jp = j.clone() + two.clone();
        if jp.clone() * jp > (lambda + shift) * a2.clone() {
            return j;
        }
        j = j + one.clone();
    }
    unreachable!("criterion always fires at j = a - 1")
}

fn brute_root_in<T: Int>(a: &T, gap: Gap) -> Option<T> {
    let b = a.clone() + T::from(gap.value() as u8);
    let frob = a.clone() * b.clone() - a.clone() - b;
    let mut s = isqrt_in(&frob);
    while !s.is_zero() {
        if !exhaustive_in(a, gap, &(s.clone() * s.clone())) {
            return Some(s);
        }
        s = s - T::one();
    }
    None
}

// ---- public surface --------------------------------------------------------

/// Sylvester's `a(a + gap) - a - (a + gap)`.
pub fn frobenius(p: &GenPair) -> Result<Nat> {
    if p.a < Nat::from(2u32) {
        return Err(Error::GeneratorTooSmall { min: 2, got: p.a.to_string() });
    }
    let b = p.b();
    Ok(&p.a * &b - &p.a - b)
}

/// Quotient criterion: with `q = ⌊m/a⌋` and `r = m mod a`,
/// gap 1 needs `(a+1)q ≥ m`; gap 2 needs `(a+2)q ≥ m` for even `r` and
/// `(a+2)q ≥ m + a + 2` for odd `r`.
pub fn is_representable(p: &GenPair, m: &Nat) -> bool {
    match (as_word(&p.a, WORD_LIMIT), as_word(m, 1 << 62)) {
        (Some(a), Some(m)) => representable_in(&a, p.gap, &m),
        _ => representable_in(&p.a, p.gap, m),
    }
}

/// Same question as [`is_representable`], answered by trying every `x`.
pub fn is_representable_exhaustive(p: &GenPair, m: &Nat) -> bool {
    match (as_word(&p.a, WORD_LIMIT), as_word(m, 1 << 62)) {
        (Some(a), Some(m)) => exhaustive_in(&a, p.gap, &m),
        _ => exhaustive_in(&p.a, p.gap, m),
    }
}

/// The witness built in the criterion's proof, or `None` when `m` is not
/// representable.
pub fn witness(p: &GenPair, m: &Nat) -> Option<ReprWitness> {
    witness_in(&p.a, p.gap, m).map(|(x, y)| ReprWitness { x, y })
}

/// `λ_j = ⌊j²/a⌋` for `1 ≤ j < a`.
pub fn lambda_j(a: &Nat, j: &Nat) -> Result<Nat> {
    if j.is_zero() || j >= a {
        return Err(Error::OffsetOutOfRange { a: a.to_string(), j: j.to_string() });
    }
    Ok(j * j / a)
}

/// Smallest `j` with `(j+1)² > (λ_j + 1)(a+1)`.
pub fn j_search_gap1(a: &Nat) -> Result<SquareFrobResult> {
    GenPair::new(a.clone(), Gap::One)?.require_frobenius_domain()?;
    let j = match as_word(a, WORD_LIMIT) {
        Some(w) => Nat::from(j_search_gap1_in(&w)),
        None => j_search_gap1_in(a),
    };
    Ok(SquareFrobResult::from_offset(a, j, Method::Criterion))
}

/// Smallest `j` with `(j+2)² > (λ_j + 2)(a+2)` when `j² mod a` is even, or
/// `(j+2)² > (λ_j + 1)(a+2)` when it is odd.
pub fn j_search_gap2(a: &Nat) -> Result<SquareFrobResult> {
    GenPair::new(a.clone(), Gap::Two)?.require_frobenius_domain()?;
    let j = match as_word(a, WORD_LIMIT) {
        Some(w) => Nat::from(j_search_gap2_in(&w)),
        None => j_search_gap2_in(a),
    };
    Ok(SquareFrobResult::from_offset(a, j, Method::Criterion))
}

/// Dispatches to the criterion search for the pair's gap.
pub fn j_search(p: &GenPair) -> Result<SquareFrobResult> {
    match p.gap {
        Gap::One => j_search_gap1(&p.a),
        Gap::Two => j_search_gap2(&p.a),
    }
}

/// Forces the unbounded path; used to check the word path against it.
pub fn j_search_unbounded(p: &GenPair) -> Result<SquareFrobResult> {
    p.require_frobenius_domain()?;
    let j = match p.gap {
        Gap::One => j_search_gap1_in(&p.a),
        Gap::Two => j_search_gap2_in(&p.a),
    };
    Ok(SquareFrobResult::from_offset(&p.a, j, Method::Criterion))
}

/// Largest square below the Frobenius number with no witness at all.
pub fn brute_square_frobenius(p: &GenPair) -> Result<SquareFrobResult> {
    p.require_frobenius_domain()?;
    let root = match as_word(&p.a, WORD_LIMIT) {
        Some(w) => brute_root_in(&w, p.gap).map(Nat::from),
        None => brute_root_in(&p.a, p.gap),
    };
    let root = root.ok_or(Error::NoUnrepresentableSquare)?;
    let j = &p.a - &root;
    Ok(SquareFrobResult { r2: &root * &root, j, method: Method::Brute })
}
