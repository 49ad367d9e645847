//! Simultaneous systems `x² - 2b² = λ`, `y² - 3b² = μ`.
//!
//! Each equation's positive solutions come from [`gen_pell_family`]; the
//! common `b` values are found by merging the two sorted `b` lists. Every
//! emptiness result here is a bounded confirmation up to the reported bound,
//! never a proof.
//!
//! The module also carries the square-obstruction scans: exhaustive checks
//! that certain pairs of expressions such as `2b² + 2` and `3b² + 1` are
//! never both perfect squares inside a stated range.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::exact_arith::{is_perfect_square_in, Nat};
use crate::farey_pell::gen_pell_family;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Triple {
    pub x: Nat,
    pub y: Nat,
    pub b: Nat,
}

impl Triple {
    pub fn new(x: u64, y: u64, b: u64) -> Triple {
        Triple { x: x.into(), y: y.into(), b: b.into() }
    }

    /// Checks `x² - 2b² = λ` and `y² - 3b² = μ`.
    pub fn satisfies(&self, lambda: i64, mu: i64) -> bool {
        use num_bigint::BigInt;
        let sq = |v: &Nat| BigInt::from(v * v);
        sq(&self.x) - sq(&self.b) * 2 == BigInt::from(lambda)
            && sq(&self.y) - sq(&self.b) * 3 == BigInt::from(mu)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expectation {
    Empty,
    Exactly(Vec<Triple>),
}

impl Expectation {
    fn matches(&self, found: &[Triple]) -> bool {
        match self {
            Expectation::Empty => found.is_empty(),
            Expectation::Exactly(t) => t.as_slice() == found,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimPellCase {
    pub lambda: i64,
    pub mu: i64,
    pub expected: Option<Expectation>,
}

/// The six systems with known answers, in their fixed reporting order.
pub fn known_cases() -> Vec<SimPellCase> {
    let exact = |t: Triple| Some(Expectation::Exactly(vec![t]));
    vec![
        SimPellCase { lambda: 1, mu: 1, expected: Some(Expectation::Empty) },
        SimPellCase { lambda: -1, mu: -2, expected: Some(Expectation::Empty) },
        SimPellCase { lambda: -1, mu: -3, expected: Some(Expectation::Empty) },
        SimPellCase { lambda: 2, mu: 1, expected: exact(Triple::new(2, 2, 1)) },
        SimPellCase { lambda: -2, mu: -2, expected: exact(Triple::new(4, 5, 3)) },
        SimPellCase { lambda: 2, mu: 6, expected: exact(Triple::new(2, 3, 1)) },
    ]
}

fn case_for(lambda: i64, mu: i64) -> SimPellCase {
    known_cases()
        .into_iter()
        .find(|c| c.lambda == lambda && c.mu == mu)
        .unwrap_or(SimPellCase { lambda, mu, expected: None })
}

/// How far the families were walked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchBound {
    /// Every solution with `b` up to this value.
    MaxB(Nat),
    /// Family elements `0..=m` for `d = 2` and `0..=n` for `d = 3`.
    Steps { m: u64, n: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimPellReport {
    pub case: SimPellCase,
    pub bound: SearchBound,
    /// Common solutions in increasing `b`.
    pub found: Vec<Triple>,
    /// Family elements examined for `x² - 2b² = λ`, summed over families.
    pub steps_x: u64,
    /// Family elements examined for `y² - 3b² = μ`, summed over families.
    pub steps_y: u64,
    /// `None` when the system has no recorded answer.
    pub matches_expected: Option<bool>,
}

// (b, other coordinate) pairs from every family, sorted by b.
fn b_values(d: u32, rhs: i64, stop: &dyn Fn(u64, &Nat) -> bool) -> Result<(Vec<(Nat, Nat)>, u64)> {
    let mut out = Vec::new();
    let mut steps = 0u64;
    for fam in gen_pell_family(d, rhs)? {
        for (k, sol) in fam.iter().enumerate() {
            if stop(k as u64, &sol.y) {
                break;
            }
            steps += 1;
            if sol.is_positive() {
                out.push((sol.y, sol.x));
            }
        }
    }
    out.sort();
    out.dedup();
    Ok((out, steps))
}

fn merge(xs: &[(Nat, Nat)], ys: &[(Nat, Nat)]) -> Vec<Triple> {
    let (mut i, mut j) = (0, 0);
    let mut found = Vec::new();
    while i < xs.len() && j < ys.len() {
        match xs[i].0.cmp(&ys[j].0) {
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
            Ordering::Equal => {
                found.push(Triple { x: xs[i].1.clone(), y: ys[j].1.clone(), b: xs[i].0.clone() });
                i += 1;
                j += 1;
            }
        }
    }
    found
}

fn report(
    lambda: i64,
    mu: i64,
    bound: SearchBound,
    x_stop: &dyn Fn(u64, &Nat) -> bool,
    y_stop: &dyn Fn(u64, &Nat) -> bool,
) -> Result<SimPellReport> {
    let (xs, steps_x) = b_values(2, lambda, x_stop)?;
    let (ys, steps_y) = b_values(3, mu, y_stop)?;
    let found = merge(&xs, &ys);
    assert!(found.iter().all(|t| t.satisfies(lambda, mu)));
    let case = case_for(lambda, mu);
    let matches_expected = case.expected.as_ref().map(|e| e.matches(&found));
    Ok(SimPellReport { case, bound, found, steps_x, steps_y, matches_expected })
}

/// All common positive solutions with `b ≤ b_bound`.
pub fn enumerate_common(lambda: i64, mu: i64, b_bound: &Nat) -> Result<SimPellReport> {
    let stop = |_: u64, b: &Nat| b > b_bound;
    report(lambda, mu, SearchBound::MaxB(b_bound.clone()), &stop, &stop)
}

/// Common positive solutions among family elements `0..=m_max` (for `d = 2`)
/// and `0..=n_max` (for `d = 3`).
pub fn enumerate_common_steps(lambda: i64, mu: i64, m_max: u64, n_max: u64) -> Result<SimPellReport> {
    report(
        lambda,
        mu,
        SearchBound::Steps { m: m_max, n: n_max },
        &|k, _| k > m_max,
        &|k, _| k > n_max,
    )
}

/// The six systems with known answers, each searched up to `b_bound`.
pub fn verify_theorem_hardest(b_bound: &Nat) -> Result<Vec<SimPellReport>> {
    let cases = known_cases();
    std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .iter()
            .map(|c| s.spawn(move || enumerate_common(c.lambda, c.mu, b_bound)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("case worker panicked")).collect()
    })
}

/// `(10⁷·max(|u|, |v|))¹²`, bounding every coordinate of a common solution.
pub fn rickert_bound(u: i64, v: i64) -> Result<Nat> {
    if u == 0 || v == 0 {
        return Err(Error::ZeroRickertInput);
    }
    let m = u.unsigned_abs().max(v.unsigned_abs());
    Ok((Nat::from(m) * 10_000_000u32).pow(12))
}

// x + y√d ≤ c, all terms nonnegative
fn quad_le(x: &Nat, y: &Nat, d: u32, c: &Nat) -> bool {
    if c < x {
        return false;
    }
    let gap = c - x;
    &gap * &gap >= y * y * d
}

/// Largest `k` with `(x₀ + y₀√d)(t + u√d)^k ≤ 2·cap`, found by stepping the
/// exact recurrence.
pub fn growth_index_bound(coeff: (&Nat, &Nat), unit: (u32, u32, u32), cap: &Nat) -> Result<u64> {
    let (t, u, d) = unit;
    if u == 0 && t <= 1 {
        return Err(Error::Hypothesis(format!("{t} + {u}√{d}"), "a unit greater than one"));
    }
    let limit = cap * 2u32;
    let (mut x, mut y) = (coeff.0.clone(), coeff.1.clone());
    if !quad_le(&x, &y, d, &limit) {
        return Err(Error::CoefficientExceedsCap);
    }
    let mut k = 0u64;
    loop {
        (x, y) = (&x * t + &y * (d * u), &x * u + &y * t);
        if !quad_le(&x, &y, d, &limit) {
            return Ok(k);
        }
        k += 1;
    }
}

/// Square-obstruction statements checked by [`verify_square_obstructions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Obstruction {
    /// No `b ≥ 2` with (`2b²+1` or `2b²+2` square) and `3b²+1` square.
    L12,
    /// No `b ≥ 4` with (`2b²-1` or `2b²-2` square) and (`3b²-2` or `3b²-3` square).
    L13,
    /// No `v ≥ 4` with `2v²-2` and `3v²-2` both square.
    C14,
    /// No `v ≥ 2` with `2v²+2` square and (`3v²+1` or `3v²+6` square).
    L15,
}

impl Obstruction {
    pub const ALL: [Obstruction; 4] = [Obstruction::L12, Obstruction::L13, Obstruction::C14, Obstruction::L15];

    pub fn name(self) -> &'static str {
        match self {
            Obstruction::L12 => "L12",
            Obstruction::L13 => "L13",
            Obstruction::C14 => "C14",
            Obstruction::L15 => "L15",
        }
    }

    /// First value the statement covers.
    pub fn range_start(self) -> u64 {
        match self {
            Obstruction::L12 | Obstruction::L15 => 2,
            Obstruction::L13 | Obstruction::C14 => 4,
        }
    }

    /// Whether `b` exhibits the forbidden combination.
    pub fn violated_at(self, b: u64) -> bool {
        let t = u128::from(b) * u128::from(b);
        let sq = |v: u128| is_perfect_square_in(&v);
        // b ≥ 1 keeps every subtraction below nonnegative
        match self {
            Obstruction::L12 => (sq(2 * t + 1) || sq(2 * t + 2)) && sq(3 * t + 1),
            Obstruction::L13 => (sq(2 * t - 1) || sq(2 * t - 2)) && (sq(3 * t - 2) || sq(3 * t - 3)),
            Obstruction::C14 => sq(2 * t - 2) && sq(3 * t - 2),
            Obstruction::L15 => sq(2 * t + 2) && (sq(3 * t + 1) || sq(3 * t + 6)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionCheck {
    pub lemma: Obstruction,
    pub start: u64,
    pub bound: u64,
    pub violations: Vec<u64>,
}

/// Scans `start..=bound` for values exhibiting the forbidden combination.
pub fn check_obstruction(lemma: Obstruction, start: u64, bound: u64) -> ObstructionCheck {
    let violations = (start.max(1)..=bound).filter(|&b| lemma.violated_at(b)).collect();
    ObstructionCheck { lemma, start, bound, violations }
}

/// All four statements over their own ranges, up to `bound`.
pub fn verify_square_obstructions(bound: u64) -> Vec<ObstructionCheck> {
    Obstruction::ALL
        .iter()
        .map(|&l| check_obstruction(l, l.range_start(), bound))
        .collect()
}

impl SimPellReport {
    /// Largest `b` the report covers, when the bound was given in `b`.
    pub fn max_b(&self) -> Option<&Nat> {
        match &self.bound {
            SearchBound::MaxB(b) => Some(b),
            SearchBound::Steps { .. } => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.found.is_empty()
    }
}

impl ObstructionCheck {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}
