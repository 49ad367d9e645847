//! Range verification: criterion search against closed form (and brute force
//! for small `a`), legacy-formula failure search, and JSONL reporting.

use std::io::{self, Write};

use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::closed_form::{legacy_conj2_part1, r2_closed, tag_of, FormulaTag};
use crate::error::Result;
use crate::exact_arith::Nat;
use crate::farey_pell::USeq;
use crate::semigroup::{brute_square_frobenius, j_search, j_search_gap2, Gap, GenPair, Method};

/// Largest integer a JSON number carries without loss.
const JSON_SAFE_MAX: u64 = (1 << 53) - 1;

/// Numbers up to `2⁵³ - 1` as JSON numbers, larger ones as decimal strings.
pub fn serialize_nat<S: Serializer>(n: &Nat, s: S) -> std::result::Result<S::Ok, S::Error> {
    match n.to_u64().filter(|&v| v <= JSON_SAFE_MAX) {
        Some(v) => s.serialize_u64(v),
        None => s.serialize_str(&n.to_string()),
    }
}

pub fn serialize_opt_nat<S: Serializer>(n: &Option<Nat>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match n {
        Some(n) => serialize_nat(n, s),
        None => s.serialize_none(),
    }
}

/// `n` as a JSON value under the same number-or-string rule.
pub fn nat_json(n: &Nat) -> serde_json::Value {
    match n.to_u64().filter(|&v| v <= JSON_SAFE_MAX) {
        Some(v) => v.into(),
        None => n.to_string().into(),
    }
}

/// One line of a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyRecord {
    #[serde(serialize_with = "serialize_nat")]
    pub a: Nat,
    pub gap: Gap,
    #[serde(rename = "method_tag")]
    pub tag: FormulaTag,
    #[serde(rename = "j", serialize_with = "serialize_nat")]
    pub j_criterion: Nat,
    #[serde(serialize_with = "serialize_nat")]
    pub r2_criterion: Nat,
    #[serde(serialize_with = "serialize_nat")]
    pub r2_closed: Nat,
    #[serde(serialize_with = "serialize_opt_nat")]
    pub r2_brute: Option<Nat>,
    pub agrees: bool,
}

/// Computes the record for one pair.
pub fn verify_one(p: &GenPair, brute_limit: &Nat) -> Result<VerifyRecord> {
    let crit = j_search(p)?;
    let closed = r2_closed(p)?;
    let brute = if p.a() <= brute_limit { Some(brute_square_frobenius(p)?.r2) } else { None };
    let agrees = closed.r2 == crit.r2 && brute.as_ref().is_none_or(|b| *b == crit.r2);
    Ok(VerifyRecord {
        a: p.a().clone(),
        gap: p.gap(),
        tag: tag_of(&closed),
        j_criterion: crit.j,
        r2_criterion: crit.r2,
        r2_closed: closed.r2,
        r2_brute: brute,
        agrees,
    })
}

fn is_valid(a: &Nat, gap: Gap) -> bool {
    match gap {
        Gap::One => *a >= Nat::from(2u32),
        Gap::Two => *a >= Nat::from(3u32) && a.bit(0),
    }
}

/// Records for the given values of `a`, split into `jobs` contiguous shards.
/// Invalid values are skipped; output is sorted by `a`.
pub fn verify_values(gap: Gap, values: &[Nat], brute_limit: &Nat, jobs: usize) -> Result<Vec<VerifyRecord>> {
    let mut values: Vec<&Nat> = values.iter().filter(|a| is_valid(a, gap)).collect();
    values.sort();
    values.dedup();
    if values.is_empty() {
        return Ok(Vec::new());
    }
    let shard = values.len().div_ceil(jobs.max(1));
    let work = |chunk: &[&Nat]| -> Result<Vec<VerifyRecord>> {
        chunk
            .iter()
            .map(|a| verify_one(&GenPair::new((*a).clone(), gap)?, brute_limit))
            .collect()
    };
    let shards: Vec<Result<Vec<VerifyRecord>>> = std::thread::scope(|s| {
        let handles: Vec<_> = values.chunks(shard).map(|c| s.spawn(move || work(c))).collect();
        handles.into_iter().map(|h| h.join().expect("verify worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(values.len());
    for part in shards {
        out.extend(part?);
    }
    Ok(out)
}

/// Records for every valid `a` in `a_min..=a_max`.
pub fn verify_range(gap: Gap, a_min: &Nat, a_max: &Nat, brute_limit: &Nat, jobs: usize) -> Result<Vec<VerifyRecord>> {
    let mut values = Vec::new();
    let mut a = a_min.clone();
    while a <= *a_max {
        values.push(a.clone());
        a += 1u32;
    }
    verify_values(gap, &values, brute_limit, jobs)
}

/// The square and square-adjacent values of `a` with root up to `max_root`:
/// `b²` and `b² - 1` for gap 1, `v²` and `v² - 2` with `v` odd for gap 2.
pub fn square_adjacent_values(gap: Gap, max_root: u64) -> Vec<Nat> {
    let mut out = Vec::new();
    match gap {
        Gap::One => {
            for b in 2..=max_root {
                let sq = Nat::from(b) * b;
                out.push(&sq - 1u32);
                out.push(sq);
            }
        }
        Gap::Two => {
            for v in (3..=max_root).step_by(2) {
                let sq = Nat::from(v) * v;
                out.push(&sq - 2u32);
                out.push(sq);
            }
        }
    }
    out
}

/// Records that disagree, as mismatch witnesses.
pub fn disagreements(records: &[VerifyRecord]) -> Vec<&VerifyRecord> {
    records.iter().filter(|r| !r.agrees).collect()
}

/// One disagreement between two methods.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    #[serde(serialize_with = "serialize_nat")]
    pub a: Nat,
    #[serde(serialize_with = "serialize_nat")]
    pub expected_j: Nat,
    #[serde(serialize_with = "serialize_nat")]
    pub expected_r2: Nat,
    #[serde(serialize_with = "serialize_nat")]
    pub got_j: Nat,
    #[serde(serialize_with = "serialize_nat")]
    pub got_r2: Nat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MismatchReport {
    /// (method being checked, reference method)
    pub method_pair: (Method, Method),
    /// Ascending in `a`; empty means full agreement.
    pub witnesses: Vec<Mismatch>,
}

/// Compares the legacy `a = v²` formula with the criterion search for every
/// `v ≤ v_max` in class `C1` (other than `v = 1`).
pub fn find_legacy_failures(v_max: &Nat) -> Result<MismatchReport> {
    let mut witnesses = Vec::new();
    for (k, v) in USeq::default().enumerate() {
        if v > *v_max {
            break;
        }
        if (k + 1) % 4 != 1 || v < Nat::from(3u32) {
            continue;
        }
        let a = &v * &v;
        let legacy = legacy_conj2_part1(&v)?;
        let truth = j_search_gap2(&a)?;
        if legacy.r2 != truth.r2 {
            witnesses.push(Mismatch {
                a,
                expected_j: truth.j,
                expected_r2: truth.r2,
                got_j: legacy.j,
                got_r2: legacy.r2,
            });
        }
    }
    Ok(MismatchReport {
        method_pair: (Method::Legacy(FormulaTag::LegacyConj2Part1), Method::Criterion),
        witnesses,
    })
}

/// Writes one JSON object per record, ascending in `a`.
pub fn write_report<W: Write + ?Sized>(records: &[VerifyRecord], out: &mut W) -> io::Result<()> {
    let mut sorted: Vec<&VerifyRecord> = records.iter().collect();
    sorted.sort_by(|x, y| x.a.cmp(&y.a));
    for r in sorted {
        serde_json::to_writer(&mut *out, r)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}
