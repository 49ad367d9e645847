//! Acceptance criteria, one test each. Every test prints one PASS/FAIL line
//! per check, then fails if any check failed.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde_json::Value;

use sqfrob::farey_pell::pell_2_units;
use sqfrob::semigroup::{is_representable_exhaustive, j_search};
use sqfrob::simpell::{
    check_obstruction, enumerate_common_steps, growth_index_bound, verify_square_obstructions, Obstruction, Triple,
};
use sqfrob::verify::{disagreements, square_adjacent_values, verify_values};
use sqfrob::{
    brute_square_frobenius, enumerate_common, find_legacy_failures, is_representable, r2_closed, u_seq,
    verify_range, verify_theorem_hardest, Gap, GenPair, Nat,
};

struct Checks {
    id: u32,
    start: Instant,
    budget: Duration,
    failed: Vec<String>,
}

impl Checks {
    fn new(id: u32, budget_secs: u64) -> Checks {
        Checks { id, start: Instant::now(), budget: Duration::from_secs(budget_secs), failed: Vec::new() }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl std::fmt::Display) {
        // written to the stderr handle directly so passing tests show their lines too
        let line = format!("criterion {} [{name}]: {} ({detail})\n", self.id, if ok { "PASS" } else { "FAIL" });
        let _ = std::io::stderr().write_all(line.as_bytes());
        if !ok {
            self.failed.push(name.to_string());
        }
    }

    fn finish(mut self) {
        let elapsed = self.start.elapsed();
        let ok = elapsed <= self.budget;
        self.check("runtime", ok, format!("{:.2?} of {:?}", elapsed, self.budget));
        assert!(self.failed.is_empty(), "criterion {} failed: {:?}", self.id, self.failed);
    }
}

fn n(v: u64) -> Nat {
    Nat::from(v)
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn valid_a(gap: Gap, max: u64) -> Vec<u64> {
    match gap {
        Gap::One => (2..=max).collect(),
        Gap::Two => (3..=max).step_by(2).collect(),
    }
}

#[test]
fn criterion_1_representability_oracle() {
    let mut c = Checks::new(1, 60);
    for (gap, max) in [(Gap::One, 200), (Gap::Two, 199)] {
        let values = valid_a(gap, max);
        let bad: usize = std::thread::scope(|s| {
            let handles: Vec<_> = values
                .chunks(values.len().div_ceil(jobs()))
                .map(|chunk| {
                    s.spawn(move || {
                        let mut bad = 0usize;
                        for &a in chunk {
                            let p = GenPair::new(n(a), gap).unwrap();
                            for m in 0..=a * a {
                                let m = n(m);
                                bad += usize::from(is_representable(&p, &m) != is_representable_exhaustive(&p, &m));
                            }
                        }
                        bad
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).sum()
        });
        c.check(&format!("gap {gap}, a ≤ {max}, m ≤ a²"), bad == 0, format!("{bad} disagreements"));
    }
    c.finish();
}

#[test]
fn criterion_2_triple_method_agreement() {
    let mut c = Checks::new(2, 120);
    for gap in [Gap::One, Gap::Two] {
        let recs = verify_range(gap, &n(1), &n(2000), &n(2000), jobs()).unwrap();
        let expected = valid_a(gap, 2000).len();
        let complete = recs.len() == expected && recs.iter().all(|r| r.r2_brute.is_some());
        let bad = disagreements(&recs).len();
        c.check(
            &format!("gap {gap}, a ≤ 2000"),
            complete && bad == 0,
            format!("{} records, {bad} disagreements", recs.len()),
        );
    }
    c.finish();
}

#[test]
fn criterion_3_square_adjacent_scale() {
    let mut c = Checks::new(3, 60);
    for (gap, label) in [(Gap::One, "a = b², b² − 1, b ≤ 2000"), (Gap::Two, "a = v², v² − 2, odd v ≤ 2000")] {
        let values = square_adjacent_values(gap, 2000);
        let recs = verify_values(gap, &values, &n(0), jobs()).unwrap();
        let bad = disagreements(&recs).len();
        c.check(label, recs.len() == values.len() && bad == 0, format!("{} records, {bad} mismatches", recs.len()));
    }
    c.finish();
}

#[test]
fn criterion_4_counterexample() {
    let mut c = Checks::new(4, 10);
    let out = Command::new(env!("CARGO_BIN_EXE_sqfrob")).arg("counterexample").output().unwrap();
    let code = out.status.code();
    c.check("exit code", code == Some(0), format!("{code:?}"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    c.check("a", v["a"] == 1_940_449, &v["a"]);
    c.check("v = u17", v["v"] == 1393 && v["index"] == 17, format!("v = {}, index = {}", v["v"], v["index"]));
    c.check("legacy j", v["legacy_j"] == 2412, &v["legacy_j"]);
    c.check("true j", v["true_j"] == 2411, &v["true_j"]);
    c.check("unique up to v = 1393", v["unique"] == true, &v["failures_up_to_v"]);
    let below = find_legacy_failures(&n(1392)).unwrap();
    c.check("no failure below", below.witnesses.is_empty(), format!("{} witnesses", below.witnesses.len()));
    c.finish();
}

#[test]
fn criterion_5_pell_fixtures() {
    let mut c = Checks::new(5, 1);
    let pairs = |rhs| -> Vec<(u64, u64)> {
        pell_2_units(rhs, 4)
            .unwrap()
            .iter()
            .map(|s| ((&s.x).try_into().unwrap(), (&s.y).try_into().unwrap()))
            .collect()
    };
    let plus = pairs(1);
    c.check("+1", plus == [(3, 2), (17, 12), (99, 70), (577, 408)], format!("{plus:?}"));
    let minus = pairs(-1);
    c.check("-1", minus == [(1, 1), (7, 5), (41, 29), (239, 169)], format!("{minus:?}"));

    let u: Vec<BigInt> = u_seq(82).into_iter().map(BigInt::from).collect();
    let at = |k: usize| &u[k - 1];
    let norm = |x: &BigInt, y: &BigInt| x * x - BigInt::from(2) * y * y;
    let ok_plus = (1..=20).all(|k| norm(at(4 * k - 1), at(4 * k - 2)) == BigInt::from(1));
    c.check("u(4n-1)² - 2u(4n-2)² = 1, n ≤ 20", ok_plus, "");
    let ok_minus = (1..=20).all(|k| norm(at(4 * k + 1), at(4 * k)) == BigInt::from(-1));
    c.check("u(4n+1)² - 2u(4n)² = -1, n ≤ 20", ok_minus, "");
    c.finish();
}

#[test]
fn criterion_6_simultaneous_pell_2_6() {
    let mut c = Checks::new(6, 10);
    let cap = Nat::from(10u32).pow(96);
    let m = growth_index_bound((&n(2), &n(1)), (3, 2, 2), &cap).unwrap();
    let k = growth_index_bound((&n(3), &n(1)), (2, 1, 3), &cap).unwrap();
    c.check("growth index bound m = 137", m == 137, format!("computed {m}"));
    c.check("growth index bound n = 191", k == 191, format!("computed {k}"));
    c.check("computed bounds within 137 and 191", m <= 137 && k <= 191, format!("m = {m}, n = {k}"));

    let steps = enumerate_common_steps(2, 6, 137, 191).unwrap();
    c.check(
        "only (2, 3, 1) for m ≤ 137, n ≤ 191",
        steps.found == [Triple::new(2, 3, 1)],
        format!("{} found", steps.found.len()),
    );
    let r = enumerate_common(2, 6, &cap).unwrap();
    c.check("enumerate_common(2, 6, 10⁹⁶) = {(2, 3, 1)}", r.found == [Triple::new(2, 3, 1)], format!("{:?}", r.found));
    c.finish();
}

#[test]
fn criterion_7_hardest_table() {
    let mut c = Checks::new(7, 10);
    let expected: [(i64, i64, Vec<Triple>); 6] = [
        (1, 1, vec![]),
        (-1, -2, vec![]),
        (-1, -3, vec![]),
        (2, 1, vec![Triple::new(2, 2, 1)]),
        (-2, -2, vec![Triple::new(4, 5, 3)]),
        (2, 6, vec![Triple::new(2, 3, 1)]),
    ];
    let reports = verify_theorem_hardest(&Nat::from(10u32).pow(30)).unwrap();
    c.check("six reports", reports.len() == 6, reports.len());
    for (r, (l, m, want)) in reports.iter().zip(expected.iter()) {
        let found: Vec<String> = r.found.iter().map(|t| format!("({}, {}, {})", t.x, t.y, t.b)).collect();
        c.check(
            &format!("({l}, {m})"),
            r.case.lambda == *l && r.case.mu == *m && r.found == *want,
            format!("found [{}]", found.join(", ")),
        );
    }
    c.finish();
}

#[test]
fn criterion_8_obstructions() {
    let mut c = Checks::new(8, 60);
    for chk in verify_square_obstructions(100_000) {
        c.check(
            &format!("{} on [{}, 10⁵]", chk.lemma.name(), chk.start),
            chk.holds(),
            format!("{} violations", chk.violations.len()),
        );
    }
    let l13 = check_obstruction(Obstruction::L13, 3, 100_000);
    c.check("L13 widened to b = 3", l13.violations == [3], format!("{:?}", l13.violations));
    let l15 = check_obstruction(Obstruction::L15, 1, 100_000);
    c.check("L15 widened to v = 1", l15.violations == [1], format!("{:?}", l15.violations));
    c.finish();
}

#[test]
fn criterion_9_point_values() {
    let mut c = Checks::new(9, 5);
    for (a, gap, want) in [(8u64, Gap::One, 4u64), (49, Gap::Two, 1444)] {
        let p = GenPair::new(n(a), gap).unwrap();
        let got = [
            brute_square_frobenius(&p).unwrap().r2,
            j_search(&p).unwrap().r2,
            r2_closed(&p).unwrap().r2,
        ];
        c.check(
            &format!("r2({a}, {})", p.b()),
            got.iter().all(|r| *r == n(want)),
            format!("brute {}, criterion {}, closed {}", got[0], got[1], got[2]),
        );
    }
    c.finish();
}
