//! The `sqfrob` command line.
//!
//! Standard output carries only JSON (one object) or JSONL (one object per
//! line). Exit codes: 0 success, 1 a check found a mismatch, 2 usage error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::closed_form::{legacy_conj2_part1, r2_closed, r2_legacy, tag_of};
use crate::error::Error;
use crate::exact_arith::Nat;
use crate::farey_pell::{classify, classify_by_pell, gen_pell_family, u_seq, UClass};
use crate::semigroup::{
    brute_square_frobenius, is_representable, j_search, witness, Gap, GenPair, SquareFrobResult,
};
use crate::simpell::{
    enumerate_common, enumerate_common_steps, growth_index_bound, verify_square_obstructions,
    verify_theorem_hardest, SearchBound, SimPellReport, Triple,
};
use crate::verify::{disagreements, find_legacy_failures, nat_json, verify_range, write_report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "sqfrob", version, about = "Square Frobenius numbers of (a, a+1) and (a, a+2)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum R2Method {
    Brute,
    Criterion,
    Closed,
    Legacy,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ClassifyMethod {
    Sequence,
    Pell,
    Both,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether m is a nonnegative combination of a and a + gap.
    Repr {
        #[arg(long)]
        a: BigUint,
        #[arg(long, value_parser = parse_gap)]
        gap: Gap,
        #[arg(long)]
        m: BigUint,
        /// Also print a witness (x, y).
        #[arg(long)]
        witness: bool,
    },
    /// Largest non-representable perfect square.
    R2 {
        #[arg(long)]
        a: BigUint,
        #[arg(long, value_parser = parse_gap)]
        gap: Gap,
        #[arg(long, value_enum, default_value = "criterion")]
        method: R2Method,
    },
    /// First terms of the sequence 1, 2, 3, 5, 7, 12, ...
    Useq {
        #[arg(long)]
        count: usize,
    },
    /// Residue class of b's index in the sequence.
    Classify {
        #[arg(long)]
        b: BigUint,
        #[arg(long, value_enum, default_value = "sequence")]
        method: ClassifyMethod,
    },
    /// Positive solutions of x² - d·y² = rhs, per family.
    Pell {
        #[arg(long)]
        d: u32,
        #[arg(long, allow_hyphen_values = true)]
        rhs: i64,
        #[arg(long)]
        count: usize,
    },
    /// Common solutions of x² - 2b² = λ and y² - 3b² = μ.
    Simpell {
        #[arg(long, allow_hyphen_values = true, required_unless_present = "all_cases", conflicts_with = "all_cases")]
        lambda: Option<i64>,
        #[arg(long, allow_hyphen_values = true, required_unless_present = "all_cases", conflicts_with = "all_cases")]
        mu: Option<i64>,
        /// Largest b searched (default 10^30 with --all-cases).
        #[arg(long, required_unless_present = "all_cases")]
        bound: Option<BigUint>,
        /// The six systems with known answers.
        #[arg(long)]
        all_cases: bool,
    },
    /// Growth-index bounds for the system (λ, μ) = (2, 6) at b ≤ 10^96.
    Bounds,
    /// Scan the square obstructions up to the bound.
    Obstructions {
        #[arg(long)]
        bound: u64,
    },
    /// Compare criterion, closed form and brute force over a range of a.
    Verify {
        #[arg(long, value_parser = parse_gap)]
        gap: Gap,
        #[arg(long)]
        from: BigUint,
        #[arg(long)]
        to: BigUint,
        /// Run brute force for a up to this value.
        #[arg(long, default_value = "0")]
        brute_limit: BigUint,
        #[arg(long, env = "SQFROB_JOBS", value_parser = clap::value_parser!(u32).range(1..))]
        jobs: Option<u32>,
        /// Write JSONL here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The legacy formula's failure at a = 1393².
    Counterexample,
}

fn parse_gap(s: &str) -> Result<Gap, String> {
    s.parse::<u32>()
        .ok()
        .and_then(Gap::from_value)
        .ok_or_else(|| format!("gap must be 1 or 2, got {s}"))
}

enum Failure {
    Usage(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Io(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Failure {
        Failure::Io(e.into())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line against the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line with explicit output streams.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("error: invalid usage");
            let _ = writeln!(err, "{line}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(out: &mut dyn Write, v: &Value) -> io::Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    out.write_all(b"\n")
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Repr { a, gap, m, witness: with_witness } => repr(out, GenPair::new(a, gap)?, &m, with_witness),
        Command::R2 { a, gap, method } => r2(out, GenPair::new(a, gap)?, method),
        Command::Useq { count } => {
            for (k, u) in u_seq(count).iter().enumerate() {
                emit(out, &json!({"index": k + 1, "u": nat_json(u)}))?;
            }
            Ok(EXIT_OK)
        }
        Command::Classify { b, method } => classify_cmd(out, &b, method),
        Command::Pell { d, rhs, count } => pell(out, d, rhs, count),
        Command::Simpell { lambda, mu, bound, all_cases } => {
            let reports = if all_cases {
                let bound = bound.unwrap_or_else(|| Nat::from(10u32).pow(30));
                verify_theorem_hardest(&bound)?
            } else {
                let (Some(l), Some(m), Some(b)) = (lambda, mu, bound) else {
                    return Err(Failure::Usage("--lambda, --mu and --bound are required".into()));
                };
                vec![enumerate_common(l, m, &b)?]
            };
            for r in &reports {
                emit(out, &report_json(r))?;
            }
            let failed = reports.iter().any(|r| r.matches_expected == Some(false));
            Ok(if failed { EXIT_MISMATCH } else { EXIT_OK })
        }
        Command::Bounds => bounds(out),
        Command::Obstructions { bound } => {
            let checks = verify_square_obstructions(bound);
            for c in &checks {
                emit(
                    out,
                    &json!({
                        "lemma": c.lemma.name(),
                        "start": c.start,
                        "bound": c.bound,
                        "violations": c.violations,
                        "holds": c.holds(),
                    }),
                )?;
            }
            Ok(if checks.iter().all(|c| c.holds()) { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Verify { gap, from, to, brute_limit, jobs, out: path } => {
            if from > to {
                return Err(Failure::Usage(format!("--from {from} exceeds --to {to}")));
            }
            let jobs = jobs
                .map(|j| j as usize)
                .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            let records = verify_range(gap, &from, &to, &brute_limit, jobs)?;
            let bad = disagreements(&records);
            match path {
                Some(path) => {
                    let mut file = BufWriter::new(File::create(&path)?);
                    write_report(&records, &mut file)?;
                    let bad: Vec<Value> = bad.iter().map(|r| nat_json(&r.a)).collect();
                    emit(out, &json!({"records": records.len(), "disagreements": bad}))?;
                }
                None => write_report(&records, out)?,
            }
            Ok(if bad.is_empty() { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Counterexample => counterexample(out),
    }
}

fn repr(out: &mut dyn Write, p: GenPair, m: &Nat, with_witness: bool) -> Outcome {
    let mut v = json!({
        "a": nat_json(p.a()),
        "gap": p.gap().value(),
        "m": nat_json(m),
        "representable": is_representable(&p, m),
    });
    if with_witness {
        v["witness"] = match witness(&p, m) {
            Some(w) => json!({"x": nat_json(&w.x), "y": nat_json(&w.y)}),
            None => Value::Null,
        };
    }
    emit(out, &v)?;
    Ok(EXIT_OK)
}

fn r2(out: &mut dyn Write, p: GenPair, method: R2Method) -> Outcome {
    p.require_frobenius_domain()?;
    let res: SquareFrobResult = match method {
        R2Method::Brute => brute_square_frobenius(&p)?,
        R2Method::Criterion => j_search(&p)?,
        R2Method::Closed => r2_closed(&p)?,
        R2Method::Legacy => r2_legacy(&p)?,
    };
    let tag = res.method.tag().map(|t| t.name());
    let mut v = json!({
        "a": nat_json(p.a()),
        "gap": p.gap().value(),
        "method": res.method.name(),
        "method_tag": tag,
        "j": nat_json(&res.j),
    });
    v[format!("r2_{}", res.method.name())] = nat_json(&res.r2);
    v["root"] = nat_json(&res.root(p.a()));
    emit(out, &v)?;
    Ok(EXIT_OK)
}

fn classify_cmd(out: &mut dyn Write, b: &Nat, method: ClassifyMethod) -> Outcome {
    let seq = || classify(b);
    let pell = || classify_by_pell(b);
    let class_name = |c: UClass| c.to_string();
    let mut v = json!({"b": nat_json(b)});
    let mut code = EXIT_OK;
    match method {
        ClassifyMethod::Sequence => {
            let c = seq()?;
            v["class"] = class_name(c.class).into();
            v["index"] = json!(c.index);
        }
        ClassifyMethod::Pell => v["class"] = class_name(pell()?).into(),
        ClassifyMethod::Both => {
            let p = pell()?;
            let s = seq()?;
            v["class"] = class_name(s.class).into();
            v["index"] = json!(s.index);
            v["class_pell"] = class_name(p).into();
            v["agrees"] = (p == s.class).into();
            if p != s.class {
                code = EXIT_MISMATCH;
            }
        }
    }
    emit(out, &v)?;
    Ok(code)
}

fn pell(out: &mut dyn Write, d: u32, rhs: i64, count: usize) -> Outcome {
    for (f, fam) in gen_pell_family(d, rhs)?.iter().enumerate() {
        for (k, s) in fam.first_positive(count).iter().enumerate() {
            emit(
                out,
                &json!({"d": d, "rhs": rhs, "family": f, "k": k, "x": nat_json(&s.x), "y": nat_json(&s.y)}),
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn triple_json(t: &Triple) -> Value {
    json!({"x": nat_json(&t.x), "y": nat_json(&t.y), "b": nat_json(&t.b)})
}

fn report_json(r: &SimPellReport) -> Value {
    let bound = match &r.bound {
        SearchBound::MaxB(b) => json!({"max_b": nat_json(b)}),
        SearchBound::Steps { m, n } => json!({"m": m, "n": n}),
    };
    json!({
        "lambda": r.case.lambda,
        "mu": r.case.mu,
        "bound": bound,
        "found": r.found.iter().map(triple_json).collect::<Vec<_>>(),
        "steps_x": r.steps_x,
        "steps_y": r.steps_y,
        "matches_expected": r.matches_expected,
    })
}

fn bounds(out: &mut dyn Write) -> Outcome {
    const STATED: (u64, u64) = (137, 191);
    let cap = Nat::from(10u32).pow(96);
    let m = growth_index_bound((&2u32.into(), &1u32.into()), (3, 2, 2), &cap)?;
    let n = growth_index_bound((&3u32.into(), &1u32.into()), (2, 1, 3), &cap)?;
    let within = enumerate_common_steps(2, 6, STATED.0, STATED.1)?;
    let only_trivial = within.found == vec![Triple::new(2, 3, 1)];
    let ok = m <= STATED.0 && n <= STATED.1 && only_trivial;
    emit(
        out,
        &json!({
            "lambda": 2,
            "mu": 6,
            "cap": cap.to_string(),
            "m_bound": m,
            "n_bound": n,
            "stated_m": STATED.0,
            "stated_n": STATED.1,
            "within_stated": m <= STATED.0 && n <= STATED.1,
            "found_within_stated": within.found.iter().map(triple_json).collect::<Vec<_>>(),
        }),
    )?;
    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

fn counterexample(out: &mut dyn Write) -> Outcome {
    let v = Nat::from(1393u32);
    let report = find_legacy_failures(&v)?;
    let a = &v * &v;
    let p = GenPair::new(a.clone(), Gap::Two)?;
    let legacy = legacy_conj2_part1(&v)?;
    let truth = j_search(&p)?;
    let closed = r2_closed(&p)?;
    let index = classify(&v)?.index;
    let unique = report.witnesses.len() == 1 && report.witnesses[0].a == a;
    emit(
        out,
        &json!({
            "v": nat_json(&v),
            "index": index,
            "a": nat_json(&a),
            "gap": 2,
            "legacy_j": nat_json(&legacy.j),
            "legacy_r2": nat_json(&legacy.r2),
            "true_j": nat_json(&truth.j),
            "true_r2": nat_json(&truth.r2),
            "closed_tag": tag_of(&closed).name(),
            "closed_r2": nat_json(&closed.r2),
            "failures_up_to_v": report.witnesses.iter().map(|w| nat_json(&w.a)).collect::<Vec<_>>(),
            "unique": unique,
        }),
    )?;
    Ok(if unique && legacy.r2 != truth.r2 && closed.r2 == truth.r2 { EXIT_OK } else { EXIT_MISMATCH })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("sqfrob").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn json_line(s: &str) -> Value {
        serde_json::from_str(s.trim()).unwrap()
    }

    #[test]
    fn r2_closed_point() {
        let (code, out, _) = call(&["r2", "--a", "49", "--gap", "2", "--method", "closed"]);
        assert_eq!(code, 0);
        let v = json_line(&out);
        assert_eq!(v["r2_closed"], 1444);
        assert_eq!(v["a"], 49);
    }

    #[test]
    fn usage_errors_are_one_line() {
        for args in [
            &["r2", "--a", "8", "--gap", "2"][..],
            &["r2", "--a", "8", "--gap", "3"],
            &["classify", "--b", "1", "--method", "pell"],
            &["bogus"],
            &["useq", "--count", "3", "--extra"],
            &["verify", "--gap", "1", "--from", "9", "--to", "3"],
        ] {
            let (code, out, err) = call(args);
            assert_eq!(code, 2, "{args:?}");
            assert!(out.is_empty());
            assert_eq!(err.lines().count(), 1, "{args:?}: {err}");
        }
    }

    #[test]
    fn negative_flags() {
        let (code, out, _) = call(&["pell", "--d", "3", "--rhs", "-2", "--count", "2"]);
        assert_eq!(code, 0);
        let first = json_line(out.lines().next().unwrap());
        assert_eq!((first["x"].clone(), first["y"].clone()), (json!(1), json!(1)));
        let (code, out, _) = call(&["simpell", "--lambda", "-2", "--mu", "-2", "--bound", "100"]);
        assert_eq!(code, 0);
        assert_eq!(json_line(&out)["found"][0]["b"], 3);
    }
}
