//! The legacy formula for a = v² agrees with the truth up to v = 1393 and
//! fails there.

use sqfrob::closed_form::{legacy_conj2_part1, thm3_part1};
use sqfrob::semigroup::j_search_gap2;
use sqfrob::{classify, find_legacy_failures, Nat};

fn main() -> sqfrob::Result<()> {
    let v = Nat::from(1393u32);
    let a = &v * &v;
    println!("v = {v} is u{}", classify(&v)?.index.unwrap());
    let legacy = legacy_conj2_part1(&v)?;
    let fixed = thm3_part1(&v)?;
    let truth = j_search_gap2(&a)?;
    println!("legacy:    j = {}, r2 = {}", legacy.j, legacy.r2);
    println!("corrected: j = {}, r2 = {}", fixed.j, fixed.r2);
    println!("criterion: j = {}, r2 = {}", truth.j, truth.r2);

    let report = find_legacy_failures(&Nat::from(10u32).pow(6))?;
    let at: Vec<String> = report.witnesses.iter().map(|w| w.a.to_string()).collect();
    println!("legacy failures for v ≤ 10^6 at a = {}", at.join(", "));
    Ok(())
}
