//! Common solutions of x² - 2b² = λ and y² - 3b² = μ for the six known
//! systems, plus the growth-index bounds for (2, 6).

use sqfrob::simpell::{enumerate_common_steps, growth_index_bound};
use sqfrob::{verify_theorem_hardest, Nat};

fn main() -> sqfrob::Result<()> {
    let bound = Nat::from(10u32).pow(30);
    for r in verify_theorem_hardest(&bound)? {
        let found: Vec<String> = r.found.iter().map(|t| format!("({}, {}, {})", t.x, t.y, t.b)).collect();
        println!(
            "({:>2}, {:>2}): found [{}], agrees with recorded answer: {:?}",
            r.case.lambda,
            r.case.mu,
            found.join(", "),
            r.matches_expected
        );
    }

    let cap = Nat::from(10u32).pow(96);
    let m = growth_index_bound((&2u32.into(), &1u32.into()), (3, 2, 2), &cap)?;
    let n = growth_index_bound((&3u32.into(), &1u32.into()), (2, 1, 3), &cap)?;
    println!("b ≤ 10^96 forces m ≤ {m}, n ≤ {n}");
    let r = enumerate_common_steps(2, 6, 137, 191)?;
    println!("m ≤ 137, n ≤ 191: {} common solution(s), first b = {}", r.found.len(), r.found[0].b);
    Ok(())
}
