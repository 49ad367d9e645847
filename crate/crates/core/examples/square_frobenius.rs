//! r2 by brute force, the criterion search and the closed form, side by side.

use sqfrob::closed_form::tag_of;
use sqfrob::{brute_square_frobenius, j_search, r2_closed, Gap, GenPair, Nat};

fn main() -> sqfrob::Result<()> {
    println!("{:>5} {:>3} {:>10} {:>10} {:>10}  formula", "a", "gap", "brute", "criterion", "closed");
    for (a, gap) in [(8u32, Gap::One), (9, Gap::One), (20, Gap::One), (49, Gap::Two), (47, Gap::Two), (101, Gap::Two)] {
        let p = GenPair::new(Nat::from(a), gap)?;
        let brute = brute_square_frobenius(&p)?;
        let crit = j_search(&p)?;
        let closed = r2_closed(&p)?;
        println!(
            "{a:>5} {:>3} {:>10} {:>10} {:>10}  {}",
            gap.value(),
            brute.r2,
            crit.r2,
            closed.r2,
            tag_of(&closed)
        );
    }
    Ok(())
}
