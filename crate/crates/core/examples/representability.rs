//! Which numbers up to 60 are missing from ⟨7, 8⟩ and ⟨7, 9⟩, with witnesses
//! for a few that are present.

use sqfrob::semigroup::{frobenius, is_representable, witness};
use sqfrob::{Gap, GenPair, Nat};

fn main() -> sqfrob::Result<()> {
    for gap in [Gap::One, Gap::Two] {
        let p = GenPair::new(Nat::from(7u32), gap)?;
        let gaps: Vec<u32> = (0..=60u32).filter(|&m| !is_representable(&p, &m.into())).collect();
        println!("<7, {}>: Frobenius {}, missing {:?}", p.b(), frobenius(&p)?, gaps);
        for m in [36u32, 49, 58] {
            match witness(&p, &m.into()) {
                Some(w) => println!("  {m} = 7·{} + {}·{}", w.x, p.b(), w.y),
                None => println!("  {m} is not representable"),
            }
        }
    }
    Ok(())
}
