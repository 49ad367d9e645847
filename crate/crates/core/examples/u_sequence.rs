//! The first terms of u and their classes, checked against the Pell identities.

use sqfrob::farey_pell::classify_by_pell;
use sqfrob::{classify, u_seq};

fn main() -> sqfrob::Result<()> {
    for u in u_seq(18).iter().skip(1) {
        let c = classify(u)?;
        let by_pell = classify_by_pell(u)?;
        println!("u{:<3} = {:>5}  {}  (pell: {})", c.index.unwrap(), u, c.class, by_pell);
    }
    Ok(())
}
