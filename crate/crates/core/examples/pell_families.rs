//! Solution families of x² - d·y² = N for a few right-hand sides.

use sqfrob::gen_pell_family;

fn main() -> sqfrob::Result<()> {
    for (d, rhs) in [(2u32, 1i64), (2, -1), (2, 2), (3, -2), (3, 6), (3, -1)] {
        let families = gen_pell_family(d, rhs)?;
        println!("x² - {d}y² = {rhs}: {} families", families.len());
        for fam in &families {
            let sols: Vec<String> = fam.first_positive(4).iter().map(|s| format!("({}, {})", s.x, s.y)).collect();
            println!("  base ({}, {}): {}", fam.base.x, fam.base.y, sols.join(" "));
        }
    }
    Ok(())
}
