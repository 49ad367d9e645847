//! Exhaustive scans showing certain pairs of quadratics are never both squares.

use sqfrob::simpell::{check_obstruction, verify_square_obstructions, Obstruction};

fn main() {
    for c in verify_square_obstructions(100_000) {
        println!("{} on [{}, {}]: {} violations", c.lemma.name(), c.start, c.bound, c.violations.len());
    }
    for (lemma, start) in [(Obstruction::L13, 3), (Obstruction::L15, 1), (Obstruction::C14, 1)] {
        let c = check_obstruction(lemma, start, 100_000);
        println!("{} widened to start {start}: violations at {:?}", lemma.name(), c.violations);
    }
}
