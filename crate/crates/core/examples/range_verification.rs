//! Verify a range of a, printing the JSONL report and a summary to stderr.

use sqfrob::verify::{disagreements, square_adjacent_values, verify_values, write_report};
use sqfrob::{verify_range, Gap, Nat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let records = verify_range(Gap::Two, &Nat::from(3u32), &Nat::from(61u32), &Nat::from(61u32), jobs)?;
    write_report(&records, &mut std::io::stdout().lock())?;

    let values = square_adjacent_values(Gap::One, 500);
    let scale = verify_values(Gap::One, &values, &Nat::from(0u32), jobs)?;
    eprintln!(
        "{} small records, {} square-adjacent records, {} disagreements",
        records.len(),
        scale.len(),
        disagreements(&records).len() + disagreements(&scale).len()
    );
    Ok(())
}
