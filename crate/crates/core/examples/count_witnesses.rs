//! Monoids with exactly n square-free elements.

use sqfree::lab::count::verify_count_witness;
use sqfree::Result;

fn main() -> Result<()> {
    for n in 1..=10 {
        let (spec, count, atoms) = verify_count_witness(n, 2 * n + 4)?;
        let atoms: Vec<String> = atoms.iter().map(|a| a.to_string()).collect();
        println!(
            "{n:>2}: {:<40} {}  atoms {{{}}}",
            spec.to_text(),
            count.render(),
            atoms.join(", ")
        );
    }
    Ok(())
}
