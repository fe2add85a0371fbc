//! Classification rows for a handful of monoids and the class search.

use sqfree::lab::search::{search, DEFAULT_SEED};
use sqfree::lab::{classify, table_consistency};
use sqfree::{Monoid, Result};

fn main() -> Result<()> {
    let monoids = [
        (Monoid::free(2), 6),
        (Monoid::shifted(2, &[0])?, 12),
        (Monoid::bpq(1, 1, 6)?, 3),
        (Monoid::bpq(1, 2, 6)?, 3),
        (Monoid::rationals(), 4),
    ];
    let mut rows = Vec::new();
    for (m, bound) in &monoids {
        let row = classify(m, *bound)?;
        println!(
            "{:<4} {:<4} {}  {}",
            row.accp_atm,
            row.gcd_decomp,
            row.pattern(),
            row.spec
        );
        rows.push(row);
    }
    println!("table consistency: {}", table_consistency(&rows));

    let r = search(DEFAULT_SEED, 20, 4)?;
    println!("\nclasses found: {}", r.found.len());
    for ((a, g, p), spec) in &r.found {
        println!("  {a}/{g}/{p}  {spec}");
    }
    println!(
        "candidates (undecided schemes read as holding): {}",
        r.candidates.len()
    );
    Ok(())
}
