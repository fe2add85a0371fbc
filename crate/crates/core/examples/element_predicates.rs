//! Atoms, primes, square-free and radical elements of {0, 2, 3, ...}.

use sqfree::lab::catalog::radical_gap;
use sqfree::predicates::{atoms, is_primal, is_prime, is_radical, is_squarefree, squarefree_set};
use sqfree::{Monoid, Result};

fn main() -> Result<()> {
    let m = Monoid::shifted(2, &[0])?;
    let bound = 12;
    let show = |s: &[sqfree::Element]| {
        s.iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!("atoms:       {{{}}}", show(&atoms(&m, bound)?.members));
    println!(
        "square-free: {{{}}}",
        show(&squarefree_set(&m, bound)?.members)
    );
    for n in [2, 3, 4, 5, 6] {
        let a = m.parse_element(&n.to_string())?;
        println!(
            "{n}: square-free {}; prime {}; radical {}; primal {}",
            is_squarefree(&m, &a)?,
            is_prime(&m, &a, bound)?,
            is_radical(&m, &a, bound)?,
            is_primal(&m, &a, bound)?
        );
    }
    println!("square-free but not radical: {}", radical_gap(&m, bound)?);
    Ok(())
}
