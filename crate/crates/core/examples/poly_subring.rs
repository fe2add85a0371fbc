//! GF(2) + x GF(4)[x]: square-free elements, atoms and scheme (ii).

use sqfree::factorize::{scheme_holds_for, Scheme};
use sqfree::lab::catalog::{half_factorial, poly_atoms, poly_squarefree};
use sqfree::predicates::{atoms, is_squarefree};
use sqfree::{Monoid, Result};

fn main() -> Result<()> {
    let m = Monoid::gf2_gf4(4);
    println!("square-free test vs F[x]: {}", poly_squarefree(&m, 4)?);
    println!("atoms vs formula:         {}", poly_atoms(&m, 4)?);
    println!("factorisation lengths:    {}", half_factorial(&m, 4)?);
    println!("atoms of degree <= 2: {}", atoms(&m, 2)?.members.len());
    for f in ["[0,0,1]", "[1,1]", "[0,0,0,2]"] {
        let a = m.parse_element(f)?;
        println!("{a}: square-free {}", is_squarefree(&m, &a)?);
        println!("    scheme (ii) {}", scheme_holds_for(&m, &a, Scheme::Ii)?);
    }
    Ok(())
}
