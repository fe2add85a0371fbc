//! Composition, divisibility, gcd and relative primality across families.

use sqfree::{Monoid, Result};

fn main() -> Result<()> {
    let n2 = Monoid::free(2);
    let a = n2.parse_element("(3,1)")?;
    let b = n2.parse_element("(1,2)")?;
    println!("N^2: {a} * {b} = {}", n2.compose(&a, &b)?);
    println!("gcd({a}, {b}) = {}", n2.gcd(&a, &b)?);
    println!(
        "divisors of {a}: {:?}",
        n2.divisors(&a)?
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
    );

    let h = Monoid::shifted(2, &[0])?;
    let (x, y) = (h.parse_element("5")?, h.parse_element("6")?);
    println!("\n{{0,2,3,...}}: gcd(5, 6) = {}", h.gcd(&x, &y)?);
    println!(
        "rpr(2, 3) = {}",
        h.rpr(&h.parse_element("2")?, &h.parse_element("3")?)?
    );
    println!(
        "ball of norm 6: {:?}",
        h.enumerate(6)?
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
    );

    let q = Monoid::rationals();
    let (r, s) = (q.parse_element("1/2")?, q.parse_element("3")?);
    println!("\nQ>=0: 1/2 | 3 ? {}", q.divides(&r, &s)?);
    Ok(())
}
