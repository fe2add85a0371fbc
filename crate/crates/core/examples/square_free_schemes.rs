//! The six factorisation shapes on one element, with verification and
//! uniqueness.

use sqfree::factorize::{factor, uniqueness_check, verify, Outcome, Scheme};
use sqfree::{Monoid, Result};

fn main() -> Result<()> {
    let m = Monoid::free(3);
    let a = m.parse_element("(5,3,2)")?;
    for s in Scheme::ALL {
        match factor(&m, &a, s)? {
            Outcome::Found(f) => {
                println!(
                    "{s:>5}: {}   verify {}",
                    f.render(&m),
                    verify(&m, &a, &f)?.kind
                );
                match uniqueness_check(&m, &a, s, 8) {
                    Ok(u) => println!("       unique: {}", u.kind),
                    Err(e) => println!("       unique: {e}"),
                }
            }
            other => println!("{s:>5}: {other:?}"),
        }
    }

    let h = Monoid::shifted(2, &[0])?;
    let b = h.parse_element("9")?;
    println!("\nin {{0,2,3,...}}, 9:");
    for s in Scheme::ALL {
        match factor(&h, &b, s)? {
            Outcome::Found(f) => println!("{s:>5}: {}", f.render(&h)),
            other => println!("{s:>5}: {other:?}"),
        }
    }
    Ok(())
}
