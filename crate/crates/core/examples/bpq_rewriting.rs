//! Leveled normal forms in B(p,q): y_i = x_{i+1}^p y_{i+1}^q.

use sqfree::families::Family;
use sqfree::predicates::{is_atom, is_squarefree};
use sqfree::{Element, Monoid, Result};

fn main() -> Result<()> {
    let m = Monoid::bpq(1, 2, 5)?;
    let Family::Bpq(f) = m.family() else {
        unreachable!()
    };
    let y1 = m.parse_element("y1")?;
    let Element::Leveled(v) = &y1 else {
        unreachable!()
    };
    for level in 1..=4 {
        let w = f.normalize_to_level(v, level)?;
        println!("y1 at level {level}: {w}");
    }
    let x2y2 = m.parse_element("x2*y2")?;
    println!("x2*y2 canonical: {x2y2}");
    let sq = m.compose(&m.parse_element("x2")?, &m.pow(&m.parse_element("y2")?, 2)?)?;
    println!("x2*y2^2 = {sq}");
    for e in ["x1", "y1", "y2", "x1*x2"] {
        let a = m.parse_element(e)?;
        println!(
            "{e:>6}: atom {}, square-free {}",
            is_atom(&m, &a)?,
            is_squarefree(&m, &a)?
        );
    }
    println!(
        "y-chain: {:?}",
        f.y_chain()
            .iter()
            .map(|e| e.to_string())
            .collect::<Vec<_>>()
    );
    Ok(())
}
