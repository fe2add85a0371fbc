//! Transfer properties and condition suites for submonoids of N^n.

use sqfree::submonoid::{
    atom_transfer_report, check_transfer, closure_checks, squarefree_transfer_report,
    SubmonoidContext, Transfer, ELEMENT_BOUND,
};
use sqfree::Result;

fn main() -> Result<()> {
    for gens in [
        vec![vec![1, 1, 0], vec![1, 0, 1]],
        vec![vec![1, 1, 0], vec![0, 0, 1]],
        vec![vec![2, 0, 0], vec![0, 1, 0]],
    ] {
        let ctx = SubmonoidContext::new(3, gens.clone(), ELEMENT_BOUND)?;
        println!("M = <{gens:?}>, atoms {:?}", ctx.atoms());
        for t in Transfer::ALL {
            println!(
                "  {} {:<40} {}",
                t.token(),
                t.statement(),
                check_transfer(&ctx, t)
            );
        }
        let a = atom_transfer_report(&ctx);
        let s = squarefree_transfer_report(&ctx);
        println!(
            "  atom conditions refuted: {}/{}",
            a.refuted(),
            a.verdicts.len()
        );
        println!(
            "  square-free conditions refuted: {}/{}",
            s.refuted(),
            s.verdicts.len()
        );
        let c = closure_checks(&ctx);
        println!("  root closed {}", c.root_closed);
        println!("  divisor closed {}", c.divisor_closed);
        println!();
    }
    Ok(())
}
