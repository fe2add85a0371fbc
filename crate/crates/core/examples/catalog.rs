//! Re-check every fact in the bundled catalog.

use sqfree::lab::{run_catalog, Format};

fn main() {
    let report = run_catalog();
    print!("{}", report.render(Format::Text));
    std::process::exit(if report.passed() { 0 } else { 1 });
}
