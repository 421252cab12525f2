//! Scans every valid class in a box and reports `b_1`. A class with
//! `b_1 > 0` cannot come from a fibration of the target, but the scan only
//! sees finitely many classes, so it is evidence and never a certificate.
//!
//!     cargo run --example vanishing_scan -- "<a,b,c|[a,b], c^2>" 2

use novikov::obstruction::vanishing_scan;
use novikov::Presentation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let p = Presentation::parse(
        &args
            .next()
            .unwrap_or_else(|| "<a,b,c|[a,b][c,a]>".to_string()),
    )?;
    let bound: i64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let scan = vanishing_scan(&p, bound, 1)?;
    for entry in &scan.entries {
        println!("{:?}\tb1 = {}", entry.weight, entry.betti);
    }
    let nonzero = scan.entries.iter().filter(|e| e.betti > 0).count();
    println!(
        "{p}: {nonzero} of {} classes with b1 > 0",
        scan.entries.len()
    );
    Ok(())
}
