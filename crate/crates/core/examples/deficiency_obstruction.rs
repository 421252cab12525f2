//! A group of deficiency at least two cannot be the fundamental group of an
//! exact Lagrangian in `T*M` when `M` fibers over the circle. The report
//! below collects every rule that fires for a genus-2 surface group.

use novikov::obstruction::{report, ReportInput};
use novikov::Presentation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let input = ReportInput {
        presentation: Some(Presentation::surface(2, true)?),
        chi: Some(-2),
        ..Default::default()
    };
    println!("{}", report(&input)?.to_json());
    Ok(())
}
