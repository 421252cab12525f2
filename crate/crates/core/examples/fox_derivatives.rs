//! Fox derivatives of the relators of a presentation, and the fundamental
//! identity `sum_i dr/dg_i (1 + g_i) = 1 + r` that ties them to `d_1`.
//!
//!     cargo run --example fox_derivatives -- "<a,b|[a,b], a^2 b^-3>"

use novikov::{fox_derivative, GroupRingElement, Presentation, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "<a,b|[a,b]>".to_string());
    let p = Presentation::parse(&text)?;
    let names = p.generators();
    println!("{p}");
    for r in p.relators() {
        println!("r = {}", r.display_with(names));
        let mut total = GroupRingElement::zero();
        for (i, g) in names.iter().enumerate() {
            let d = fox_derivative(r, i, p.rank())?;
            println!("  d/d{g}: {}", d.display_with(names));
            let one_plus_g =
                GroupRingElement::from_words([Word::identity(), Word::generator(i, 1)]);
            total = total.add(&d.mul(&one_plus_g));
        }
        println!("  sum dr/dg (1 + g) = {}", total.display_with(names));
    }
    Ok(())
}
