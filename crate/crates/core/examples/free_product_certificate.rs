//! Certificates for a free product `G_1 * G_2` need proof that both factors
//! are nontrivial. Here each factor is `Z/2`, witnessed by a transposition.

use novikov::obstruction::{check_free_product, verify_witness, NontrivialityWitness};
use novikov::Presentation;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let left = Presentation::parse("<a|a^2>")?;
    let right = Presentation::parse("<b|b^2>")?;
    let swap = NontrivialityWitness::from_one_line(2, &[&[2, 1]])?;
    println!("{left} nontrivial: {}", verify_witness(&left, &swap)?);
    println!("{right} nontrivial: {}", verify_witness(&right, &swap)?);

    match check_free_product(&left, &swap, &right, &swap)? {
        Some(cert) => println!("{}", serde_json::to_string_pretty(&cert)?),
        None => println!("no certificate"),
    }

    // the identity permutation proves nothing
    let idle = NontrivialityWitness::from_one_line(2, &[&[1, 2]])?;
    println!(
        "with an idle witness: {:?}",
        check_free_product(&left, &idle, &right, &swap)?.map(|c| c.rule)
    );
    Ok(())
}
