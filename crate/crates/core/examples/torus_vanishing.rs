//! The torus carries a nowhere vanishing closed 1-form in every nonzero
//! class, so its Novikov homology vanishes; at `u = 0` the same complex
//! computes ordinary `Z/2` homology.

use novikov::{ChainComplex, Presentation, WeightVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let torus = Presentation::parse("<a,b|[a,b]>")?;
    for u in [[1, 0], [0, 1], [2, -3], [0, 0]] {
        let u = WeightVector::new(u.to_vec());
        let betti = ChainComplex::from_presentation(&torus, &u)?.betti()?;
        println!("u = {u}: {:?}", betti.betti);
    }
    Ok(())
}
