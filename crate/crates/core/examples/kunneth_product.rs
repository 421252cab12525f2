//! Novikov homology of a product `L x P` with the class pulled back from
//! `L` is `H(L, u)` tensored with the ordinary homology of `P`.

use novikov::complexes::{convolve, PlainComplex};
use novikov::{ChainComplex, Presentation, WeightVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sigma = Presentation::surface(2, true)?;
    let c = ChainComplex::from_presentation(&sigma, &WeightVector::new(vec![1, 0, 0, 0]))?;
    let circle = PlainComplex::circle();

    let tensor = c.tensor_product(&circle).betti()?;
    let factors = (c.betti()?.betti, circle.betti());
    println!("H(L, u)        = {:?}", factors.0);
    println!("H(S^1; Z/2)    = {:?}", factors.1);
    println!("H(L x S^1, u)  = {:?}", tensor.betti);
    println!("convolution    = {:?}", convolve(&factors.0, &factors.1));
    Ok(())
}
