//! Novikov Betti numbers of closed surfaces. For genus `g >= 2` every
//! nonzero class gives `b_1 = 2g - 2`, the negative Euler characteristic.
//!
//!     cargo run --example surface_betti -- 3

use novikov::{ChainComplex, Presentation, WeightVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let genus: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(2);
    let surface = Presentation::surface(genus, true)?;
    println!("{surface}");
    let mut weights = vec![0i64; surface.rank()];
    weights[0] = 1;
    for u in [weights.clone(), weights.iter().map(|&x| 1 - x).collect()] {
        let u = WeightVector::new(u);
        let complex = ChainComplex::from_presentation(&surface, &u)?;
        let (chi, betti) = complex.checked_euler_characteristic()?;
        println!("u = {u}: betti {:?}, chi {chi}", betti.betti);
    }
    Ok(())
}
