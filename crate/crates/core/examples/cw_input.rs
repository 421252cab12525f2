//! Complexes need not come from presentations. A CW JSON file lists the
//! cell counts and the boundary matrices of the `Z^n`-cover; the class `u`
//! specializes them to one variable.
//!
//!     cargo run --example cw_input -- complex.json 1,0

use novikov::complexes::CwInput;
use novikov::{ChainComplex, WeightVector};

// the torus as the product of two circles, over Z/2[x1^±, x2^±]
const TORUS: &str = r#"{
  "variables": 2,
  "dims": [1, 2, 1],
  "boundaries": [
    [[[[0,0],[1,0]], [[0,0],[0,1]]]],
    [[[[0,0],[0,1]]], [[[0,0],[1,0]]]]
  ]
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = match args.next() {
        Some(path) => std::fs::read_to_string(path)?,
        None => TORUS.to_string(),
    };
    let cw = CwInput::from_json(&text)?;
    let weights: Vec<Vec<i64>> = match args.next() {
        Some(u) => vec![u.split(',').map(str::parse).collect::<Result<_, _>>()?],
        None => vec![vec![1, 0], vec![1, -1], vec![0; cw.variables]],
    };
    for u in weights {
        let u = WeightVector::new(u);
        let betti = ChainComplex::from_cw(&cw, &u)?.betti()?;
        println!("u = {u}: {:?}", betti.betti);
    }
    Ok(())
}
