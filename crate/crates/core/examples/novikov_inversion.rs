//! Units of the Novikov ring: anything whose lowest level holds a single
//! monomial is invertible, through the geometric series.
//!
//!     cargo run --example novikov_inversion -- "1 + t" 1 8

use novikov::{LaurentPoly, NovikovSeries, WeightVector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "t^2 + t^3".to_string());
    let u: i64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(1);
    let level: i64 = args.next().map(|s| s.parse()).transpose()?.unwrap_or(6);

    let weight = WeightVector::new(vec![u]);
    let x = LaurentPoly::parse(&text, 1)?;
    let inverse = NovikovSeries::invert_polynomial(&x, &weight, level)?;
    println!(
        "({x})^-1 = {inverse}  (exact through level {})",
        inverse.truncation()
    );

    let (series, _) = NovikovSeries::from_laurent(&x, &weight, inverse.truncation() + 16)?;
    let product = series.mul(&inverse)?;
    println!(
        "x * x^-1 = {product}  (known through level {})",
        product.truncation()
    );

    // two variables, weight with a kernel: x2 sits at level 0
    let weight = WeightVector::new(vec![1, 0]);
    let y = LaurentPoly::parse("x2 + x1 x2^3", 2)?;
    println!(
        "({y})^-1 = {}",
        NovikovSeries::invert_polynomial(&y, &weight, 3)?
    );
    Ok(())
}
