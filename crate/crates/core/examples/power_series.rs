// Witt vectors as power series with constant term 1: γ turns Witt
// addition into multiplication of series.

use std::error::Error;

use wittkit::series_coords::{gamma, gamma_inverse};
use wittkit::{RingSpec, TruncationSet, WittVector};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let z = RingSpec::integers();
    let s = TruncationSet::initial_segment(6);
    let x = WittVector::from_ints(&z, &s, &[1, 0, -2, 1, 0, 3])?;
    let y = WittVector::from_ints(&z, &s, &[2, 1, 0, 0, -1, 1])?;
    let (gx, gy) = (gamma(&x, 6)?, gamma(&y, 6)?);
    out += &format!("γ(x) = {gx}\nγ(y) = {gy}\n");
    let sum = gamma(&x.add(&y)?, 6)?;
    assert_eq!(sum, gx.mul(&gy)?);
    out += &format!("γ(x + y) = γ(x)·γ(y) = {sum}\n");
    assert_eq!(gamma_inverse(&sum, 6)?, x.add(&y)?);
    out += &format!("recovered coordinates: {}\n", gamma_inverse(&sum, 6)?);
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
