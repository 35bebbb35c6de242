// W_S(Z) in the basis V_n([1]). The coordinates of a Teichmüller
// representative [q] are the necklace numbers, which count monic
// irreducible polynomials over F_q.

use std::error::Error;

use wittkit::basis::necklace;
use wittkit::{teich_basis, BasisWittInt, RingElement, RingSpec, TruncationSet, WittVector};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let s = TruncationSet::initial_segment(8);
    for q in 2..=5 {
        out += &format!("[{q}] = {}\n", teich_basis(q, &s));
    }
    let counts: Vec<String> = (1..=8).map(|n| necklace(&2.into(), n).to_string()).collect();
    out += &format!("irreducibles over F_2 by degree: {}\n", counts.join(", "));

    // the basis agrees with Witt coordinates
    let z = RingSpec::integers();
    let seven = WittVector::teichmuller(&RingElement::from_int(&z, 7), &s)?;
    assert_eq!(BasisWittInt::from_coords(&seven)?, teich_basis(7, &s));

    // products of basis elements: V_m·V_n = gcd(m,n)·V_lcm(m,n)
    let d12 = TruncationSet::divisors_of(12);
    let (v4, v6) = (BasisWittInt::generator(&d12, 4), BasisWittInt::generator(&d12, 6));
    out += &format!("V4 * V6 = {}\n", v4.mul(&v6)?);
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
