// The comonad structure Δ: W_S(A) → W_T(W_{S/T}(A)) and its laws.

use std::error::Error;

use wittkit::laws::{check_comonad, coassociativity_sides};
use wittkit::{RingElement, RingSpec, TruncationSet, WittVector};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let z = RingSpec::integers();
    let s = TruncationSet::divisors_of(4);
    let t = TruncationSet::divisors_of(2);
    let x = WittVector::from_ints(&z, &s, &[1, 2, 3])?;
    let d = x.delta(&t)?;
    out += &format!("Δ({x}) = {d}\n");

    // Δ([a]) = [[a]]
    let a = RingElement::from_int(&z, 3);
    let teich = WittVector::teichmuller(&a, &s)?;
    let inner = WittVector::teichmuller(&a, &s.quotient_by_set(&t))?;
    let nested = WittVector::teichmuller(&inner.to_element(), &t)?;
    assert_eq!(teich.delta(&t)?, nested);

    let (lhs, rhs) = coassociativity_sides(&x, &t, &TruncationSet::divisors_of(1))?;
    assert_eq!(lhs, rhs);

    let report = check_comonad(&s, &t, &z, 20, 1)?;
    out += &format!("{report}\n");
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
