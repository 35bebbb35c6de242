// Big Witt vector arithmetic over several coefficient rings, the ghost map,
// Teichmüller representatives, Frobenius and Verschiebung.

use std::error::Error;

use wittkit::{RingElement, RingSpec, Strategy, TruncationSet, WittVector};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let s = TruncationSet::divisors_of(6);
    let z = RingSpec::integers();

    let x = WittVector::from_ints(&z, &s, &[1, 2, -1, 3])?;
    let y = WittVector::from_ints(&z, &s, &[2, 0, 1, -1])?;
    out += &format!("S = {s}\nx = {x}\ny = {y}\n");
    out += &format!("x + y = {}\nx * y = {}\n", x.add(&y)?, x.mul(&y)?);
    out += &format!("ghost(x) = {}\n", x.ghost());

    // the ghost map is a ring map: compare componentwise
    let (gx, gy, gp) = (x.ghost(), y.ghost(), x.mul(&y)?.ghost());
    for n in s.iter() {
        assert_eq!(gp.value(n), gx.value(n).unwrap().mul(&gy.value(n).unwrap()).ok());
    }

    // both strategies agree on a torsion-free base
    assert_eq!(x.mul_with(&y, Strategy::Ghost)?, x.mul_with(&y, Strategy::Universal)?);

    // over Z/8 only the universal polynomials apply
    let z8 = RingSpec::integers_mod(8)?;
    let a = WittVector::from_ints(&z8, &s, &[3, 5, 7, 1])?;
    out += &format!("over Z/8: a + a = {}\n", a.add(&a)?);

    let two = WittVector::teichmuller(&RingElement::from_int(&z, 2), &s)?;
    out += &format!("[2] = {two}, ghost {}\n", two.ghost());
    out += &format!("F_2(x) = {}\n", x.frobenius(2)?);
    let v = WittVector::verschiebung(3, &WittVector::one(&z, &s.quotient(3))?, &s)?;
    out += &format!("V_3(1) = {v}\n");
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
