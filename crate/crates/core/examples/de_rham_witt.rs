// The big de Rham-Witt complex of Z: products of V_m and dV_n, the
// operators d, F and V, and dlog[-1].

use std::error::Error;

use wittkit::drw::{DrwElement, DrwZ};
use wittkit::TruncationSet;

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let s = TruncationSet::divisors_of(12);
    let z = DrwZ::new();
    let (v2, dv3, dv2) = (DrwElement::v(&s, 2), DrwElement::dv(&s, 3), DrwElement::dv(&s, 2));
    out += &format!("V2 · dV3 = {}\n", z.mul(&v2, &dv3)?.short());
    out += &format!("V2 · dV2 = {}\n", z.mul(&v2, &dv2)?.short());
    out += &format!("F3(dV6) = {}\n", z.frobenius(3, &DrwElement::dv(&s, 6)).short());
    out += &format!("d(5·V4) = {}\n", z.d(&DrwElement::v(&s, 4).scale(&5.into())).short());
    out += &format!("dlog[-1] = {}\n", DrwElement::dlog_minus_one(&s).short());
    // d∘d = 0 and dV_n is n-torsion
    assert!(z.d(&z.d(&v2)).is_zero());
    assert!(dv3.scale(&3.into()).is_zero());
    for entry in z.table(&TruncationSet::divisors_of(4))?.iter().take(6) {
        out += &format!("  {entry}\n");
    }
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
