// Splitting big Witt vectors into p-typical pieces when the integers
// prime to p are invertible, and the ring isomorphism W_n(F_p) ≅ Z/p^n.

use std::error::Error;

use wittkit::ptypical::{decompose, idempotents, reassemble, tau_iso};
use wittkit::{RingSpec, TruncationSet, WittVector};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let q = RingSpec::rationals();
    let s = TruncationSet::divisors_of(12);
    for (k, e) in idempotents(&s, 2, &q)? {
        out += &format!("e_{k} has ghost {}\n", e.ghost());
    }
    let x = WittVector::from_ints(&q, &s, &[1, -1, 2, 0, 3, 1])?;
    let parts = decompose(&x, 2)?;
    for (k, y) in &parts {
        out += &format!("component {k} over {}: {y}\n", y.set());
    }
    assert_eq!(reassemble(&s, 2, &q, &parts)?, x);

    let tau = tau_iso(3, 2)?;
    tau.verify()?;
    let table: Vec<String> = (0..9).map(|k| format!("{k}↦{}", tau.forward(k))).collect();
    out += &format!("W_2(F_3): {}\n", table.join(" "));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
