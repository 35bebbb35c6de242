// Running the law suites, and watching them catch seeded defects.

use std::error::Error;

use wittkit::drw::{DrwZ, Mutation};
use wittkit::laws::{check_ring_laws, check_witt_complex, mutated_cache, PolyMutation};
use wittkit::universal::with_cache;
use wittkit::{RingSpec, TruncationSet};

pub fn run_example() -> Result<String, Box<dyn Error>> {
    let mut out = String::new();
    let s = TruncationSet::divisors_of(12);
    let report = check_witt_complex(&DrwZ::new(), &s, 20, 7);
    out += &format!("faithful: {} laws, {} checks, passed = {}\n", report.laws.len(), report.total_checks(), report.passed());

    for m in [Mutation::CurlyZero, Mutation::WrongCrt] {
        let report = check_witt_complex(&DrwZ::mutated(m), &s, 20, 7);
        let caught: Vec<&str> = report.failures().map(|l| l.law.as_str()).collect();
        out += &format!("{m:?}: caught by {}\n", caught.join(", "));
    }

    let z = RingSpec::integers();
    let report = with_cache(mutated_cache(PolyMutation::DropS2CrossTerm), || check_ring_laws(&TruncationSet::divisors_of(2), &z, 10, 7))?;
    let caught: Vec<&str> = report.failures().map(|l| l.law.as_str()).collect();
    out += &format!("s_2 without -a1·b1: caught by {}\n", caught.join(", "));
    Ok(out)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    print!("{}", run_example()?);
    Ok(())
}
