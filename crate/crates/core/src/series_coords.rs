//! The additive isomorphism `γ(a) = Π_n (1 - a_n t^n)^{-1}` between Witt
//! vectors and power series with constant term 1.

use crate::error::{Result, WittError};
use crate::ring::{Ring, RingElement, RingSpec, Value};
use crate::truncation::TruncationSet;
use crate::witt::WittVector;

fn series_parts(f: &RingElement) -> Result<(&Ring, usize, &[Value])> {
    match (&**f.ring(), f.value()) {
        (RingSpec::Series { base, precision }, Value::Series(c)) => Ok((base, *precision, c)),
        _ => Err(WittError::InvalidInput(format!("{} is not a series ring", f.ring()))),
    }
}

/// `Π_{n∈S} (1 - a_n t^n)^{-1}` modulo `t^{precision+1}`, as an element of
/// `series(A, precision + 1)`.
pub fn gamma(x: &WittVector, precision: usize) -> Result<RingElement> {
    let base = x.base();
    let ring = RingSpec::series(base.clone(), precision + 1)?;
    let mut acc = vec![base.zero(); precision + 1];
    acc[0] = base.one();
    for (n, a) in x.set().iter().zip(x.values()) {
        let n = n as usize;
        if base.is_zero(a) || n > precision {
            continue;
        }
        // multiply by the geometric series Σ_k a^k t^{nk}, in place from the top
        for i in (n..=precision).rev() {
            let mut term = base.zero();
            let mut power = base.one();
            let mut j = i;
            while j >= n {
                j -= n;
                power = base.mul(&power, a);
                term = base.add(&term, &base.mul(&power, &acc[j]));
            }
            acc[i] = base.add(&acc[i], &term);
        }
    }
    RingElement::new(ring, Value::Series(acc))
}

/// The unique `(a_1, ..., a_n)` with `γ(a) ≡ f` modulo `t^{n+1}`.
pub fn gamma_inverse(f: &RingElement, n: u64) -> Result<WittVector> {
    let (base, precision, coeffs) = series_parts(f)?;
    if coeffs[0] != base.one() {
        return Err(WittError::NotAUnit(f.to_string()));
    }
    if (n as usize) >= precision {
        return Err(WittError::InvalidInput(format!(
            "a series known modulo t^{precision} determines at most {} coordinates",
            precision - 1
        )));
    }
    let mut g = coeffs.to_vec();
    let mut out = Vec::with_capacity(n as usize);
    for k in 1..=n as usize {
        let a = g[k].clone();
        // g ← g·(1 - a t^k)
        for i in (k..precision).rev() {
            g[i] = base.sub(&g[i], &base.mul(&a, &g[i - k]));
        }
        out.push(RingElement::from_parts(base.clone(), a));
    }
    WittVector::new(base, &TruncationSet::initial_segment(n), &out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(base: &Ring, prec: usize, c: &[i64]) -> RingElement {
        let ring = RingSpec::series(base.clone(), prec).unwrap();
        let mut v: Vec<Value> = c.iter().map(|&k| base.from_i64(k)).collect();
        v.resize(prec, base.zero());
        RingElement::new(ring, Value::Series(v)).unwrap()
    }

    #[test]
    fn gamma_examples() {
        let z = RingSpec::integers();
        let s = TruncationSet::initial_segment(3);
        let c = WittVector::teichmuller(&RingElement::from_int(&z, 3), &s).unwrap();
        assert_eq!(gamma(&c, 3).unwrap(), series(&z, 4, &[1, 3, 9, 27]));
        assert_eq!(gamma(&WittVector::zero(&z, &s).unwrap(), 3).unwrap(), series(&z, 4, &[1]));
        let v2 = WittVector::from_ints(&z, &TruncationSet::initial_segment(2), &[0, 1]).unwrap();
        assert_eq!(gamma(&v2, 4).unwrap(), series(&z, 5, &[1, 0, 1, 0, 1]));
        assert_eq!(gamma(&v2, 4).unwrap().to_string(), "1 + 1*t^2 + 1*t^4 (mod t^5)");
    }

    #[test]
    fn gamma_inverse_examples() {
        let z = RingSpec::integers();
        let a = gamma_inverse(&series(&z, 3, &[1, 1]), 2).unwrap();
        assert_eq!(a, WittVector::from_ints(&z, &TruncationSet::initial_segment(2), &[1, -1]).unwrap());
        let zero = gamma_inverse(&series(&z, 5, &[1]), 4).unwrap();
        assert!(zero.is_zero());
        assert!(matches!(gamma_inverse(&series(&z, 3, &[2, 1]), 2), Err(WittError::NotAUnit(_))));
        assert!(gamma_inverse(&series(&z, 3, &[1]), 3).is_err());
    }
}
