//! `p`-typical decomposition and `W_n(F_p) ≅ Z/p^n`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::is_prime;
use crate::error::{Result, WittError};
use crate::ring::{Ring, RingElement, RingSpec, Value};
use crate::truncation::TruncationSet;
use crate::witt::WittVector;

/// Default bound on `p^n` for exhaustive enumeration.
pub const DEFAULT_TAU_BUDGET: u64 = 10_000;

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(WittError::NotPrime(p))
    }
}

/// `I(S)`: the members of `S` prime to `p`.
pub fn prime_to_p(s: &TruncationSet, p: u64) -> Vec<u64> {
    s.iter().filter(|k| k % p != 0).collect()
}

/// `S ∩ P`, the powers of `p` in `S`.
pub fn p_part(s: &TruncationSet, p: u64) -> TruncationSet {
    TruncationSet::new(s.iter().filter(|&n| is_power_of(n, p)).collect()).expect("powers of p are divisor-closed")
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn rational(k: u64) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(k))
}

/// `(1/k)·V_k([1]_{S/k})` in `W_S(Q)`.
fn scaled_generator(s: &TruncationSet, k: u64) -> Result<WittVector> {
    let q = RingSpec::rationals();
    if !s.contains(k) {
        return WittVector::zero(&q, s);
    }
    let v = WittVector::verschiebung(k, &WittVector::one(&q, &s.quotient(k))?, s)?;
    inverse_of(s, k)?.mul(&v)
}

/// `1/k` as an element of `W_S(Q)`.
fn inverse_of(s: &TruncationSet, k: u64) -> Result<WittVector> {
    let ring = RingSpec::witt(RingSpec::rationals(), s.clone())?;
    WittVector::from_element(&RingElement::new(ring.clone(), ring.from_rational(&rational(k))?)?)
}

fn push_forward(x: &WittVector, base: &Ring) -> Result<WittVector> {
    x.map_coords(base, |c| match c.value() {
        Value::Rat(r) => Ok(RingElement::from_parts(base.clone(), base.from_rational(r)?)),
        _ => unreachable!("rational coordinates"),
    })
}

fn check_invertible(s: &TruncationSet, p: u64, base: &Ring) -> Result<()> {
    for k in prime_to_p(s, p) {
        if base.from_rational(&rational(k)).is_err() {
            return Err(WittError::NotInvertible(k.to_string(), base.to_string()));
        }
    }
    Ok(())
}

/// The orthogonal idempotents `e_k`, `k ∈ I(S)`, built as the product
/// `Π_{l ∈ I(S)∖{1}} ((1/k)V_k([1]) - (1/kl)V_{kl}([1]))` in `W_S(Q)` and
/// pushed forward to `base`.
pub fn idempotents(s: &TruncationSet, p: u64, base: &Ring) -> Result<BTreeMap<u64, WittVector>> {
    check_prime(p)?;
    check_invertible(s, p, base)?;
    let q = RingSpec::rationals();
    let units = prime_to_p(s, p);
    let mut out = BTreeMap::new();
    for &k in &units {
        let mut e = WittVector::one(&q, s)?;
        for &l in units.iter().filter(|&&l| l != 1) {
            let factor = scaled_generator(s, k)?.sub(&scaled_generator(s, k * l)?)?;
            e = e.mul(&factor)?;
        }
        out.insert(k, push_forward(&e, base)?);
    }
    Ok(out)
}

/// The target `S/k ∩ P` of the `k`-th projection.
pub fn component_set(s: &TruncationSet, p: u64, k: u64) -> TruncationSet {
    p_part(&s.quotient(k), p)
}

/// `R ∘ F_k (x·e_k)`, the `k`-th `p`-typical component of `x`.
pub fn ptypical_projection(k: u64, x: &WittVector, p: u64) -> Result<WittVector> {
    let s = x.set();
    if k % p == 0 || !s.contains(k) {
        return Err(WittError::InvalidInput(format!("{k} is not in I(S) for S = {s}, p = {p}")));
    }
    let e = idempotents(s, p, x.base())?.remove(&k).expect("k ∈ I(S)");
    x.mul(&e)?.frobenius(k)?.restrict(&component_set(s, p, k))
}

/// All components, keyed by `k ∈ I(S)`.
pub fn decompose(x: &WittVector, p: u64) -> Result<BTreeMap<u64, WittVector>> {
    let s = x.set();
    let es = idempotents(s, p, x.base())?;
    es.iter()
        .map(|(&k, e)| Ok((k, x.mul(e)?.frobenius(k)?.restrict(&component_set(s, p, k))?)))
        .collect()
}

/// Inverse of [`decompose`]: `Σ_k e_k·(1/k)·V_k(σ(y_k))`, where `σ` pads
/// with zero coordinates.
pub fn reassemble(s: &TruncationSet, p: u64, base: &Ring, parts: &BTreeMap<u64, WittVector>) -> Result<WittVector> {
    let es = idempotents(s, p, base)?;
    let mut total = WittVector::zero(base, s)?;
    for (k, e) in &es {
        let y = parts.get(k).ok_or_else(|| WittError::InvalidInput(format!("missing component {k}")))?;
        let expected = component_set(s, p, *k);
        if *y.set() != expected {
            return Err(WittError::SetMismatch { expected: expected.to_string(), found: y.set().to_string() });
        }
        let full = s.quotient(*k);
        let padded: Vec<RingElement> = full
            .iter()
            .map(|n| y.coord(n).unwrap_or_else(|| RingElement::zero(base)))
            .collect();
        let padded = WittVector::new(base, &full, &padded)?;
        let inv_k = push_forward(&inverse_of(s, *k)?, base)?;
        let term = e.mul(&inv_k)?.mul(&WittVector::verschiebung(*k, &padded, s)?)?;
        total = total.add(&term)?;
    }
    Ok(total)
}

/// The bijection `Z/p^n → W_n(F_p)`, `k ↦ k·[1]`, with its inverse table.
#[derive(Debug, Clone)]
pub struct TauIso {
    p: u64,
    n: u32,
    forward: Vec<WittVector>,
    inverse: HashMap<WittVector, u64>,
}

impl TauIso {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.forward.len() as u64
    }

    /// `W_n(F_p)` as a ring.
    pub fn witt_ring(&self) -> &Ring {
        self.forward[0].ring()
    }

    pub fn forward(&self, k: i64) -> &WittVector {
        let m = self.modulus() as i64;
        &self.forward[k.rem_euclid(m) as usize]
    }

    pub fn inverse(&self, w: &WittVector) -> Option<u64> {
        self.inverse.get(w).copied()
    }

    /// All elements of `W_n(F_p)`, in the order of their preimages.
    pub fn elements(&self) -> &[WittVector] {
        &self.forward
    }

    /// Checks that the table is a ring isomorphism, exhaustively.
    pub fn verify(&self) -> Result<()> {
        let m = self.modulus();
        if self.inverse.len() as u64 != m {
            return Err(WittError::InvalidInput(format!("{m} residues map to {} vectors", self.inverse.len())));
        }
        let fail = |what: &str, a: u64, b: u64| Err(WittError::InvalidInput(format!("tau fails {what} at ({a}, {b})")));
        for a in 0..m {
            for b in 0..m {
                let (x, y) = (&self.forward[a as usize], &self.forward[b as usize]);
                if x.add(y)? != self.forward[((a + b) % m) as usize] {
                    return fail("additivity", a, b);
                }
                if x.mul(y)? != self.forward[((a * b) % m) as usize] {
                    return fail("multiplicativity", a, b);
                }
            }
        }
        Ok(())
    }
}

/// Builds `τ: Z/p^n ≅ W_n(F_p)` by repeated Witt addition of `[1]`.
pub fn tau_iso(p: u64, n: u32) -> Result<TauIso> {
    tau_iso_with_budget(p, n, DEFAULT_TAU_BUDGET)
}

pub fn tau_iso_with_budget(p: u64, n: u32, budget: u64) -> Result<TauIso> {
    check_prime(p)?;
    let size = p.checked_pow(n).filter(|&s| s <= budget).ok_or(WittError::BudgetExceeded(
        p.saturating_pow(n),
        budget,
    ))?;
    let fp = RingSpec::integers_mod(p)?;
    let s = TruncationSet::p_typical(p, n)?;
    let one = WittVector::one(&fp, &s)?;
    let mut forward = Vec::with_capacity(size as usize);
    let mut acc = WittVector::zero(&fp, &s)?;
    for _ in 0..size {
        forward.push(acc.clone());
        acc = acc.add(&one)?;
    }
    let inverse = forward.iter().enumerate().map(|(k, w)| (w.clone(), k as u64)).collect();
    Ok(TauIso { p, n, forward, inverse })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn idempotent_ghosts_are_indicators() {
        let s = TruncationSet::divisors_of(12);
        let q = RingSpec::rationals();
        for p in [2, 3] {
            let es = idempotents(&s, p, &q).unwrap();
            for (k, e) in &es {
                for (n, g) in s.iter().zip(e.ghost().values()) {
                    let expected = i64::from(n % k == 0 && is_power_of(n / k, p));
                    assert_eq!(g, RingElement::from_int(&q, expected), "p={p} k={k} n={n}");
                }
            }
        }
        let trivial = idempotents(&TruncationSet::divisors_of(1), 2, &q).unwrap();
        assert_eq!(trivial[&1], WittVector::one(&q, &TruncationSet::divisors_of(1)).unwrap());
    }

    #[test]
    fn not_invertible() {
        let s = TruncationSet::divisors_of(6);
        assert!(matches!(idempotents(&s, 2, &RingSpec::integers()), Err(WittError::NotInvertible(..))));
        assert!(idempotents(&s, 2, &RingSpec::integers_mod(4).unwrap()).is_ok());
        assert!(matches!(idempotents(&s, 4, &RingSpec::rationals()), Err(WittError::NotPrime(4))));
    }

    #[test]
    fn unit_projects_to_unit() {
        let s = TruncationSet::divisors_of(12);
        let q = RingSpec::rationals();
        let parts = decompose(&WittVector::one(&q, &s).unwrap(), 2).unwrap();
        for (k, y) in &parts {
            assert_eq!(*y, WittVector::one(&q, &component_set(&s, 2, *k)).unwrap());
        }
        assert_eq!(reassemble(&s, 2, &q, &parts).unwrap(), WittVector::one(&q, &s).unwrap());
    }

    #[test]
    fn component_lengths_for_initial_segments() {
        let s = TruncationSet::initial_segment(10);
        for k in prime_to_p(&s, 2) {
            let len = component_set(&s, 2, k).len() as u32;
            assert!(2u64.pow(len - 1) * k <= 10 && 10 < 2u64.pow(len) * k);
        }
    }

    #[test]
    fn tau_examples() {
        let t = tau_iso(2, 2).unwrap();
        let f2 = RingSpec::integers_mod(2).unwrap();
        let s = TruncationSet::p_typical(2, 2).unwrap();
        assert_eq!(*t.forward(2), WittVector::from_ints(&f2, &s, &[0, 1]).unwrap());
        assert_eq!(*t.forward(3), WittVector::from_ints(&f2, &s, &[1, 1]).unwrap());
        assert!(t.forward(0).is_zero());
        t.verify().unwrap();
        assert!(matches!(tau_iso(2, 14), Err(WittError::BudgetExceeded(16384, 10000))));
        assert!(matches!(tau_iso(6, 1), Err(WittError::NotPrime(6))));
    }
}
