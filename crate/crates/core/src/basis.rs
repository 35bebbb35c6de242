//! `W_S(Z)` in the basis `V_n([1]_{S/n})`, `n ∈ S`.
//!
//! Addition is coordinatewise in this basis; multiplication uses
//! `V_m·V_n = gcd(m,n)·V_lcm(m,n)`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value as Json};

use crate::arith::{divisors, gcd, lcm, primes};
use crate::error::{Result, WittError};
use crate::ring::json::{int_from_json, int_to_json};
use crate::ring::{RingElement, RingSpec, Value};
use crate::truncation::TruncationSet;
use crate::witt::WittVector;

/// `Σ c_n·V_n([1]_{S/n})`, coefficients aligned with the members of `S`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisWittInt {
    set: TruncationSet,
    coeffs: Vec<BigInt>,
}

impl BasisWittInt {
    pub fn new(set: &TruncationSet, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != set.len() {
            return Err(WittError::InvalidInput(format!("{} coefficients for the set {set}", coeffs.len())));
        }
        Ok(BasisWittInt { set: set.clone(), coeffs })
    }

    pub fn from_ints(set: &TruncationSet, coeffs: &[i64]) -> Result<Self> {
        BasisWittInt::new(set, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds an element from `(n, c_n)` pairs; unlisted coefficients are 0.
    pub fn from_terms(set: &TruncationSet, terms: &[(u64, i64)]) -> Result<Self> {
        let mut x = BasisWittInt::zero(set);
        for &(n, c) in terms {
            let i = set.index_of(n).ok_or_else(|| WittError::InvalidInput(format!("V{n} is outside {set}")))?;
            x.coeffs[i] += c;
        }
        Ok(x)
    }

    pub fn zero(set: &TruncationSet) -> Self {
        BasisWittInt { set: set.clone(), coeffs: vec![BigInt::zero(); set.len()] }
    }

    /// `[1] = V_1([1])`, or zero on the empty set.
    pub fn one(set: &TruncationSet) -> Self {
        BasisWittInt::generator(set, 1)
    }

    /// `V_n([1]_{S/n})`, zero when `n ∉ S`.
    pub fn generator(set: &TruncationSet, n: u64) -> Self {
        let mut x = BasisWittInt::zero(set);
        if let Some(i) = set.index_of(n) {
            x.coeffs[i] = BigInt::one();
        }
        x
    }

    pub fn set(&self) -> &TruncationSet {
        &self.set
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: u64) -> BigInt {
        self.set.index_of(n).map(|i| self.coeffs[i].clone()).unwrap_or_default()
    }

    /// Nonzero `(n, c_n)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.set.iter().zip(&self.coeffs).filter(|(_, c)| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &BasisWittInt) -> Result<()> {
        if self.set == other.set {
            Ok(())
        } else {
            Err(WittError::SetMismatch { expected: self.set.to_string(), found: other.set.to_string() })
        }
    }

    pub fn add(&self, other: &BasisWittInt) -> Result<BasisWittInt> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(BasisWittInt { set: self.set.clone(), coeffs })
    }

    pub fn sub(&self, other: &BasisWittInt) -> Result<BasisWittInt> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BasisWittInt {
        BasisWittInt { set: self.set.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> BasisWittInt {
        BasisWittInt { set: self.set.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Bilinear extension of `V_m·V_n = gcd(m,n)·V_lcm(m,n)`.
    pub fn mul(&self, other: &BasisWittInt) -> Result<BasisWittInt> {
        self.check(other)?;
        let mut out = BasisWittInt::zero(&self.set);
        for (m, a) in self.terms() {
            for (n, b) in other.terms() {
                if let Some(i) = self.set.index_of(lcm(m, n)) {
                    out.coeffs[i] += a * b * BigInt::from(gcd(m, n));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> BasisWittInt {
        let mut result = BasisWittInt::one(&self.set);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same set");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same set");
            }
        }
        result
    }

    /// Ghost components `w_m = Σ_{n|m} n·c_n`.
    pub fn ghost(&self) -> Vec<BigInt> {
        self.set
            .iter()
            .map(|m| divisors(m).into_iter().map(|n| BigInt::from(n) * self.coeff(n)).sum())
            .collect()
    }

    /// Inverse of [`ghost`](Self::ghost); fails if some division is inexact.
    pub fn from_ghost(set: &TruncationSet, ghost: &[BigInt]) -> Result<BasisWittInt> {
        let mut out = BasisWittInt::zero(set);
        for (i, m) in set.iter().enumerate() {
            let mut rest = ghost[i].clone();
            for n in divisors(m).into_iter().filter(|&n| n < m) {
                rest -= BigInt::from(n) * out.coeff(n);
            }
            let (q, r) = rest.div_rem(&BigInt::from(m));
            if !r.is_zero() {
                return Err(WittError::NotDivisible { value: rest.to_string(), divisor: m.to_string() });
            }
            out.coeffs[i] = q;
        }
        Ok(out)
    }

    /// Coordinate form in `W_S(Z)`.
    pub fn to_coords(&self) -> Result<WittVector> {
        let z = RingSpec::integers();
        let ghost: Vec<RingElement> = self.ghost().into_iter().map(|g| RingElement::from_int(&z, g)).collect();
        crate::witt::GhostVector::new(&z, &self.set, &ghost)?.to_witt()
    }

    pub fn from_coords(x: &WittVector) -> Result<BasisWittInt> {
        if **x.base() != RingSpec::Integers {
            return Err(WittError::UnsupportedRing(x.base().to_string()));
        }
        let ghost: Vec<BigInt> = x
            .ghost()
            .values()
            .iter()
            .map(|g| match g.value() {
                Value::Int(k) => k.clone(),
                _ => unreachable!("integer ghost"),
            })
            .collect();
        BasisWittInt::from_ghost(x.set(), &ghost)
    }

    /// `F_m: W_S → W_{S/m}`, `F_m V_n = gcd(m,n)·V_{n/gcd(m,n)}`.
    pub fn frobenius(&self, m: u64) -> BasisWittInt {
        let target = self.set.quotient(m);
        let mut out = BasisWittInt::zero(&target);
        for (n, c) in self.terms() {
            let g = gcd(m, n);
            if let Some(i) = target.index_of(n / g) {
                out.coeffs[i] += c * BigInt::from(g);
            }
        }
        out
    }

    /// `V_m: W_{S/m} → W_S`, `V_m V_n = V_{mn}`.
    pub fn verschiebung(&self, m: u64, s: &TruncationSet) -> Result<BasisWittInt> {
        let expected = s.quotient(m);
        if self.set != expected {
            return Err(WittError::SetMismatch { expected: expected.to_string(), found: self.set.to_string() });
        }
        let mut out = BasisWittInt::zero(s);
        for (n, c) in self.terms() {
            let i = s.index_of(m * n).expect("mn ∈ S for n ∈ S/m");
            out.coeffs[i] = c.clone();
        }
        Ok(out)
    }

    /// Drops the basis vectors outside `t`.
    pub fn restrict(&self, t: &TruncationSet) -> Result<BasisWittInt> {
        if !t.is_subset(&self.set) {
            return Err(WittError::NotSubset(t.to_string(), self.set.to_string()));
        }
        Ok(BasisWittInt { set: t.clone(), coeffs: t.iter().map(|n| self.coeff(n)).collect() })
    }

    pub fn to_json(&self) -> Json {
        let mut coeffs = Map::new();
        for (n, c) in self.set.iter().zip(&self.coeffs) {
            coeffs.insert(n.to_string(), int_to_json(c));
        }
        json!({"set": self.set.members(), "coeffs": coeffs})
    }

    pub fn from_json(j: &Json) -> Result<BasisWittInt> {
        let set: TruncationSet = serde_json::from_value(j.get("set").cloned().unwrap_or(Json::Null))
            .map_err(|e| WittError::parse(format!("bad \"set\": {e}")))?;
        let obj = j.get("coeffs").and_then(Json::as_object).ok_or_else(|| WittError::parse("missing \"coeffs\""))?;
        let mut out = BasisWittInt::zero(&set);
        for (k, v) in obj {
            let n: u64 = k.parse().map_err(|_| WittError::parse(format!("bad index {k:?}")))?;
            let i = set.index_of(n).ok_or_else(|| WittError::parse(format!("index {n} outside {set}")))?;
            out.coeffs[i] = int_from_json(v)?;
        }
        Ok(out)
    }
}

impl fmt::Display for BasisWittInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms().map(|(n, c)| format!("{c}·V{n}")).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// The Möbius function.
pub fn mobius(d: u64) -> i8 {
    assert!(d >= 1, "mobius is defined on positive integers");
    let factors = primes().factor(d);
    if factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Necklace number `(1/n)·Σ_{d|n} μ(d)·m^{n/d}`.
pub fn necklace(m: &BigInt, n: u64) -> BigInt {
    let total: BigInt = divisors(n)
        .into_iter()
        .map(|d| BigInt::from(mobius(d)) * num_traits::pow(m.clone(), (n / d) as usize))
        .sum();
    let (q, r) = total.div_rem(&BigInt::from(n));
    assert!(r.is_zero(), "necklace sum not divisible by {n}");
    q
}

/// `[m]_S` in the V-basis: the coefficient of `V_n` is the necklace number.
pub fn teich_basis(m: impl Into<BigInt>, s: &TruncationSet) -> BasisWittInt {
    let m = m.into();
    BasisWittInt { set: s.clone(), coeffs: s.iter().map(|n| necklace(&m, n)).collect() }
}

/// `Σ a·db` with no relations imposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalOneForm {
    set: TruncationSet,
    terms: Vec<(BasisWittInt, BasisWittInt)>,
}

impl FormalOneForm {
    pub fn new(set: &TruncationSet, terms: Vec<(BasisWittInt, BasisWittInt)>) -> Result<Self> {
        for (a, b) in &terms {
            for x in [a, b] {
                if x.set() != set {
                    return Err(WittError::SetMismatch { expected: set.to_string(), found: x.set().to_string() });
                }
            }
        }
        Ok(FormalOneForm { set: set.clone(), terms })
    }

    /// `a·db`.
    pub fn term(a: &BasisWittInt, b: &BasisWittInt) -> Result<Self> {
        FormalOneForm::new(a.set(), vec![(a.clone(), b.clone())])
    }

    pub fn set(&self) -> &TruncationSet {
        &self.set
    }

    pub fn terms(&self) -> &[(BasisWittInt, BasisWittInt)] {
        &self.terms
    }
}

impl fmt::Display for FormalOneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(a, b)| format!("({a})·d({b})")).collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `F_n(a·db) = F_n(a)·Σ_{e|n} Δ_e(b)^{n/e-1}·dΔ_e(b)`, over `S/n`.
pub fn divided_frobenius_form(n: u64, omega: &FormalOneForm) -> Result<FormalOneForm> {
    if n == 0 {
        return Err(WittError::InvalidInput("Frobenius index must be positive".into()));
    }
    let target = omega.set.quotient(n);
    let mut terms = Vec::new();
    for (a, b) in &omega.terms {
        let fa = a.frobenius(n);
        let b_coords = b.to_coords()?;
        for e in divisors(n) {
            let delta = b_coords.delta_component(e)?.restrict(&target)?;
            let delta = BasisWittInt::from_coords(&delta)?;
            let coefficient = fa.mul(&delta.pow(n / e - 1))?;
            terms.push((coefficient, delta));
        }
    }
    FormalOneForm::new(&target, terms)
}
