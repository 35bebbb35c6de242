//! The rings `W_S(A)`.
//!
//! Arithmetic runs either by specializing universal polynomials (any base)
//! or on the ghost side followed by [`from_ghost`](GhostVector::to_witt)
//! (torsion-free bases). The two must agree wherever both apply.

pub mod raw;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use serde_json::{json, Map, Value as Json};

use crate::arith::divisors;
use crate::error::{Result, WittError};
use crate::ring::{Ring, RingElement, RingSpec, Value};
use crate::truncation::TruncationSet;
use crate::universal::{self, UnivPolyKey};

/// How Witt arithmetic is carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Ghost side on torsion-free bases, universal polynomials otherwise.
    /// For Δ this always means universal polynomials.
    #[default]
    Auto,
    Universal,
    Ghost,
}

/// An element of `W_S(A)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WittVector {
    ring: Ring,
    coords: Vec<Value>,
}

/// Ghost components `⟨w_n | n ∈ S⟩` of a Witt vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GhostVector {
    ring: Ring,
    values: Vec<Value>,
}

fn parts(ring: &Ring) -> (&Ring, &TruncationSet) {
    match &**ring {
        RingSpec::Witt { base, set } => (base, set),
        other => unreachable!("{other} is not a Witt ring"),
    }
}

fn check_values(base: &Ring, set: &TruncationSet, values: &[RingElement]) -> Result<Vec<Value>> {
    if values.len() != set.len() {
        return Err(WittError::InvalidInput(format!("{} coordinates for the set {set}", values.len())));
    }
    values
        .iter()
        .map(|v| {
            if v.ring() == base {
                Ok(v.value().clone())
            } else {
                Err(WittError::SpecMismatch(v.ring().to_string(), base.to_string()))
            }
        })
        .collect()
}

impl WittVector {
    pub fn new(base: &Ring, set: &TruncationSet, coords: &[RingElement]) -> Result<Self> {
        let values = check_values(base, set, coords)?;
        Ok(WittVector { ring: RingSpec::witt(base.clone(), set.clone())?, coords: values })
    }

    /// Convenience constructor from small integers mapped into `base`.
    pub fn from_ints(base: &Ring, set: &TruncationSet, coords: &[i64]) -> Result<Self> {
        let elems: Vec<RingElement> = coords.iter().map(|&k| RingElement::from_int(base, k)).collect();
        WittVector::new(base, set, &elems)
    }

    pub(crate) fn from_raw(ring: Ring, coords: Vec<Value>) -> Self {
        debug_assert!(ring.is_canonical(&Value::Witt(coords.clone())));
        WittVector { ring, coords }
    }

    pub fn zero(base: &Ring, set: &TruncationSet) -> Result<Self> {
        let ring = RingSpec::witt(base.clone(), set.clone())?;
        let coords = vec![base.zero(); set.len()];
        Ok(WittVector { ring, coords })
    }

    pub fn one(base: &Ring, set: &TruncationSet) -> Result<Self> {
        WittVector::from_int(base, set, 1)
    }

    /// `k·1`, the image of the integer `k`.
    pub fn from_int(base: &Ring, set: &TruncationSet, k: impl Into<BigInt>) -> Result<Self> {
        let ring = RingSpec::witt(base.clone(), set.clone())?;
        let coords = raw::witt_from_int(base, set, &k.into());
        Ok(WittVector { ring, coords })
    }

    /// Reads a vector back from an element of a Witt ring.
    pub fn from_element(x: &RingElement) -> Result<Self> {
        match (&**x.ring(), x.value()) {
            (RingSpec::Witt { .. }, Value::Witt(c)) => Ok(WittVector { ring: x.ring().clone(), coords: c.clone() }),
            _ => Err(WittError::InvalidInput(format!("{} is not a Witt ring", x.ring()))),
        }
    }

    pub fn to_element(&self) -> RingElement {
        RingElement::from_parts(self.ring.clone(), Value::Witt(self.coords.clone()))
    }

    /// The Witt ring `W_S(A)` this vector lives in.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn base(&self) -> &Ring {
        parts(&self.ring).0
    }

    pub fn set(&self) -> &TruncationSet {
        parts(&self.ring).1
    }

    pub fn values(&self) -> &[Value] {
        &self.coords
    }

    pub fn coords(&self) -> Vec<RingElement> {
        let base = self.base();
        self.coords.iter().map(|v| RingElement::from_parts(base.clone(), v.clone())).collect()
    }

    /// The coordinate `a_n`, if `n ∈ S`.
    pub fn coord(&self, n: u64) -> Option<RingElement> {
        let i = self.set().index_of(n)?;
        Some(RingElement::from_parts(self.base().clone(), self.coords[i].clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| self.base().is_zero(c))
    }

    fn check(&self, other: &WittVector) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(WittError::SpecMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    fn wrap(&self, coords: Vec<Value>) -> WittVector {
        WittVector { ring: self.ring.clone(), coords }
    }

    pub fn add(&self, other: &WittVector) -> Result<WittVector> {
        self.add_with(other, Strategy::Auto)
    }

    pub fn mul(&self, other: &WittVector) -> Result<WittVector> {
        self.mul_with(other, Strategy::Auto)
    }

    pub fn neg(&self) -> Result<WittVector> {
        self.neg_with(Strategy::Auto)
    }

    pub fn sub(&self, other: &WittVector) -> Result<WittVector> {
        self.add(&other.neg()?)
    }

    pub fn add_with(&self, other: &WittVector, s: Strategy) -> Result<WittVector> {
        self.check(other)?;
        Ok(self.wrap(raw::witt_add_with(self.base(), self.set(), &self.coords, &other.coords, s)?))
    }

    pub fn mul_with(&self, other: &WittVector, s: Strategy) -> Result<WittVector> {
        self.check(other)?;
        Ok(self.wrap(raw::witt_mul_with(self.base(), self.set(), &self.coords, &other.coords, s)?))
    }

    pub fn neg_with(&self, s: Strategy) -> Result<WittVector> {
        Ok(self.wrap(raw::witt_neg_with(self.base(), self.set(), &self.coords, s)?))
    }

    pub fn pow(&self, e: u64) -> WittVector {
        WittVector::from_element(&self.to_element().pow(e)).expect("Witt ring")
    }

    /// Multiplication by an integer, as `k·1` times `self`.
    pub fn mul_int(&self, k: impl Into<BigInt>) -> WittVector {
        WittVector::from_element(&self.to_element().mul_int(k)).expect("Witt ring")
    }

    /// Coordinates drawn with [`RingSpec::sample`].
    pub fn random<R: rand::Rng + ?Sized>(base: &Ring, set: &TruncationSet, rng: &mut R, bound: i64) -> Result<WittVector> {
        let ring = RingSpec::witt(base.clone(), set.clone())?;
        let coords = set.iter().map(|_| base.sample(rng, bound)).collect();
        Ok(WittVector::from_raw(ring, coords))
    }

    /// `x/n` on a torsion-free base; fails unless `x ∈ n·W_S(A)`.
    pub fn exact_div(&self, n: impl Into<BigInt>) -> Result<WittVector> {
        let coords = raw::witt_exact_div(self.base(), self.set(), &self.coords, &n.into())?;
        Ok(WittVector::from_raw(self.ring.clone(), coords))
    }

    pub fn ghost(&self) -> GhostVector {
        GhostVector { ring: self.ring.clone(), values: raw::ghost(self.base(), self.set(), &self.coords) }
    }

    /// Forgets the coordinates outside `t`.
    pub fn restrict(&self, t: &TruncationSet) -> Result<WittVector> {
        if !t.is_subset(self.set()) {
            return Err(WittError::NotSubset(t.to_string(), self.set().to_string()));
        }
        let coords = t.iter().map(|n| self.coords[self.set().index_of(n).expect("subset")].clone()).collect();
        Ok(WittVector { ring: RingSpec::witt(self.base().clone(), t.clone())?, coords })
    }

    /// `V_n`: the vector over `S` whose `nd`-th coordinate is `x_d`.
    pub fn verschiebung(n: u64, x: &WittVector, s: &TruncationSet) -> Result<WittVector> {
        let expected = s.quotient(n);
        if *x.set() != expected {
            return Err(WittError::SetMismatch { expected: expected.to_string(), found: x.set().to_string() });
        }
        let base = x.base();
        let coords = s
            .iter()
            .map(|m| match m % n {
                0 => x.coords[expected.index_of(m / n).expect("m/n ∈ S/n")].clone(),
                _ => base.zero(),
            })
            .collect();
        Ok(WittVector { ring: RingSpec::witt(base.clone(), s.clone())?, coords })
    }

    /// `F_n: W_S(A) → W_{S/n}(A)`.
    pub fn frobenius(&self, n: u64) -> Result<WittVector> {
        self.frobenius_with(n, Strategy::Auto)
    }

    pub fn frobenius_with(&self, n: u64, s: Strategy) -> Result<WittVector> {
        if n == 0 {
            return Err(WittError::InvalidInput("Frobenius index must be positive".into()));
        }
        let (base, set) = (self.base(), self.set());
        let target = set.quotient(n);
        if let Some(top) = target.largest() {
            universal::active().check(&UnivPolyKey::frobenius(n, top))?;
        }
        let ring = RingSpec::witt(base.clone(), target.clone())?;
        let use_ghost = match s {
            Strategy::Auto => base.is_torsion_free(),
            Strategy::Ghost => true,
            Strategy::Universal => false,
        };
        let coords = if use_ghost {
            let g: Vec<Value> = target.iter().map(|d| raw::ghost_at(base, set, &self.coords, n * d)).collect();
            raw::from_ghost(base, &target, &g)?
        } else {
            raw::eval_universal(base, set, &target, |d| UnivPolyKey::frobenius(n, d), &self.coords, None)?
        };
        Ok(WittVector { ring, coords })
    }

    /// The Teichmüller representative `[a]_S = (a, 0, 0, ...)`.
    pub fn teichmuller(a: &RingElement, s: &TruncationSet) -> Result<WittVector> {
        let base = a.ring();
        let mut coords = vec![base.zero(); s.len()];
        if let Some(first) = coords.first_mut() {
            *first = a.value().clone();
        }
        Ok(WittVector { ring: RingSpec::witt(base.clone(), s.clone())?, coords })
    }

    /// `Δ_e(x) ∈ W_{S/e}(A)`.
    pub fn delta_component(&self, e: u64) -> Result<WittVector> {
        self.delta_component_on(e, &self.set().quotient(e), Strategy::Auto)
    }

    fn delta_component_on(&self, e: u64, inner: &TruncationSet, s: Strategy) -> Result<WittVector> {
        let (base, set) = (self.base(), self.set());
        if e == 0 || !inner.is_subset(&set.quotient(e)) {
            return Err(WittError::NotSubset(inner.to_string(), set.quotient(e).to_string()));
        }
        if let Some(top) = inner.largest() {
            universal::active().check(&UnivPolyKey::delta(e, top))?;
        }
        let ring = RingSpec::witt(base.clone(), inner.clone())?;
        let coords = match s {
            Strategy::Ghost => raw::from_ghost(base, inner, &self.delta_ghosts(e, inner)?)?,
            _ => raw::eval_universal(base, set, inner, |n| UnivPolyKey::delta(e, n), &self.coords, None)?,
        };
        Ok(WittVector { ring, coords })
    }

    /// `w_n(Δ_e(x))` for `n ∈ inner`, by the recursion
    /// `Σ_{k|e} k·w_n(Δ_k(x))^{e/k} = w_{en}(x)`.
    fn delta_ghosts(&self, e: u64, inner: &TruncationSet) -> Result<Vec<Value>> {
        let (base, set) = (self.base(), self.set());
        if !base.is_torsion_free() {
            return Err(WittError::UnsupportedRing(base.to_string()));
        }
        inner
            .iter()
            .map(|n| {
                let mut g: Vec<(u64, Value)> = Vec::new();
                for k in divisors(e) {
                    let mut rest = raw::ghost_at(base, set, &self.coords, k * n);
                    for (j, gj) in &g {
                        if k % j == 0 {
                            rest = base.sub(&rest, &base.mul_int(&base.pow(gj, k / j), &BigInt::from(*j)));
                        }
                    }
                    g.push((k, base.exact_div(&rest, &BigInt::from(k))?));
                }
                Ok(g.pop().expect("e has divisors").1)
            })
            .collect()
    }

    /// `Δ(x) ∈ W_T(W_U(A))` with `U = {d : ed ∈ S for all e ∈ T}`, so that
    /// every component `Δ_e(x)` fits over the common inner set `U`.
    pub fn delta(&self, t: &TruncationSet) -> Result<WittVector> {
        self.delta_with(t, Strategy::Auto)
    }

    pub fn delta_with(&self, t: &TruncationSet, s: Strategy) -> Result<WittVector> {
        if !t.is_subset(self.set()) {
            return Err(WittError::NotSubset(t.to_string(), self.set().to_string()));
        }
        let inner = self.set().quotient_by_set(t);
        let inner_ring = RingSpec::witt(self.base().clone(), inner.clone())?;
        let coords = t
            .iter()
            .map(|e| Ok(Value::Witt(self.delta_component_on(e, &inner, s)?.coords)))
            .collect::<Result<Vec<_>>>()?;
        Ok(WittVector { ring: RingSpec::witt(inner_ring, t.clone())?, coords })
    }

    /// The counit `ε = w_1`, or applied coordinatewise `W(ε)`: for a vector
    /// over a Witt base, replaces every coordinate by its first coordinate.
    pub fn map_first_coordinate(&self) -> Result<WittVector> {
        let (inner_base, _) = match &**self.base() {
            RingSpec::Witt { base, set } => (base.clone(), set.clone()),
            other => return Err(WittError::InvalidInput(format!("{other} is not a Witt ring"))),
        };
        let coords = self
            .coords
            .iter()
            .map(|c| match c {
                Value::Witt(inner) => inner.first().cloned().unwrap_or_else(|| inner_base.zero()),
                _ => unreachable!("Witt coordinates"),
            })
            .collect();
        Ok(WittVector { ring: RingSpec::witt(inner_base, self.set().clone())?, coords })
    }

    /// Applies a ring map to every coordinate (the functoriality of `W`).
    pub fn map_coords(&self, target: &Ring, f: impl Fn(&RingElement) -> Result<RingElement>) -> Result<WittVector> {
        let coords = self
            .coords()
            .iter()
            .map(|c| {
                let y = f(c)?;
                if y.ring() != target {
                    return Err(WittError::SpecMismatch(y.ring().to_string(), target.to_string()));
                }
                Ok(y.into_value())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(WittVector { ring: RingSpec::witt(target.clone(), self.set().clone())?, coords })
    }

    /// For `b` over `A ⊕ A` with `b_n = (a_n, y_n)`, returns `a` and the
    /// module components `x_n = Σ_{d|n} a_d^{n/d-1}·y_d`, so that
    /// `b = in₁(a) + in₂(x)`.
    pub fn square_zero_split(&self) -> Result<(WittVector, Vec<RingElement>)> {
        let a_ring = match &**self.base() {
            RingSpec::SquareZero(a) => a.clone(),
            other => return Err(WittError::InvalidInput(format!("{other} is not a square-zero extension"))),
        };
        let set = self.set();
        let (a, y): (Vec<Value>, Vec<Value>) = self
            .coords
            .iter()
            .map(|c| match c {
                Value::Pair(a, y) => ((**a).clone(), (**y).clone()),
                _ => unreachable!("square-zero coordinates"),
            })
            .unzip();
        let x = set
            .iter()
            .map(|n| {
                let mut acc = a_ring.zero();
                for d in divisors(n) {
                    let i = set.index_of(d).expect("divisor-closed");
                    acc = a_ring.add(&acc, &a_ring.mul(&a_ring.pow(&a[i], n / d - 1), &y[i]));
                }
                RingElement::from_parts(a_ring.clone(), acc)
            })
            .collect();
        let a = WittVector { ring: RingSpec::witt(a_ring, set.clone())?, coords: a };
        Ok((a, x))
    }

    /// Inverse of [`square_zero_split`](Self::square_zero_split):
    /// `in₁(a) + in₂(x)` computed with Witt addition over `A ⊕ A`.
    pub fn square_zero_join(a: &WittVector, x: &[RingElement]) -> Result<WittVector> {
        let base = a.base();
        let sz = RingSpec::square_zero(base.clone());
        let set = a.set();
        let xs = check_values(base, set, x)?;
        let pair = |u: &Value, v: &Value| Value::Pair(Box::new(u.clone()), Box::new(v.clone()));
        let ring = RingSpec::witt(sz, set.clone())?;
        let left = WittVector { ring: ring.clone(), coords: a.coords.iter().map(|u| pair(u, &base.zero())).collect() };
        let right = WittVector { ring, coords: xs.iter().map(|v| pair(&base.zero(), v)).collect() };
        left.add(&right)
    }

    pub fn to_json(&self) -> Json {
        let mut coords = Map::new();
        for (n, v) in self.set().iter().zip(&self.coords) {
            coords.insert(n.to_string(), self.base().value_to_json(v));
        }
        json!({"set": self.set().members(), "base": self.base().to_string(), "coords": coords})
    }

    pub fn from_json(j: &Json) -> Result<WittVector> {
        let set: TruncationSet = serde_json::from_value(j.get("set").cloned().unwrap_or(Json::Null))
            .map_err(|e| WittError::parse(format!("bad \"set\": {e}")))?;
        let base = j.get("base").and_then(Json::as_str).ok_or_else(|| WittError::parse("missing \"base\""))?;
        let base = RingSpec::parse(base)?;
        let ring = RingSpec::witt(base, set)?;
        let value = ring.value_from_json(j.get("coords").ok_or_else(|| WittError::parse("missing \"coords\""))?)?;
        WittVector::from_element(&RingElement::new(ring, value)?)
    }
}

impl fmt::Display for WittVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_value(&Value::Witt(self.coords.clone())))
    }
}

impl GhostVector {
    pub fn new(base: &Ring, set: &TruncationSet, values: &[RingElement]) -> Result<Self> {
        let values = check_values(base, set, values)?;
        Ok(GhostVector { ring: RingSpec::witt(base.clone(), set.clone())?, values })
    }

    pub fn from_ints(base: &Ring, set: &TruncationSet, values: &[i64]) -> Result<Self> {
        let elems: Vec<RingElement> = values.iter().map(|&k| RingElement::from_int(base, k)).collect();
        GhostVector::new(base, set, &elems)
    }

    pub fn base(&self) -> &Ring {
        parts(&self.ring).0
    }

    pub fn set(&self) -> &TruncationSet {
        parts(&self.ring).1
    }

    pub fn values(&self) -> Vec<RingElement> {
        self.values.iter().map(|v| RingElement::from_parts(self.base().clone(), v.clone())).collect()
    }

    pub fn value(&self, n: u64) -> Option<RingElement> {
        let i = self.set().index_of(n)?;
        Some(RingElement::from_parts(self.base().clone(), self.values[i].clone()))
    }

    /// The unique Witt vector with these ghost components.
    pub fn to_witt(&self) -> Result<WittVector> {
        let coords = raw::from_ghost(self.base(), self.set(), &self.values)?;
        Ok(WittVector { ring: self.ring.clone(), coords })
    }

    pub fn to_json(&self) -> Json {
        let mut values = Map::new();
        for (n, v) in self.set().iter().zip(&self.values) {
            values.insert(n.to_string(), self.base().value_to_json(v));
        }
        json!({"set": self.set().members(), "base": self.base().to_string(), "ghost": values})
    }

    pub fn from_json(j: &Json) -> Result<GhostVector> {
        let set: TruncationSet = serde_json::from_value(j.get("set").cloned().unwrap_or(Json::Null))
            .map_err(|e| WittError::parse(format!("bad \"set\": {e}")))?;
        let base = j.get("base").and_then(Json::as_str).ok_or_else(|| WittError::parse("missing \"base\""))?;
        let ring = RingSpec::witt(RingSpec::parse(base)?, set)?;
        let key = if j.get("ghost").is_some() { "ghost" } else { "coords" };
        match ring.value_from_json(j.get(key).ok_or_else(|| WittError::parse("missing \"ghost\""))?)? {
            Value::Witt(values) => Ok(GhostVector { ring, values }),
            _ => unreachable!("Witt value"),
        }
    }
}

impl fmt::Display for GhostVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.base();
        let parts: Vec<String> = self.values.iter().map(|v| base.format_value(v)).collect();
        write!(f, "⟨{}⟩", parts.join(", "))
    }
}
