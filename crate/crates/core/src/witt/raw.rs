//! Coordinate-level Witt arithmetic on bare [`Value`] slices.
//!
//! These functions trust their inputs (coordinates aligned with `set`,
//! canonical in `base`) and skip the ceiling check; the typed API in
//! [`super`] validates before delegating here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::Strategy;
use crate::arith::divisors;
use crate::error::{Result, WittError};
use crate::ring::{RingSpec, Value};
use crate::truncation::TruncationSet;
use crate::universal::{self, eval_raw, Family, PowerTable, UnivPolyKey, Var};

/// `w_n = Σ_{d|n} d·a_d^{n/d}` for every `n ∈ S`.
pub fn ghost(base: &RingSpec, set: &TruncationSet, coords: &[Value]) -> Vec<Value> {
    set.iter().map(|n| ghost_at(base, set, coords, n)).collect()
}

pub(crate) fn ghost_at(base: &RingSpec, set: &TruncationSet, coords: &[Value], n: u64) -> Value {
    let mut acc = base.zero();
    for d in divisors(n) {
        let a = &coords[set.index_of(d).expect("divisor-closed")];
        if base.is_zero(a) {
            continue;
        }
        acc = base.add(&acc, &base.mul_int(&base.pow(a, n / d), &BigInt::from(d)));
    }
    acc
}

/// Inverts the ghost map by the divisor recursion. Needs a torsion-free base.
pub fn from_ghost(base: &RingSpec, set: &TruncationSet, ghosts: &[Value]) -> Result<Vec<Value>> {
    if !base.is_torsion_free() {
        return Err(WittError::UnsupportedRing(base.to_string()));
    }
    let mut coords: Vec<Value> = Vec::with_capacity(set.len());
    for (i, n) in set.iter().enumerate() {
        let mut rest = ghosts[i].clone();
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            let a = &coords[set.index_of(d).expect("divisor-closed")];
            if !base.is_zero(a) {
                rest = base.sub(&rest, &base.mul_int(&base.pow(a, n / d), &BigInt::from(d)));
            }
        }
        let a_n = base.exact_div(&rest, &BigInt::from(n)).map_err(|_| WittError::NotInGhostImage(n))?;
        coords.push(a_n);
    }
    Ok(coords)
}

fn resolve(base: &RingSpec, strategy: Strategy) -> Strategy {
    match strategy {
        Strategy::Auto if base.is_torsion_free() => Strategy::Ghost,
        Strategy::Auto => Strategy::Universal,
        s => s,
    }
}

/// Evaluates the universal polynomials `key(n)`, `n ∈ target`, with
/// `a_d = a[d]` and `b_d = b[d]` read from vectors over `source`.
pub(crate) fn eval_universal(
    base: &RingSpec,
    source: &TruncationSet,
    target: &TruncationSet,
    key: impl Fn(u64) -> UnivPolyKey,
    a: &[Value],
    b: Option<&[Value]>,
) -> Result<Vec<Value>> {
    let cache = universal::active();
    let lookup = |v: Var| -> Value {
        let i = source.index_of(v.index()).expect("universal polynomial variable outside the truncation set");
        match (v.family(), b) {
            (Family::A, _) => a[i].clone(),
            (Family::B, Some(b)) => b[i].clone(),
            (Family::B, None) => panic!("unary operation polynomial mentions b"),
        }
    };
    let mut table = PowerTable::new(lookup);
    target
        .iter()
        .map(|n| Ok(eval_raw(&*cache.get_unchecked(key(n))?, base, &mut table)))
        .collect()
}

fn ghost_binary(
    base: &RingSpec,
    set: &TruncationSet,
    a: &[Value],
    b: &[Value],
    op: impl Fn(&Value, &Value) -> Value,
) -> Vec<Value> {
    let (ga, gb) = (ghost(base, set, a), ghost(base, set, b));
    let g: Vec<Value> = ga.iter().zip(&gb).map(|(x, y)| op(x, y)).collect();
    from_ghost(base, set, &g).expect("ghost image is closed under ring operations")
}

pub fn witt_add_with(base: &RingSpec, set: &TruncationSet, a: &[Value], b: &[Value], s: Strategy) -> Result<Vec<Value>> {
    match resolve(base, s) {
        Strategy::Ghost => {
            require_torsion_free(base)?;
            Ok(ghost_binary(base, set, a, b, |x, y| base.add(x, y)))
        }
        _ => eval_universal(base, set, set, UnivPolyKey::sum, a, Some(b)),
    }
}

pub fn witt_mul_with(base: &RingSpec, set: &TruncationSet, a: &[Value], b: &[Value], s: Strategy) -> Result<Vec<Value>> {
    match resolve(base, s) {
        Strategy::Ghost => {
            require_torsion_free(base)?;
            Ok(ghost_binary(base, set, a, b, |x, y| base.mul(x, y)))
        }
        _ => eval_universal(base, set, set, UnivPolyKey::prod, a, Some(b)),
    }
}

pub fn witt_neg_with(base: &RingSpec, set: &TruncationSet, a: &[Value], s: Strategy) -> Result<Vec<Value>> {
    match resolve(base, s) {
        Strategy::Ghost => {
            require_torsion_free(base)?;
            let g: Vec<Value> = ghost(base, set, a).iter().map(|x| base.neg(x)).collect();
            from_ghost(base, set, &g)
        }
        _ => eval_universal(base, set, set, UnivPolyKey::neg, a, None),
    }
}

fn require_torsion_free(base: &RingSpec) -> Result<()> {
    if base.is_torsion_free() {
        Ok(())
    } else {
        Err(WittError::UnsupportedRing(base.to_string()))
    }
}

// Entry points for `RingSpec`. The universal path can only fail on a
// corrupted cache, which is a programming error at this level.

pub fn witt_add(base: &RingSpec, set: &TruncationSet, a: &[Value], b: &[Value]) -> Vec<Value> {
    witt_add_with(base, set, a, b, Strategy::Auto).expect("Witt addition")
}

pub fn witt_mul(base: &RingSpec, set: &TruncationSet, a: &[Value], b: &[Value]) -> Vec<Value> {
    witt_mul_with(base, set, a, b, Strategy::Auto).expect("Witt multiplication")
}

pub fn witt_neg(base: &RingSpec, set: &TruncationSet, a: &[Value]) -> Vec<Value> {
    witt_neg_with(base, set, a, Strategy::Auto).expect("Witt negation")
}

/// `k·1` in `W_S(A)`: computed in `W_S(Z)` and pushed forward along
/// `Z → A` coordinatewise (the Witt functor is natural in the base).
pub fn witt_from_int(base: &RingSpec, set: &TruncationSet, k: &BigInt) -> Vec<Value> {
    let z = RingSpec::Integers;
    let ghosts = vec![Value::Int(k.clone()); set.len()];
    let coords = from_ghost(&z, set, &ghosts).expect("integers lie in the ghost image");
    coords.iter().map(|c| base.from_int(c.as_int().expect("integer coordinate"))).collect()
}

/// `q·1`, computed in `W_S(Q)` and pushed forward coordinatewise. Every
/// coordinate has denominator built from those of `q`, so the push-forward
/// exists exactly when they are invertible in `A`.
pub fn witt_from_rational(base: &RingSpec, set: &TruncationSet, q: &BigRational) -> Result<Vec<Value>> {
    if q.is_integer() {
        return Ok(witt_from_int(base, set, q.numer()));
    }
    let ghosts = vec![Value::Rat(q.clone()); set.len()];
    let coords = from_ghost(&RingSpec::Rationals, set, &ghosts)?;
    coords
        .iter()
        .map(|c| match c {
            Value::Rat(r) => base.from_rational(r),
            _ => unreachable!("rational coordinates"),
        })
        .collect()
}

/// Division by `n` on a torsion-free base, via the ghost side.
pub fn witt_exact_div(base: &RingSpec, set: &TruncationSet, c: &[Value], n: &BigInt) -> Result<Vec<Value>> {
    if !base.is_torsion_free() {
        return Err(WittError::UnsupportedRing(format!("W({set},{base})")));
    }
    if n.is_zero() {
        return Err(WittError::NotDivisible { value: format!("{c:?}"), divisor: "0".into() });
    }
    let g: Vec<Value> = ghost(base, set, c)
        .iter()
        .map(|w| base.exact_div(w, n))
        .collect::<Result<_>>()
        .map_err(|_| not_divisible(set, base, c, n))?;
    from_ghost(base, set, &g).map_err(|_| not_divisible(set, base, c, n))
}

fn not_divisible(set: &TruncationSet, base: &RingSpec, c: &[Value], n: &BigInt) -> WittError {
    let spec = RingSpec::Witt { base: std::sync::Arc::new(base.clone()), set: set.clone() };
    WittError::NotDivisible { value: spec.format_value(&Value::Witt(c.to_vec())), divisor: n.to_string() }
}
