//! Pluggable exact commutative rings.
//!
//! A ring is described at runtime by a [`RingSpec`]; elements are a spec
//! paired with a canonical [`Value`]. Canonical forms are unique, so
//! equality of elements is structural equality.

mod element;
pub(crate) mod json;
mod parse;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::arith::mod_inverse;
use crate::error::{Result, WittError};
use crate::truncation::TruncationSet;
use crate::witt::raw;

pub use element::{series_inverse, RingElement};

/// Shared handle to a ring description.
pub type Ring = Arc<RingSpec>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    /// Residues in `[0, m)`, `m >= 2`.
    IntegersMod(u64),
    Rationals,
    /// Sparse polynomials in the named variables.
    Polynomial { base: Ring, vars: Vec<String> },
    /// `A ⊕ A` with `(a,x)(a',x') = (aa', ax' + a'x)`.
    SquareZero(Ring),
    /// `A[t]/(t^precision)`.
    Series { base: Ring, precision: usize },
    /// Big Witt vectors `W_S(A)`.
    Witt { base: Ring, set: TruncationSet },
}

/// Canonical payload of a ring element. The meaning depends on the spec
/// it is paired with.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Value {
    Int(BigInt),
    Mod(u64),
    Rat(BigRational),
    /// Terms sorted by exponent vector, no zero coefficients.
    Poly(Vec<(Vec<u32>, Value)>),
    /// Square-zero pair `(a, x)`.
    Pair(Box<Value>, Box<Value>),
    /// Exactly `precision` coefficients.
    Series(Vec<Value>),
    /// Witt coordinates aligned with the truncation set members.
    Witt(Vec<Value>),
}

impl RingSpec {
    pub fn integers() -> Ring {
        Arc::new(RingSpec::Integers)
    }

    pub fn rationals() -> Ring {
        Arc::new(RingSpec::Rationals)
    }

    pub fn integers_mod(m: u64) -> Result<Ring> {
        if m < 2 {
            return Err(WittError::InvalidInput(format!("modulus {m} must be at least 2")));
        }
        if m > u64::MAX >> 1 {
            return Err(WittError::InvalidInput(format!("modulus {m} too large")));
        }
        Ok(Arc::new(RingSpec::IntegersMod(m)))
    }

    pub fn polynomial(base: Ring, vars: &[&str]) -> Result<Ring> {
        let vars: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let mut sorted = vars.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vars.len() || vars.is_empty() {
            return Err(WittError::InvalidInput("polynomial variables must be distinct and non-empty".into()));
        }
        Ok(Arc::new(RingSpec::Polynomial { base, vars }))
    }

    pub fn square_zero(base: Ring) -> Ring {
        Arc::new(RingSpec::SquareZero(base))
    }

    pub fn series(base: Ring, precision: usize) -> Result<Ring> {
        if precision == 0 {
            return Err(WittError::InvalidInput("series precision must be at least 1".into()));
        }
        Ok(Arc::new(RingSpec::Series { base, precision }))
    }

    /// `W_S(A)`; fails if `S` exceeds the universal-polynomial ceiling.
    pub fn witt(base: Ring, set: TruncationSet) -> Result<Ring> {
        crate::universal::check_set_ceiling(&set)?;
        Ok(Arc::new(RingSpec::Witt { base, set }))
    }

    /// Whether multiplication by every nonzero integer is injective.
    pub fn is_torsion_free(&self) -> bool {
        match self {
            RingSpec::Integers | RingSpec::Rationals => true,
            RingSpec::IntegersMod(_) => false,
            RingSpec::Polynomial { base, .. }
            | RingSpec::SquareZero(base)
            | RingSpec::Series { base, .. }
            | RingSpec::Witt { base, .. } => base.is_torsion_free(),
        }
    }

    pub fn zero(&self) -> Value {
        match self {
            RingSpec::Integers => Value::Int(BigInt::zero()),
            RingSpec::IntegersMod(_) => Value::Mod(0),
            RingSpec::Rationals => Value::Rat(BigRational::zero()),
            RingSpec::Polynomial { .. } => Value::Poly(Vec::new()),
            RingSpec::SquareZero(b) => Value::Pair(Box::new(b.zero()), Box::new(b.zero())),
            RingSpec::Series { base, precision } => Value::Series(vec![base.zero(); *precision]),
            RingSpec::Witt { base, set } => Value::Witt(vec![base.zero(); set.len()]),
        }
    }

    pub fn one(&self) -> Value {
        self.from_int(&BigInt::one())
    }

    pub fn from_i64(&self, k: i64) -> Value {
        self.from_int(&BigInt::from(k))
    }

    /// Image of an integer under the unique ring map `Z -> A`.
    pub fn from_int(&self, k: &BigInt) -> Value {
        match self {
            RingSpec::Integers => Value::Int(k.clone()),
            RingSpec::IntegersMod(m) => Value::Mod(reduce_mod(k, *m)),
            RingSpec::Rationals => Value::Rat(BigRational::from_integer(k.clone())),
            RingSpec::Polynomial { base, vars } => {
                let c = base.from_int(k);
                if base.is_zero(&c) {
                    Value::Poly(Vec::new())
                } else {
                    Value::Poly(vec![(vec![0; vars.len()], c)])
                }
            }
            RingSpec::SquareZero(b) => Value::Pair(Box::new(b.from_int(k)), Box::new(b.zero())),
            RingSpec::Series { base, precision } => {
                let mut c = vec![base.zero(); *precision];
                c[0] = base.from_int(k);
                Value::Series(c)
            }
            RingSpec::Witt { base, set } => Value::Witt(raw::witt_from_int(base, set, k)),
        }
    }

    /// Image of a rational number, defined when its denominator is a unit.
    pub fn from_rational(&self, q: &BigRational) -> Result<Value> {
        if q.is_integer() {
            return Ok(self.from_int(q.numer()));
        }
        let not_inv = || WittError::NotInvertible(q.denom().to_string(), self.to_string());
        match self {
            RingSpec::Integers => Err(not_inv()),
            RingSpec::IntegersMod(m) => {
                let d = reduce_mod(q.denom(), *m);
                let inv = mod_inverse(d, *m).ok_or_else(not_inv)?;
                Ok(Value::Mod(mul_mod(reduce_mod(q.numer(), *m), inv, *m)))
            }
            RingSpec::Rationals => Ok(Value::Rat(q.clone())),
            RingSpec::Polynomial { base, vars } => {
                let c = base.from_rational(q)?;
                Ok(if base.is_zero(&c) { Value::Poly(Vec::new()) } else { Value::Poly(vec![(vec![0; vars.len()], c)]) })
            }
            RingSpec::SquareZero(b) => Ok(Value::Pair(Box::new(b.from_rational(q)?), Box::new(b.zero()))),
            RingSpec::Series { base, precision } => {
                let mut c = vec![base.zero(); *precision];
                c[0] = base.from_rational(q)?;
                Ok(Value::Series(c))
            }
            RingSpec::Witt { base, set } => Ok(Value::Witt(raw::witt_from_rational(base, set, q)?)),
        }
    }

    pub fn is_zero(&self, x: &Value) -> bool {
        match (self, x) {
            (RingSpec::Integers, Value::Int(a)) => a.is_zero(),
            (RingSpec::IntegersMod(_), Value::Mod(a)) => *a == 0,
            (RingSpec::Rationals, Value::Rat(a)) => a.is_zero(),
            (RingSpec::Polynomial { .. }, Value::Poly(t)) => t.is_empty(),
            (RingSpec::SquareZero(b), Value::Pair(a, m)) => b.is_zero(a) && b.is_zero(m),
            (RingSpec::Series { base, .. }, Value::Series(c)) => c.iter().all(|v| base.is_zero(v)),
            (RingSpec::Witt { base, .. }, Value::Witt(c)) => c.iter().all(|v| base.is_zero(v)),
            _ => panic!("value {x:?} does not belong to {self}"),
        }
    }

    pub fn add(&self, x: &Value, y: &Value) -> Value {
        match (self, x, y) {
            (RingSpec::Integers, Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (RingSpec::IntegersMod(m), Value::Mod(a), Value::Mod(b)) => Value::Mod(add_mod(*a, *b, *m)),
            (RingSpec::Rationals, Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (RingSpec::Polynomial { base, .. }, Value::Poly(a), Value::Poly(b)) => {
                let mut acc: BTreeMap<Vec<u32>, Value> = a.iter().cloned().collect();
                for (mono, c) in b {
                    accumulate(base, &mut acc, mono.clone(), c.clone());
                }
                Value::Poly(drop_zero_terms(base, acc))
            }
            (RingSpec::SquareZero(b), Value::Pair(a1, m1), Value::Pair(a2, m2)) => {
                Value::Pair(Box::new(b.add(a1, a2)), Box::new(b.add(m1, m2)))
            }
            (RingSpec::Series { base, .. }, Value::Series(a), Value::Series(b)) => {
                Value::Series(a.iter().zip(b).map(|(u, v)| base.add(u, v)).collect())
            }
            (RingSpec::Witt { base, set }, Value::Witt(a), Value::Witt(b)) => Value::Witt(raw::witt_add(base, set, a, b)),
            _ => panic!("operands do not belong to {self}"),
        }
    }

    pub fn neg(&self, x: &Value) -> Value {
        match (self, x) {
            (RingSpec::Integers, Value::Int(a)) => Value::Int(-a),
            (RingSpec::IntegersMod(m), Value::Mod(a)) => Value::Mod(if *a == 0 { 0 } else { m - a }),
            (RingSpec::Rationals, Value::Rat(a)) => Value::Rat(-a),
            (RingSpec::Polynomial { base, .. }, Value::Poly(t)) => {
                Value::Poly(t.iter().map(|(mono, c)| (mono.clone(), base.neg(c))).collect())
            }
            (RingSpec::SquareZero(b), Value::Pair(a, m)) => Value::Pair(Box::new(b.neg(a)), Box::new(b.neg(m))),
            (RingSpec::Series { base, .. }, Value::Series(c)) => Value::Series(c.iter().map(|v| base.neg(v)).collect()),
            (RingSpec::Witt { base, set }, Value::Witt(c)) => Value::Witt(raw::witt_neg(base, set, c)),
            _ => panic!("value {x:?} does not belong to {self}"),
        }
    }

    pub fn sub(&self, x: &Value, y: &Value) -> Value {
        match (self, x, y) {
            (RingSpec::Integers, Value::Int(a), Value::Int(b)) => Value::Int(a - b),
            (RingSpec::IntegersMod(m), Value::Mod(a), Value::Mod(b)) => Value::Mod(add_mod(*a, m - b, *m)),
            (RingSpec::Rationals, Value::Rat(a), Value::Rat(b)) => Value::Rat(a - b),
            _ => self.add(x, &self.neg(y)),
        }
    }

    pub fn mul(&self, x: &Value, y: &Value) -> Value {
        match (self, x, y) {
            (RingSpec::Integers, Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (RingSpec::IntegersMod(m), Value::Mod(a), Value::Mod(b)) => Value::Mod(mul_mod(*a, *b, *m)),
            (RingSpec::Rationals, Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (RingSpec::Polynomial { base, .. }, Value::Poly(a), Value::Poly(b)) => {
                let mut acc = BTreeMap::new();
                for (ma, ca) in a {
                    for (mb, cb) in b {
                        let mono: Vec<u32> = ma.iter().zip(mb).map(|(i, j)| i + j).collect();
                        accumulate(base, &mut acc, mono, base.mul(ca, cb));
                    }
                }
                Value::Poly(drop_zero_terms(base, acc))
            }
            (RingSpec::SquareZero(b), Value::Pair(a1, m1), Value::Pair(a2, m2)) => Value::Pair(
                Box::new(b.mul(a1, a2)),
                Box::new(b.add(&b.mul(a1, m2), &b.mul(a2, m1))),
            ),
            (RingSpec::Series { base, precision }, Value::Series(a), Value::Series(b)) => {
                let mut out = vec![base.zero(); *precision];
                for (i, u) in a.iter().enumerate() {
                    if base.is_zero(u) {
                        continue;
                    }
                    for (j, v) in b.iter().enumerate().take(precision - i) {
                        if !base.is_zero(v) {
                            out[i + j] = base.add(&out[i + j], &base.mul(u, v));
                        }
                    }
                }
                Value::Series(out)
            }
            (RingSpec::Witt { base, set }, Value::Witt(a), Value::Witt(b)) => Value::Witt(raw::witt_mul(base, set, a, b)),
            _ => panic!("operands do not belong to {self}"),
        }
    }

    /// `k · x` for an integer `k`.
    pub fn mul_int(&self, x: &Value, k: &BigInt) -> Value {
        match (self, x) {
            (RingSpec::Integers, Value::Int(a)) => Value::Int(a * k),
            (RingSpec::IntegersMod(m), Value::Mod(a)) => Value::Mod(mul_mod(*a, reduce_mod(k, *m), *m)),
            (RingSpec::Rationals, Value::Rat(a)) => Value::Rat(a * BigRational::from_integer(k.clone())),
            (RingSpec::Polynomial { base, .. }, Value::Poly(t)) => Value::Poly(
                t.iter()
                    .map(|(mono, c)| (mono.clone(), base.mul_int(c, k)))
                    .filter(|(_, c)| !base.is_zero(c))
                    .collect(),
            ),
            (RingSpec::SquareZero(b), Value::Pair(a, m)) => {
                Value::Pair(Box::new(b.mul_int(a, k)), Box::new(b.mul_int(m, k)))
            }
            (RingSpec::Series { base, .. }, Value::Series(c)) => {
                Value::Series(c.iter().map(|v| base.mul_int(v, k)).collect())
            }
            (RingSpec::Witt { .. }, _) => self.mul(x, &self.from_int(k)),
            _ => panic!("value {x:?} does not belong to {self}"),
        }
    }

    pub fn pow(&self, x: &Value, mut e: u64) -> Value {
        let mut result = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// The unique `q` with `n·q = x`.
    pub fn exact_div(&self, x: &Value, n: &BigInt) -> Result<Value> {
        if n.is_zero() {
            return Err(WittError::InvalidInput("division by zero".into()));
        }
        let not_div = || WittError::NotDivisible { value: self.format_value(x), divisor: n.to_string() };
        match (self, x) {
            (RingSpec::Integers, Value::Int(a)) => {
                let (q, r) = a.div_rem(n);
                if r.is_zero() {
                    Ok(Value::Int(q))
                } else {
                    Err(not_div())
                }
            }
            (RingSpec::Rationals, Value::Rat(a)) => Ok(Value::Rat(a / BigRational::from_integer(n.clone()))),
            (RingSpec::IntegersMod(m), Value::Mod(a)) => {
                let r = reduce_mod(n, *m);
                if let Some(inv) = mod_inverse(r, *m) {
                    return Ok(Value::Mod(mul_mod(*a, inv, *m)));
                }
                let g = crate::arith::gcd(r, *m);
                if a % g == 0 {
                    Err(WittError::ZeroDivisor(n.to_string(), self.to_string()))
                } else {
                    Err(not_div())
                }
            }
            (RingSpec::Polynomial { base, .. }, Value::Poly(t)) => Ok(Value::Poly(
                t.iter().map(|(mono, c)| Ok((mono.clone(), base.exact_div(c, n)?))).collect::<Result<_>>()?,
            )),
            (RingSpec::SquareZero(b), Value::Pair(a, m)) => {
                Ok(Value::Pair(Box::new(b.exact_div(a, n)?), Box::new(b.exact_div(m, n)?)))
            }
            (RingSpec::Series { base, .. }, Value::Series(c)) => {
                Ok(Value::Series(c.iter().map(|v| base.exact_div(v, n)).collect::<Result<_>>()?))
            }
            (RingSpec::Witt { base, set }, Value::Witt(c)) => raw::witt_exact_div(base, set, c, n).map(Value::Witt),
            _ => panic!("value {x:?} does not belong to {self}"),
        }
    }

    /// Structural check that `x` is a canonical value of this ring.
    pub fn is_canonical(&self, x: &Value) -> bool {
        match (self, x) {
            (RingSpec::Integers, Value::Int(_)) => true,
            (RingSpec::IntegersMod(m), Value::Mod(a)) => a < m,
            (RingSpec::Rationals, Value::Rat(_)) => true,
            (RingSpec::Polynomial { base, vars }, Value::Poly(t)) => {
                t.windows(2).all(|w| w[0].0 < w[1].0)
                    && t.iter().all(|(mono, c)| mono.len() == vars.len() && base.is_canonical(c) && !base.is_zero(c))
            }
            (RingSpec::SquareZero(b), Value::Pair(a, m)) => b.is_canonical(a) && b.is_canonical(m),
            (RingSpec::Series { base, precision }, Value::Series(c)) => {
                c.len() == *precision && c.iter().all(|v| base.is_canonical(v))
            }
            (RingSpec::Witt { base, set }, Value::Witt(c)) => {
                c.len() == set.len() && c.iter().all(|v| base.is_canonical(v))
            }
            _ => false,
        }
    }

    /// Random element with small integer data in `[-bound, bound]`.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> Value {
        match self {
            RingSpec::Integers => Value::Int(BigInt::from(rng.gen_range(-bound..=bound))),
            RingSpec::IntegersMod(m) => Value::Mod(rng.gen_range(0..*m)),
            RingSpec::Rationals => {
                let num = rng.gen_range(-bound..=bound);
                let den = rng.gen_range(1..=bound.max(1));
                Value::Rat(BigRational::new(num.into(), den.into()))
            }
            RingSpec::Polynomial { base, vars } => {
                let mut acc = BTreeMap::new();
                for _ in 0..rng.gen_range(0..=3) {
                    let mono: Vec<u32> = vars.iter().map(|_| rng.gen_range(0..=2)).collect();
                    accumulate(base, &mut acc, mono, base.sample(rng, bound));
                }
                Value::Poly(drop_zero_terms(base, acc))
            }
            RingSpec::SquareZero(b) => Value::Pair(Box::new(b.sample(rng, bound)), Box::new(b.sample(rng, bound))),
            RingSpec::Series { base, precision } => Value::Series((0..*precision).map(|_| base.sample(rng, bound)).collect()),
            RingSpec::Witt { base, set } => Value::Witt(set.iter().map(|_| base.sample(rng, bound)).collect()),
        }
    }
}

fn accumulate(base: &RingSpec, acc: &mut BTreeMap<Vec<u32>, Value>, mono: Vec<u32>, c: Value) {
    match acc.get_mut(&mono) {
        Some(existing) => *existing = base.add(existing, &c),
        None => {
            acc.insert(mono, c);
        }
    }
}

fn drop_zero_terms(base: &RingSpec, acc: BTreeMap<Vec<u32>, Value>) -> Vec<(Vec<u32>, Value)> {
    acc.into_iter().filter(|(_, c)| !base.is_zero(c)).collect()
}

pub(crate) fn reduce_mod(k: &BigInt, m: u64) -> u64 {
    let r = k.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits in u64")
}

fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % m as u128) as u64
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

impl Value {
    pub fn int(k: i64) -> Value {
        Value::Int(BigInt::from(k))
    }

    /// The integer payload, for values of `Z`.
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Value::Int(a) => Some(a),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z() -> Ring {
        RingSpec::integers()
    }

    #[test]
    fn integer_and_modular_arithmetic() {
        assert_eq!(z().add(&Value::int(2), &Value::int(3)), Value::int(5));
        let z4 = RingSpec::integers_mod(4).unwrap();
        assert_eq!(z4.add(&Value::Mod(3), &Value::Mod(3)), Value::Mod(2));
        let z6 = RingSpec::integers_mod(6).unwrap();
        assert_eq!(z6.mul(&Value::Mod(4), &Value::Mod(3)), Value::Mod(0));
        assert_eq!(z6.from_i64(-1), Value::Mod(5));
        assert!(RingSpec::integers_mod(1).is_err());
    }

    #[test]
    fn square_zero_product() {
        let sz = RingSpec::square_zero(z());
        let x = Value::Pair(Box::new(Value::int(2)), Box::new(Value::int(3)));
        let y = Value::Pair(Box::new(Value::int(5)), Box::new(Value::int(7)));
        assert_eq!(sz.mul(&x, &y), Value::Pair(Box::new(Value::int(10)), Box::new(Value::int(29))));
    }

    #[test]
    fn exact_division() {
        assert_eq!(z().exact_div(&Value::int(6), &BigInt::from(3)).unwrap(), Value::int(2));
        assert!(matches!(z().exact_div(&Value::int(5), &BigInt::from(2)), Err(WittError::NotDivisible { .. })));
        let z8 = RingSpec::integers_mod(8).unwrap();
        assert_eq!(z8.exact_div(&Value::Mod(6), &BigInt::from(3)).unwrap(), Value::Mod(2));
        assert!(matches!(z8.exact_div(&Value::Mod(6), &BigInt::from(2)), Err(WittError::ZeroDivisor(..))));
        assert!(matches!(z8.exact_div(&Value::Mod(3), &BigInt::from(2)), Err(WittError::NotDivisible { .. })));
    }

    #[test]
    fn from_rational_needs_units() {
        let q = BigRational::new(1.into(), 3.into());
        let z8 = RingSpec::integers_mod(8).unwrap();
        assert_eq!(z8.from_rational(&q).unwrap(), Value::Mod(3));
        assert!(matches!(z().from_rational(&q), Err(WittError::NotInvertible(..))));
        let z9 = RingSpec::integers_mod(9).unwrap();
        assert!(z9.from_rational(&q).is_err());
    }

    #[test]
    fn samples_are_canonical() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let specs = [
            z(),
            RingSpec::rationals(),
            RingSpec::integers_mod(9).unwrap(),
            RingSpec::polynomial(RingSpec::integers_mod(3).unwrap(), &["x", "y"]).unwrap(),
            RingSpec::square_zero(z()),
            RingSpec::series(RingSpec::integers_mod(2).unwrap(), 3).unwrap(),
        ];
        for spec in &specs {
            for _ in 0..20 {
                let v = spec.sample(&mut rng, 5);
                assert!(spec.is_canonical(&v), "{spec}: {v:?}");
                assert!(spec.is_canonical(&spec.mul(&v, &v)));
            }
        }
    }
}
