use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{Ring, RingSpec, Value};
use crate::error::{Result, WittError};

/// A ring element: a spec together with its canonical value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: Ring,
    value: Value,
}

impl RingElement {
    /// Wraps a value after checking it is canonical for `ring`.
    pub fn new(ring: Ring, value: Value) -> Result<Self> {
        if !ring.is_canonical(&value) {
            return Err(WittError::InvalidInput(format!("{value:?} is not a canonical element of {ring}")));
        }
        Ok(RingElement { ring, value })
    }

    pub(crate) fn from_parts(ring: Ring, value: Value) -> Self {
        debug_assert!(ring.is_canonical(&value), "{value:?} not canonical in {ring}");
        RingElement { ring, value }
    }

    pub fn zero(ring: &Ring) -> Self {
        RingElement { value: ring.zero(), ring: ring.clone() }
    }

    pub fn one(ring: &Ring) -> Self {
        RingElement { value: ring.one(), ring: ring.clone() }
    }

    pub fn from_int(ring: &Ring, k: impl Into<BigInt>) -> Self {
        RingElement { value: ring.from_int(&k.into()), ring: ring.clone() }
    }

    /// A variable of a polynomial ring.
    pub fn variable(ring: &Ring, name: &str) -> Result<Self> {
        match &**ring {
            RingSpec::Polynomial { base, vars } => {
                let i = vars
                    .iter()
                    .position(|v| v == name)
                    .ok_or_else(|| WittError::MissingVariable(name.to_string()))?;
                let mut mono = vec![0; vars.len()];
                mono[i] = 1;
                Ok(RingElement { ring: ring.clone(), value: Value::Poly(vec![(mono, base.one())]) })
            }
            _ => Err(WittError::InvalidInput(format!("{ring} has no variables"))),
        }
    }

    /// The generator `t` of a truncated series ring.
    pub fn series_variable(ring: &Ring) -> Result<Self> {
        match &**ring {
            RingSpec::Series { base, precision } => {
                let mut c = vec![base.zero(); *precision];
                if *precision > 1 {
                    c[1] = base.one();
                }
                Ok(RingElement { ring: ring.clone(), value: Value::Series(c) })
            }
            _ => Err(WittError::InvalidInput(format!("{ring} is not a series ring"))),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    pub fn into_value(self) -> Value {
        self.value
    }

    fn check(&self, other: &RingElement) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(WittError::SpecMismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    fn wrap(&self, value: Value) -> RingElement {
        RingElement { ring: self.ring.clone(), value }
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.wrap(self.ring.add(&self.value, &other.value)))
    }

    pub fn sub(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.wrap(self.ring.sub(&self.value, &other.value)))
    }

    pub fn mul(&self, other: &RingElement) -> Result<RingElement> {
        self.check(other)?;
        Ok(self.wrap(self.ring.mul(&self.value, &other.value)))
    }

    pub fn neg(&self) -> RingElement {
        self.wrap(self.ring.neg(&self.value))
    }

    pub fn pow(&self, e: u64) -> RingElement {
        self.wrap(self.ring.pow(&self.value, e))
    }

    pub fn mul_int(&self, k: impl Into<BigInt>) -> RingElement {
        self.wrap(self.ring.mul_int(&self.value, &k.into()))
    }

    pub fn exact_div(&self, n: impl Into<BigInt>) -> Result<RingElement> {
        Ok(self.wrap(self.ring.exact_div(&self.value, &n.into())?))
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }

    /// Coefficients of a truncated series element.
    pub fn series_coefficients(&self) -> Option<Vec<RingElement>> {
        match (&*self.ring, &self.value) {
            (RingSpec::Series { base, .. }, Value::Series(c)) => {
                Some(c.iter().map(|v| RingElement { ring: base.clone(), value: v.clone() }).collect())
            }
            _ => None,
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_value(&self.value))
    }
}

/// Inverse of a truncated series with constant term 1.
pub fn series_inverse(f: &RingElement) -> Result<RingElement> {
    let (base, precision, coeffs) = match (&**f.ring(), f.value()) {
        (RingSpec::Series { base, precision }, Value::Series(c)) => (base, *precision, c),
        _ => return Err(WittError::InvalidInput(format!("{} is not a series ring", f.ring()))),
    };
    if coeffs[0] != base.one() {
        return Err(WittError::NotAUnit(f.to_string()));
    }
    // g_0 = 1, g_k = -Σ_{i=1..k} f_i g_{k-i}
    let mut g: Vec<Value> = Vec::with_capacity(precision);
    g.push(base.one());
    for k in 1..precision {
        let mut acc = base.zero();
        for i in 1..=k {
            acc = base.add(&acc, &base.mul(&coeffs[i], &g[k - i]));
        }
        g.push(base.neg(&acc));
    }
    Ok(RingElement::from_parts(f.ring().clone(), Value::Series(g)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(base: Ring, prec: usize, coeffs: &[i64]) -> RingElement {
        let ring = RingSpec::series(base.clone(), prec).unwrap();
        let mut c: Vec<Value> = coeffs.iter().map(|&k| base.from_i64(k)).collect();
        c.resize(prec, base.zero());
        RingElement::new(ring, Value::Series(c)).unwrap()
    }

    #[test]
    fn series_inverse_examples() {
        let z = RingSpec::integers();
        assert_eq!(series_inverse(&series(z.clone(), 3, &[1, -1])).unwrap(), series(z.clone(), 3, &[1, 1, 1]));
        assert_eq!(series_inverse(&series(z.clone(), 4, &[1])).unwrap(), series(z.clone(), 4, &[1]));
        assert_eq!(
            series_inverse(&series(z.clone(), 4, &[1, -2, 1])).unwrap(),
            series(z.clone(), 4, &[1, 2, 3, 4])
        );
        assert!(matches!(series_inverse(&series(z, 4, &[2, 1])), Err(WittError::NotAUnit(_))));
    }

    #[test]
    fn spec_mismatch() {
        let a = RingElement::from_int(&RingSpec::integers(), 2);
        let b = RingElement::from_int(&RingSpec::integers_mod(4).unwrap(), 2);
        assert!(matches!(a.add(&b), Err(WittError::SpecMismatch(..))));
    }

    #[test]
    fn polynomial_variables() {
        let ring = RingSpec::polynomial(RingSpec::integers(), &["a1", "b1"]).unwrap();
        let a = RingElement::variable(&ring, "a1").unwrap();
        let b = RingElement::variable(&ring, "b1").unwrap();
        assert_eq!(a.add(&b).unwrap().to_string(), "a1 + b1");
        assert_eq!(a.mul(&a).unwrap().to_string(), "a1^2");
        assert_eq!(a.mul_int(4).exact_div(2).unwrap(), a.mul_int(2));
    }
}
