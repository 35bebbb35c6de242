//! JSON form of ring elements: `{"spec": string, "value": kind-specific}`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value as Json};

use super::{RingElement, RingSpec, Value};
use crate::error::{Result, WittError};

/// Integers fitting in an `i64` are JSON numbers, larger ones strings.
pub(crate) fn int_to_json(k: &BigInt) -> Json {
    match k.to_i64() {
        Some(v) => json!(v),
        None => json!(k.to_string()),
    }
}

pub(crate) fn int_from_json(j: &Json) -> Result<BigInt> {
    match j {
        Json::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| WittError::parse(format!("not an integer: {n}"))),
        Json::String(s) => BigInt::from_str(s.trim()).map_err(|_| WittError::parse(format!("not an integer: {s:?}"))),
        other => Err(WittError::parse(format!("expected an integer, got {other}"))),
    }
}

impl RingSpec {
    pub fn value_to_json(&self, x: &Value) -> Json {
        match (self, x) {
            (RingSpec::Integers, Value::Int(a)) => int_to_json(a),
            (RingSpec::IntegersMod(_), Value::Mod(a)) => json!(a),
            (RingSpec::Rationals, Value::Rat(q)) => {
                if q.is_integer() {
                    int_to_json(q.numer())
                } else {
                    json!(q.to_string())
                }
            }
            (RingSpec::Polynomial { base, .. }, Value::Poly(terms)) => {
                Json::Array(terms.iter().map(|(mono, c)| json!([mono, base.value_to_json(c)])).collect())
            }
            (RingSpec::SquareZero(b), Value::Pair(a, m)) => json!([b.value_to_json(a), b.value_to_json(m)]),
            (RingSpec::Series { base, .. }, Value::Series(c)) => {
                Json::Array(c.iter().map(|v| base.value_to_json(v)).collect())
            }
            (RingSpec::Witt { base, set }, Value::Witt(c)) => {
                let mut map = Map::new();
                for (n, v) in set.iter().zip(c) {
                    map.insert(n.to_string(), base.value_to_json(v));
                }
                Json::Object(map)
            }
            _ => panic!("value {x:?} does not belong to {self}"),
        }
    }

    pub fn value_from_json(&self, j: &Json) -> Result<Value> {
        let bad = |what: &str| WittError::parse(format!("expected {what} for {self}, got {j}"));
        let v = match self {
            RingSpec::Integers => Value::Int(int_from_json(j)?),
            RingSpec::IntegersMod(_) | RingSpec::Rationals => match j {
                Json::String(s) => self.parse_scalar(s)?,
                _ => self.from_rational(&BigRational::from_integer(int_from_json(j)?))?,
            },
            RingSpec::Polynomial { base, vars } => {
                let arr = j.as_array().ok_or_else(|| bad("a term list"))?;
                let mut out = self.zero();
                for term in arr {
                    let pair = term.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("[exponents, coeff]"))?;
                    let mono: Vec<u32> = pair[0]
                        .as_array()
                        .ok_or_else(|| bad("an exponent list"))?
                        .iter()
                        .map(|e| e.as_u64().and_then(|e| u32::try_from(e).ok()).ok_or_else(|| bad("exponents")))
                        .collect::<Result<_>>()?;
                    if mono.len() != vars.len() {
                        return Err(bad("one exponent per variable"));
                    }
                    let c = base.value_from_json(&pair[1])?;
                    if !base.is_zero(&c) {
                        out = self.add(&out, &Value::Poly(vec![(mono, c)]));
                    }
                }
                out
            }
            RingSpec::SquareZero(b) => {
                let arr = j.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad("[a, x]"))?;
                Value::Pair(Box::new(b.value_from_json(&arr[0])?), Box::new(b.value_from_json(&arr[1])?))
            }
            RingSpec::Series { base, precision } => {
                let arr = j.as_array().ok_or_else(|| bad("a coefficient list"))?;
                if arr.len() > *precision {
                    return Err(bad("at most `precision` coefficients"));
                }
                let mut c = arr.iter().map(|v| base.value_from_json(v)).collect::<Result<Vec<_>>>()?;
                c.resize(*precision, base.zero());
                Value::Series(c)
            }
            RingSpec::Witt { base, set } => {
                let obj = j.as_object().ok_or_else(|| bad("a coordinate map"))?;
                let mut c = vec![base.zero(); set.len()];
                for (k, v) in obj {
                    let n: u64 = k.parse().map_err(|_| bad("integer keys"))?;
                    let i = set.index_of(n).ok_or_else(|| bad("keys inside the truncation set"))?;
                    c[i] = base.value_from_json(v)?;
                }
                Value::Witt(c)
            }
        };
        Ok(v)
    }
}

impl RingElement {
    pub fn to_json(&self) -> Json {
        json!({"spec": self.ring().to_string(), "value": self.ring().value_to_json(self.value())})
    }

    pub fn from_json(j: &Json) -> Result<RingElement> {
        let spec = j.get("spec").and_then(Json::as_str).ok_or_else(|| WittError::parse("missing \"spec\""))?;
        let ring = RingSpec::parse(spec)?;
        let value = ring.value_from_json(j.get("value").ok_or_else(|| WittError::parse("missing \"value\""))?)?;
        RingElement::new(ring, value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn json_round_trip_all_kinds() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for s in ["Z", "Z/8", "Q", "Z[x,y]", "Z/3[x]", "sz(Z)", "series(Z,4)", "W({1,2,3},Z/5)", "W({1,2},sz(Q))"] {
            let ring = RingSpec::parse(s).unwrap();
            for _ in 0..10 {
                let v = ring.sample(&mut rng, 7);
                let e = RingElement::new(ring.clone(), v).unwrap();
                let back = RingElement::from_json(&e.to_json()).unwrap();
                assert_eq!(back, e, "{s}");
            }
        }
    }

    #[test]
    fn big_integers_become_strings() {
        let big = BigInt::from(10).pow(30);
        assert_eq!(int_to_json(&big), json!(big.to_string()));
        assert_eq!(int_from_json(&int_to_json(&big)).unwrap(), big);
    }
}
