//! Text forms of ring specs and element values.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Ring, RingSpec, Value};
use crate::error::{Result, WittError};
use crate::truncation::TruncationSet;

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::IntegersMod(m) => write!(f, "Z/{m}"),
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::Polynomial { base, vars } => write!(f, "{base}[{}]", vars.join(",")),
            RingSpec::SquareZero(b) => write!(f, "sz({b})"),
            RingSpec::Series { base, precision } => write!(f, "series({base},{precision})"),
            RingSpec::Witt { base, set } => write!(f, "W({set},{base})"),
        }
    }
}

impl FromStr for RingSpec {
    type Err = WittError;

    fn from_str(s: &str) -> Result<Self> {
        let ring = RingSpec::parse(s)?;
        Ok((*ring).clone())
    }
}

impl RingSpec {
    /// Parses `Z`, `Z/8`, `Q`, `Z[x,y]`, `Z/3[x]`, `sz(Z)`, `series(Z,12)`,
    /// `W(div24,Z)` and nestings of these.
    pub fn parse(text: &str) -> Result<Ring> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { src: &compact, pos: 0 };
        let ring = p.spec()?;
        if p.pos != compact.len() {
            return Err(WittError::parse(format!("trailing input in ring spec {text:?}")));
        }
        Ok(ring)
    }

    /// Human-readable form of a value of this ring.
    pub fn format_value(&self, x: &Value) -> String {
        match (self, x) {
            (RingSpec::Integers, Value::Int(a)) => a.to_string(),
            (RingSpec::IntegersMod(_), Value::Mod(a)) => a.to_string(),
            (RingSpec::Rationals, Value::Rat(a)) => a.to_string(),
            (RingSpec::Polynomial { base, vars }, Value::Poly(terms)) => {
                if terms.is_empty() {
                    return "0".into();
                }
                let parts: Vec<String> = terms
                    .iter()
                    .rev()
                    .map(|(mono, c)| {
                        let factors: Vec<String> = mono
                            .iter()
                            .zip(vars)
                            .filter(|(e, _)| **e > 0)
                            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                            .collect();
                        let coeff = base.format_value(c);
                        if factors.is_empty() {
                            coeff
                        } else if *c == base.one() {
                            factors.join("*")
                        } else {
                            format!("{}*{}", wrap_compound(&coeff), factors.join("*"))
                        }
                    })
                    .collect();
                parts.join(" + ")
            }
            (RingSpec::SquareZero(b), Value::Pair(a, m)) => format!("({}, {})", b.format_value(a), b.format_value(m)),
            (RingSpec::Series { base, precision }, Value::Series(c)) => {
                let parts: Vec<String> = c
                    .iter()
                    .enumerate()
                    .filter(|(i, v)| *i == 0 || !base.is_zero(v))
                    .map(|(i, v)| {
                        let coeff = wrap_compound(&base.format_value(v));
                        match i {
                            0 => coeff,
                            1 => format!("{coeff}*t"),
                            _ => format!("{coeff}*t^{i}"),
                        }
                    })
                    .collect();
                format!("{} (mod t^{precision})", parts.join(" + "))
            }
            (RingSpec::Witt { base, .. }, Value::Witt(c)) => {
                let parts: Vec<String> = c.iter().map(|v| base.format_value(v)).collect();
                format!("({})", parts.join(", "))
            }
            _ => format!("{x:?}"),
        }
    }

    /// Parses a scalar written as an integer or fraction. Only rings whose
    /// elements have such a form accept text input; others go through JSON.
    pub fn parse_scalar(&self, text: &str) -> Result<Value> {
        let t = text.trim();
        let bad = || WittError::parse(format!("cannot read {t:?} as an element of {self}"));
        let q = if let Some((n, d)) = t.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            BigRational::new(n, d)
        } else {
            BigRational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)
        };
        match self {
            RingSpec::Integers if !q.is_integer() => Err(bad()),
            _ => self.from_rational(&q),
        }
    }
}

fn wrap_compound(s: &str) -> String {
    if s.contains(' ') || s.contains('+') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(WittError::parse(format!("expected {token:?} at {:?}", self.rest())))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
        if digits.is_empty() {
            return Err(WittError::parse(format!("expected a number at {:?}", self.rest())));
        }
        self.pos += digits.len();
        digits.parse().map_err(|_| WittError::parse(format!("number {digits} out of range")))
    }

    fn spec(&mut self) -> Result<Ring> {
        let mut ring = if self.eat("sz(") {
            let inner = self.spec()?;
            self.expect(")")?;
            RingSpec::square_zero(inner)
        } else if self.eat("series(") {
            let inner = self.spec()?;
            self.expect(",")?;
            let prec = self.number()? as usize;
            self.expect(")")?;
            RingSpec::series(inner, prec)?
        } else if self.eat("W(") {
            let set = self.set()?;
            self.expect(",")?;
            let inner = self.spec()?;
            self.expect(")")?;
            RingSpec::witt(inner, set)?
        } else if self.eat("Z/") {
            RingSpec::integers_mod(self.number()?)?
        } else if self.eat("Z") {
            RingSpec::integers()
        } else if self.eat("Q") {
            RingSpec::rationals()
        } else {
            return Err(WittError::parse(format!("unknown ring at {:?}", self.rest())));
        };
        while self.eat("[") {
            let end = self.rest().find(']').ok_or_else(|| WittError::parse("unclosed variable list"))?;
            let names: Vec<&str> = self.rest()[..end].split(',').collect();
            if names.iter().any(|n| n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')) {
                return Err(WittError::parse(format!("bad variable list {:?}", &self.rest()[..end])));
            }
            ring = RingSpec::polynomial(ring, &names)?;
            self.pos += end + 1;
        }
        Ok(ring)
    }

    fn set(&mut self) -> Result<TruncationSet> {
        let rest = self.rest();
        let end = if rest.starts_with('{') {
            rest.find('}').map(|i| i + 1)
        } else if rest.starts_with("ptyp(") {
            rest.find(')').map(|i| i + 1)
        } else {
            rest.find(',')
        }
        .ok_or_else(|| WittError::parse(format!("unterminated truncation set at {rest:?}")))?;
        let set = TruncationSet::parse(&rest[..end])?;
        self.pos += end;
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["Z", "Z/8", "Q", "Z[x,y]", "Z/3[x]", "sz(Z)", "series(Z,12)", "W({1,2},Z)", "W({1,2},W({1,2,4},Z/4))"] {
            let ring = RingSpec::parse(s).unwrap();
            assert_eq!(ring.to_string(), s);
        }
        let w = RingSpec::parse("W(div24,Z)").unwrap();
        assert_eq!(w.to_string(), "W({1,2,3,4,6,8,12,24},Z)");
        assert!(RingSpec::parse("Z/1").is_err());
        assert!(RingSpec::parse("R").is_err());
        assert!(RingSpec::parse("Z[x,x]").is_err());
    }

    #[test]
    fn scalars() {
        let z5 = RingSpec::parse("Z/5").unwrap();
        assert_eq!(z5.parse_scalar("-1").unwrap(), Value::Mod(4));
        assert_eq!(z5.parse_scalar("1/2").unwrap(), Value::Mod(3));
        let q = RingSpec::parse("Q").unwrap();
        assert_eq!(q.format_value(&q.parse_scalar("6/4").unwrap()), "3/2");
        assert!(RingSpec::parse("Z").unwrap().parse_scalar("1/2").is_err());
    }

    #[test]
    fn series_text() {
        let s = RingSpec::parse("series(Z,5)").unwrap();
        let v = Value::Series(vec![Value::int(1), Value::int(2), Value::int(3), Value::int(0), Value::int(0)]);
        assert_eq!(s.format_value(&v), "1 + 2*t + 3*t^2 (mod t^5)");
    }
}
