//! Sparse integer polynomials in the two variable families `a_d`, `b_d`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Result, WittError};

/// Variable family of a universal polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
}

/// A variable `a_d` or `b_d`. Ordered by index, then `a` before `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u64);

impl Var {
    pub fn a(d: u64) -> Var {
        Var(d << 1)
    }

    pub fn b(d: u64) -> Var {
        Var((d << 1) | 1)
    }

    pub fn new(family: Family, d: u64) -> Var {
        match family {
            Family::A => Var::a(d),
            Family::B => Var::b(d),
        }
    }

    pub fn family(self) -> Family {
        if self.0 & 1 == 0 {
            Family::A
        } else {
            Family::B
        }
    }

    pub fn index(self) -> u64 {
        self.0 >> 1
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.family() {
            Family::A => 'a',
            Family::B => 'b',
        };
        write!(f, "{letter}{}", self.index())
    }
}

impl FromStr for Var {
    type Err = WittError;

    fn from_str(s: &str) -> Result<Var> {
        let bad = || WittError::parse(format!("bad variable {s:?}"));
        let (family, digits) = match s.split_at_checked(1) {
            Some(("a", rest)) => (Family::A, rest),
            Some(("b", rest)) => (Family::B, rest),
            _ => return Err(bad()),
        };
        let d: u64 = digits.parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Var::new(family, d))
    }
}

/// Sorted `(variable, exponent)` pairs with positive exponents.
pub type Monomial = SmallVec<[(Var, u32); 4]>;

fn mono_mul(x: &Monomial, y: &Monomial) -> Monomial {
    let mut out = Monomial::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() && j < y.len() {
        match x[i].0.cmp(&y[j].0) {
            std::cmp::Ordering::Less => {
                out.push(x[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(y[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push((x[i].0, x[i].1 + y[j].1));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&x[i..]);
    out.extend_from_slice(&y[j..]);
    out
}

/// Canonical sparse polynomial over `Z`: terms sorted by monomial, no zero
/// coefficients. Equality is therefore equality of polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            IntPoly::zero()
        } else {
            IntPoly { terms: vec![(Monomial::new(), c)] }
        }
    }

    pub fn var(v: Var) -> Self {
        IntPoly { terms: vec![(smallvec::smallvec![(v, 1)], BigInt::one())] }
    }

    /// `c · v^e`.
    pub fn monomial(c: impl Into<BigInt>, v: Var, e: u32) -> Self {
        let c = c.into();
        if c.is_zero() {
            return IntPoly::zero();
        }
        if e == 0 {
            return IntPoly::constant(c);
        }
        IntPoly { terms: vec![(smallvec::smallvec![(v, e)], c)] }
    }

    fn from_map(map: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        IntPoly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn constant_term(&self) -> BigInt {
        match self.terms.first() {
            Some((m, c)) if m.is_empty() => c.clone(),
            _ => BigInt::zero(),
        }
    }

    /// Distinct variables, ascending.
    pub fn variables(&self) -> Vec<Var> {
        let mut vars: Vec<Var> = self.terms.iter().flat_map(|(m, _)| m.iter().map(|(v, _)| *v)).collect();
        vars.sort_unstable();
        vars.dedup();
        vars
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (mx, cx) = &self.terms[i];
            let (my, cy) = &other.terms[j];
            match mx.cmp(my) {
                std::cmp::Ordering::Less => {
                    out.push((mx.clone(), cx.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((my.clone(), cy.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = cx + cy;
                    if !c.is_zero() {
                        out.push((mx.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        IntPoly { terms: out }
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        if k.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect() }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut map: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len().max(other.len()) * 2);
        for (mx, cx) in &self.terms {
            for (my, cy) in &other.terms {
                let m = mono_mul(mx, my);
                let c = cx * cy;
                match map.get_mut(&m) {
                    Some(acc) => *acc += c,
                    None => {
                        map.insert(m, c);
                    }
                }
            }
        }
        IntPoly::from_map(map)
    }

    pub fn pow(&self, mut e: u64) -> IntPoly {
        let mut result = IntPoly::constant(1);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Divides every coefficient by `n`; `None` if some coefficient is not
    /// a multiple of `n`.
    pub fn exact_div(&self, n: &BigInt) -> Option<IntPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(n);
            if !r.is_zero() {
                return None;
            }
            terms.push((m.clone(), q));
        }
        Some(IntPoly { terms })
    }

    /// Every coefficient is a multiple of `n`.
    pub fn divisible_by(&self, n: &BigInt) -> bool {
        self.terms.iter().all(|(_, c)| (c % n).is_zero())
    }

    /// Substitutes integer values for the variables.
    pub fn eval_int(&self, value: impl Fn(Var) -> BigInt) -> BigInt {
        let mut cache: HashMap<Var, BigInt> = HashMap::new();
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m {
                let x = cache.entry(*v).or_insert_with(|| value(*v));
                t *= num_traits::pow(x.clone(), *e as usize);
            }
            total += t;
        }
        total
    }

    /// Renames variables; the map must be injective on the variables used.
    pub fn rename(&self, f: impl Fn(Var) -> Var) -> IntPoly {
        let mut map = HashMap::new();
        for (m, c) in &self.terms {
            let mut mono: Monomial = m.iter().map(|(v, e)| (f(*v), *e)).collect();
            mono.sort_unstable_by_key(|(v, _)| *v);
            *map.entry(mono).or_insert_with(BigInt::zero) += c;
        }
        IntPoly::from_map(map)
    }

    /// Canonical text form `coef*a1^2*b1 + coef*a2 + ...`; each term carries
    /// its signed coefficient.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            out.push_str(&c.to_string());
            for (v, e) in m {
                out.push('*');
                out.push_str(&v.to_string());
                if *e != 1 {
                    out.push('^');
                    out.push_str(&e.to_string());
                }
            }
        }
        out
    }

    pub fn from_text(s: &str) -> Result<IntPoly> {
        let s = s.trim();
        if s == "0" {
            return Ok(IntPoly::zero());
        }
        let mut map: HashMap<Monomial, BigInt> = HashMap::new();
        for term in s.split(" + ") {
            let mut factors = term.split('*');
            let coef = factors.next().unwrap_or_default();
            let c = BigInt::from_str(coef).map_err(|_| WittError::parse(format!("bad coefficient {coef:?}")))?;
            let mut mono = Monomial::new();
            for f in factors {
                let (v, e) = match f.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u32>().map_err(|_| WittError::parse(format!("bad exponent in {f:?}")))?),
                    None => (f, 1),
                };
                mono.push((v.parse()?, e));
            }
            mono.sort_unstable_by_key(|(v, _)| *v);
            if mono.windows(2).any(|w| w[0].0 == w[1].0) || mono.iter().any(|(_, e)| *e == 0) {
                return Err(WittError::parse(format!("non-canonical monomial {term:?}")));
            }
            *map.entry(mono).or_insert_with(BigInt::zero) += c;
        }
        Ok(IntPoly::from_map(map))
    }

    /// Largest absolute coefficient, handy for diagnostics.
    pub fn max_abs_coefficient(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
