//! Universal structure polynomials of the big Witt functor.
//!
//! Sum, product and negation polynomials, the Frobenius components
//! `f_{m,n}` and the comonad components `δ_{e,n}` are all solved from their
//! ghost equations by recursion over divisors, dividing exactly by `n` at
//! each step. A failed division is reported as `IntegralityViolation`.

mod cache;
pub mod poly;

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;

use crate::arith::divisors;
use crate::error::{Result, WittError};
use crate::ring::{Ring, RingElement, RingSpec, Value};
use crate::truncation::TruncationSet;

pub use poly::{Family, IntPoly, Monomial, Var};

/// Default bound on the index measure of computable keys.
pub const DEFAULT_CEILING: u64 = 64;
/// The ceiling can never be raised above this.
pub const HARD_MAX_CEILING: u64 = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UnivOp {
    Sum,
    Prod,
    Neg,
    Frobenius(u64),
    Delta(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnivPolyKey {
    pub op: UnivOp,
    pub index: u64,
}

impl UnivPolyKey {
    pub fn new(op: UnivOp, index: u64) -> Result<Self> {
        let valid = index >= 1
            && match op {
                UnivOp::Frobenius(m) | UnivOp::Delta(m) => m >= 1,
                _ => true,
            };
        if !valid {
            return Err(WittError::InvalidInput(format!("invalid universal polynomial key {op:?}/{index}")));
        }
        Ok(UnivPolyKey { op, index })
    }

    pub fn sum(n: u64) -> Self {
        UnivPolyKey { op: UnivOp::Sum, index: n }
    }

    pub fn prod(n: u64) -> Self {
        UnivPolyKey { op: UnivOp::Prod, index: n }
    }

    pub fn neg(n: u64) -> Self {
        UnivPolyKey { op: UnivOp::Neg, index: n }
    }

    pub fn frobenius(m: u64, n: u64) -> Self {
        UnivPolyKey { op: UnivOp::Frobenius(m), index: n }
    }

    pub fn delta(e: u64, n: u64) -> Self {
        UnivPolyKey { op: UnivOp::Delta(e), index: n }
    }

    /// The largest Witt index the polynomial depends on.
    pub fn reach(&self) -> u64 {
        match self.op {
            UnivOp::Sum | UnivOp::Prod | UnivOp::Neg => self.index,
            UnivOp::Frobenius(m) | UnivOp::Delta(m) => m * self.index,
        }
    }

    fn with_index(&self, index: u64) -> Self {
        UnivPolyKey { op: self.op, index }
    }
}

impl fmt::Display for UnivPolyKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.op {
            UnivOp::Sum => write!(f, "sum:{}", self.index),
            UnivOp::Prod => write!(f, "prod:{}", self.index),
            UnivOp::Neg => write!(f, "neg:{}", self.index),
            UnivOp::Frobenius(m) => write!(f, "frob:{m}:{}", self.index),
            UnivOp::Delta(e) => write!(f, "delta:{e}:{}", self.index),
        }
    }
}

impl FromStr for UnivPolyKey {
    type Err = WittError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || WittError::parse(format!("bad key {s:?}"));
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad());
        let (op, index) = match parts.as_slice() {
            ["sum", n] => (UnivOp::Sum, num(n)?),
            ["prod", n] => (UnivOp::Prod, num(n)?),
            ["neg", n] => (UnivOp::Neg, num(n)?),
            ["frob", m, n] => (UnivOp::Frobenius(num(m)?), num(n)?),
            ["delta", e, n] => (UnivOp::Delta(num(e)?), num(n)?),
            _ => return Err(bad()),
        };
        UnivPolyKey::new(op, index)
    }
}

/// The ghost polynomial `w_n = Σ_{d|n} d·v_d^{n/d}` in one variable family.
pub fn ghost_poly(n: u64, family: Family) -> IntPoly {
    divisors(n)
        .into_iter()
        .map(|d| IntPoly::monomial(d, Var::new(family, d), (n / d) as u32))
        .fold(IntPoly::zero(), |acc, t| acc.add(&t))
}

/// `Σ_{d|n, d<n} d·x_d^{n/d}` for an already-known family of polynomials.
fn lower_ghost_terms(n: u64, mut known: impl FnMut(u64) -> Result<Arc<IntPoly>>) -> Result<IntPoly> {
    let mut acc = IntPoly::zero();
    for d in divisors(n).into_iter().filter(|&d| d < n) {
        let p = known(d)?;
        acc = acc.add(&p.pow(n / d).scale(&BigInt::from(d)));
    }
    Ok(acc)
}

/// Memo table of universal polynomials with a computation ceiling.
///
/// Readers share the table; a missing entry is computed without holding the
/// lock and inserted afterwards. Two threads racing on the same key insert
/// identical values.
#[derive(Debug)]
pub struct UnivCache {
    polys: RwLock<HashMap<UnivPolyKey, Arc<IntPoly>>>,
    delta_ghosts: RwLock<HashMap<(u64, u64), Arc<IntPoly>>>,
    ceiling: AtomicU64,
}

impl Default for UnivCache {
    fn default() -> Self {
        UnivCache::new()
    }
}

impl UnivCache {
    pub fn new() -> Self {
        UnivCache {
            polys: RwLock::new(HashMap::new()),
            delta_ghosts: RwLock::new(HashMap::new()),
            ceiling: AtomicU64::new(DEFAULT_CEILING),
        }
    }

    pub fn ceiling(&self) -> u64 {
        self.ceiling.load(Ordering::Relaxed)
    }

    pub fn set_ceiling(&self, ceiling: u64) -> Result<()> {
        if ceiling == 0 || ceiling > HARD_MAX_CEILING {
            return Err(WittError::InvalidInput(format!(
                "ceiling {ceiling} outside 1..={HARD_MAX_CEILING}"
            )));
        }
        self.ceiling.store(ceiling, Ordering::Relaxed);
        Ok(())
    }

    pub fn check(&self, key: &UnivPolyKey) -> Result<()> {
        let ceiling = self.ceiling();
        if key.reach() > ceiling {
            return Err(WittError::CeilingExceeded { key: key.to_string(), ceiling });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.polys.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn keys(&self) -> Vec<UnivPolyKey> {
        let mut keys: Vec<_> = self.polys.read().expect("cache lock").keys().copied().collect();
        keys.sort();
        keys
    }

    pub fn cached(&self, key: &UnivPolyKey) -> Option<Arc<IntPoly>> {
        self.polys.read().expect("cache lock").get(key).cloned()
    }

    /// Stores a polynomial under `key`, replacing any previous entry.
    pub fn insert(&self, key: UnivPolyKey, poly: IntPoly) {
        self.polys.write().expect("cache lock").insert(key, Arc::new(poly));
    }

    /// The polynomial for `key`, computed on demand; respects the ceiling.
    pub fn get(&self, key: UnivPolyKey) -> Result<Arc<IntPoly>> {
        self.check(&key)?;
        self.get_unchecked(key)
    }

    /// Like [`get`](Self::get) without the ceiling guard; used once a
    /// caller has already validated the truncation set it works over.
    pub(crate) fn get_unchecked(&self, key: UnivPolyKey) -> Result<Arc<IntPoly>> {
        if let Some(p) = self.cached(&key) {
            return Ok(p);
        }
        let poly = Arc::new(self.compute(key)?);
        let mut table = self.polys.write().expect("cache lock");
        Ok(table.entry(key).or_insert(poly).clone())
    }

    fn compute(&self, key: UnivPolyKey) -> Result<IntPoly> {
        let n = key.index;
        let target = match key.op {
            UnivOp::Sum => ghost_poly(n, Family::A).add(&ghost_poly(n, Family::B)),
            UnivOp::Prod => ghost_poly(n, Family::A).mul(&ghost_poly(n, Family::B)),
            UnivOp::Neg => ghost_poly(n, Family::A).neg(),
            UnivOp::Frobenius(m) => ghost_poly(m * n, Family::A),
            UnivOp::Delta(e) => (*self.delta_ghost(e, n)?).clone(),
        };
        let lower = lower_ghost_terms(n, |d| self.get_unchecked(key.with_index(d)))?;
        target
            .sub(&lower)
            .exact_div(&BigInt::from(n))
            .ok_or(WittError::IntegralityViolation { key: key.to_string(), divisor: n })
    }

    /// `w_n(Δ_e(a))`, solved from `Σ_{k|e} k·w_n(Δ_k(a))^{e/k} = w_{en}(a)`.
    fn delta_ghost(&self, e: u64, n: u64) -> Result<Arc<IntPoly>> {
        if let Some(p) = self.delta_ghosts.read().expect("cache lock").get(&(e, n)) {
            return Ok(p.clone());
        }
        let lower = lower_ghost_terms(e, |k| self.delta_ghost(k, n))?;
        let poly = ghost_poly(e * n, Family::A)
            .sub(&lower)
            .exact_div(&BigInt::from(e))
            .ok_or(WittError::IntegralityViolation { key: format!("delta-ghost:{e}:{n}"), divisor: e })?;
        let poly = Arc::new(poly);
        self.delta_ghosts.write().expect("cache lock").insert((e, n), poly.clone());
        Ok(poly)
    }

    /// Computes every key whose reach is at most `up_to`.
    pub fn warm(&self, up_to: u64) -> Result<usize> {
        let mut count = 0;
        for n in 1..=up_to {
            for key in [UnivPolyKey::sum(n), UnivPolyKey::prod(n), UnivPolyKey::neg(n)] {
                self.get(key)?;
                count += 1;
            }
        }
        for m in 2..=up_to {
            for n in 1..=up_to / m {
                self.get(UnivPolyKey::frobenius(m, n))?;
                self.get(UnivPolyKey::delta(m, n))?;
                count += 2;
            }
        }
        Ok(count)
    }
}

static GLOBAL: OnceLock<Arc<UnivCache>> = OnceLock::new();

thread_local! {
    static ACTIVE: RefCell<Option<Arc<UnivCache>>> = const { RefCell::new(None) };
}

/// The process-wide cache.
pub fn global() -> &'static Arc<UnivCache> {
    GLOBAL.get_or_init(|| Arc::new(UnivCache::new()))
}

/// The cache Witt arithmetic on this thread currently uses.
pub fn active() -> Arc<UnivCache> {
    ACTIVE.with(|a| a.borrow().clone()).unwrap_or_else(|| global().clone())
}

/// Runs `f` with `cache` as the active cache on this thread.
pub fn with_cache<R>(cache: Arc<UnivCache>, f: impl FnOnce() -> R) -> R {
    struct Restore(Option<Arc<UnivCache>>);
    impl Drop for Restore {
        fn drop(&mut self) {
            let prev = self.0.take();
            ACTIVE.with(|a| *a.borrow_mut() = prev);
        }
    }
    let prev = ACTIVE.with(|a| a.borrow_mut().replace(cache));
    let _restore = Restore(prev);
    f()
}

/// Universal polynomial for `key` from the active cache.
pub fn universal_poly(key: UnivPolyKey) -> Result<Arc<IntPoly>> {
    active().get(key)
}

/// Rejects truncation sets whose sum/product polynomials exceed the ceiling.
pub fn check_set_ceiling(set: &TruncationSet) -> Result<()> {
    match set.largest() {
        Some(n) => active().check(&UnivPolyKey::sum(n)),
        None => Ok(()),
    }
}

/// Evaluates `poly` in `target` with values from `assignment`.
pub fn specialize(poly: &IntPoly, assignment: &HashMap<Var, RingElement>, target: &Ring) -> Result<RingElement> {
    for (var, value) in assignment {
        if value.ring() != target {
            return Err(WittError::SpecMismatch(value.ring().to_string(), format!("{target} (for {var})")));
        }
    }
    if let Some(v) = poly.variables().into_iter().find(|v| !assignment.contains_key(v)) {
        return Err(WittError::MissingVariable(v.to_string()));
    }
    let value = eval_raw(poly, target, &mut PowerTable::new(|v| assignment[&v].value().clone()));
    Ok(RingElement::from_parts(target.clone(), value))
}

/// Lazily extended table of powers of the assigned values.
pub(crate) struct PowerTable<F> {
    lookup: F,
    powers: HashMap<Var, Vec<Value>>,
}

impl<F: Fn(Var) -> Value> PowerTable<F> {
    pub(crate) fn new(lookup: F) -> Self {
        PowerTable { lookup, powers: HashMap::new() }
    }

    fn ensure(&mut self, ring: &RingSpec, v: Var, e: u32) {
        let lookup = &self.lookup;
        let list = self.powers.entry(v).or_insert_with(|| vec![lookup(v)]);
        while list.len() < e as usize {
            let next = ring.mul(list.last().expect("nonempty"), &list[0]);
            list.push(next);
        }
    }

    fn get(&self, v: Var, e: u32) -> &Value {
        &self.powers[&v][e as usize - 1]
    }
}

/// Evaluates a polynomial term by term, sharing powers through `table`.
pub(crate) fn eval_raw<F: Fn(Var) -> Value>(poly: &IntPoly, ring: &RingSpec, table: &mut PowerTable<F>) -> Value {
    if let RingSpec::IntegersMod(m) = *ring {
        return Value::Mod(eval_mod(poly, m, ring, table));
    }
    let mut total = ring.zero();
    for (mono, coef) in poly.terms() {
        for (v, e) in mono {
            table.ensure(ring, *v, *e);
        }
        let term = match mono.split_first() {
            None => ring.from_int(coef),
            Some(((v0, e0), rest)) => {
                let mut acc = table.get(*v0, *e0).clone();
                for (v, e) in rest {
                    acc = ring.mul(&acc, table.get(*v, *e));
                }
                ring.mul_int(&acc, coef)
            }
        };
        total = ring.add(&total, &term);
    }
    total
}

fn residue(k: &BigInt, m: u64) -> u128 {
    let m = u128::from(m);
    let r = k.magnitude().iter_u64_digits().rev().fold(0u128, |r, d| ((r << 64) | u128::from(d)) % m);
    if k.sign() == num_bigint::Sign::Minus && r != 0 {
        m - r
    } else {
        r
    }
}

/// Word-sized arithmetic for `Z/m`; same terms, same order.
fn eval_mod<F: Fn(Var) -> Value>(poly: &IntPoly, m: u64, ring: &RingSpec, table: &mut PowerTable<F>) -> u64 {
    let word = |v: &Value| match v {
        Value::Mod(a) => u128::from(*a),
        other => unreachable!("non-residue {other:?} in Z/{m}"),
    };
    let modulus = u128::from(m);
    let mut total = 0u128;
    'terms: for (mono, coef) in poly.terms() {
        let mut acc = residue(coef, m);
        for (v, e) in mono {
            if acc == 0 {
                continue 'terms;
            }
            table.ensure(ring, *v, *e);
            acc = acc * word(table.get(*v, *e)) % modulus;
        }
        total = (total + acc) % modulus;
    }
    total as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(d: u64) -> IntPoly {
        IntPoly::var(Var::a(d))
    }

    fn b(d: u64) -> IntPoly {
        IntPoly::var(Var::b(d))
    }

    fn k(c: i64) -> BigInt {
        BigInt::from(c)
    }

    #[test]
    fn ghost_polynomials() {
        assert_eq!(ghost_poly(1, Family::A), a(1));
        assert_eq!(ghost_poly(2, Family::A), a(1).pow(2).add(&a(2).scale(&k(2))));
        assert_eq!(
            ghost_poly(4, Family::A),
            a(1).pow(4).add(&a(2).pow(2).scale(&k(2))).add(&a(4).scale(&k(4)))
        );
    }

    #[test]
    fn small_universal_polynomials() {
        let cache = UnivCache::new();
        assert_eq!(*cache.get(UnivPolyKey::sum(1)).unwrap(), a(1).add(&b(1)));
        assert_eq!(*cache.get(UnivPolyKey::sum(2)).unwrap(), a(2).add(&b(2)).sub(&a(1).mul(&b(1))));
        assert_eq!(
            *cache.get(UnivPolyKey::prod(2)).unwrap(),
            a(1).pow(2).mul(&b(2)).add(&b(1).pow(2).mul(&a(2))).add(&a(2).mul(&b(2)).scale(&k(2)))
        );
        assert_eq!(*cache.get(UnivPolyKey::neg(2)).unwrap(), a(2).neg().sub(&a(1).pow(2)));
        assert_eq!(*cache.get(UnivPolyKey::frobenius(2, 1)).unwrap(), a(1).pow(2).add(&a(2).scale(&k(2))));
        assert_eq!(
            *cache.get(UnivPolyKey::frobenius(2, 2)).unwrap(),
            a(4).scale(&k(2)).sub(&a(2).pow(2)).sub(&a(1).pow(2).mul(&a(2)).scale(&k(2)))
        );
        assert_eq!(*cache.get(UnivPolyKey::delta(2, 1)).unwrap(), a(2));
        assert_eq!(*cache.get(UnivPolyKey::delta(1, 3)).unwrap(), a(3));
    }

    #[test]
    fn zero_constant_terms_and_support() {
        let cache = UnivCache::new();
        for n in [1, 2, 3, 4, 6] {
            for key in [UnivPolyKey::sum(n), UnivPolyKey::prod(n), UnivPolyKey::neg(n), UnivPolyKey::frobenius(2, n)] {
                let p = cache.get(key).unwrap();
                assert!(p.constant_term() == BigInt::from(0), "{key}");
                assert!(p.variables().iter().all(|v| key.reach() % v.index() == 0), "{key}");
            }
        }
    }

    #[test]
    fn ceiling_guard() {
        let cache = UnivCache::new();
        cache.set_ceiling(8).unwrap();
        assert!(matches!(cache.get(UnivPolyKey::frobenius(3, 3)), Err(WittError::CeilingExceeded { .. })));
        assert!(cache.get(UnivPolyKey::frobenius(2, 4)).is_ok());
        assert!(cache.set_ceiling(HARD_MAX_CEILING + 1).is_err());
    }

    #[test]
    fn key_strings() {
        for key in [UnivPolyKey::sum(12), UnivPolyKey::frobenius(2, 3), UnivPolyKey::delta(4, 1)] {
            assert_eq!(key.to_string().parse::<UnivPolyKey>().unwrap(), key);
        }
        assert!("frob:0:2".parse::<UnivPolyKey>().is_err());
    }

    #[test]
    fn specialize_examples() {
        let z = RingSpec::integers();
        let s2 = universal_poly(UnivPolyKey::sum(2)).unwrap();
        let assign = |vals: &[(Var, i64)]| -> HashMap<Var, RingElement> {
            vals.iter().map(|(v, x)| (*v, RingElement::from_int(&z, *x))).collect()
        };
        let a10_b10 = assign(&[(Var::a(1), 1), (Var::a(2), 0), (Var::b(1), 1), (Var::b(2), 0)]);
        assert_eq!(specialize(&s2, &a10_b10, &z).unwrap(), RingElement::from_int(&z, -1));
        let p2 = universal_poly(UnivPolyKey::prod(2)).unwrap();
        let a10_b01 = assign(&[(Var::a(1), 1), (Var::a(2), 0), (Var::b(1), 0), (Var::b(2), 1)]);
        assert_eq!(specialize(&p2, &a10_b01, &z).unwrap(), RingElement::from_int(&z, 1));
        let zeros = assign(&[(Var::a(1), 0), (Var::a(2), 0), (Var::b(1), 0), (Var::b(2), 0)]);
        assert!(specialize(&p2, &zeros, &z).unwrap().is_zero());
        let partial = assign(&[(Var::a(1), 0)]);
        assert!(matches!(specialize(&p2, &partial, &z), Err(WittError::MissingVariable(_))));
        let z3 = RingSpec::integers_mod(3).unwrap();
        let mut mixed = a10_b01.clone();
        mixed.insert(Var::a(1), RingElement::from_int(&z3, 1));
        assert!(matches!(specialize(&p2, &mixed, &z), Err(WittError::SpecMismatch(..))));
    }
}
