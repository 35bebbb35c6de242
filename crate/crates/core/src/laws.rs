//! Executable law suites: the Witt-complex axioms and their consequences
//! for any implementation of [`WittComplex`], the comonad diagrams for `Δ`,
//! ring laws in `W_S(A)`, and the basic Frobenius/Verschiebung relations.
//!
//! Every suite is deterministic in its seed. A failing law keeps the first
//! counterexample it meets, serialized as JSON.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::arith::{ext_gcd, gcd, is_prime, lcm};
use crate::basis::{divided_frobenius_form, teich_basis, BasisWittInt, FormalOneForm};
use crate::drw::{crt_bracket, curly, DrwElement, DrwZ};
use crate::error::Result;
use crate::ring::{Ring, RingElement, RingSpec};
use crate::truncation::TruncationSet;
use crate::universal::{IntPoly, UnivCache, UnivPolyKey};
use crate::witt::{Strategy, WittVector};

/// The structure a Witt complex exposes: a graded ring over each
/// truncation set with `η`, `d`, `F_n`, `V_n`, `R_T^S` and `dlog η([-1])`.
pub trait WittComplex {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn name(&self) -> String;
    fn eta(&self, x: &BasisWittInt) -> Self::Elem;
    fn zero(&self, s: &TruncationSet) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn scale(&self, x: &Self::Elem, k: i64) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn d(&self, x: &Self::Elem) -> Self::Elem;
    fn frobenius(&self, m: u64, x: &Self::Elem) -> Self::Elem;
    /// `V_m` from the complex over `S/m` into the one over `s`.
    fn verschiebung(&self, m: u64, x: &Self::Elem, s: &TruncationSet) -> Self::Elem;
    fn restrict(&self, t: &TruncationSet, x: &Self::Elem) -> Self::Elem;
    fn dlog_minus_one(&self, s: &TruncationSet) -> Self::Elem;
    /// Homogeneous components; entry `q` has degree `q`.
    fn parts(&self, x: &Self::Elem) -> Vec<Self::Elem>;
    /// Additive generators together with their degrees.
    fn generators(&self, s: &TruncationSet) -> Vec<Self::Elem>;
    fn random(&self, s: &TruncationSet, rng: &mut ChaCha8Rng) -> Self::Elem;
    fn to_json(&self, x: &Self::Elem) -> Json;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.scale(y, -1))
    }
}

impl WittComplex for DrwZ {
    type Elem = DrwElement;

    fn name(&self) -> String {
        format!("drw-z ({:?})", self.mutation())
    }

    fn eta(&self, x: &BasisWittInt) -> DrwElement {
        DrwElement::eta(x)
    }

    fn zero(&self, s: &TruncationSet) -> DrwElement {
        DrwElement::zero(s)
    }

    fn add(&self, x: &DrwElement, y: &DrwElement) -> DrwElement {
        x.add(y).expect("law inputs share a set")
    }

    fn scale(&self, x: &DrwElement, k: i64) -> DrwElement {
        x.scale(&BigInt::from(k))
    }

    fn mul(&self, x: &DrwElement, y: &DrwElement) -> DrwElement {
        DrwZ::mul(self, x, y).expect("law inputs share a set")
    }

    fn d(&self, x: &DrwElement) -> DrwElement {
        DrwZ::d(self, x)
    }

    fn frobenius(&self, m: u64, x: &DrwElement) -> DrwElement {
        DrwZ::frobenius(self, m, x)
    }

    fn verschiebung(&self, m: u64, x: &DrwElement, s: &TruncationSet) -> DrwElement {
        DrwZ::verschiebung(self, m, x, s).expect("law inputs live over S/m")
    }

    fn restrict(&self, t: &TruncationSet, x: &DrwElement) -> DrwElement {
        x.restrict(t).expect("law restricts to a subset")
    }

    fn dlog_minus_one(&self, s: &TruncationSet) -> DrwElement {
        DrwElement::dlog_minus_one(s)
    }

    fn parts(&self, x: &DrwElement) -> Vec<DrwElement> {
        x.parts().to_vec()
    }

    fn generators(&self, s: &TruncationSet) -> Vec<DrwElement> {
        let mut g: Vec<_> = s.iter().map(|n| DrwElement::v(s, n)).collect();
        g.extend(s.iter().filter(|&n| n > 1).map(|n| DrwElement::dv(s, n)));
        g
    }

    fn random(&self, s: &TruncationSet, rng: &mut ChaCha8Rng) -> DrwElement {
        let deg0 = random_basis(s, rng);
        let deg1: Vec<BigInt> = s.iter().map(|n| BigInt::from(rng.gen_range(0..n))).collect();
        DrwElement::new(deg0, &deg1).expect("aligned with the set")
    }

    fn to_json(&self, x: &DrwElement) -> Json {
        x.to_json()
    }
}

/// Coefficients uniform in `[-9, 9]`.
pub fn random_basis(s: &TruncationSet, rng: &mut ChaCha8Rng) -> BasisWittInt {
    let coeffs: Vec<BigInt> = s.iter().map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
    BasisWittInt::new(s, coeffs).expect("aligned with the set")
}

/// Outcome of one law.
#[derive(Debug, Clone, Serialize)]
pub struct LawOutcome {
    pub law: String,
    pub passed: bool,
    pub checks: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Json>,
}

/// Results of a suite run, in the order the laws were executed.
#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub subject: String,
    pub set: TruncationSet,
    pub trials: usize,
    pub seed: u64,
    pub laws: Vec<LawOutcome>,
    pub elapsed_ms: f64,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &LawOutcome> {
        self.laws.iter().filter(|l| !l.passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawOutcome> {
        self.laws.iter().find(|l| l.law == name)
    }

    pub fn total_checks(&self) -> u64 {
        self.laws.iter().map(|l| l.checks).sum()
    }

    pub fn to_json(&self) -> Json {
        serde_json::to_value(self).expect("report serializes")
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "suite {} on {} over {} (trials {}, seed {}): {}",
            self.suite,
            self.subject,
            self.set,
            self.trials,
            self.seed,
            if self.passed() { "PASS" } else { "FAIL" }
        )?;
        for l in &self.laws {
            write!(f, "  {:<6} {:<40} {:>7} checks", if l.passed { "ok" } else { "FAIL" }, l.law, l.checks)?;
            if let Some(c) = &l.counterexample {
                write!(f, "\n         counterexample: {c}")?;
            }
            writeln!(f)?;
        }
        write!(f, "  {} checks in {:.1} ms", self.total_checks(), self.elapsed_ms)
    }
}

/// Accumulates outcomes; keeps the first counterexample of each law.
struct Recorder {
    laws: Vec<LawOutcome>,
    index: BTreeMap<String, usize>,
}

impl Recorder {
    fn new() -> Self {
        Recorder { laws: Vec::new(), index: BTreeMap::new() }
    }

    fn entry(&mut self, law: &str) -> &mut LawOutcome {
        let i = *self.index.entry(law.to_string()).or_insert_with(|| {
            self.laws.push(LawOutcome { law: law.to_string(), passed: true, checks: 0, counterexample: None });
            self.laws.len() - 1
        });
        &mut self.laws[i]
    }

    fn check(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> Json) {
        let e = self.entry(law);
        e.checks += 1;
        if !ok && e.passed {
            e.passed = false;
            e.counterexample = Some(witness());
        }
    }

    /// Runs one check; an evaluation error counts as a failure of `law`.
    fn attempt(&mut self, law: &str, input: &Json, f: impl FnOnce() -> Result<(bool, Json)>) {
        let (ok, detail) = match f() {
            Ok(v) => v,
            Err(e) => (false, json!({"error": e.name(), "message": e.to_string()})),
        };
        self.check(law, ok, || json!({"input": input, "detail": detail}));
    }

    /// An evaluation error inside a trial is itself a failure.
    fn record(&mut self, outcome: Result<()>) {
        let err = outcome.as_ref().err().map(|e| json!({"error": e.name(), "message": e.to_string()}));
        self.check("evaluation", err.is_none(), || err.unwrap_or(Json::Null));
    }

    fn finish(self, suite: &str, subject: String, set: &TruncationSet, trials: usize, seed: u64, start: Instant) -> LawReport {
        LawReport {
            suite: suite.to_string(),
            subject,
            set: set.clone(),
            trials,
            seed,
            laws: self.laws,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// Generators followed by `trials` random elements, one pool per set.
struct Pools<'a, C: WittComplex> {
    imp: &'a C,
    trials: usize,
    rng: ChaCha8Rng,
    cache: BTreeMap<TruncationSet, Vec<C::Elem>>,
}

impl<'a, C: WittComplex> Pools<'a, C> {
    fn get(&mut self, s: &TruncationSet) -> Vec<C::Elem> {
        if let Some(p) = self.cache.get(s) {
            return p.clone();
        }
        let mut pool = self.imp.generators(s);
        for _ in 0..self.trials {
            pool.push(self.imp.random(s, &mut self.rng));
        }
        self.cache.insert(s.clone(), pool.clone());
        pool
    }
}

/// Pairs: every pair of generators, then consecutive random elements.
fn pairs<T: Clone>(pool: &[T], gens: usize) -> Vec<(T, T)> {
    let mut out = Vec::new();
    for x in &pool[..gens] {
        for y in &pool[..gens] {
            out.push((x.clone(), y.clone()));
        }
    }
    let rand = &pool[gens..];
    for i in 0..rand.len() {
        out.push((rand[i].clone(), rand[(i + 1) % rand.len()].clone()));
        out.push((rand[i].clone(), pool[i % gens.max(1)].clone()));
    }
    out
}

/// Runs axioms (i)-(v), the derived relations, the projection formula,
/// the dg-ideal generators and divided-Frobenius compatibility.
pub fn check_witt_complex<C: WittComplex>(imp: &C, s: &TruncationSet, trials: usize, seed: u64) -> LawReport {
    let start = Instant::now();
    let mut r = Recorder::new();
    let mut pools = Pools { imp, trials, rng: ChaCha8Rng::seed_from_u64(seed), cache: BTreeMap::new() };
    let j = |x: &C::Elem| imp.to_json(x);
    let members: Vec<u64> = s.iter().collect();
    let gen_count = |t: &TruncationSet| imp.generators(t).len();

    let pool = pools.get(s);
    let gens = gen_count(s);
    let ps = pairs(&pool, gens);
    let one = imp.eta(&BasisWittInt::one(s));
    let dlog = imp.dlog_minus_one(s);

    // graded ring
    for (i, (x, y)) in ps.iter().enumerate() {
        let z = &pool[(i * 7 + 3) % pool.len()];
        let (l, rr) = (imp.mul(&imp.mul(x, y), z), imp.mul(x, &imp.mul(y, z)));
        r.check("ring.associativity", l == rr, || json!({"x": j(x), "y": j(y), "z": j(z), "lhs": j(&l), "rhs": j(&rr)}));
        let (l, rr) = (imp.mul(x, &imp.add(y, z)), imp.add(&imp.mul(x, y), &imp.mul(x, z)));
        r.check("ring.distributivity", l == rr, || json!({"x": j(x), "y": j(y), "z": j(z), "lhs": j(&l), "rhs": j(&rr)}));
        let (xp, yp) = (imp.parts(x), imp.parts(y));
        for (p, xh) in xp.iter().enumerate() {
            for (q, yh) in yp.iter().enumerate() {
                let sign = if p * q % 2 == 1 { -1 } else { 1 };
                let (l, rr) = (imp.mul(xh, yh), imp.scale(&imp.mul(yh, xh), sign));
                r.check("ring.graded_commutativity", l == rr, || json!({"x": j(xh), "y": j(yh), "lhs": j(&l), "rhs": j(&rr)}));
                // axiom (i), Leibniz on homogeneous parts
                let sign = if p % 2 == 1 { -1 } else { 1 };
                let l = imp.d(&imp.mul(xh, yh));
                let rr = imp.add(&imp.mul(&imp.d(xh), yh), &imp.scale(&imp.mul(xh, &imp.d(yh)), sign));
                r.check("axiom_i.leibniz", l == rr, || json!({"x": j(xh), "y": j(yh), "lhs": j(&l), "rhs": j(&rr)}));
            }
        }
    }
    for x in &pool {
        r.check("ring.unit", imp.mul(&one, x) == *x, || json!({"x": j(x)}));
        let (l, rr) = (imp.d(&imp.d(x)), imp.mul(&dlog, &imp.d(x)));
        r.check("axiom_i.dd", l == rr, || json!({"x": j(x), "lhs": j(&l), "rhs": j(&rr)}));
        r.check("axiom_ii.identity_maps", imp.frobenius(1, x) == *x && imp.verschiebung(1, x, s) == *x, || json!({"x": j(x)}));
    }
    for &m in &members {
        for &n in &members {
            let sum = (crt_bracket(m, n).value + crt_bracket(n, m).value) % lcm(m, n);
            r.check("axiom_i.bracket_sum", sum == gcd(m, n) % lcm(m, n), || json!({"m": m, "n": n, "sum": sum}));
        }
    }

    // η is a ring isomorphism onto degree 0 compatible with F and V
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let bases: Vec<BasisWittInt> = (0..trials.max(1)).map(|_| random_basis(s, &mut rng)).collect();
    for (i, a) in bases.iter().enumerate() {
        let b = &bases[(i + 1) % bases.len()];
        let witt = a.to_coords().and_then(|x| Ok(x.mul(&b.to_coords()?)?)).and_then(|w| BasisWittInt::from_coords(&w));
        let ok = witt.as_ref().map(|ab| imp.eta(ab) == imp.mul(&imp.eta(a), &imp.eta(b))).unwrap_or(false);
        r.check("eta.ring_map", ok, || json!({"a": a.to_json(), "b": b.to_json()}));
        for &n in &members {
            let fa = a.to_coords().and_then(|x| x.frobenius(n)).and_then(|w| BasisWittInt::from_coords(&w));
            let ok = fa.map(|fa| imp.frobenius(n, &imp.eta(a)) == imp.eta(&fa)).unwrap_or(false);
            r.check("axiom_ii.eta_frobenius", ok, || json!({"n": n, "a": a.to_json()}));
            let q = s.quotient(n);
            let aq = a.restrict(&q.intersection(s)).ok().filter(|_| q.is_subset(s));
            if let Some(aq) = aq {
                let va = aq.to_coords().and_then(|x| WittVector::verschiebung(n, &x, s)).and_then(|w| BasisWittInt::from_coords(&w));
                let ok = va.map(|va| imp.verschiebung(n, &imp.eta(&aq), s) == imp.eta(&va)).unwrap_or(false);
                r.check("axiom_ii.eta_verschiebung", ok, || json!({"n": n, "a": aq.to_json()}));
            }
        }
    }

    // axioms (ii)-(iv) and the derived relations, per index
    for &n in &members {
        let sn = s.quotient(n);
        let qpool = pools.get(&sn);
        let dlog_n = imp.dlog_minus_one(&sn);
        for y in &qpool {
            let vy = imp.verschiebung(n, y, s);
            let (l, rr) = (imp.frobenius(n, &vy), imp.scale(y, n as i64));
            r.check("axiom_ii.fv_equals_n", l == rr, || json!({"n": n, "y": j(y), "lhs": j(&l), "rhs": j(&rr)}));
            let l = imp.frobenius(n, &imp.d(&vy));
            let rr = imp.add(&imp.d(y), &imp.scale(&imp.mul(&dlog_n, y), n as i64 - 1));
            r.check("axiom_iv.fdv", l == rr, || json!({"n": n, "y": j(y), "lhs": j(&l), "rhs": j(&rr)}));
            let (l, rr) = (imp.verschiebung(n, &imp.d(y), s), imp.scale(&imp.d(&vy), n as i64));
            r.check("lemma.vd_equals_ndv", l == rr, || json!({"n": n, "y": j(y), "lhs": j(&l), "rhs": j(&rr)}));
        }
        for (i, x) in pool.iter().enumerate() {
            let y = &qpool[i % qpool.len()];
            let l = imp.mul(x, &imp.verschiebung(n, y, s));
            let rr = imp.verschiebung(n, &imp.mul(&imp.frobenius(n, x), y), s);
            r.check("axiom_iii.projection_formula", l == rr, || json!({"n": n, "x": j(x), "y": j(y), "lhs": j(&l), "rhs": j(&rr)}));
            let (l, rr) = (imp.d(&imp.frobenius(n, x)), imp.scale(&imp.frobenius(n, &imp.d(x)), n as i64));
            r.check("lemma.df_equals_nfd", l == rr, || json!({"n": n, "x": j(x), "lhs": j(&l), "rhs": j(&rr)}));
        }
        for (x, y) in &ps {
            let l = imp.frobenius(n, &imp.mul(x, y));
            let rr = imp.mul(&imp.frobenius(n, x), &imp.frobenius(n, y));
            let sum = imp.frobenius(n, &imp.add(x, y)) == imp.add(&imp.frobenius(n, x), &imp.frobenius(n, y));
            r.check("axiom_iii.frobenius_ring_map", l == rr && sum, || json!({"n": n, "x": j(x), "y": j(y), "lhs": j(&l), "rhs": j(&rr)}));
        }
        let f1 = imp.frobenius(n, &one);
        r.check("axiom_iii.frobenius_ring_map", f1 == imp.eta(&BasisWittInt::one(&sn)), || json!({"n": n, "image_of_one": j(&f1)}));
        let fd = imp.frobenius(n, &dlog);
        r.check("lemma.frobenius_dlog", fd == dlog_n, || json!({"n": n, "lhs": j(&fd), "rhs": j(&dlog_n)}));

        for &m in &members {
            let smn = sn.quotient(m);
            for x in pool.iter().take(gens + trials.min(40)) {
                let (l, rr) = (imp.frobenius(m, &imp.frobenius(n, x)), imp.frobenius(m * n, x));
                r.check("axiom_ii.frobenius_composition", l == rr, || json!({"m": m, "n": n, "x": j(x), "lhs": j(&l), "rhs": j(&rr)}));
            }
            if !s.contains(m * n) {
                continue;
            }
            let mpool = pools.get(&smn);
            for y in mpool.iter().take(gens + trials.min(40)) {
                let l = imp.verschiebung(n, &imp.verschiebung(m, y, &sn), s);
                let rr = imp.verschiebung(m * n, y, s);
                r.check("axiom_ii.verschiebung_composition", l == rr, || json!({"m": m, "n": n, "y": j(y), "lhs": j(&l), "rhs": j(&rr)}));
            }
            if gcd(m, n) == 1 {
                for y in qpool.iter().take(gens + trials.min(40)) {
                    let l = imp.frobenius(m, &imp.verschiebung(n, y, s));
                    let rr = imp.verschiebung(n, &imp.frobenius(m, y), &s.quotient(m));
                    r.check("axiom_ii.coprime_commute", l == rr, || json!({"m": m, "n": n, "y": j(y), "lhs": j(&l), "rhs": j(&rr)}));
                }
            }
        }
    }

    // the three-term formula for F_m dV_n, m, n | 12, several Bézout pairs
    for &m in members.iter().filter(|&&m| 12 % m == 0) {
        for &n in members.iter().filter(|&&n| 12 % n == 0) {
            let c = gcd(m, n);
            let (g, i0, j0) = ext_gcd(m as i128, n as i128);
            debug_assert_eq!(g as u64, c);
            let sn = s.quotient(n);
            let sc = s.quotient(c);
            let dlog_m = imp.dlog_minus_one(&s.quotient(m));
            let ys = pools.get(&sn);
            for y in ys.iter().take(gens + trials.min(40)) {
                let lhs = imp.frobenius(m, &imp.d(&imp.verschiebung(n, y, s)));
                let fv = imp.frobenius(m / c, &imp.verschiebung(n / c, y, &sc));
                let fvd = imp.frobenius(m / c, &imp.verschiebung(n / c, &imp.d(y), &sc));
                for k in -1i128..=1 {
                    let (i, jj) = (i0 + k * (n / c) as i128, j0 - k * (m / c) as i128);
                    let rhs = imp.add(
                        &imp.add(&imp.scale(&imp.d(&fv), i as i64), &imp.scale(&fvd, jj as i64)),
                        &imp.scale(&imp.mul(&dlog_m, &fv), c as i64 - 1),
                    );
                    r.check("lemma.fdv_three_term", lhs == rhs, || {
                        json!({"m": m, "n": n, "i": i as i64, "j": jj as i64, "y": j(y), "lhs": j(&lhs), "rhs": j(&rhs)})
                    });
                }
            }
        }
    }

    // dlog
    let mut expected = imp.zero(s);
    let mut p2 = 2u64;
    while s.contains(p2) {
        expected = imp.add(&expected, &imp.scale(&imp.d(&imp.eta(&BasisWittInt::generator(s, p2))), (p2 / 2) as i64));
        p2 *= 2;
    }
    r.check("lemma.dlog_formula", expected == dlog, || json!({"lhs": j(&dlog), "rhs": j(&expected)}));
    let sq = imp.mul(&dlog, &dlog);
    r.check("lemma.dlog_square", sq == imp.zero(s), || json!({"square": j(&sq)}));
    let dd = imp.d(&dlog);
    r.check("lemma.d_dlog", dd == imp.zero(s), || json!({"d_dlog": j(&dd)}));

    // axiom (v) on Teichmüller lifts
    for a in -3i64..=3 {
        let ta = imp.eta(&teich_basis(a, s));
        for &n in members.iter().filter(|&&n| n <= 6) {
            let sn = s.quotient(n);
            let tn = teich_basis(a, &sn);
            let l = imp.frobenius(n, &imp.d(&ta));
            let rr = imp.mul(&imp.eta(&tn.pow(n - 1)), &imp.d(&imp.eta(&tn)));
            r.check("axiom_v.teichmuller", l == rr, || json!({"a": a, "n": n, "lhs": j(&l), "rhs": j(&rr)}));
        }
    }

    // restriction
    for &k in &members {
        let t = TruncationSet::divisors_of(k).intersection(s);
        for (x, y) in ps.iter().take(gens * gens + trials) {
            let ok = imp.restrict(&t, &imp.d(x)) == imp.d(&imp.restrict(&t, x))
                && imp.restrict(&t, &imp.mul(x, y)) == imp.mul(&imp.restrict(&t, x), &imp.restrict(&t, y));
            r.check("restriction.compatible", ok, || json!({"t": t.members(), "x": j(x), "y": j(y)}));
        }
    }

    // dg-ideal generators: V_m([1])·dV_n([1]) minus its expansion, and n·dV_n([1])
    for &m in &members {
        for &n in &members {
            let lhs = imp.mul(&imp.eta(&BasisWittInt::generator(s, m)), &imp.d(&imp.eta(&BasisWittInt::generator(s, n))));
            let l = lcm(m, n);
            let dv = |k: u64| imp.d(&imp.eta(&BasisWittInt::generator(s, k)));
            let mut exp = imp.scale(&dv(l), crt_bracket(m, n).value as i64);
            if curly(m, n) == 1 {
                let mut k = 2 * l;
                while s.contains(k) {
                    exp = imp.add(&exp, &imp.scale(&dv(k), (k / 2) as i64));
                    k *= 2;
                }
            }
            let diff = imp.sub(&lhs, &exp);
            r.check("dgideal.product_generator", diff == imp.zero(s), || json!({"m": m, "n": n, "lhs": j(&lhs), "expansion": j(&exp)}));
        }
        let t = imp.scale(&imp.d(&imp.eta(&BasisWittInt::generator(s, m))), m as i64);
        r.check("dgideal.torsion_generator", t == imp.zero(s), || json!({"n": m, "value": j(&t)}));
    }

    // divided Frobenius on formal 1-forms against F_m in the complex
    for (a, b, m) in frobenius_compatibility_inputs(s, trials.min(50), seed) {
        let (lhs, rhs) = frobenius_compatibility_sides(imp, &a, &b, m);
        let ok = matches!((&lhs, &rhs), (Some(l), Some(r)) if l == r);
        r.check("frobenius_compatible", ok, || {
            json!({"m": m, "a": a.to_json(), "b": b.to_json(), "lhs": lhs.as_ref().map(j), "rhs": rhs.as_ref().map(j)})
        });
    }

    r.finish("wittcomplex", imp.name(), s, trials, seed, start)
}

/// `(a, b, m)` with `b` a random Witt vector (coordinates in `[-9, 9]`),
/// `a` either `1` or random, and `m ∈ S`, `m ≤ 6`.
pub fn frobenius_compatibility_inputs(s: &TruncationSet, count: usize, seed: u64) -> Vec<(BasisWittInt, BasisWittInt, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x5eed));
    let z = RingSpec::integers();
    let ms: Vec<u64> = s.iter().filter(|&m| m <= 6).collect();
    let mut out = Vec::new();
    for i in 0..count {
        let b = WittVector::random(&z, s, &mut rng, 9).and_then(|w| BasisWittInt::from_coords(&w)).expect("integer Witt vector");
        let a = if i % 2 == 0 { BasisWittInt::one(s) } else { random_basis(s, &mut rng) };
        for &m in &ms {
            out.push((a.clone(), b.clone(), m));
        }
    }
    out
}

/// `η(F_m(a·db))` through the divided Frobenius on formal forms, and
/// `F_m(η(a)·dη(b))` in the complex.
pub fn frobenius_compatibility_sides<C: WittComplex>(
    imp: &C,
    a: &BasisWittInt,
    b: &BasisWittInt,
    m: u64,
) -> (Option<C::Elem>, Option<C::Elem>) {
    let lhs = FormalOneForm::term(a, b).and_then(|w| divided_frobenius_form(m, &w)).ok().map(|form| {
        form.terms().iter().fold(imp.zero(form.set()), |acc, (c, x)| imp.add(&acc, &imp.mul(&imp.eta(c), &imp.d(&imp.eta(x)))))
    });
    let rhs = Some(imp.frobenius(m, &imp.mul(&imp.eta(a), &imp.d(&imp.eta(b)))));
    (lhs, rhs)
}

fn witt_json(x: &Result<WittVector>) -> Json {
    match x {
        Ok(w) => w.to_json(),
        Err(e) => json!({"error": e.to_string()}),
    }
}

/// Ring axioms in `W_S(A)`, ghost additivity/multiplicativity and, on
/// torsion-free bases, agreement of the ghost and universal strategies.
pub fn check_ring_laws(s: &TruncationSet, base: &Ring, trials: usize, seed: u64) -> Result<LawReport> {
    let start = Instant::now();
    let mut r = Recorder::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zero = WittVector::zero(base, s)?;
    let one = WittVector::one(base, s)?;
    let torsion_free = base.is_torsion_free();
    for _ in 0..trials {
        let outcome = (|| -> Result<()> {
            let x = WittVector::random(base, s, &mut rng, 9)?;
            let y = WittVector::random(base, s, &mut rng, 9)?;
            let z = WittVector::random(base, s, &mut rng, 9)?;
            let w = |v: &WittVector| v.to_json();
            let inputs = || json!({"x": w(&x), "y": w(&y), "z": w(&z)});
            let eq = |a: Result<WittVector>, b: Result<WittVector>| matches!((&a, &b), (Ok(a), Ok(b)) if a == b);
            r.check("ring.add_associativity", eq(x.add(&y)?.add(&z), y.add(&z).and_then(|yz| x.add(&yz))), inputs);
            r.check("ring.add_commutativity", eq(x.add(&y), y.add(&x)), inputs);
            r.check("ring.mul_associativity", eq(x.mul(&y)?.mul(&z), y.mul(&z).and_then(|yz| x.mul(&yz))), inputs);
            r.check("ring.mul_commutativity", eq(x.mul(&y), y.mul(&x)), inputs);
            r.check("ring.distributivity", eq(x.mul(&y.add(&z)?), x.mul(&y)?.add(&x.mul(&z)?)), inputs);
            r.check("ring.zero", eq(x.add(&zero), Ok(x.clone())), inputs);
            r.check("ring.one", eq(x.mul(&one), Ok(x.clone())), inputs);
            let inv = x.neg().and_then(|n| x.add(&n));
            r.check("ring.additive_inverse", eq(inv.clone(), Ok(zero.clone())), || json!({"x": w(&x), "x_plus_neg_x": witt_json(&inv)}));
            let (gx, gy) = (x.ghost(), y.ghost());
            let (gs, gp, gn) = (x.add(&y)?.ghost(), x.mul(&y)?.ghost(), x.neg()?.ghost());
            let ok = s.iter().all(|n| {
                let (a, b) = (gx.value(n).expect("n ∈ S"), gy.value(n).expect("n ∈ S"));
                gs.value(n) == a.add(&b).ok() && gp.value(n) == a.mul(&b).ok() && gn.value(n) == Some(a.neg())
            });
            r.check("ghost.ring_map", ok, inputs);
            if torsion_free {
                for (op, g, u) in [
                    ("add", x.add_with(&y, Strategy::Ghost), x.add_with(&y, Strategy::Universal)),
                    ("mul", x.mul_with(&y, Strategy::Ghost), x.mul_with(&y, Strategy::Universal)),
                    ("neg", x.neg_with(Strategy::Ghost), x.neg_with(Strategy::Universal)),
                ] {
                    let ok = eq(g.clone(), u.clone());
                    r.check("strategy.agreement", ok, || json!({"op": op, "x": w(&x), "y": w(&y), "ghost": witt_json(&g), "universal": witt_json(&u)}));
                }
            }
            Ok(())
        })();
        r.record(outcome);
    }
    Ok(r.finish("ring", format!("W({s},{base})"), s, trials, seed, start))
}

/// `a = Σ V_n([a_n])`, `F_nV_n = n`, the projection formula,
/// `F_mV_n = V_nF_m` for coprime `m, n`, and over `Z` the congruence
/// `F_p(x) ≡ x^p mod p` for primes `p ∈ {2, 3, 5}`.
pub fn check_witt_relations(s: &TruncationSet, base: &Ring, trials: usize, seed: u64) -> Result<LawReport> {
    let start = Instant::now();
    let mut r = Recorder::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members: Vec<u64> = s.iter().collect();
    for _ in 0..trials {
        let outcome = (|| -> Result<()> {
            let x = WittVector::random(base, s, &mut rng, 9)?;
            let wx = || json!({"x": x.to_json()});
            let mut total = WittVector::zero(base, s)?;
            for (n, a) in members.iter().zip(x.coords()) {
                total = total.add(&WittVector::verschiebung(*n, &WittVector::teichmuller(&a, &s.quotient(*n))?, s)?)?;
            }
            r.check("relations.teichmuller_expansion", total == x, wx);
            for &n in &members {
                let sn = s.quotient(n);
                let y = WittVector::random(base, &sn, &mut rng, 9)?;
                let fv = WittVector::verschiebung(n, &y, s)?.frobenius(n)?;
                r.check("relations.fv_equals_n", fv == y.mul_int(n), || json!({"n": n, "y": y.to_json()}));
                let l = x.mul(&WittVector::verschiebung(n, &y, s)?)?;
                let rr = WittVector::verschiebung(n, &x.frobenius(n)?.mul(&y)?, s)?;
                r.check("relations.projection_formula", l == rr, || json!({"n": n, "x": x.to_json(), "y": y.to_json()}));
                for &m in members.iter().filter(|&&m| gcd(m, n) == 1) {
                    let l = WittVector::verschiebung(n, &y, s)?.frobenius(m)?;
                    let rr = WittVector::verschiebung(n, &y.frobenius(m)?, &s.quotient(m))?;
                    r.check("relations.coprime_commute", l == rr, || json!({"m": m, "n": n, "y": y.to_json()}));
                }
            }
            if let RingSpec::IntegersMod(p) = **base {
                if is_prime(p) && s.contains(p) {
                    // over F_p the p-power map is the identity on coordinates
                    let ok = x.frobenius(p)? == x.restrict(&s.quotient(p))?;
                    r.check("relations.mod_p_frobenius", ok, || json!({"p": p, "x": x.to_json()}));
                }
            }
            if **base == RingSpec::Integers {
                for p in [2u64, 3, 5].into_iter().filter(|&p| is_prime(p) && s.contains(p)) {
                    let sp = s.quotient(p);
                    let diff = x.frobenius(p)?.sub(&x.pow(p).restrict(&sp)?)?;
                    r.check("relations.frobenius_congruence", diff.exact_div(p).is_ok(), || json!({"p": p, "x": x.to_json()}));
                }
            }
            Ok(())
        })();
        r.record(outcome);
    }
    Ok(r.finish("relations", format!("W({s},{base})"), s, trials, seed, start))
}

/// The comonad diagrams for `Δ: W_S(A) → W_T(W_U(A))`: both counit laws,
/// coassociativity against every divisor-closed `T_o ⊆ T`, `Δ` as a ring
/// map, `w_e∘Δ = F_e`, and `Δ([a]) = [[a]]` for `a ∈ [-5, 5]`.
pub fn check_comonad(s: &TruncationSet, t: &TruncationSet, base: &Ring, trials: usize, seed: u64) -> Result<LawReport> {
    let start = Instant::now();
    let mut r = Recorder::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = s.quotient_by_set(t);
    let w = |v: &WittVector| v.to_json();
    let same = |l: WittVector, rr: WittVector| {
        let ok = l == rr;
        (ok, json!({"lhs": w(&l), "rhs": w(&rr)}))
    };
    for _ in 0..trials {
        let x = WittVector::random(base, s, &mut rng, 9)?;
        let y = WittVector::random(base, s, &mut rng, 9)?;
        let input = json!({"x": w(&x), "y": w(&y)});
        r.attempt("counit.first_component", &input, || {
            let first = WittVector::from_element(&x.delta(t)?.coord(1).expect("1 ∈ T"))?;
            Ok(same(first, x.restrict(&u)?))
        });
        r.attempt("counit.coordinatewise", &input, || Ok(same(x.delta(t)?.map_first_coordinate()?, x.restrict(t)?)));
        for e in t.iter() {
            r.attempt("ghost.delta_is_frobenius", &json!({"x": w(&x), "e": e}), || {
                let g = WittVector::from_element(&x.delta(t)?.ghost().value(e).expect("e ∈ T"))?;
                Ok(same(g, x.frobenius(e)?.restrict(&u)?))
            });
        }
        r.attempt("delta.additive", &input, || Ok(same(x.add(&y)?.delta(t)?, x.delta(t)?.add(&y.delta(t)?)?)));
        r.attempt("delta.multiplicative", &input, || Ok(same(x.mul(&y)?.delta(t)?, x.delta(t)?.mul(&y.delta(t)?)?)));
        for t_o in t.subsets().into_iter().filter(|t_o| t_o.contains(1)) {
            r.attempt("coassociativity", &json!({"x": w(&x), "t_outer": t_o.members()}), || {
                let (l, rr) = coassociativity_sides(&x, t, &t_o)?;
                Ok(same(l, rr))
            });
        }
    }
    r.attempt("delta.unit", &json!({}), || {
        let d1 = WittVector::one(base, s)?.delta(t)?;
        let one = WittVector::one(d1.base(), t)?;
        Ok(same(d1, one))
    });
    for a in -5i64..=5 {
        r.attempt("delta.teichmuller", &json!({"a": a}), || {
            let ea = RingElement::from_int(base, a);
            let inner = WittVector::teichmuller(&ea, &u)?.to_element();
            Ok(same(WittVector::teichmuller(&ea, s)?.delta(t)?, WittVector::teichmuller(&inner, t)?))
        });
    }
    Ok(r.finish("comonad", format!("Δ: W({s},{base}) → W({t}, W({u},{base}))"), s, trials, seed, start))
}

/// `Δ_{T_o}∘Δ_T` against `W(Δ_{T/T_o})∘Δ_{T_o}`, both in
/// `W_{T_o}(W_{T/T_o}(W_V(A)))` with `V` the common innermost set.
pub fn coassociativity_sides(x: &WittVector, t: &TruncationSet, t_o: &TruncationSet) -> Result<(WittVector, WittVector)> {
    let (s, base) = (x.set(), x.base());
    let t_m = t.quotient_by_set(t_o);
    let left = x.delta(t)?.delta(t_o)?;
    let u2 = s.quotient_by_set(t_o).quotient_by_set(&t_m);
    let right_ring = RingSpec::witt(RingSpec::witt(base.clone(), u2.clone())?, t_m.clone())?;
    let right = x.delta(t_o)?.map_coords(&right_ring, |c| Ok(WittVector::from_element(c)?.delta(&t_m)?.to_element()))?;
    let v = s.quotient_by_set(t).intersection(&u2);
    Ok((restrict_innermost(&left, &v)?, restrict_innermost(&right, &v)?))
}

fn restrict_innermost(z: &WittVector, v: &TruncationSet) -> Result<WittVector> {
    let middle = match &**z.base() {
        RingSpec::Witt { set, .. } => set.clone(),
        _ => unreachable!("three nested Witt rings"),
    };
    let inner_base = match &**z.base() {
        RingSpec::Witt { base, .. } => match &**base {
            RingSpec::Witt { base, .. } => base.clone(),
            _ => unreachable!("three nested Witt rings"),
        },
        _ => unreachable!("three nested Witt rings"),
    };
    let inner_ring = RingSpec::witt(inner_base, v.clone())?;
    let middle_ring = RingSpec::witt(inner_ring.clone(), middle)?;
    z.map_coords(&middle_ring, |c| {
        Ok(WittVector::from_element(c)?
            .map_coords(&inner_ring, |cc| Ok(WittVector::from_element(cc)?.restrict(v)?.to_element()))?
            .to_element())
    })
}

/// Seeded defects in the universal polynomials, installed with
/// [`crate::universal::with_cache`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PolyMutation {
    /// `s_2 = a_2 + b_2`, missing `-a_1b_1`.
    DropS2CrossTerm,
    /// `Δ_2` at index 1 off by one after the exact division.
    DeltaTwoOffByOne,
}

/// A fresh cache holding the mutated polynomial; all others are computed
/// faithfully on demand.
pub fn mutated_cache(m: PolyMutation) -> Arc<UnivCache> {
    let cache = Arc::new(UnivCache::new());
    let (key, text) = match m {
        PolyMutation::DropS2CrossTerm => (UnivPolyKey::sum(2), "1*a2 + 1*b2"),
        PolyMutation::DeltaTwoOffByOne => (UnivPolyKey::delta(2, 1), "1 + 1*a2"),
    };
    cache.insert(key, IntPoly::from_text(text).expect("valid polynomial"));
    cache
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drw::Mutation;

    #[test]
    fn faithful_complex_passes_small() {
        let report = check_witt_complex(&DrwZ::new(), &TruncationSet::divisors_of(12), 20, 7);
        assert!(report.passed(), "{report}");
        let trivial = check_witt_complex(&DrwZ::new(), &TruncationSet::divisors_of(1), 5, 1);
        assert!(trivial.passed(), "{trivial}");
    }

    #[test]
    fn curly_zero_breaks_axiom_iv() {
        let report = check_witt_complex(&DrwZ::mutated(Mutation::CurlyZero), &TruncationSet::divisors_of(8), 10, 7);
        let law = report.law("axiom_iv.fdv").unwrap();
        assert!(!law.passed);
        assert_eq!(law.counterexample.as_ref().unwrap()["n"], 2);
    }

    #[test]
    fn deterministic_under_seed() {
        let s = TruncationSet::divisors_of(6);
        let a = check_witt_complex(&DrwZ::mutated(Mutation::WrongCrt), &s, 10, 3);
        let b = check_witt_complex(&DrwZ::mutated(Mutation::WrongCrt), &s, 10, 3);
        assert!(!a.passed());
        let strip = |r: &LawReport| serde_json::to_string(&r.laws).unwrap();
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn comonad_small() {
        let z = RingSpec::integers();
        let report = check_comonad(&TruncationSet::divisors_of(4), &TruncationSet::divisors_of(2), &z, 3, 1).unwrap();
        assert!(report.passed(), "{report}");
        let trivial = check_comonad(&TruncationSet::divisors_of(4), &TruncationSet::divisors_of(1), &z, 3, 1).unwrap();
        assert!(trivial.passed(), "{trivial}");
    }

    #[test]
    fn polynomial_mutations_are_caught() {
        use crate::universal::with_cache;
        let z = RingSpec::integers();
        let z8 = RingSpec::integers_mod(8).unwrap();
        let s = TruncationSet::divisors_of(2);
        with_cache(mutated_cache(PolyMutation::DropS2CrossTerm), || {
            // beyond index 2 the recursion itself rejects the defect
            let r = check_ring_laws(&TruncationSet::divisors_of(4), &z8, 10, 1).unwrap();
            assert_eq!(r.law("evaluation").unwrap().counterexample.as_ref().unwrap()["error"], "IntegralityViolation");
            let r = check_ring_laws(&s, &z, 10, 1).unwrap();
            assert!(!r.law("strategy.agreement").unwrap().passed);
            let r = check_ring_laws(&s, &z8, 10, 1).unwrap();
            assert!(!r.law("ring.additive_inverse").unwrap().passed);
        });
        with_cache(mutated_cache(PolyMutation::DeltaTwoOffByOne), || {
            let r = check_comonad(&TruncationSet::divisors_of(8), &TruncationSet::divisors_of(4), &z, 3, 1).unwrap();
            assert!(!r.law("coassociativity").unwrap().passed, "{r}");
            let r = check_comonad(&TruncationSet::divisors_of(2), &TruncationSet::divisors_of(2), &z, 3, 1).unwrap();
            assert!(!r.law("delta.additive").unwrap().passed, "{r}");
        });
    }

    #[test]
    fn ring_and_relations_small() {
        let s = TruncationSet::divisors_of(6);
        for base in [RingSpec::integers(), RingSpec::integers_mod(8).unwrap(), RingSpec::integers_mod(3).unwrap()] {
            let report = check_ring_laws(&s, &base, 10, 2).unwrap();
            assert!(report.passed(), "{report}");
            let report = check_witt_relations(&s, &base, 5, 2).unwrap();
            assert!(report.passed(), "{report}");
        }
    }
}
