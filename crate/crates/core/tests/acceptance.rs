//! Acceptance suite: one PASS/FAIL line per criterion, each with its runtime
//! budget. All comparisons are exact.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wittkit::drw::{DrwZ, Mutation};
use wittkit::laws::{self, LawReport, PolyMutation};
use wittkit::ptypical::{self, component_set, idempotents};
use wittkit::ring::series_inverse;
use wittkit::series_coords::{gamma, gamma_inverse};
use wittkit::universal::{self, ghost_poly, universal_poly, Family, IntPoly, UnivPolyKey, Var};
use wittkit::{teich_basis, RingElement, RingSpec, TruncationSet, Value, WittVector};

type Outcome = Result<(), String>;

const SEED: u64 = 20_240_607;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn lift<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn report_ok(r: &LawReport, required: &[&str]) -> Outcome {
    for law in required {
        ensure(r.law(law).is_some(), || format!("{} suite did not run {law}", r.suite))?;
    }
    let failures: Vec<String> = r.failures().map(|l| format!("{} {:?}", l.law, l.counterexample)).collect();
    ensure(failures.is_empty(), || format!("{} over {}: {}", r.suite, r.set, failures.join("; ")))
}

// ---------------------------------------------------------------- 1

/// `w_n` evaluated on the family of polynomials `P_d`.
fn ghost_of(n: u64, poly: impl Fn(u64) -> Result<IntPoly, String>) -> Result<IntPoly, String> {
    let mut acc = IntPoly::zero();
    for d in wittkit::arith::divisors(n) {
        acc = acc.add(&poly(d)?.pow(n / d).scale(&BigInt::from(d)));
    }
    Ok(acc)
}

fn univ(key: UnivPolyKey) -> Result<IntPoly, String> {
    lift(universal_poly(key)).map(|p| (*p).clone())
}

fn criterion_1() -> Outcome {
    let (a, b) = (|d| IntPoly::var(Var::a(d)), |d| IntPoly::var(Var::b(d)));
    for n in wittkit::arith::divisors(24) {
        let (wa, wb) = (ghost_poly(n, Family::A), ghost_poly(n, Family::B));
        ensure(ghost_of(n, |d| univ(UnivPolyKey::sum(d)))? == wa.add(&wb), || format!("sum ghost at {n}"))?;
        ensure(ghost_of(n, |d| univ(UnivPolyKey::prod(d)))? == wa.mul(&wb), || format!("prod ghost at {n}"))?;
        ensure(ghost_of(n, |d| univ(UnivPolyKey::neg(d)))? == wa.neg(), || format!("neg ghost at {n}"))?;
    }
    let s2 = a(2).add(&b(2)).sub(&a(1).mul(&b(1)));
    ensure(univ(UnivPolyKey::sum(2))? == s2, || "s_2".into())?;
    let p2 = a(1).pow(2).mul(&b(2)).add(&b(1).pow(2).mul(&a(2))).add(&a(2).mul(&b(2)).scale(&2.into()));
    ensure(univ(UnivPolyKey::prod(2))? == p2, || "p_2".into())?;
    let f21 = a(1).pow(2).add(&a(2).scale(&2.into()));
    ensure(univ(UnivPolyKey::frobenius(2, 1))? == f21, || "f_{2,1}".into())
}

// ---------------------------------------------------------------- 2

fn criterion_2() -> Outcome {
    let s = TruncationSet::divisors_of(12);
    let z2 = lift(RingSpec::integers_mod(2))?;
    let bases = [
        RingSpec::integers(),
        lift(RingSpec::integers_mod(8))?,
        lift(RingSpec::integers_mod(9))?,
        lift(RingSpec::series(z2, 3))?,
    ];
    for base in &bases {
        let r = lift(laws::check_ring_laws(&s, base, 200, SEED))?;
        let mut required = vec!["ring.add_associativity", "ring.mul_associativity", "ring.distributivity", "ghost.ring_map"];
        if base.is_torsion_free() {
            required.push("strategy.agreement");
        }
        report_ok(&r, &required)?;
    }
    Ok(())
}

// ---------------------------------------------------------------- 3

fn criterion_3() -> Outcome {
    for n in [24, 30] {
        let s = TruncationSet::divisors_of(n);
        let r = lift(laws::check_witt_relations(&s, &RingSpec::integers(), 100, SEED))?;
        report_ok(
            &r,
            &[
                "relations.teichmuller_expansion",
                "relations.fv_equals_n",
                "relations.projection_formula",
                "relations.coprime_commute",
                "relations.frobenius_congruence",
            ],
        )?;
        for p in [2, 3, 5].into_iter().filter(|&p| s.contains(p)) {
            let r = lift(laws::check_witt_relations(&s, &lift(RingSpec::integers_mod(p))?, 100, SEED))?;
            report_ok(&r, &["relations.mod_p_frobenius"])?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- 4

/// Addition and multiplication tables of `F_q`; `F_4 = F_2[α]/(α²+α+1)`
/// with `c0 + c1·α` encoded as `c0 + 2·c1`.
fn field_tables(q: usize) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    if q == 4 {
        let mul = |x: usize, y: usize| {
            let (x0, x1, y0, y1) = (x & 1, x >> 1, y & 1, y >> 1);
            // α² = α + 1
            let (c0, c1, c2) = (x0 & y0, (x0 & y1) ^ (x1 & y0), x1 & y1);
            (c0 ^ c2) | ((c1 ^ c2) << 1)
        };
        let add = (0..4).map(|x| (0..4).map(|y| x ^ y).collect()).collect();
        let mul = (0..4).map(|x| (0..4).map(|y| mul(x, y)).collect()).collect();
        (add, mul)
    } else {
        let add = (0..q).map(|x| (0..q).map(|y| (x + y) % q).collect()).collect();
        let mul = (0..q).map(|x| (0..q).map(|y| (x * y) % q).collect()).collect();
        (add, mul)
    }
}

/// Monic polynomials of degree `d` are indexed by their lower coefficients
/// read in base `q`.
fn monic(q: usize, d: usize, mut index: usize) -> Vec<usize> {
    let mut c = Vec::with_capacity(d + 1);
    for _ in 0..d {
        c.push(index % q);
        index /= q;
    }
    c.push(1);
    c
}

fn index_of(q: usize, poly: &[usize]) -> usize {
    poly[..poly.len() - 1].iter().rev().fold(0, |acc, &c| acc * q + c)
}

/// Number of monic irreducibles of each degree `1..=max`, by sieving out
/// every product `g·h` with `g` irreducible of degree at most `d/2`.
fn brute_force_irreducibles(q: usize, max: usize) -> Vec<u64> {
    let (add, mul) = field_tables(q);
    let mut irreducible: Vec<Vec<Vec<usize>>> = vec![Vec::new(); max + 1];
    let mut counts = Vec::new();
    for d in 1..=max {
        let total = q.pow(d as u32);
        let mut reducible = vec![false; total];
        for i in 1..=d / 2 {
            for g in &irreducible[i] {
                for h in 0..q.pow((d - i) as u32) {
                    let h = monic(q, d - i, h);
                    let mut prod = vec![0; d + 1];
                    for (x, &gx) in g.iter().enumerate() {
                        for (y, &hy) in h.iter().enumerate() {
                            prod[x + y] = add[prod[x + y]][mul[gx][hy]];
                        }
                    }
                    reducible[index_of(q, &prod)] = true;
                }
            }
        }
        if 2 * d <= max {
            irreducible[d] = (0..total).filter(|&k| !reducible[k]).map(|k| monic(q, d, k)).collect();
        }
        counts.push(reducible.iter().filter(|&&r| !r).count() as u64);
    }
    counts
}

fn criterion_4() -> Outcome {
    let s = TruncationSet::initial_segment(8);
    for q in [2u64, 3, 4, 5] {
        let oracle = brute_force_irreducibles(q as usize, 8);
        if q == 2 {
            ensure(oracle == [2, 1, 2, 3, 6, 9, 18, 30], || format!("oracle over F_2: {oracle:?}"))?;
        }
        let basis = teich_basis(q, &s);
        let necklaces: Vec<BigInt> = basis.coeffs().to_vec();
        let expected: Vec<BigInt> = oracle.iter().map(|&c| BigInt::from(c)).collect();
        ensure(necklaces == expected, || format!("q={q}: {necklaces:?} vs {expected:?}"))?;
        let coords = lift(WittVector::teichmuller(&RingElement::from_int(&RingSpec::integers(), q), &s))?;
        ensure(lift(wittkit::BasisWittInt::from_coords(&coords))? == basis, || format!("q={q}: coordinates disagree"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------- 5

fn criterion_5() -> Outcome {
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79];
    let mut cases = 0;
    for p in primes {
        let mut n = 1;
        while p.pow(n) <= 81 {
            let tau = lift(ptypical::tau_iso(p, n))?;
            lift(tau.verify())?;
            for x in tau.elements() {
                let vf = lift(WittVector::verschiebung(p, &lift(x.frobenius(p))?, x.set()))?;
                ensure(vf == x.mul_int(p), || format!("VF != p at p={p}, n={n}, x={x}"))?;
            }
            cases += 1;
            n += 1;
        }
    }
    ensure(cases == 32, || format!("{cases} (p, n) pairs"))
}

// ---------------------------------------------------------------- 6

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let s = TruncationSet::initial_segment(12);
    for base in [RingSpec::integers(), lift(RingSpec::integers_mod(9))?] {
        for _ in 0..200 {
            let x = lift(WittVector::random(&base, &s, &mut rng, 9))?;
            let y = lift(WittVector::random(&base, &s, &mut rng, 9))?;
            let lhs = lift(gamma(&lift(x.add(&y))?, 12))?;
            let rhs = lift(lift(gamma(&x, 12))?.mul(&lift(gamma(&y, 12))?))?;
            ensure(lhs == rhs, || format!("γ(x+y) != γ(x)γ(y) for x={x}, y={y}"))?;
        }
    }
    let z = RingSpec::integers();
    let s8 = TruncationSet::initial_segment(8);
    let series = lift(RingSpec::series(z.clone(), 9))?;
    for _ in 0..200 {
        let x = lift(WittVector::random(&z, &s8, &mut rng, 9))?;
        ensure(lift(gamma_inverse(&lift(gamma(&x, 8))?, 8))? == x, || format!("round trip at {x}"))?;
        let mut c: Vec<Value> = (0..9).map(|_| Value::int(rng.gen_range(-9..=9))).collect();
        c[0] = Value::int(1);
        let f = lift(RingElement::new(series.clone(), Value::Series(c)))?;
        ensure(lift(gamma(&lift(gamma_inverse(&f, 8))?, 8))? == f, || format!("round trip at {f}"))?;
        lift(series_inverse(&f))?;
    }
    Ok(())
}

// ---------------------------------------------------------------- 7

fn criterion_7() -> Outcome {
    let q = RingSpec::rationals();
    let s = TruncationSet::divisors_of(12);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let is_power = |mut m: u64, p: u64| {
        while m % p == 0 {
            m /= p;
        }
        m == 1
    };
    for p in [2u64, 3] {
        let es = lift(idempotents(&s, p, &q))?;
        let one = lift(WittVector::one(&q, &s))?;
        let mut sum = lift(WittVector::zero(&q, &s))?;
        for (k, e) in &es {
            sum = lift(sum.add(e))?;
            for (l, f) in &es {
                let prod = lift(e.mul(f))?;
                let expected = if k == l { e.clone() } else { lift(WittVector::zero(&q, &s))? };
                ensure(prod == expected, || format!("e_{k}·e_{l} wrong for p={p}"))?;
            }
            for n in s.iter() {
                let g = e.ghost().value(n).expect("n ∈ S");
                let indicator = i64::from(n % k == 0 && is_power(n / k, p));
                ensure(g == RingElement::from_int(&q, indicator), || format!("w_{n}(e_{k}) = {g} for p={p}"))?;
            }
        }
        ensure(sum == one, || format!("Σ e_k != 1 for p={p}"))?;
        for _ in 0..100 {
            let x = lift(WittVector::random(&q, &s, &mut rng, 9))?;
            let parts = lift(ptypical::decompose(&x, p))?;
            ensure(lift(ptypical::reassemble(&s, p, &q, &parts))? == x, || format!("reassembly at {x}"))?;
            let fresh: BTreeMap<u64, WittVector> = parts
                .keys()
                .map(|&k| Ok((k, lift(WittVector::random(&q, &component_set(&s, p, k), &mut rng, 9))?)))
                .collect::<Result<_, String>>()?;
            let back = lift(ptypical::decompose(&lift(ptypical::reassemble(&s, p, &q, &fresh))?, p))?;
            ensure(back == fresh, || format!("decompose ∘ reassemble != id for p={p}"))?;
        }
    }
    Ok(())
}

// ---------------------------------------------------------------- 8

fn criterion_8() -> Outcome {
    let r = lift(laws::check_comonad(
        &TruncationSet::divisors_of(8),
        &TruncationSet::divisors_of(4),
        &RingSpec::integers(),
        200,
        SEED,
    ))?;
    report_ok(
        &r,
        &[
            "counit.first_component",
            "counit.coordinatewise",
            "coassociativity",
            "delta.additive",
            "delta.multiplicative",
            "delta.unit",
            "delta.teichmuller",
        ],
    )
}

// ---------------------------------------------------------------- 9

fn criterion_9() -> Outcome {
    let required = [
        "axiom_i.leibniz",
        "axiom_i.dd",
        "axiom_ii.fv_equals_n",
        "axiom_iii.projection_formula",
        "axiom_iv.fdv",
        "axiom_v.teichmuller",
        "lemma.vd_equals_ndv",
        "lemma.df_equals_nfd",
        "lemma.fdv_three_term",
        "lemma.dlog_formula",
        "dgideal.product_generator",
        "dgideal.torsion_generator",
    ];
    for s in [TruncationSet::divisors_of(24), TruncationSet::initial_segment(16)] {
        report_ok(&laws::check_witt_complex(&DrwZ::new(), &s, 200, SEED), &required)?;
    }
    Ok(())
}

// ---------------------------------------------------------------- 10

fn criterion_10() -> Outcome {
    let s = TruncationSet::divisors_of(24);
    let inputs = laws::frobenius_compatibility_inputs(&s, 50, SEED);
    ensure(inputs.len() == 50 * 5, || format!("{} inputs", inputs.len()))?;
    let z = DrwZ::new();
    for (a, b, m) in &inputs {
        let (lhs, rhs) = laws::frobenius_compatibility_sides(&z, a, b, *m);
        ensure(lhs.is_some() && lhs == rhs, || format!("m={m}, a={a}, b={b}: {lhs:?} vs {rhs:?}"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------- 11

fn criterion_11() -> Outcome {
    let s = TruncationSet::divisors_of(24);
    for m in [Mutation::CurlyZero, Mutation::WrongCrt] {
        let r = laws::check_witt_complex(&DrwZ::mutated(m), &s, 50, SEED);
        ensure(!r.passed(), || format!("{m:?} survived the Witt-complex suite"))?;
    }
    let z = RingSpec::integers();
    let caught = universal::with_cache(laws::mutated_cache(PolyMutation::DropS2CrossTerm), || {
        lift(laws::check_ring_laws(&TruncationSet::divisors_of(12), &z, 50, SEED)).map(|r| !r.passed())
    })?;
    ensure(caught, || "dropped s_2 cross term survived the ring suite".into())?;
    let caught = universal::with_cache(laws::mutated_cache(PolyMutation::DeltaTwoOffByOne), || {
        lift(laws::check_comonad(&TruncationSet::divisors_of(8), &TruncationSet::divisors_of(4), &z, 20, SEED))
            .map(|r| !r.passed())
    })?;
    ensure(caught, || "Δ_2 defect survived the comonad suite".into())?;
    // the faithful implementations pass the same runs
    let clean = lift(laws::check_ring_laws(&TruncationSet::divisors_of(12), &z, 50, SEED))?;
    report_ok(&clean, &[])
}

#[test]
fn acceptance() {
    let criteria: [(&str, u64, fn() -> Outcome); 11] = [
        ("universal-polynomial ghost identities", 10, criterion_1),
        ("ring laws in W_div12 over Z, Z/8, Z/9, Z/2[x]/x^3", 60, criterion_2),
        ("Witt vector relations and the p-Frobenius congruence", 60, criterion_3),
        ("Teichmüller necklace coefficients vs irreducible counts", 30, criterion_4),
        ("W_n(F_p) ≅ Z/p^n and VF = p for p^n ≤ 81", 30, criterion_5),
        ("γ additivity and γ inverse round trips", 20, criterion_6),
        ("p-typical idempotent decomposition", 30, criterion_7),
        ("comonad laws at div8 → div4", 60, criterion_8),
        ("Witt-complex law suite on W_S Ω_Z", 60, criterion_9),
        ("divided Frobenius compatibility", 60, criterion_10),
        ("mutation sensitivity", 60, criterion_11),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let verdict = if outcome.is_ok() && !over { "PASS" } else { "FAIL" };
        println!("{verdict} [{:>2}] {name} ({:.2}s, budget {budget}s)", i + 1, elapsed.as_secs_f64());
        if let Err(e) = &outcome {
            println!("       {e}");
        }
        if verdict == "FAIL" {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
