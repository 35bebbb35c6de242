//! The big de Rham-Witt complex of the integers: degree 0 is `W_S(Z)` in
//! the basis `V_nη([1])`, degree 1 is `Π_n Z/n·dV_nη([1])`, and everything
//! above vanishes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Map, Value as Json};

use crate::arith::{gcd, lcm, mod_inverse};
use crate::basis::BasisWittInt;
use crate::error::{Result, WittError};
use crate::ring::json::int_from_json;
use crate::truncation::TruncationSet;
use crate::witt::WittVector;

/// `(m,n]`: the class modulo `[m,n]` that is `0` mod `m` and `(m,n)` mod `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CrtClass {
    pub m: u64,
    pub n: u64,
    /// Representative in `[0, lcm(m,n))`.
    pub value: u64,
}

pub fn crt_bracket(m: u64, n: u64) -> CrtClass {
    assert!(m >= 1 && n >= 1, "crt_bracket needs positive arguments");
    let g = gcd(m, n);
    let t = mod_inverse((m / g) % (n / g).max(1), n / g).expect("coprime after dividing by the gcd");
    let l = lcm(m, n);
    let value = ((m as u128 * t as u128) % l as u128) as u64;
    CrtClass { m, n, value }
}

/// `{m,n}`: 1 when both are even, else 0.
pub fn curly(m: u64, n: u64) -> u64 {
    u64::from(m % 2 == 0 && n % 2 == 0)
}

fn residue(k: &BigInt, n: u64) -> u64 {
    k.mod_floor(&BigInt::from(n)).to_u64().expect("residue fits")
}

/// `Σ a_n·V_nη([1]) + Σ c_n·dV_nη([1])` with `c_n ∈ [0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DrwElement {
    deg0: BasisWittInt,
    deg1: Vec<u64>,
}

impl DrwElement {
    /// Reduces the degree-1 coefficients modulo their indices.
    pub fn new(deg0: BasisWittInt, deg1: &[BigInt]) -> Result<Self> {
        let set = deg0.set();
        if deg1.len() != set.len() {
            return Err(WittError::InvalidInput(format!("{} degree-1 coefficients for the set {set}", deg1.len())));
        }
        let deg1 = set.iter().zip(deg1).map(|(n, c)| residue(c, n)).collect();
        Ok(DrwElement { deg0, deg1 })
    }

    pub fn from_ints(set: &TruncationSet, deg0: &[i64], deg1: &[i64]) -> Result<Self> {
        let deg1: Vec<BigInt> = deg1.iter().map(|&c| c.into()).collect();
        DrwElement::new(BasisWittInt::from_ints(set, deg0)?, &deg1)
    }

    pub fn zero(set: &TruncationSet) -> Self {
        DrwElement { deg0: BasisWittInt::zero(set), deg1: vec![0; set.len()] }
    }

    pub fn one(set: &TruncationSet) -> Self {
        DrwElement::eta(&BasisWittInt::one(set))
    }

    /// `V_nη([1]_{S/n})`, or zero if `n ∉ S`.
    pub fn v(set: &TruncationSet, n: u64) -> Self {
        DrwElement::eta(&BasisWittInt::generator(set, n))
    }

    /// `dV_nη([1]_{S/n})`, or zero if `n ∉ S`.
    pub fn dv(set: &TruncationSet, n: u64) -> Self {
        let mut x = DrwElement::zero(set);
        x.add_deg1(n, &BigInt::from(1));
        x
    }

    /// `η: W_S(Z) → W_SΩ⁰`, an isomorphism onto degree 0.
    pub fn eta(x: &BasisWittInt) -> Self {
        DrwElement { deg0: x.clone(), deg1: vec![0; x.set().len()] }
    }

    pub fn eta_coords(x: &WittVector) -> Result<Self> {
        Ok(DrwElement::eta(&BasisWittInt::from_coords(x)?))
    }

    /// `dlog η([-1]_S) = Σ_{r≥1} 2^{r-1}·dV_{2^r}η([1])`.
    pub fn dlog_minus_one(set: &TruncationSet) -> Self {
        let mut x = DrwElement::zero(set);
        let mut n = 2u64;
        while set.contains(n) {
            x.add_deg1(n, &BigInt::from(n / 2));
            n *= 2;
        }
        x
    }

    pub fn set(&self) -> &TruncationSet {
        self.deg0.set()
    }

    pub fn deg0(&self) -> &BasisWittInt {
        &self.deg0
    }

    /// Degree-1 residues aligned with the members of the set.
    pub fn deg1(&self) -> &[u64] {
        &self.deg1
    }

    pub fn deg1_coeff(&self, n: u64) -> u64 {
        self.set().index_of(n).map_or(0, |i| self.deg1[i])
    }

    pub fn deg0_part(&self) -> Self {
        DrwElement::eta(&self.deg0)
    }

    pub fn deg1_part(&self) -> Self {
        DrwElement { deg0: BasisWittInt::zero(self.set()), deg1: self.deg1.clone() }
    }

    /// Homogeneous components, indexed by degree.
    pub fn parts(&self) -> [DrwElement; 2] {
        [self.deg0_part(), self.deg1_part()]
    }

    pub fn is_zero(&self) -> bool {
        self.deg0.is_zero() && self.deg1.iter().all(|&c| c == 0)
    }

    fn add_deg1(&mut self, n: u64, c: &BigInt) {
        if let Some(i) = self.set().index_of(n) {
            self.deg1[i] = residue(&(BigInt::from(self.deg1[i]) + c), n);
        }
    }

    fn check(&self, other: &DrwElement) -> Result<()> {
        if self.set() == other.set() {
            Ok(())
        } else {
            Err(WittError::SetMismatch { expected: self.set().to_string(), found: other.set().to_string() })
        }
    }

    pub fn add(&self, other: &DrwElement) -> Result<DrwElement> {
        self.check(other)?;
        let deg1 = self.set().iter().zip(self.deg1.iter().zip(&other.deg1)).map(|(n, (a, b))| (a + b) % n).collect();
        Ok(DrwElement { deg0: self.deg0.add(&other.deg0)?, deg1 })
    }

    pub fn neg(&self) -> DrwElement {
        let deg1 = self.set().iter().zip(&self.deg1).map(|(n, c)| (n - c) % n).collect();
        DrwElement { deg0: self.deg0.neg(), deg1 }
    }

    pub fn sub(&self, other: &DrwElement) -> Result<DrwElement> {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &BigInt) -> DrwElement {
        let deg1 = self.set().iter().zip(&self.deg1).map(|(n, c)| residue(&(k * c), n)).collect();
        DrwElement { deg0: self.deg0.scale(k), deg1 }
    }

    /// Drops the coefficients outside `t`.
    pub fn restrict(&self, t: &TruncationSet) -> Result<DrwElement> {
        let deg0 = self.deg0.restrict(t)?;
        Ok(DrwElement { deg0, deg1: t.iter().map(|n| self.deg1_coeff(n)).collect() })
    }

    pub fn to_json(&self) -> Json {
        let deg0 = self.deg0.to_json()["coeffs"].clone();
        let mut deg1 = Map::new();
        for (n, c) in self.set().iter().zip(&self.deg1) {
            deg1.insert(n.to_string(), json!(c));
        }
        json!({"set": self.set().members(), "deg0": deg0, "deg1": deg1})
    }

    pub fn from_json(j: &Json) -> Result<DrwElement> {
        let set = j.get("set").cloned().unwrap_or(Json::Null);
        let deg0 = BasisWittInt::from_json(&json!({"set": set, "coeffs": j.get("deg0").cloned().unwrap_or(json!({}))}))?;
        let set = deg0.set().clone();
        let mut deg1 = vec![BigInt::zero(); set.len()];
        if let Some(obj) = j.get("deg1") {
            let obj = obj.as_object().ok_or_else(|| WittError::parse("\"deg1\" must be an object"))?;
            for (k, v) in obj {
                let n: u64 = k.parse().map_err(|_| WittError::parse(format!("bad index {k:?}")))?;
                let i = set.index_of(n).ok_or_else(|| WittError::parse(format!("index {n} outside {set}")))?;
                deg1[i] = int_from_json(v)?;
            }
        }
        DrwElement::new(deg0, &deg1)
    }

    fn render(&self, suffix: &str) -> String {
        let mut parts: Vec<String> = self.deg0.terms().map(|(n, c)| format!("{c}·V{n}{suffix}")).collect();
        parts.extend(self.set().iter().zip(&self.deg1).filter(|(_, &c)| c != 0).map(|(n, c)| format!("{c}·dV{n}{suffix}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// The form without the `η([1])` suffix, e.g. `1·dV2 + 2·dV4`.
    pub fn short(&self) -> String {
        self.render("")
    }
}

impl fmt::Display for DrwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("η([1])"))
    }
}

/// Deliberate defects used to show that the law suites can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Mutation {
    #[default]
    Faithful,
    /// `{m,n} ≡ 0`, dropping every dyadic correction term.
    CurlyZero,
    /// Uses `(n,m]` where the product needs `(m,n]`.
    WrongCrt,
}

/// The structure maps of the complex, optionally mutated.
#[derive(Debug, Clone, Copy, Default)]
pub struct DrwZ {
    mutation: Mutation,
}

impl DrwZ {
    pub fn new() -> Self {
        DrwZ::default()
    }

    pub fn mutated(mutation: Mutation) -> Self {
        DrwZ { mutation }
    }

    pub fn mutation(&self) -> Mutation {
        self.mutation
    }

    fn curly(&self, m: u64, n: u64) -> u64 {
        match self.mutation {
            Mutation::CurlyZero => 0,
            _ => curly(m, n),
        }
    }

    fn product_bracket(&self, m: u64, n: u64) -> u64 {
        match self.mutation {
            Mutation::WrongCrt => crt_bracket(n, m).value,
            _ => crt_bracket(m, n).value,
        }
    }

    /// Adds `c·V_mη([1])·dV_nη([1])` into `out`:
    /// `(m,n]·dV_{[m,n]} + {m,n}·Σ_{r≥1} 2^{r-1}[m,n]·dV_{2^r[m,n]}`.
    fn add_v_dv(&self, out: &mut DrwElement, m: u64, n: u64, c: &BigInt) {
        let l = lcm(m, n);
        if !out.set().contains(l) {
            return;
        }
        out.add_deg1(l, &(c * self.product_bracket(m, n)));
        if self.curly(m, n) == 1 {
            add_dyadic_tail(out, l, c);
        }
    }

    /// Graded product. Degree-1 times degree-1 lands in degree 2, which is zero.
    pub fn mul(&self, x: &DrwElement, y: &DrwElement) -> Result<DrwElement> {
        x.check(y)?;
        let mut out = DrwElement::eta(&x.deg0.mul(&y.deg0)?);
        for (a, b) in [(x, y), (y, x)] {
            for (m, ca) in a.deg0.terms() {
                for (n, &cb) in b.set().iter().zip(&b.deg1) {
                    if cb != 0 {
                        self.add_v_dv(&mut out, m, n, &(ca * cb));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `d(Σ a_n V_n) = Σ (a_n mod n)·dV_n`; `d` of degree 1 is zero.
    pub fn d(&self, x: &DrwElement) -> DrwElement {
        let mut out = DrwElement::zero(x.set());
        for (n, a) in x.deg0.terms() {
            out.add_deg1(n, a);
        }
        out
    }

    /// `F_m: W_SΩ → W_{S/m}Ω`.
    pub fn frobenius(&self, m: u64, x: &DrwElement) -> DrwElement {
        let mut out = DrwElement::eta(&x.deg0.frobenius(m));
        for (n, &c) in x.set().iter().zip(&x.deg1) {
            if c == 0 {
                continue;
            }
            let c = BigInt::from(c);
            let g = gcd(m, n);
            let k = n / g;
            // (m,n] is divisible by m; the quotient matters modulo n/(m,n)
            out.add_deg1(k, &(&c * (crt_bracket(m, n).value / m)));
            if self.curly(m, n) == 1 {
                add_dyadic_tail(&mut out, k, &c);
            }
        }
        out
    }

    /// `V_m: W_{S/m}Ω → W_SΩ`, with `V_m dV_n = m·dV_{mn}`.
    pub fn verschiebung(&self, m: u64, x: &DrwElement, s: &TruncationSet) -> Result<DrwElement> {
        let mut out = DrwElement::eta(&x.deg0.verschiebung(m, s)?);
        for (n, &c) in x.set().iter().zip(&x.deg1) {
            out.add_deg1(m * n, &(BigInt::from(c) * m));
        }
        Ok(out)
    }

    /// Generator tables: products, `d`, `F_m` and `V_m` on every basis element.
    pub fn table(&self, s: &TruncationSet) -> Result<Vec<TableEntry>> {
        let gens = |set: &TruncationSet| -> Vec<(String, DrwElement)> {
            let mut g: Vec<_> = set.iter().map(|n| (format!("V{n}"), DrwElement::v(set, n))).collect();
            g.extend(set.iter().filter(|&n| n > 1).map(|n| (format!("dV{n}"), DrwElement::dv(set, n))));
            g
        };
        let all = gens(s);
        let mut out = Vec::new();
        for (i, (a, x)) in all.iter().enumerate() {
            for (b, y) in &all[i..] {
                out.push(TableEntry::new("mul", format!("{a} · {b}"), self.mul(x, y)?));
            }
        }
        for (a, x) in &all {
            out.push(TableEntry::new("d", format!("d({a})"), self.d(x)));
        }
        for m in s.iter().filter(|&m| m > 1) {
            for (a, x) in &all {
                out.push(TableEntry::new("frob", format!("F{m}({a})"), self.frobenius(m, x)));
            }
            for (a, x) in gens(&s.quotient(m)) {
                out.push(TableEntry::new("versch", format!("V{m}({a})"), self.verschiebung(m, &x, s)?));
            }
        }
        Ok(out)
    }
}

/// Adds `c·Σ_{r≥1} 2^{r-1}k·dV_{2^r k}`, truncated to the set.
fn add_dyadic_tail(out: &mut DrwElement, k: u64, c: &BigInt) {
    let mut idx = 2 * k;
    while out.set().contains(idx) {
        out.add_deg1(idx, &(c * (idx / 2)));
        idx *= 2;
    }
}

/// One line of a generator table.
#[derive(Debug, Clone)]
pub struct TableEntry {
    pub op: &'static str,
    pub input: String,
    pub output: DrwElement,
}

impl TableEntry {
    fn new(op: &'static str, input: String, output: DrwElement) -> Self {
        TableEntry { op, input, output }
    }

    pub fn to_json(&self) -> Json {
        json!({"op": self.op, "input": self.input, "output": self.output.to_json()})
    }
}

impl fmt::Display for TableEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.input, self.output.short())
    }
}
