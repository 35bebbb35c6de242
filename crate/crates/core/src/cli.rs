//! Command-line front end. Every verb maps onto one library operation.
//!
//! Vectors are read either as comma-separated scalars (`1,-2,3/4`) aligned
//! with the truncation set, or as JSON: an array of coordinate values, or
//! the full object printed by `--format json`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value as Json};

use crate::basis::{teich_basis, BasisWittInt};
use crate::drw::{DrwElement, DrwZ, Mutation};
use crate::error::{Result, WittError};
use crate::laws::{self, PolyMutation};
use crate::ptypical;
use crate::ring::{Ring, RingElement, RingSpec, Value};
use crate::series_coords::{gamma, gamma_inverse};
use crate::truncation::TruncationSet;
use crate::universal::{self, UnivCache};
use crate::witt::{GhostVector, Strategy, WittVector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Options shared by every verb.
#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest index a universal polynomial may reach (at most 128).
    #[arg(long, global = true, env = "WITTKIT_CEILING")]
    pub ceiling: Option<u64>,
    /// Universal-polynomial cache file, loaded before and saved after the verb.
    #[arg(long, global = true, env = "WITTKIT_CACHE")]
    pub cache: Option<PathBuf>,
    /// Seed for randomized verbs.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Debug, Parser)]
#[command(name = "wittkit", version, about = "Exact big Witt vectors and the de Rham-Witt complex of Z")]
struct Cli {
    #[command(flatten)]
    config: CliConfig,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Debug, Clone, Args)]
struct WittCtx {
    /// Truncation set: div24, seg16, ptyp(2,4) or {1,2,3}.
    #[arg(long, global = true, default_value = "div6")]
    set: String,
    /// Coefficient ring: Z, Q, Z/8, Z[x], series(Z/2,3), sz(Z), W(div4,Z), ...
    #[arg(long, global = true, default_value = "Z")]
    ring: String,
    #[arg(long, global = true, value_enum, default_value_t = StrategyArg::Auto)]
    strategy: StrategyArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum StrategyArg {
    Auto,
    Universal,
    Ghost,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Strategy {
        match s {
            StrategyArg::Auto => Strategy::Auto,
            StrategyArg::Universal => Strategy::Universal,
            StrategyArg::Ghost => Strategy::Ghost,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Verb {
    /// Witt vector arithmetic in W_S(A).
    Witt {
        #[command(subcommand)]
        op: WittOp,
        #[command(flatten)]
        ctx: WittCtx,
    },
    /// W_S(Z) in the basis V_n([1]).
    Basis {
        #[command(subcommand)]
        op: BasisOp,
        #[arg(long, global = true, default_value = "div6")]
        set: String,
    },
    /// The comonad map Δ: W_S(A) → W_T(W_U(A)).
    #[command(allow_hyphen_values = true)]
    Delta {
        #[arg(long)]
        target: String,
        x: String,
        #[command(flatten)]
        ctx: WittCtx,
    },
    /// γ(x) = Π (1 - x_n t^n)^{-1} modulo t^{precision+1}.
    #[command(allow_hyphen_values = true)]
    Gamma {
        x: String,
        #[arg(long, default_value_t = 8)]
        precision: usize,
        #[command(flatten)]
        ctx: WittCtx,
    },
    /// The first n Witt coordinates of a series with constant term 1.
    #[command(allow_hyphen_values = true)]
    GammaInv {
        /// Series coefficients c_0, c_1, ... (c_0 must be 1).
        coeffs: String,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "Z")]
        ring: String,
    },
    /// p-typical decomposition and W_n(F_p) ≅ Z/p^n.
    Ptypical {
        #[command(subcommand)]
        op: PtypOp,
    },
    /// The big de Rham-Witt complex of Z.
    Drwz {
        #[command(subcommand)]
        op: DrwOp,
        #[arg(long, global = true, default_value = "div6")]
        set: String,
        #[arg(long, global = true, value_enum, default_value_t = MutationArg::None)]
        mutation: MutationArg,
    },
    /// Law suites.
    Laws {
        #[command(subcommand)]
        op: LawsOp,
    },
    /// Universal-polynomial cache maintenance.
    Cache {
        #[command(subcommand)]
        op: CacheOp,
    },
}

#[derive(Debug, Subcommand)]
enum WittOp {
    #[command(allow_hyphen_values = true)]
    Add { x: String, y: String },
    #[command(allow_hyphen_values = true)]
    Mul { x: String, y: String },
    #[command(allow_hyphen_values = true)]
    Neg { x: String },
    #[command(allow_hyphen_values = true)]
    Ghost { x: String },
    /// Witt vector with the given ghost components.
    #[command(allow_hyphen_values = true)]
    FromGhost { ghost: String },
    /// Teichmüller representative [a].
    #[command(allow_hyphen_values = true)]
    Teich { a: String },
    /// F_n: W_S → W_{S/n}.
    #[command(allow_hyphen_values = true)]
    Frob { n: u64, x: String },
    /// V_n: W_{S/n} → W_S; x is read over S/n.
    #[command(allow_hyphen_values = true)]
    Versch { n: u64, x: String },
    /// Restriction to a subset T.
    #[command(allow_hyphen_values = true)]
    Restrict { t: String, x: String },
}

#[derive(Debug, Subcommand)]
enum BasisOp {
    /// Coordinates → V-basis coefficients.
    #[command(allow_hyphen_values = true)]
    To { x: String },
    /// V-basis coefficients → coordinates.
    #[command(allow_hyphen_values = true)]
    From { coeffs: String },
    /// [m] in the V-basis (necklace coefficients).
    #[command(allow_hyphen_values = true)]
    Teich { m: String },
}

#[derive(Debug, Subcommand)]
enum PtypOp {
    #[command(allow_hyphen_values = true)]
    Decompose {
        x: String,
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        ctx: WittCtx,
    },
    Tau {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u32,
        /// Only show τ(k).
        #[arg(long)]
        k: Option<i64>,
        /// Check additivity and multiplicativity exhaustively.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MutationArg {
    None,
    CurlyZero,
    WrongCrt,
}

#[derive(Debug, Subcommand)]
enum DrwOp {
    #[command(allow_hyphen_values = true)]
    Mul { x: String, y: String },
    #[command(allow_hyphen_values = true)]
    D { x: String },
    #[command(allow_hyphen_values = true)]
    Frob { n: u64, x: String },
    /// x is read over S/n.
    #[command(allow_hyphen_values = true)]
    Versch { n: u64, x: String },
    Dlog,
    Table,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Suite {
    Wittcomplex,
    Comonad,
    Ring,
    Relations,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolyMutationArg {
    None,
    DropS2,
    DeltaTwo,
}

#[derive(Debug, Subcommand)]
enum LawsOp {
    Check {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value = "div24")]
        set: String,
        /// Outer set T for the comonad suite.
        #[arg(long, default_value = "div4")]
        target: String,
        #[arg(long, default_value = "Z")]
        ring: String,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Shorthand for --format json.
        #[arg(long)]
        json: bool,
        #[arg(long, value_enum, default_value_t = MutationArg::None)]
        mutation: MutationArg,
        #[arg(long, value_enum, default_value_t = PolyMutationArg::None)]
        poly_mutation: PolyMutationArg,
    },
}

#[derive(Debug, Subcommand)]
enum CacheOp {
    Warm {
        #[arg(long)]
        up_to: u64,
    },
}

/// What a verb produced: text and JSON renderings, plus the exit status.
struct Output {
    text: String,
    json: Json,
    ok: bool,
}

impl Output {
    fn new(text: impl Into<String>, json: Json) -> Self {
        Output { text: text.into(), json, ok: true }
    }
}

fn set_arg(s: &str) -> Result<TruncationSet> {
    TruncationSet::parse(s)
}

fn ring_arg(s: &str) -> Result<Ring> {
    RingSpec::parse(s)
}

/// Splits on commas outside brackets.
fn split_top(text: &str) -> Vec<&str> {
    let (mut depth, mut start, mut out) = (0i32, 0, Vec::new());
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn values_arg(text: &str, base: &Ring, len: usize) -> Result<Vec<RingElement>> {
    let t = text.trim();
    let values: Vec<Value> = if t.starts_with('[') {
        let j: Json = serde_json::from_str(t).map_err(|e| WittError::parse(e.to_string()))?;
        let arr = j.as_array().ok_or_else(|| WittError::parse("expected a JSON array"))?;
        arr.iter().map(|v| base.value_from_json(v)).collect::<Result<_>>()?
    } else if t.is_empty() {
        Vec::new()
    } else {
        split_top(t).into_iter().map(|p| base.parse_scalar(p)).collect::<Result<_>>()?
    };
    if values.len() != len {
        return Err(WittError::InvalidInput(format!("expected {len} values, got {}", values.len())));
    }
    values.into_iter().map(|v| RingElement::new(base.clone(), v)).collect()
}

fn witt_arg(text: &str, base: &Ring, set: &TruncationSet) -> Result<WittVector> {
    let t = text.trim();
    if t.starts_with('{') && t.contains("\"coords\"") {
        let j: Json = serde_json::from_str(t).map_err(|e| WittError::parse(e.to_string()))?;
        let x = WittVector::from_json(&j)?;
        if x.set() != set || x.base() != base {
            return Err(WittError::SpecMismatch(x.ring().to_string(), RingSpec::witt(base.clone(), set.clone())?.to_string()));
        }
        return Ok(x);
    }
    WittVector::new(base, set, &values_arg(t, base, set.len())?)
}

fn basis_arg(text: &str, set: &TruncationSet) -> Result<BasisWittInt> {
    let t = text.trim();
    if t.starts_with('{') {
        let j: Json = serde_json::from_str(t).map_err(|e| WittError::parse(e.to_string()))?;
        return BasisWittInt::from_json(&j);
    }
    if t.contains('V') {
        let mut acc = BasisWittInt::zero(set);
        for (coef, is_d, n) in parse_terms(t)? {
            check_index(set, n)?;
            if is_d {
                return Err(WittError::parse("dV terms are not Witt vectors"));
            }
            acc = acc.add(&BasisWittInt::generator(set, n).scale(&coef))?;
        }
        return Ok(acc);
    }
    let z = RingSpec::integers();
    let coeffs = values_arg(t, &z, set.len())?
        .into_iter()
        .map(|c| c.value().as_int().cloned().expect("integer"))
        .collect();
    BasisWittInt::new(set, coeffs)
}

/// Splits `3*V2 + dV6 - V1` (or `3·V2 + 1·dV6`) into `(coefficient, is_d, n)`.
fn parse_terms(text: &str) -> Result<Vec<(BigInt, bool, u64)>> {
    let bad = |s: &str| WittError::parse(format!("cannot read term {s:?}; use e.g. 3*V2 + dV6"));
    let normalized = text.replace('·', "*").replace('-', "+-");
    let mut out = Vec::new();
    for term in normalized.split('+').map(str::trim).filter(|s| !s.is_empty() && *s != "0") {
        let (coef, gen) = match term.split_once('*') {
            Some((c, g)) => (c.trim().parse::<BigInt>().map_err(|_| bad(term))?, g.trim()),
            None => match term.strip_prefix('-') {
                Some(g) => (BigInt::from(-1), g.trim()),
                None => (BigInt::from(1), term),
            },
        };
        let (is_d, idx) = match gen.strip_prefix("dV") {
            Some(n) => (true, n),
            None => (false, gen.strip_prefix('V').ok_or_else(|| bad(term))?),
        };
        out.push((coef, is_d, idx.parse().map_err(|_| bad(term))?));
    }
    Ok(out)
}

fn check_index(set: &TruncationSet, n: u64) -> Result<()> {
    if set.contains(n) {
        Ok(())
    } else {
        Err(WittError::InvalidInput(format!("index {n} outside {set}")))
    }
}

/// Reads JSON or a sum of terms like `3*V2 + dV6 - V1`.
fn drw_arg(text: &str, set: &TruncationSet) -> Result<DrwElement> {
    let t = text.trim();
    if t.starts_with('{') {
        let j: Json = serde_json::from_str(t).map_err(|e| WittError::parse(e.to_string()))?;
        let x = DrwElement::from_json(&j)?;
        if x.set() != set {
            return Err(WittError::SetMismatch { expected: set.to_string(), found: x.set().to_string() });
        }
        return Ok(x);
    }
    let mut acc = DrwElement::zero(set);
    for (coef, is_d, n) in parse_terms(t)? {
        check_index(set, n)?;
        let g = if is_d { DrwElement::dv(set, n) } else { DrwElement::v(set, n) };
        acc = acc.add(&g.scale(&coef))?;
    }
    Ok(acc)
}

fn witt_out(x: &WittVector) -> Output {
    Output::new(x.to_string(), x.to_json())
}

fn drw_out(x: &DrwElement) -> Output {
    Output::new(x.short(), x.to_json())
}

fn run_witt(op: WittOp, ctx: &WittCtx) -> Result<Output> {
    let (set, base) = (set_arg(&ctx.set)?, ring_arg(&ctx.ring)?);
    universal::check_set_ceiling(&set)?;
    let st = Strategy::from(ctx.strategy);
    let read = |t: &str| witt_arg(t, &base, &set);
    Ok(match op {
        WittOp::Add { x, y } => witt_out(&read(&x)?.add_with(&read(&y)?, st)?),
        WittOp::Mul { x, y } => witt_out(&read(&x)?.mul_with(&read(&y)?, st)?),
        WittOp::Neg { x } => witt_out(&read(&x)?.neg_with(st)?),
        WittOp::Ghost { x } => {
            let g = read(&x)?.ghost();
            Output::new(g.to_string(), g.to_json())
        }
        WittOp::FromGhost { ghost } => {
            let t = ghost.trim();
            let g = if t.starts_with('{') {
                let j: Json = serde_json::from_str(t).map_err(|e| WittError::parse(e.to_string()))?;
                GhostVector::from_json(&j)?
            } else {
                GhostVector::new(&base, &set, &values_arg(t, &base, set.len())?)?
            };
            witt_out(&g.to_witt()?)
        }
        WittOp::Teich { a } => {
            let a = values_arg(&a, &base, 1)?.remove(0);
            witt_out(&WittVector::teichmuller(&a, &set)?)
        }
        WittOp::Frob { n, x } => witt_out(&read(&x)?.frobenius_with(n, st)?),
        WittOp::Versch { n, x } => {
            let y = witt_arg(&x, &base, &set.quotient(n))?;
            witt_out(&WittVector::verschiebung(n, &y, &set)?)
        }
        WittOp::Restrict { t, x } => witt_out(&read(&x)?.restrict(&set_arg(&t)?)?),
    })
}

fn run_basis(op: BasisOp, set: &str) -> Result<Output> {
    let set = set_arg(set)?;
    let z = RingSpec::integers();
    let basis_out = |b: &BasisWittInt| Output::new(b.to_string(), b.to_json());
    Ok(match op {
        BasisOp::To { x } => basis_out(&BasisWittInt::from_coords(&witt_arg(&x, &z, &set)?)?),
        BasisOp::From { coeffs } => witt_out(&basis_arg(&coeffs, &set)?.to_coords()?),
        BasisOp::Teich { m } => {
            let m: BigInt = m.trim().parse().map_err(|_| WittError::parse(format!("bad integer {m:?}")))?;
            basis_out(&teich_basis(m, &set))
        }
    })
}

fn run_ptypical(op: PtypOp) -> Result<Output> {
    match op {
        PtypOp::Decompose { x, p, ctx } => {
            let (set, base) = (set_arg(&ctx.set)?, ring_arg(&ctx.ring)?);
            let parts = ptypical::decompose(&witt_arg(&x, &base, &set)?, p)?;
            let text: Vec<String> = parts.iter().map(|(k, y)| format!("k={k} over {}: {y}", y.set())).collect();
            let comps: serde_json::Map<String, Json> = parts.iter().map(|(k, y)| (k.to_string(), y.to_json())).collect();
            Ok(Output::new(text.join("\n"), json!({"p": p, "set": set.members(), "components": comps})))
        }
        PtypOp::Tau { p, n, k, verify } => {
            let tau = ptypical::tau_iso(p, n)?;
            let verified = if verify { Some(tau.verify().is_ok()) } else { None };
            let ks: Vec<i64> = match k {
                Some(k) => vec![k],
                None => (0..tau.modulus() as i64).collect(),
            };
            let mut lines: Vec<String> = ks.iter().map(|&k| format!("{k} ↦ {}", tau.forward(k))).collect();
            if let Some(v) = verified {
                lines.push(format!("ring isomorphism: {}", if v { "verified" } else { "FAILED" }));
            }
            let table: Vec<Json> = ks.iter().map(|&k| json!({"k": k, "witt": tau.forward(k).to_json()})).collect();
            let mut out = Output::new(lines.join("\n"), json!({"p": p, "n": n, "table": table, "verified": verified}));
            out.ok = verified != Some(false);
            Ok(out)
        }
    }
}

fn mutation(m: MutationArg) -> Mutation {
    match m {
        MutationArg::None => Mutation::Faithful,
        MutationArg::CurlyZero => Mutation::CurlyZero,
        MutationArg::WrongCrt => Mutation::WrongCrt,
    }
}

fn run_drwz(op: DrwOp, set: &str, m: MutationArg) -> Result<Output> {
    let set = set_arg(set)?;
    let z = DrwZ::mutated(mutation(m));
    Ok(match op {
        DrwOp::Mul { x, y } => drw_out(&z.mul(&drw_arg(&x, &set)?, &drw_arg(&y, &set)?)?),
        DrwOp::D { x } => drw_out(&z.d(&drw_arg(&x, &set)?)),
        DrwOp::Frob { n, x } => drw_out(&z.frobenius(n, &drw_arg(&x, &set)?)),
        DrwOp::Versch { n, x } => drw_out(&z.verschiebung(n, &drw_arg(&x, &set.quotient(n))?, &set)?),
        DrwOp::Dlog => drw_out(&DrwElement::dlog_minus_one(&set)),
        DrwOp::Table => {
            let t = z.table(&set)?;
            let text: Vec<String> = t.iter().map(ToString::to_string).collect();
            let rows: Vec<Json> = t.iter().map(|e| e.to_json()).collect();
            Output::new(text.join("\n"), json!({"set": set.members(), "entries": rows}))
        }
    })
}

#[allow(clippy::too_many_arguments)]
fn run_laws(
    suite: Suite,
    set: &str,
    target: &str,
    ring: &str,
    trials: usize,
    seed: u64,
    m: MutationArg,
    pm: PolyMutationArg,
) -> Result<Output> {
    let set = set_arg(set)?;
    universal::check_set_ceiling(&set)?;
    let run = || -> Result<laws::LawReport> {
        match suite {
            Suite::Wittcomplex => Ok(laws::check_witt_complex(&DrwZ::mutated(mutation(m)), &set, trials, seed)),
            Suite::Comonad => laws::check_comonad(&set, &set_arg(target)?, &ring_arg(ring)?, trials, seed),
            Suite::Ring => laws::check_ring_laws(&set, &ring_arg(ring)?, trials, seed),
            Suite::Relations => laws::check_witt_relations(&set, &ring_arg(ring)?, trials, seed),
        }
    };
    let report = match pm {
        PolyMutationArg::None => run()?,
        PolyMutationArg::DropS2 => universal::with_cache(laws::mutated_cache(PolyMutation::DropS2CrossTerm), run)?,
        PolyMutationArg::DeltaTwo => universal::with_cache(laws::mutated_cache(PolyMutation::DeltaTwoOffByOne), run)?,
    };
    let mut out = Output::new(report.to_string(), report.to_json());
    out.ok = report.passed();
    Ok(out)
}

fn dispatch(verb: Verb, config: &CliConfig) -> Result<Output> {
    match verb {
        Verb::Witt { op, ctx } => run_witt(op, &ctx),
        Verb::Basis { op, set } => run_basis(op, &set),
        Verb::Delta { target, x, ctx } => {
            let (set, base) = (set_arg(&ctx.set)?, ring_arg(&ctx.ring)?);
            let d = witt_arg(&x, &base, &set)?.delta_with(&set_arg(&target)?, ctx.strategy.into())?;
            Ok(witt_out(&d))
        }
        Verb::Gamma { x, precision, ctx } => {
            let (set, base) = (set_arg(&ctx.set)?, ring_arg(&ctx.ring)?);
            let g = gamma(&witt_arg(&x, &base, &set)?, precision)?;
            Ok(Output::new(g.to_string(), g.to_json()))
        }
        Verb::GammaInv { coeffs, n, ring } => {
            let base = ring_arg(&ring)?;
            let count = split_top(coeffs.trim()).len();
            let values = values_arg(&coeffs, &base, count)?;
            let series = RingSpec::series(base.clone(), count)?;
            let f = RingElement::new(series, Value::Series(values.into_iter().map(RingElement::into_value).collect()))?;
            Ok(witt_out(&gamma_inverse(&f, n)?))
        }
        Verb::Ptypical { op } => run_ptypical(op),
        Verb::Drwz { op, set, mutation } => run_drwz(op, &set, mutation),
        Verb::Laws { op: LawsOp::Check { suite, set, target, ring, trials, json: _, mutation, poly_mutation } } => {
            run_laws(suite, &set, &target, &ring, trials, config.seed, mutation, poly_mutation)
        }
        Verb::Cache { op: CacheOp::Warm { up_to } } => {
            let cache: &UnivCache = universal::global();
            let n = cache.warm(up_to)?;
            let text = format!("{n} universal polynomials cached (ceiling {})", cache.ceiling());
            Ok(Output::new(text, json!({"cached": n, "up_to": up_to, "ceiling": cache.ceiling()})))
        }
    }
}

fn wants_json(verb: &Verb, config: &CliConfig) -> bool {
    config.format == Format::Json || matches!(verb, Verb::Laws { op: LawsOp::Check { json: true, .. } })
}

/// Runs the CLI on `args` (including the program name). Returns the exit
/// code: 0 on success, 1 on a domain error or failed check, 2 on misuse.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { write!(out, "{rendered}") } else { write!(err, "{rendered}") };
            return code;
        }
    };
    let config = cli.config.clone();
    let json = wants_json(&cli.verb, &config);
    let result = prepare(&config).and_then(|()| dispatch(cli.verb, &config)).and_then(|o| {
        if let Some(path) = &config.cache {
            universal::global().save(path)?;
        }
        Ok(o)
    });
    match result {
        Ok(o) => {
            let body = if json { serde_json::to_string_pretty(&o.json).expect("JSON renders") } else { o.text };
            let _ = writeln!(out, "{body}");
            i32::from(!o.ok)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            1
        }
    }
}

fn prepare(config: &CliConfig) -> Result<()> {
    let cache = universal::global();
    if let Some(c) = config.ceiling {
        cache.set_ceiling(c)?;
    }
    if let Some(path) = &config.cache {
        cache.load(path)?;
    }
    Ok(())
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("wittkit").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn spec_examples() {
        let (code, out, _) = call(&["witt", "teich", "2", "--set", "{1,2,3}", "--ring", "Z", "--format", "json"]);
        assert_eq!(code, 0);
        let j: Json = serde_json::from_str(&out).unwrap();
        assert_eq!(j["coords"], json!({"1": 2, "2": 0, "3": 0}));
        assert_eq!(call(&["basis", "teich", "2", "--set", "{1,2,3}"]).1.trim(), "2·V1 + 1·V2 + 2·V3");
        assert_eq!(call(&["drwz", "dlog", "--set", "div8"]).1.trim(), "1·dV2 + 2·dV4 + 4·dV8");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["witt", "frobnicate"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
        let (code, _, err) = call(&["ptypical", "tau", "--p", "6", "--n", "1"]);
        assert_eq!(code, 1);
        assert!(err.starts_with("error: NotPrime:"), "{err}");
    }

    #[test]
    fn json_round_trips() {
        let (_, out, _) = call(&["witt", "mul", "1,2,3,4", "-1,0,2,5", "--set", "div6", "--ring", "Z/8", "--format", "json"]);
        let x = WittVector::from_json(&serde_json::from_str(&out).unwrap()).unwrap();
        let (_, again, _) = call(&["witt", "add", out.trim(), "0,0,0,0", "--set", "div6", "--ring", "Z/8", "--format", "json"]);
        assert_eq!(WittVector::from_json(&serde_json::from_str(&again).unwrap()).unwrap(), x);
        let (_, out, _) = call(&["drwz", "mul", "V2", "dV2", "--set", "div16", "--format", "json"]);
        let d = DrwElement::from_json(&serde_json::from_str(&out).unwrap()).unwrap();
        assert_eq!(d.short(), "2·dV4 + 4·dV8 + 8·dV16");
    }

    #[test]
    fn laws_verb_is_reproducible() {
        let args = ["laws", "check", "--suite", "wittcomplex", "--set", "div6", "--trials", "5", "--seed", "3", "--json"];
        let (code, a, _) = call(&args);
        assert_eq!(code, 0);
        let strip = |s: &str| {
            let mut j: Json = serde_json::from_str(s).unwrap();
            j["elapsed_ms"] = Json::Null;
            j
        };
        assert_eq!(strip(&a), strip(&call(&args).1));
        let (code, _, _) = call(&["laws", "check", "--suite", "wittcomplex", "--set", "div8", "--trials", "3", "--mutation", "curly-zero"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn other_verbs() {
        assert_eq!(call(&["gamma-inv", "1,1,0", "--n", "2"]).1.trim(), "(1, -1)");
        assert_eq!(call(&["gamma", "0,1", "--set", "seg2", "--precision", "4"]).1.trim(), "1 + 1*t^2 + 1*t^4 (mod t^5)");
        let (code, out, _) = call(&["ptypical", "tau", "--p", "2", "--n", "2", "--verify"]);
        assert_eq!(code, 0);
        assert!(out.contains("3 ↦ (1, 1)") && out.contains("verified"), "{out}");
        let (code, out, _) = call(&["delta", "--target", "div2", "1,2,3", "--set", "{1,2,3}"]);
        assert_eq!(code, 0, "{out}");
        assert_eq!(call(&["drwz", "versch", "2", "dV3", "--set", "div6"]).1.trim(), "2·dV6");
        assert_eq!(call(&["witt", "restrict", "div2", "1,2,3,4", "--set", "div6"]).1.trim(), "(1, 2)");
        let (code, out, _) = call(&["ptypical", "decompose", "1,0,0,0", "--p", "2", "--set", "div6", "--ring", "Q"]);
        assert_eq!(code, 0, "{out}");
    }
}
