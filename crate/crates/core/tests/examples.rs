//! Every example in `examples/` runs and prints what it promises.

mod witt_arithmetic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/witt_arithmetic.rs"));
}

#[test]
fn witt_arithmetic_example_runs() {
    let text = witt_arithmetic::run_example().expect("witt_arithmetic example should run");
    assert!(text.contains("x + y = (3, 0, -6, -123)"), "{text}");
    assert!(text.contains("[2] = (2, 0, 0, 0)"), "{text}");
}

mod universal_polynomials {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/universal_polynomials.rs"));
}

#[test]
fn universal_polynomials_example_runs() {
    let text = universal_polynomials::run_example().expect("universal_polynomials example should run");
    assert!(text.contains("s_2 = -1*a1*b1 + 1*a2 + 1*b2"), "{text}");
    assert!(text.contains("f_{2,1} = 1*a1^2 + 2*a2"), "{text}");
}

mod necklaces {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/necklaces.rs"));
}

#[test]
fn necklaces_example_runs() {
    let text = necklaces::run_example().expect("necklaces example should run");
    assert!(text.contains("irreducibles over F_2 by degree: 2, 1, 2, 3, 6, 9, 18, 30"), "{text}");
    assert!(text.contains("V4 * V6 = 2·V12"), "{text}");
}

mod comonad {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/comonad.rs"));
}

#[test]
fn comonad_example_runs() {
    let text = comonad::run_example().expect("comonad example should run");
    assert!(text.contains("PASS"), "{text}");
}

mod power_series {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/power_series.rs"));
}

#[test]
fn power_series_example_runs() {
    let text = power_series::run_example().expect("power_series example should run");
    assert!(text.contains("γ(x + y) = γ(x)·γ(y)"), "{text}");
}

mod p_typical {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/p_typical.rs"));
}

#[test]
fn p_typical_example_runs() {
    let text = p_typical::run_example().expect("p_typical example should run");
    assert!(text.contains("e_1 has ghost ⟨1, 1, 0, 1, 0, 0⟩"), "{text}");
    assert!(text.contains("3↦(0, 1)"), "{text}");
}

mod de_rham_witt {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/de_rham_witt.rs"));
}

#[test]
fn de_rham_witt_example_runs() {
    let text = de_rham_witt::run_example().expect("de_rham_witt example should run");
    assert!(text.contains("V2 · dV2 = 2·dV4"), "{text}");
    assert!(text.contains("dlog[-1] = 1·dV2 + 2·dV4"), "{text}");
}

mod law_checks {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/law_checks.rs"));
}

#[test]
fn law_checks_example_runs() {
    let text = law_checks::run_example().expect("law_checks example should run");
    assert!(text.contains("passed = true"), "{text}");
    assert!(text.contains("CurlyZero: caught by axiom_iv.fdv"), "{text}");
    assert!(text.contains("caught by strategy.agreement"), "{text}");
}

mod command_line {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/command_line.rs"));
}

#[test]
fn command_line_example_runs() {
    let text = command_line::run_example().expect("command_line example should run");
    assert!(text.contains("1·dV2 + 2·dV4 + 4·dV8"), "{text}");
    assert!(text.contains("2·V1 + 1·V2 + 2·V3"), "{text}");
}
