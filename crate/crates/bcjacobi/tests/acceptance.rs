//! The acceptance battery: every identity the library claims, at its full
//! stated range, with exact rational equality (zero tolerance). Each
//! criterion prints one pass/fail line; `cargo test --test acceptance`
//! runs them all.

use bcjacobi::suites::{run_suite, SuiteOptions, SuiteReport};

fn check(criterion: &str, description: &str, report: SuiteReport) {
    let status = if report.pass() { "PASS" } else { "FAIL" };
    println!("{status} {criterion}: {description} [{} cases]", report.cases.len());
    if !report.pass() {
        for case in report.cases.iter().filter(|c| !c.pass) {
            println!("    failed: {} ({})", case.name, case.witness.as_deref().unwrap_or(""));
        }
    }
    assert!(report.pass(), "{criterion} failed: {:?}", report.failures);
}

fn opts(max_weight: usize) -> SuiteOptions {
    SuiteOptions {
        max_weight,
        jobs: 4,
        ..SuiteOptions::default()
    }
}

#[test]
fn criterion_01_eigen_relation() {
    // exact eigen-equations for all |lambda| <= 6 at 3 certified seeds,
    // with support, leading coefficient and closed zero values
    check(
        "criterion 1",
        "eigen-relation L J = e J for |lambda| <= 6 at 3 seeds",
        run_suite("eigen", &opts(6)).unwrap(),
    );
}

#[test]
fn criterion_02_evaluation_at_zero() {
    // the zero-value checks ride inside the eigen suite: the closed form for
    // every |lambda| <= 6, and both finite evaluation formulas against the
    // actual finite constant terms for l(lambda) <= N <= 4, |lambda| <= 5
    let report = run_suite("eigen", &opts(6)).unwrap();
    let zero_cases = report
        .cases
        .iter()
        .filter(|c| c.name.starts_with("opdam"))
        .count();
    assert!(zero_cases >= 40, "finite evaluation cases: {zero_cases}");
    check(
        "criterion 2",
        "evaluation at zero: closed form and both finite formulas",
        report,
    );
}

#[test]
fn criterion_03_binomial_formula() {
    check(
        "criterion 3",
        "Jack-basis expansion matches the binomial coefficients for |lambda| <= 5",
        run_suite("binomial", &opts(5)).unwrap(),
    );
}

#[test]
fn criterion_04_interpolation_polynomials() {
    check(
        "criterion 4",
        "combinatorial formula = linear-system oracle (|lambda| <= 4, N <= 4); vanishing and normalization (<= 5)",
        run_suite("interpolation", &opts(4)).unwrap(),
    );
}

#[test]
fn criterion_05_pieri_r1() {
    check(
        "criterion 5",
        "r = 1 Pieri identity exact in Lambda for |lambda| <= 5; all coefficient forms agree",
        run_suite("pieri-r1", &opts(5)).unwrap(),
    );
}

#[test]
fn criterion_06_van_diejen() {
    check(
        "criterion 6",
        "van Diejen identity for |lambda| <= 4, r <= 3, N <= 5; vanishing bound exhaustive to N = 7",
        run_suite("van-diejen", &opts(4)).unwrap(),
    );
}

#[test]
fn criterion_07_rational_reconstruction() {
    check(
        "criterion 7",
        "h-dependence of every r <= 2, |lambda| <= 3 Pieri term reconstructs and validates on holdouts",
        run_suite("reconstruction", &opts(3)).unwrap(),
    );
}

#[test]
fn criterion_08_symmetries() {
    check(
        "criterion 8",
        "the three operator symmetries on weight <= 6 and the Jacobi dualities for |lambda| <= 4",
        run_suite("symmetries", &opts(6)).unwrap(),
    );
}

#[test]
fn criterion_09_intertwining() {
    check(
        "criterion 9",
        "finite intertwining for N <= 4 and deformed restriction for (m,n) up to (2,2), weight <= 5",
        run_suite("intertwine", &opts(5)).unwrap(),
    );
}

#[test]
fn criterion_10_ideals() {
    check(
        "criterion 10",
        "invariant ideals: vanishing iff rectangle containment on both branches; none at generic h",
        run_suite("ideals", &opts(5)).unwrap(),
    );
}

#[test]
fn criterion_11_super_evaluation() {
    check(
        "criterion 11",
        "super evaluation product = direct normalized evaluation for |lambda| <= 6, (m,n) <= (2,2)",
        run_suite("super-eval", &opts(6)).unwrap(),
    );
}

#[test]
fn criterion_12_deformed_pieri_and_bispectrality() {
    check(
        "criterion 12a",
        "deformed Pieri identity for |lambda| <= 5 at 3 seeds",
        run_suite("super-pieri", &opts(5)).unwrap(),
    );
    check(
        "criterion 12b",
        "bispectrality at 3 random points; the two Koornwinder weight forms agree at 5 spectral points",
        run_suite("bispectral", &opts(4)).unwrap(),
    );
}

#[test]
fn criterion_13_restriction_of_bernoulli_generators() {
    check(
        "criterion 13",
        "f_l(lambda) = f_l^{m,n}(chi(lambda)) for |lambda| <= 5, l <= 3, plus quasi-invariance",
        run_suite("restriction-bernoulli", &opts(5)).unwrap(),
    );
}

#[test]
fn criterion_14_harish_chandra_pie() {
    check(
        "criterion 14",
        "quantum-integral system solves; interpolation Pieri identity for degree-2 generators",
        run_suite("hc-pie", &opts(0)).unwrap(),
    );
}

#[test]
fn criterion_15_classical_ode() {
    check(
        "criterion 15",
        "N = 1 restriction satisfies the classical Jacobi equation for degrees <= 5",
        run_suite("ode-n1", &opts(5)).unwrap(),
    );
}

#[test]
fn operator_split_consistency() {
    check(
        "auxiliary",
        "L = A + B with A weight-preserving and B weight-lowering, weight <= 6",
        run_suite("operator-split", &opts(6)).unwrap(),
    );
}
