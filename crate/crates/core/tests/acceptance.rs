//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use trilin_core::suites::{
    suite_bernstein, suite_deriv, suite_diag_consistency, suite_geometry, suite_kt, suite_ks,
    suite_qjet, suite_ranks, suite_rk, suite_symmetry, suite_table, suite_zeroset, SuiteConfig,
};

fn report_line(criterion: &str, r: &trilin_core::probes::SuiteReport) {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let err = r
        .max_err_log2
        .map(|e| format!(", max numeric rel err 2^{e:.1}"))
        .unwrap_or_default();
    println!(
        "ACCEPT {criterion}: {status} [{} cases{err}]",
        r.cases
    );
    for f in r.failures.iter().take(10) {
        println!("    failure: {f}");
    }
    assert!(r.passed(), "{criterion} failed");
}

fn cfg() -> SuiteConfig {
    SuiteConfig::default()
}

#[test]
fn criterion_1_dimension_table() {
    let t0 = std::time::Instant::now();
    let r = suite_table(&cfg());
    let dt = t0.elapsed();
    report_line("1 dimension table (n in 4..=7, k <= 6, zero tolerance)", &r);
    println!("    table sweep took {dt:?}");
    assert!(dt.as_secs() < 60, "table sweep must finish under a minute");
}

#[test]
fn criterion_2_symmetry_principle() {
    let mut c = cfg();
    c.samples = 500;
    report_line("2 symmetry principle (500 samples, k <= 5)", &suite_symmetry(&c));
}

#[test]
fn criterion_3_zero_set() {
    report_line(
        "3 zero set (50 points/line family exact zeros; off-set nonvanishing)",
        &suite_zeroset(&cfg()),
    );
}

#[test]
fn criterion_4_identity_suites() {
    let c = cfg();
    report_line("4a kernel/type-I relation (100 samples)", &suite_kt(&c));
    report_line("4b kernel/diagonal relation incl. order-0 (100 samples)", &suite_ks(&c));
    report_line("4c kernel/intertwiner relation (100 samples)", &suite_rk(&c));
}

#[test]
fn criterion_5_derivative_lemmas() {
    report_line(
        "5 derivative lemmas at stratum witnesses (exact jets, a <= 5)",
        &suite_deriv(&cfg()),
    );
}

#[test]
fn criterion_6_bernstein_chain() {
    report_line(
        "6 Bernstein-Sato chain (50 samples, n in {4,5,6}) and roots",
        &suite_bernstein(&cfg()),
    );
}

#[test]
fn criterion_7_multiplicity_ranks() {
    report_line(
        "7 multiplicity ranks per stratum/parity and vanishing grids",
        &suite_ranks(&cfg()),
    );
    report_line(
        "7b diagonal-dimension consistency across strata",
        &suite_diag_consistency(&cfg()),
    );
}

#[test]
fn criterion_8_jet_oracles() {
    report_line(
        "8 second-derivative family vs jets; order-3 triple-point pattern",
        &suite_qjet(&cfg()),
    );
}

#[test]
fn criterion_9_geometry_sweeps() {
    report_line(
        "9 line-arrangement sweeps (l <= 8) and closed-form strata",
        &suite_geometry(&cfg()),
    );
}
