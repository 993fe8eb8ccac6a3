//! The acceptance suite: every criterion runs at its stated scope with a
//! wall-clock budget and prints one pass/fail line (visible under
//! `cargo test -- --nocapture`).

use std::time::{Duration, Instant};

use figvi::report::Report;
use figvi::selftest::{self, DEFAULT_SEED};

fn gate(id: usize, name: &str, report: &Report, elapsed: Duration, budget: Duration) {
    let pass = report.all_pass();
    println!(
        "ACCEPTANCE {id:2} {name:40} {} in {elapsed:.2?} (budget {budget:?})",
        if pass { "PASS" } else { "FAIL" }
    );
    if !pass {
        for c in report.checks.iter().filter(|c| !c.pass) {
            println!("  failed check: {} {}", c.name, c.detail);
        }
    }
    assert!(pass, "criterion {id} ({name}) failed");
    assert!(
        elapsed <= budget,
        "criterion {id} exceeded its budget: {elapsed:.2?} > {budget:?}"
    );
}

#[test]
fn criterion_01_morphism_calculus() {
    let t = Instant::now();
    let rep = selftest::criterion_morphism_calculus(DEFAULT_SEED).unwrap();
    gate(1, "morphism calculus", &rep, t.elapsed(), Duration::from_secs(5));
}

#[test]
fn criterion_02_phi_isomorphism() {
    let t = Instant::now();
    let rep = selftest::criterion_phi().unwrap();
    gate(2, "phi isomorphism", &rep, t.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_03_coinduction_fig() {
    let t = Instant::now();
    let rep = selftest::criterion_theta().unwrap();
    gate(3, "Q(kCe_m) for FI_G", &rep, t.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_04_coinduction_vi() {
    let t = Instant::now();
    let rep = selftest::criterion_pi(DEFAULT_SEED).unwrap();
    gate(4, "Q(kCe_m) for VI", &rep, t.elapsed(), Duration::from_secs(120));
}

#[test]
fn criterion_05_adjunction() {
    let t = Instant::now();
    let rep = selftest::criterion_adjunction().unwrap();
    gate(5, "shift/coinduction adjunction", &rep, t.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_06_oracle_equivalence() {
    let t = Instant::now();
    let rep = selftest::criterion_oracle(DEFAULT_SEED).unwrap();
    gate(6, "closed form vs oracle", &rep, t.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_07_injectivity() {
    let t = Instant::now();
    let rep = selftest::criterion_injectivity().unwrap();
    gate(7, "injectivity of free(0)", &rep, t.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_08_charp() {
    let t = Instant::now();
    let rep = selftest::criterion_charp().unwrap();
    gate(8, "characteristic p non-splitting", &rep, t.elapsed(), Duration::from_secs(10));
}

#[test]
fn criterion_09_stability() {
    let t = Instant::now();
    let rep = selftest::criterion_stability().unwrap();
    gate(9, "representation stability", &rep, t.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_10_homological_plumbing() {
    let t = Instant::now();
    let rep = selftest::criterion_homological().unwrap();
    gate(10, "homological plumbing", &rep, t.elapsed(), Duration::from_secs(60));
}

#[test]
fn criterion_11_selftest_determinism() {
    // byte-identical output of the real binary across two runs with the
    // same seed
    let bin = env!("CARGO_BIN_EXE_figvi");
    let run = || {
        let out = std::process::Command::new(bin)
            .args(["selftest", "--seed", "7"])
            .output()
            .expect("binary runs");
        assert!(out.status.success(), "selftest must pass");
        out.stdout
    };
    let first = run();
    let second = run();
    let pass = first == second && !first.is_empty();
    println!(
        "ACCEPTANCE 11 {:40} {} ({} bytes)",
        "selftest determinism",
        if pass { "PASS" } else { "FAIL" },
        first.len()
    );
    assert!(pass, "selftest output must be byte-identical across runs");
}
