//! The thirteen acceptance checks, one test per criterion, each printing a
//! single pass or fail line (visible under `--nocapture`). Set
//! `ACCEPTANCE_SCALE=small` to run the reduced workload.

use lacunary::acceptance::{run, Scale};

fn criterion(index: usize) {
    let scale = Scale::from_env();
    let result = run(index, scale).expect("criterion index in range");
    let verdict = if result.passed { "PASS" } else { "FAIL" };
    println!(
        "[{verdict}] criterion {:2} ({scale}): {} -- {}",
        result.index, result.name, result.detail
    );
    assert!(result.passed, "criterion {} failed: {}", result.index, result.detail);
}

#[test]
fn criterion_01_sieve_existence() {
    criterion(1);
}

#[test]
fn criterion_02_residual_divisibility() {
    criterion(2);
}

#[test]
fn criterion_03_finite_rank_mod_p() {
    criterion(3);
}

#[test]
fn criterion_04_sieve_absence_experiments() {
    criterion(4);
}

#[test]
fn criterion_05_scaling_rank_invariance() {
    criterion(5);
}

#[test]
fn criterion_06_powers_of_the_shift() {
    criterion(6);
}

#[test]
fn criterion_07_generator_independence() {
    criterion(7);
}

#[test]
fn criterion_08_coinvariant_windows() {
    criterion(8);
}

#[test]
fn criterion_09_quotient_versus_rebuild() {
    criterion(9);
}

#[test]
fn criterion_10_chevalley_eilenberg_slice() {
    criterion(10);
}

#[test]
fn criterion_11_padic_diagonal() {
    criterion(11);
}

#[test]
fn criterion_12_continuum_isolation() {
    criterion(12);
}

#[test]
fn criterion_13_infrastructure_oracles() {
    criterion(13);
}
