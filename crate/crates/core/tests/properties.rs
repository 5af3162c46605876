//! The kernel property suites, a thousand cases each.

mod support;

use support::properties::{self as p, SuiteReport};

const CASES: u32 = 1000;

fn exercise(name: &str, suite: fn(u32) -> Result<SuiteReport, String>) {
    let report = suite(CASES).unwrap_or_else(|e| panic!("{name}: {e}"));
    assert!(
        report.exercised >= CASES / 10,
        "{name}: only {} of {CASES} cases exercised the property",
        report.exercised
    );
}

#[test]
fn substitution_commutes_with_renaming() {
    exercise("subst/alpha", p::subst_alpha);
}

#[test]
fn beta_normal_forms_are_stable() {
    exercise("beta idempotence", p::beta_idempotence);
}

#[test]
fn reduction_preserves_types() {
    exercise("subject reduction", p::subject_reduction);
}

#[test]
fn hypotheses_are_accounted_for() {
    exercise("linear bookkeeping", p::linear_bookkeeping);
}

#[test]
fn accepted_traces_are_sound() {
    exercise("trace soundness", p::trace_soundness);
}
