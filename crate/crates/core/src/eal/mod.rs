//! The elementary affine logic backend: translation of checked proofs to
//! EAL derivations and their checker, terms with explicit boxes, and
//! box-stratified normalization with cost accounting.

mod boxes;
mod derivation;
mod stratified;

pub use boxes::{to_box_term, BoxTerm};
pub use derivation::{check_eal, translate_to_eal, EalContext, EalDerivation, EalRule, RuleViolation};
pub use stratified::{stratified_normalize, CostProfile, LevelCost, StratifiedFuelExhausted};

use crate::proj::{Normalized, PureTerm};
use crate::syntax::FuelExhausted;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{0} is not a Church numeral")]
pub struct DecodeFailure(pub String);

/// `λf. λx. fⁿ x`
pub fn church_encode(n: u64) -> PureTerm {
    PureTerm::church(n)
}

/// Reads back a β-normal Church numeral, up to α-equivalence only.
pub fn church_decode(t: &PureTerm) -> Result<u64, DecodeFailure> {
    t.decode_church().ok_or_else(|| DecodeFailure(t.to_string()))
}

/// Leftmost-outermost normalization within `fuel` β-steps.
pub fn normal_order_normalize(t: &PureTerm, fuel: u64) -> Result<Normalized, FuelExhausted> {
    t.normalize(fuel)
}

/// The Church numeral `n` as an EAL proof of `N°` with its box:
/// `λf. box(λx. g₁ (… (gₙ x)))[g₁ ← f, …, gₙ ← f]`, under `bangs` further
/// door-less boxes.
pub fn church_box(n: u64, bangs: usize) -> BoxTerm {
    let names: Vec<String> = (1..=n).map(|i| format!("g{i}")).collect();
    let body = names.iter().rev().fold(BoxTerm::var("x"), |acc, g| BoxTerm::app(BoxTerm::var(g.clone()), acc));
    let doors = names.iter().map(|g| (g.clone(), BoxTerm::var("f"))).collect();
    let numeral = BoxTerm::lam("f", BoxTerm::boxed(BoxTerm::lam("x", body), doors));
    (0..bangs).fold(numeral, |acc, _| BoxTerm::boxed(acc, vec![]))
}

/// Applies a box term to numerals, each under its number of `!`.
pub fn apply_numerals(program: BoxTerm, inputs: &[(u64, usize)]) -> BoxTerm {
    inputs.iter().fold(program, |acc, &(n, bangs)| BoxTerm::app(acc, church_box(n, bangs)))
}

#[cfg(test)]
mod tests;
