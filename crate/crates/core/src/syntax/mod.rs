//! The three grammars (types, first-order terms, formulas), α-equivalence,
//! capture-avoiding substitution and β-reduction.

mod display;
mod formula;
pub mod library;
pub mod names;
mod terms;
mod types;

pub use formula::{Formula, CONV_FUEL};
pub use names::{pred_type_var, AlphaEnv};
pub use terms::TermExpr;
pub use types::TypeExpr;

/// A normalization ran out of its step budget before reaching a normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("fuel exhausted after {fuel} steps")]
pub struct FuelExhausted {
    pub fuel: u64,
}

/// `P[Q/X x₁…xₙ]` is undefined because `P` applies `X` to a different number
/// of arguments.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("predicate {var} used with {found} arguments, substitution expects {expected}")]
pub struct ArityMismatch {
    pub var: String,
    pub expected: usize,
    pub found: usize,
}
