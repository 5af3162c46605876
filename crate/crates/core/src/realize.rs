//! The realizability transformer `t ⊩ F`, its well-formedness check, and an
//! empirical conformance harness comparing extracted programs against
//! reference functions on sample grids.

use std::collections::BTreeSet;

use crate::kernel::CheckedProof;
use crate::oracle::RefFunction;
use crate::proj::{erase, gamma_minus_ctx, gamma_star, minus_proj, PureTerm};
use crate::syntax::library::{as_nat_pred, nat, nat_pred};
use crate::syntax::names::{fresh_avoiding, pred_of_type_var};
use crate::syntax::{pred_type_var, Formula, TermExpr, TypeExpr};
use crate::wf::{check_formula, infer_term_type, Context, ContextEntry, WfError};

fn names_of(t: &TermExpr, f: &Formula) -> BTreeSet<String> {
    let mut avoid = BTreeSet::new();
    t.all_names(&mut avoid);
    f.all_names(&mut avoid);
    avoid
}

/// `t ⊩ F`, renaming binders of `F` that would capture names free in `t`.
pub fn realizes(t: &TermExpr, f: &Formula) -> Formula {
    match f {
        Formula::Atom(x, args) => {
            let mut args = args.clone();
            args.push(t.clone());
            Formula::atom(x.clone(), args)
        }
        Formula::Lolli(p, q) => {
            let mut avoid = names_of(t, p);
            q.all_names(&mut avoid);
            let x = fresh_avoiding("x", &avoid);
            let xv = TermExpr::var(x.clone());
            Formula::forall1(
                x,
                minus_proj(p),
                Formula::lolli(realizes(&xv, p), realizes(&TermExpr::app(t.clone(), xv.clone()), q)),
            )
        }
        Formula::Forall2(x, kind, body) => {
            let (x, body) = if t.free_type_vars().contains(&pred_type_var(x)) {
                rename_pred(t, x, kind.len(), body)
            } else {
                (x.clone(), (**body).clone())
            };
            let a = pred_type_var(&x);
            let mut kind = kind.clone();
            kind.push(TypeExpr::Var(a.clone()));
            let inner = realizes(&TermExpr::ty_app(t.clone(), TypeExpr::Var(a.clone())), &body);
            Formula::forall_ty(a, Formula::forall2(x, kind, inner))
        }
        Formula::Forall1(x, ty, body) => {
            if t.occurs_free(x) {
                let fresh = fresh_avoiding(x, &names_of(t, body));
                let body = body.subst_term(x, &TermExpr::var(fresh.clone()));
                Formula::forall1(fresh, ty.clone(), realizes(t, &body))
            } else {
                Formula::forall1(x.clone(), ty.clone(), realizes(t, body))
            }
        }
        Formula::ForallTy(a, body) => {
            if t.free_type_vars().contains(a) {
                let fresh = fresh_avoiding(a, &names_of(t, body));
                let body = body.subst_type(a, &TypeExpr::Var(fresh.clone()));
                Formula::forall_ty(fresh, realizes(t, &body))
            } else {
                Formula::forall_ty(a.clone(), realizes(t, body))
            }
        }
        Formula::Bang(p) => Formula::bang(realizes(t, p)),
    }
}

/// Renames the second-order binder `x` of arity `arity` so that `α_x` is not
/// free in `t`.
fn rename_pred(t: &TermExpr, x: &str, arity: usize, body: &Formula) -> (String, Formula) {
    let mut avoid = names_of(t, body);
    avoid.extend(t.free_type_vars().iter().filter_map(|a| pred_of_type_var(a).map(String::from)));
    let fresh = fresh_avoiding(x, &avoid);
    let params: Vec<String> = (0..arity).map(|i| fresh_avoiding(&format!("p{i}"), &avoid)).collect();
    let atom = Formula::atom(fresh.clone(), params.iter().map(|p| TermExpr::var(p.clone())).collect());
    match body.subst_pred(x, &params, &atom) {
        Ok(renamed) => (fresh, renamed),
        // Ill-formed occurrences: leave the binder alone.
        Err(_) => (x.to_string(), body.clone()),
    }
}

/// A realizer, the formula it should realize, and the ambient context.
#[derive(Clone, Debug)]
pub struct RealizabilityGoal {
    pub term: TermExpr,
    pub formula: Formula,
    pub gamma: Context,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum RealizeError {
    #[error("the formula is not well formed: {0}")]
    IllFormedFormula(WfError),
    #[error("the realizer is ill typed: {0}")]
    IllTypedRealizer(WfError),
    #[error("the realizer has type {found}, expected {expected}")]
    RealizerTypeMismatch { expected: String, found: String },
    #[error("the realizability formula is not well formed: {0}")]
    IllFormedRealizability(WfError),
}

/// Checks the preconditions `Γ ⊢ F : Prop` and `Γ* ⊢ t : F⁻`, then that
/// `Γ⁻ ⊢ (t ⊩ F) : Prop`.
pub fn check_realizer_wf(goal: &RealizabilityGoal) -> Result<Formula, RealizeError> {
    check_formula(&goal.gamma, &goal.formula).map_err(RealizeError::IllFormedFormula)?;
    let ty = infer_term_type(&gamma_star(&goal.gamma), &goal.term).map_err(RealizeError::IllTypedRealizer)?;
    let expected = minus_proj(&goal.formula);
    if !ty.alpha_eq(&expected) {
        return Err(RealizeError::RealizerTypeMismatch { expected: expected.to_string(), found: ty.to_string() });
    }
    let r = realizes(&goal.term, &goal.formula);
    check_formula(&gamma_minus_ctx(&goal.gamma), &r).map_err(RealizeError::IllFormedRealizability)?;
    Ok(r)
}

/// The transformed sequent for a checked proof
/// `Γ; x₁:P₁ … ⊢ t : P`: the context `Γ⁻, x₁:P₁⁻ …`, the hypotheses
/// `xᵢ ⊩ Pᵢ` and the goal `t ⊩ P`, each checked for well-formedness.
pub fn adequacy_shape(sigma: &Context, proof: &CheckedProof) -> Result<(Context, Vec<Formula>, Formula), RealizeError> {
    let gamma = sigma.concat(&proof.sequent.gamma);
    let mut ctx = gamma_minus_ctx(&gamma);
    let mut hyps = Vec::new();
    for (x, p) in &proof.sequent.delta {
        if ctx.has_term_var(x) {
            continue;
        }
        ctx.push(ContextEntry::TermVar(x.clone(), minus_proj(p)));
    }
    for (x, p) in &proof.sequent.delta {
        let r = realizes(&TermExpr::var(x.clone()), p);
        check_formula(&ctx, &r).map_err(RealizeError::IllFormedRealizability)?;
        hyps.push(r);
    }
    let goal = realizes(&proof.term, &proof.sequent.goal);
    check_formula(&ctx, &goal).map_err(RealizeError::IllFormedRealizability)?;
    Ok((ctx, hyps, goal))
}

/// A data type `D` of parameter `param`, with its encoding of naturals into
/// pure terms for sampling.
#[derive(Clone, Debug)]
pub struct DataTypeSpec {
    pub name: &'static str,
    pub param: String,
    pub formula: Formula,
    pub carrier: TypeExpr,
    extract: fn(&Formula) -> Option<TermExpr>,
    encode: fn(u64) -> PureTerm,
    decode: fn(&PureTerm) -> Option<u64>,
}

impl DataTypeSpec {
    /// `N y`, encoded by Church numerals.
    pub fn nat() -> Self {
        Self {
            name: "N",
            param: "y".into(),
            formula: nat_pred(TermExpr::var("y")),
            carrier: nat(),
            extract: as_nat_pred,
            encode: PureTerm::church,
            decode: PureTerm::decode_church,
        }
    }

    /// `D t`.
    pub fn at(&self, t: &TermExpr) -> Formula {
        self.formula.subst_term(&self.param, t)
    }

    /// The `t` with `f = D t`, if any.
    pub fn parameter_of(&self, f: &Formula) -> Option<TermExpr> {
        (self.extract)(f).filter(|t| f.alpha_eq(&self.at(t)))
    }

    pub fn encode(&self, n: u64) -> PureTerm {
        (self.encode)(n)
    }

    pub fn decode(&self, t: &PureTerm) -> Option<u64> {
        (self.decode)(t)
    }

    /// The declared carrier is `D⁻`.
    pub fn carrier_matches(&self) -> bool {
        minus_proj(&self.formula).alpha_eq(&self.carrier)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SampleOutcome {
    Pass { steps: u64 },
    Mismatch { found: u64, steps: u64 },
    FuelExhausted { fuel: u64 },
    DecodeFailure { normal_form: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub inputs: Vec<u64>,
    pub expected: u64,
    pub outcome: SampleOutcome,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        matches!(self.outcome, SampleOutcome::Pass { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformanceReport {
    pub reference: String,
    pub samples: Vec<SampleReport>,
}

impl ConformanceReport {
    pub fn passed(&self) -> usize {
        self.samples.iter().filter(|s| s.passed()).count()
    }

    pub fn all_passed(&self) -> bool {
        self.samples.iter().all(SampleReport::passed)
    }

    pub fn total_steps(&self) -> u64 {
        self.samples
            .iter()
            .map(|s| match s.outcome {
                SampleOutcome::Pass { steps } | SampleOutcome::Mismatch { steps, .. } => steps,
                SampleOutcome::FuelExhausted { fuel } => fuel,
                SampleOutcome::DecodeFailure { .. } => 0,
            })
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ConformanceError {
    #[error("the proof has open hypotheses")]
    OpenHypotheses,
    #[error("{found} does not have the shape ∀x⃗. D₁ x₁ ⊸ … ⊸ D (f x⃗) over {arity} argument(s)")]
    ShapeMismatch { found: String, arity: usize },
    #[error("sample {sample:?} has {found} entries, expected {expected}")]
    SampleArity { sample: Vec<u64>, expected: usize, found: usize },
}

/// Checks that `goal` has the shape `∀x⃗. !…D₁ x₁ ⊸ … ⊸ !…D (t)`, ignoring
/// exponentials, and returns the output term `t`.
pub fn data_shape(goal: &Formula, inputs: &[DataTypeSpec], output: &DataTypeSpec) -> Option<TermExpr> {
    let mut vars = Vec::new();
    let mut cur = goal;
    while let Formula::Forall1(x, ty, body) = cur {
        vars.push((x.clone(), ty.clone()));
        cur = body;
    }
    if vars.len() != inputs.len() {
        return None;
    }
    for ((x, ty), spec) in vars.iter().zip(inputs) {
        let Formula::Lolli(p, rest) = cur else { return None };
        if !ty.alpha_eq(&spec.carrier) || !p.unbang().1.alpha_eq(&spec.at(&TermExpr::var(x.clone()))) {
            return None;
        }
        cur = rest;
    }
    output.parameter_of(cur.unbang().1)
}

/// Applies the erased program to encoded inputs, normalizes in normal order
/// within `fuel` steps per sample, and compares against `reference`.
pub fn conformance_test(
    proof: &CheckedProof,
    inputs: &[DataTypeSpec],
    output: &DataTypeSpec,
    reference: RefFunction,
    samples: &[Vec<u64>],
    fuel: u64,
) -> Result<ConformanceReport, ConformanceError> {
    if !proof.sequent.delta.is_empty() {
        return Err(ConformanceError::OpenHypotheses);
    }
    if data_shape(&proof.sequent.goal, inputs, output).is_none() || reference.arity() != inputs.len() {
        return Err(ConformanceError::ShapeMismatch { found: proof.sequent.goal.to_string(), arity: inputs.len() });
    }
    if let Some(bad) = samples.iter().find(|s| s.len() != inputs.len()) {
        return Err(ConformanceError::SampleArity { sample: bad.clone(), expected: inputs.len(), found: bad.len() });
    }
    let program = erase(&proof.term);
    let samples = samples
        .iter()
        .map(|sample| {
            let applied = PureTerm::apps(program.clone(), sample.iter().zip(inputs).map(|(&n, spec)| spec.encode(n)));
            let expected = reference.eval(sample);
            let outcome = match applied.normalize(fuel) {
                Err(e) => SampleOutcome::FuelExhausted { fuel: e.fuel },
                Ok(nf) => match output.decode(&nf.term) {
                    Some(found) if found == expected => SampleOutcome::Pass { steps: nf.steps },
                    Some(found) => SampleOutcome::Mismatch { found, steps: nf.steps },
                    None => SampleOutcome::DecodeFailure { normal_form: nf.term.to_string() },
                },
            };
            SampleReport { inputs: sample.clone(), expected, outcome }
        })
        .collect();
    Ok(ConformanceReport { reference: reference.to_string(), samples })
}
