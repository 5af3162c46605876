//! Elementary affine logic derivations over erased terms, the translation
//! from checked proofs, and the rule-by-rule checker.

use std::fmt;

use crate::kernel::{CheckedProof, Derivation, DerivationRule};
use crate::proj::{circle_proj, erase, EalType, PureTerm};
use crate::syntax::pred_type_var;

/// An EAL context: a multiset of typed variables.
pub type EalContext = Vec<(String, EalType)>;

#[derive(Clone, Debug, PartialEq)]
pub enum EalRule {
    Axiom,
    Weakening { var: String },
    Contraction { var: String },
    /// Children: one premise per door, then the body.
    Promotion { vars: Vec<String> },
    Application,
    Abstraction { var: String },
    ForallIntro { var: String },
    ForallElim { instance: EalType },
}

impl EalRule {
    pub fn name(&self) -> &'static str {
        match self {
            EalRule::Axiom => "axiom",
            EalRule::Weakening { .. } => "weakening",
            EalRule::Contraction { .. } => "contraction",
            EalRule::Promotion { .. } => "promotion",
            EalRule::Application => "application",
            EalRule::Abstraction { .. } => "abstraction",
            EalRule::ForallIntro { .. } => "forall-intro",
            EalRule::ForallElim { .. } => "forall-elim",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EalDerivation {
    pub rule: EalRule,
    pub delta: EalContext,
    pub term: PureTerm,
    pub ty: EalType,
    pub children: Vec<EalDerivation>,
}

impl EalDerivation {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(EalDerivation::size).sum::<usize>()
    }

    /// Maximal number of nested promotions along a branch.
    pub fn box_depth(&self) -> usize {
        match &self.rule {
            EalRule::Promotion { .. } => {
                let (body, premises) = self.children.split_last().expect("promotion has a body");
                premises.iter().map(EalDerivation::box_depth).max().unwrap_or(0).max(1 + body.box_depth())
            }
            _ => self.children.iter().map(EalDerivation::box_depth).max().unwrap_or(0),
        }
    }

    pub fn count(&self, rule: &str) -> usize {
        usize::from(self.rule.name() == rule) + self.children.iter().map(|c| c.count(rule)).sum::<usize>()
    }
}

impl fmt::Display for EalDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (x, t)) in self.delta.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x} : {t}")?;
        }
        write!(f, " |-eal {} : {}", self.term, self.ty)
    }
}

/// Maps a checked proof rule by rule: equality, first-order and type
/// quantifier nodes collapse to their premise, `use` to the lemma's own
/// derivation, second-order quantifiers become type quantifiers, and every
/// other rule maps to its namesake.
pub fn translate_to_eal(proof: &CheckedProof) -> EalDerivation {
    translate(&proof.derivation)
}

fn translate(d: &Derivation) -> EalDerivation {
    let children = || d.children.iter().map(translate).collect::<Vec<_>>();
    let rule = match &d.rule {
        DerivationRule::IntroType
        | DerivationRule::ElimType
        | DerivationRule::Intro1
        | DerivationRule::Elim1
        | DerivationRule::Equal
        | DerivationRule::Use { .. } => return translate(&d.children[0]),
        DerivationRule::Axiom { .. } => EalRule::Axiom,
        DerivationRule::Weaken { label } => EalRule::Weakening { var: label.clone() },
        DerivationRule::Contract { label } => EalRule::Contraction { var: label.clone() },
        DerivationRule::Promote { labels } => EalRule::Promotion { vars: labels.clone() },
        DerivationRule::App => EalRule::Application,
        DerivationRule::Abs { label } => EalRule::Abstraction { var: label.clone() },
        DerivationRule::Intro2 { var } => EalRule::ForallIntro { var: pred_type_var(var) },
        DerivationRule::Elim2 { instance, .. } => EalRule::ForallElim { instance: circle_proj(instance) },
    };
    EalDerivation {
        rule,
        delta: d.sequent.delta.iter().map(|(x, p)| (x.clone(), circle_proj(p))).collect(),
        term: erase(&d.term),
        ty: circle_proj(&d.sequent.goal),
        children: children(),
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("{rule} at {}: {reason}", if path.is_empty() { "root".to_string() } else { path.join("/") })]
pub struct RuleViolation {
    pub rule: &'static str,
    pub path: Vec<String>,
    pub reason: String,
}

/// Checks that every node is an instance of its rule.
pub fn check_eal(d: &EalDerivation) -> Result<(), RuleViolation> {
    check_node(d, &mut Vec::new())
}

fn same_multiset(a: &EalContext, b: &EalContext) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut rest: Vec<&(String, EalType)> = b.iter().collect();
    for (x, t) in a {
        match rest.iter().position(|(y, u)| x == y && t.alpha_eq(u)) {
            Some(i) => {
                rest.swap_remove(i);
            }
            None => return false,
        }
    }
    true
}

fn union(parts: &[&EalContext]) -> EalContext {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

fn without_one(ctx: &EalContext, x: &str) -> Option<(EalContext, EalType)> {
    let i = ctx.iter().position(|(y, _)| y == x)?;
    let mut rest = ctx.clone();
    let (_, t) = rest.remove(i);
    Some((rest, t))
}

fn check_node(d: &EalDerivation, path: &mut Vec<String>) -> Result<(), RuleViolation> {
    let fail = |reason: String| RuleViolation { rule: d.rule.name(), path: path.clone(), reason };
    let arity = |n: usize| {
        if d.children.len() == n {
            Ok(())
        } else {
            Err(fail(format!("expected {n} premise(s), found {}", d.children.len())))
        }
    };
    for x in d.term.free_names() {
        if !d.delta.iter().any(|(y, _)| *y == x) {
            return Err(fail(format!("`{x}` is free in the term but not in the context")));
        }
    }
    match &d.rule {
        EalRule::Axiom => {
            arity(0)?;
            match d.delta.as_slice() {
                [(x, t)] if d.term == PureTerm::free(x.clone()) && t.alpha_eq(&d.ty) => {}
                _ => return Err(fail("not of the form x : τ ⊢ x : τ".into())),
            }
        }
        EalRule::Weakening { var } => {
            arity(1)?;
            let c = &d.children[0];
            let Some((rest, _)) = without_one(&d.delta, var) else {
                return Err(fail(format!("`{var}` is not in the context")));
            };
            if !same_multiset(&rest, &c.delta) || c.term != d.term || !c.ty.alpha_eq(&d.ty) {
                return Err(fail("conclusion is not the premise plus one hypothesis".into()));
            }
        }
        EalRule::Contraction { var } => {
            arity(1)?;
            let c = &d.children[0];
            let copies: Vec<&EalType> = c.delta.iter().filter(|(y, _)| y == var).map(|(_, t)| t).collect();
            if copies.len() < 2 {
                return Err(fail(format!("`{var}` does not occur twice in the premise")));
            }
            if !matches!(copies[0], EalType::Bang(_)) || !copies[0].alpha_eq(copies[1]) {
                return Err(fail(format!("`{var}` has types {} and {}, not one !σ", copies[0], copies[1])));
            }
            let (rest, _) = without_one(&c.delta, var).expect("two copies");
            if !same_multiset(&rest, &d.delta) || c.term != d.term || !c.ty.alpha_eq(&d.ty) {
                return Err(fail("conclusion is not the premise with one copy removed".into()));
            }
        }
        EalRule::Promotion { vars } => {
            arity(vars.len() + 1)?;
            let (body, premises) = d.children.split_last().expect("arity checked");
            let mut doors = Vec::new();
            for (x, p) in vars.iter().zip(premises) {
                let EalType::Bang(inner) = &p.ty else {
                    return Err(fail(format!("premise for `{x}` has type {}, not !τ", p.ty)));
                };
                doors.push((x.clone(), inner.as_ref().clone()));
            }
            if !same_multiset(&doors, &body.delta) {
                return Err(fail("the body's context is not exactly the doors".into()));
            }
            if !same_multiset(&union(&premises.iter().map(|p| &p.delta).collect::<Vec<_>>()), &d.delta) {
                return Err(fail("conclusion context is not the union of the premises".into()));
            }
            let subst: Vec<(String, PureTerm)> = vars.iter().cloned().zip(premises.iter().map(|p| p.term.clone())).collect();
            if body.term.subst_free_many(&subst) != d.term {
                return Err(fail("term is not the body with the premises substituted".into()));
            }
            if !EalType::bang(body.ty.clone()).alpha_eq(&d.ty) {
                return Err(fail(format!("type {} is not !{}", d.ty, body.ty)));
            }
        }
        EalRule::Application => {
            arity(2)?;
            let (s, t) = (&d.children[0], &d.children[1]);
            let EalType::Lolli(a, b) = &s.ty else {
                return Err(fail(format!("function has type {}", s.ty)));
            };
            if !a.alpha_eq(&t.ty) || !b.alpha_eq(&d.ty) {
                return Err(fail(format!("{} applied to {}", s.ty, t.ty)));
            }
            if !same_multiset(&union(&[&s.delta, &t.delta]), &d.delta) {
                return Err(fail("conclusion context is not the union of the premises".into()));
            }
            if d.term != PureTerm::app(s.term.clone(), t.term.clone()) {
                return Err(fail("term is not the application of the premises".into()));
            }
        }
        EalRule::Abstraction { var } => {
            arity(1)?;
            let c = &d.children[0];
            if c.delta.iter().filter(|(y, _)| y == var).count() != 1 {
                return Err(fail(format!("`{var}` must occur exactly once in the premise")));
            }
            let (rest, sigma) = without_one(&c.delta, var).expect("one copy");
            if !same_multiset(&rest, &d.delta) {
                return Err(fail("conclusion context is not the premise's minus the bound variable".into()));
            }
            if !EalType::lolli(sigma, c.ty.clone()).alpha_eq(&d.ty) {
                return Err(fail(format!("type {} does not match the abstraction", d.ty)));
            }
            if d.term != c.term.abstract_free(var) {
                return Err(fail("term is not the abstraction of the premise".into()));
            }
        }
        EalRule::ForallIntro { var } => {
            arity(1)?;
            let c = &d.children[0];
            if let Some((x, t)) = d.delta.iter().find(|(_, t)| t.occurs_free(var)) {
                return Err(fail(format!("`{var}` is free in {x} : {t}")));
            }
            if !same_multiset(&c.delta, &d.delta) || c.term != d.term {
                return Err(fail("context or term changed".into()));
            }
            if !EalType::forall(var.clone(), c.ty.clone()).alpha_eq(&d.ty) {
                return Err(fail(format!("type {} is not ∀{var}. {}", d.ty, c.ty)));
            }
        }
        EalRule::ForallElim { instance } => {
            arity(1)?;
            let c = &d.children[0];
            let EalType::Forall(a, body) = &c.ty else {
                return Err(fail(format!("premise type {} is not quantified", c.ty)));
            };
            if !same_multiset(&c.delta, &d.delta) || c.term != d.term {
                return Err(fail("context or term changed".into()));
            }
            if !body.subst(a, instance).alpha_eq(&d.ty) {
                return Err(fail(format!("type {} is not {}[{instance}/{a}]", d.ty, body)));
            }
        }
    }
    for (i, c) in d.children.iter().enumerate() {
        path.push(format!("{}[{i}]", d.rule.name()));
        check_node(c, path)?;
        path.pop();
    }
    Ok(())
}
