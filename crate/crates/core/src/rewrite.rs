//! Equational certificates for the EQUALITY rule. A [`Trace`] is a
//! derivation in a small calculus (equation instances, β, equivalence
//! closure, congruence and extensionality) that is checked syntactically.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::library::{equality, SUCC, ZERO};
use crate::syntax::names::fresh_avoiding;
use crate::syntax::{FuelExhausted, Formula, TermExpr, TypeExpr};
use crate::wf::{check_formula, infer_term_type, Context, ContextEntry, WfError};

/// A closed equation `∀x₁:τ₁ … ∀xₙ:τₙ. lhs =_τ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub params: Vec<(String, TypeExpr)>,
    pub ty: TypeExpr,
    pub lhs: TermExpr,
    pub rhs: TermExpr,
}

impl Equation {
    pub fn formula(&self) -> Formula {
        self.params
            .iter()
            .rev()
            .fold(equality(self.ty.clone(), self.lhs.clone(), self.rhs.clone()), |acc, (x, t)| {
                Formula::forall1(x.clone(), t.clone(), acc)
            })
    }

    /// Both sides instantiated by a substitution covering exactly the
    /// parameters.
    fn instantiate(&self, inst: &[(String, TermExpr)]) -> (TermExpr, TermExpr) {
        (self.lhs.subst_many(inst), self.rhs.subst_many(inst))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationSet {
    equations: Vec<Equation>,
}

impl EquationSet {
    pub fn new(equations: Vec<Equation>) -> Self {
        Self { equations }
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    /// Looks an equation up by name, or by position when `key` is a number.
    pub fn get(&self, key: &str) -> Option<&Equation> {
        self.equations.iter().find(|e| e.name == key).or_else(|| {
            key.parse::<usize>().ok().and_then(|i| self.equations.get(i))
        })
    }

    /// Every member must be a well-formed closed formula in `sigma`.
    pub fn check(&self, sigma: &Context) -> Result<(), (String, WfError)> {
        for e in &self.equations {
            check_formula(sigma, &e.formula()).map_err(|err| (e.name.clone(), err))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    /// Rewrite an instance of the left-hand side to the right-hand side.
    LeftToRight,
    RightToLeft,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaDirection {
    /// Contract a redex of the left endpoint.
    Forward,
    /// Contract a redex of the right endpoint (β-expansion of the left).
    Backward,
}

/// A certificate for `t₁ =_τ t₂`. Positions are child-index paths
/// (`App`: 0 function, 1 argument; every other node: 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trace {
    Refl,
    Axiom {
        equation: String,
        inst: Vec<(String, TermExpr)>,
        pos: Vec<usize>,
        orientation: Orientation,
    },
    Beta {
        pos: Vec<usize>,
        direction: BetaDirection,
    },
    Sym(Box<Trace>),
    /// `t₁ = mid` then `mid = t₂`. The middle term may be left for the
    /// checker to compute when the first half is a directed rewrite.
    Trans(Box<Trace>, Option<TermExpr>, Box<Trace>),
    Cong(Vec<usize>, Box<Trace>),
    /// `f = g` from a trace of `f x = g x` for a fresh `x`.
    Ext(String, Box<Trace>),
}

impl Trace {
    pub fn axiom(equation: &str, inst: Vec<(String, TermExpr)>, pos: Vec<usize>, orientation: Orientation) -> Self {
        Trace::Axiom { equation: equation.into(), inst, pos, orientation }
    }

    pub fn beta(pos: Vec<usize>, direction: BetaDirection) -> Self {
        Trace::Beta { pos, direction }
    }

    pub fn sym(t: Trace) -> Self {
        Trace::Sym(Box::new(t))
    }

    pub fn trans(a: Trace, mid: Option<TermExpr>, b: Trace) -> Self {
        Trace::Trans(Box::new(a), mid, Box::new(b))
    }

    /// Chains directed steps left to right, computing middle terms.
    pub fn chain(steps: impl IntoIterator<Item = Trace>) -> Self {
        let mut steps: Vec<Trace> = steps.into_iter().collect();
        let Some(last) = steps.pop() else { return Trace::Refl };
        steps.into_iter().rev().fold(last, |acc, s| Trace::trans(s, None, acc))
    }

    pub fn cong(pos: Vec<usize>, t: Trace) -> Self {
        Trace::Cong(pos, Box::new(t))
    }

    pub fn ext(x: &str, t: Trace) -> Self {
        Trace::Ext(x.into(), Box::new(t))
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Trace::Refl | Trace::Axiom { .. } | Trace::Beta { .. } => 1,
            Trace::Sym(t) | Trace::Cong(_, t) | Trace::Ext(_, t) => 1 + t.size(),
            Trace::Trans(a, _, b) => 1 + a.size() + b.size(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RewriteError {
    #[error("step {step}: expected {expected}, found {found}")]
    StepMismatch { step: usize, expected: String, found: String },
    #[error("step {step}: ill-typed instance for `{var}`: {reason}")]
    IllTypedInstance { step: usize, var: String, reason: String },
    #[error("step {step}: extension variable `{var}` is not fresh")]
    NonFreshExtensionVariable { step: usize, var: String },
    #[error("step {step}: position {pos:?} is out of range")]
    PositionOutOfRange { step: usize, pos: Vec<usize> },
    #[error("step {step}: unknown equation `{name}`")]
    UnknownEquation { step: usize, name: String },
    #[error("endpoint {term} is not of type {ty}: {reason}")]
    IllTypedEndpoint { term: String, ty: String, reason: String },
}

fn fmt_pos(pos: &[usize]) -> String {
    let inner: Vec<String> = pos.iter().map(usize::to_string).collect();
    format!("[{}]", inner.join(" "))
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trace::Refl => write!(f, "refl"),
            Trace::Axiom { equation, inst, pos, orientation } => {
                write!(f, "(ax {equation} (")?;
                for (i, (x, t)) in inst.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "({x} {{{t}}})")?;
                }
                let o = match orientation {
                    Orientation::LeftToRight => "ltr",
                    Orientation::RightToLeft => "rtl",
                };
                write!(f, ") {} {o})", fmt_pos(pos))
            }
            Trace::Beta { pos, direction } => {
                let d = match direction {
                    BetaDirection::Forward => "fwd",
                    BetaDirection::Backward => "bwd",
                };
                write!(f, "(beta {} {d})", fmt_pos(pos))
            }
            Trace::Sym(t) => write!(f, "(sym {t})"),
            Trace::Trans(a, Some(m), b) => write!(f, "(trans {a} {{{m}}} {b})"),
            Trace::Trans(a, None, b) => write!(f, "(trans {a} {b})"),
            Trace::Cong(pos, t) => write!(f, "(cong {} {t})", fmt_pos(pos)),
            Trace::Ext(x, t) => write!(f, "(ext {x} {t})"),
        }
    }
}

/// Context entries for the binders crossed on the way to `pos`.
fn binders_along(t: &TermExpr, pos: &[usize]) -> Option<Vec<ContextEntry>> {
    let mut out = Vec::new();
    let mut cur = t;
    for &i in pos {
        match cur {
            TermExpr::Lam(x, ty, _) => out.push(ContextEntry::TermVar(x.clone(), ty.clone())),
            TermExpr::TyLam(a, _) => out.push(ContextEntry::TypeVar(a.clone())),
            _ => {}
        }
        cur = *cur.children().get(i)?;
    }
    Some(out)
}

fn extend(ctx: &Context, entries: Vec<ContextEntry>) -> Context {
    let mut c = ctx.clone();
    for e in entries {
        c.push(e);
    }
    c
}

struct Checker<'a> {
    h: &'a EquationSet,
    counter: usize,
}

impl Checker<'_> {
    fn next(&mut self) -> usize {
        let s = self.counter;
        self.counter += 1;
        s
    }

    fn mismatch(step: usize, expected: &TermExpr, found: &TermExpr) -> RewriteError {
        RewriteError::StepMismatch { step, expected: expected.to_string(), found: found.to_string() }
    }

    /// For directed steps, the term obtained by applying the step to `a`.
    fn apply(&mut self, trace: &Trace, a: &TermExpr, ctx: &Context) -> Result<Option<TermExpr>, RewriteError> {
        let step = self.counter;
        match trace {
            Trace::Refl => {
                self.next();
                Ok(Some(a.clone()))
            }
            Trace::Axiom { equation, inst, pos, orientation } => {
                self.next();
                let (l, r) = self.axiom_sides(step, equation, inst, pos, *orientation, a, ctx)?;
                let here = a
                    .subterm_at(pos)
                    .ok_or_else(|| RewriteError::PositionOutOfRange { step, pos: pos.clone() })?;
                if !here.alpha_eq(&l) {
                    return Err(Self::mismatch(step, &l, here));
                }
                Ok(a.replace_at(pos, r))
            }
            Trace::Beta { pos, direction: BetaDirection::Forward } => {
                self.next();
                let here = a
                    .subterm_at(pos)
                    .ok_or_else(|| RewriteError::PositionOutOfRange { step, pos: pos.clone() })?;
                let contracted = here.contract().ok_or_else(|| RewriteError::StepMismatch {
                    step,
                    expected: "a β-redex".into(),
                    found: here.to_string(),
                })?;
                Ok(a.replace_at(pos, contracted))
            }
            Trace::Trans(x, mid, y) => {
                self.next();
                let m = match mid {
                    Some(m) => {
                        self.verify(x, a, m, ctx)?;
                        m.clone()
                    }
                    None => match self.apply(x, a, ctx)? {
                        Some(m) => m,
                        None => return Ok(None),
                    },
                };
                self.apply(y, &m, ctx)
            }
            _ => Ok(None),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn axiom_sides(
        &self,
        step: usize,
        name: &str,
        inst: &[(String, TermExpr)],
        pos: &[usize],
        orientation: Orientation,
        host: &TermExpr,
        ctx: &Context,
    ) -> Result<(TermExpr, TermExpr), RewriteError> {
        let eq = self
            .h
            .get(name)
            .ok_or_else(|| RewriteError::UnknownEquation { step, name: name.into() })?;
        let binders = binders_along(host, pos)
            .ok_or_else(|| RewriteError::PositionOutOfRange { step, pos: pos.to_vec() })?;
        let local = extend(ctx, binders);
        for (x, ty) in &eq.params {
            let Some((_, t)) = inst.iter().find(|(y, _)| y == x) else {
                return Err(RewriteError::IllTypedInstance {
                    step,
                    var: x.clone(),
                    reason: "no instance given".into(),
                });
            };
            match infer_term_type(&local, t) {
                Ok(found) if found.alpha_eq(ty) => {}
                Ok(found) => {
                    return Err(RewriteError::IllTypedInstance {
                        step,
                        var: x.clone(),
                        reason: format!("has type {found}, expected {ty}"),
                    })
                }
                Err(e) => {
                    return Err(RewriteError::IllTypedInstance { step, var: x.clone(), reason: e.to_string() })
                }
            }
        }
        if let Some((x, _)) = inst.iter().find(|(y, _)| !eq.params.iter().any(|(p, _)| p == y)) {
            return Err(RewriteError::IllTypedInstance {
                step,
                var: x.clone(),
                reason: format!("`{}` has no such parameter", eq.name),
            });
        }
        let (l, r) = eq.instantiate(inst);
        Ok(match orientation {
            Orientation::LeftToRight => (l, r),
            Orientation::RightToLeft => (r, l),
        })
    }

    fn verify(&mut self, trace: &Trace, a: &TermExpr, b: &TermExpr, ctx: &Context) -> Result<(), RewriteError> {
        let step = self.counter;
        match trace {
            Trace::Refl | Trace::Axiom { .. } | Trace::Beta { direction: BetaDirection::Forward, .. } => {
                let out = self.apply(trace, a, ctx)?;
                match out {
                    Some(out) if out.alpha_eq(b) => Ok(()),
                    Some(out) => Err(Self::mismatch(step, b, &out)),
                    None => Err(RewriteError::PositionOutOfRange { step, pos: vec![] }),
                }
            }
            Trace::Beta { pos, direction: BetaDirection::Backward } => {
                let forward = Trace::Beta { pos: pos.clone(), direction: BetaDirection::Forward };
                let out = self.apply(&forward, b, ctx)?;
                match out {
                    Some(out) if out.alpha_eq(a) => Ok(()),
                    Some(out) => Err(Self::mismatch(step, a, &out)),
                    None => Err(RewriteError::PositionOutOfRange { step, pos: pos.clone() }),
                }
            }
            Trace::Sym(t) => {
                self.next();
                self.verify(t, b, a, ctx)
            }
            Trace::Trans(x, mid, y) => {
                self.next();
                let m = match mid {
                    Some(m) => {
                        let ta = infer_term_type(ctx, a).ok();
                        match (infer_term_type(ctx, m), ta) {
                            (Ok(tm), Some(ta)) if tm.alpha_eq(&ta) => {}
                            (Ok(tm), Some(ta)) => {
                                return Err(RewriteError::StepMismatch {
                                    step,
                                    expected: format!("a middle term of type {ta}"),
                                    found: format!("{m} : {tm}"),
                                })
                            }
                            (Err(e), _) => {
                                return Err(RewriteError::IllTypedInstance {
                                    step,
                                    var: "middle term".into(),
                                    reason: e.to_string(),
                                })
                            }
                            (Ok(_), None) => {}
                        }
                        m.clone()
                    }
                    None => self.apply(x, a, ctx)?.ok_or_else(|| RewriteError::StepMismatch {
                        step,
                        expected: "a middle term".into(),
                        found: "an undirected first half".into(),
                    })?,
                };
                if mid.is_some() {
                    self.verify(x, a, &m, ctx)?;
                }
                self.verify(y, &m, b, ctx)
            }
            Trace::Cong(pos, t) => {
                self.next();
                let out_of_range = || RewriteError::PositionOutOfRange { step, pos: pos.clone() };
                let u = a.subterm_at(pos).ok_or_else(out_of_range)?;
                let v = b.subterm_at(pos).ok_or_else(out_of_range)?;
                let rebuilt = a.replace_at(pos, v.clone()).ok_or_else(out_of_range)?;
                if !rebuilt.alpha_eq(b) {
                    return Err(Self::mismatch(step, b, &rebuilt));
                }
                let binders = binders_along(a, pos).ok_or_else(out_of_range)?;
                let local = extend(ctx, binders);
                self.verify(t, u, v, &local)
            }
            Trace::Ext(x, t) => {
                self.next();
                if a.occurs_free(x) || b.occurs_free(x) || ctx.has_term_var(x) {
                    return Err(RewriteError::NonFreshExtensionVariable { step, var: x.clone() });
                }
                let ty = infer_term_type(ctx, a).map_err(|e| RewriteError::IllTypedEndpoint {
                    term: a.to_string(),
                    ty: "a function type".into(),
                    reason: e.to_string(),
                })?;
                let TypeExpr::Arrow(dom, _) = ty else {
                    return Err(RewriteError::StepMismatch {
                        step,
                        expected: "endpoints of function type".into(),
                        found: ty.to_string(),
                    });
                };
                let local = ctx.with(ContextEntry::TermVar(x.clone(), *dom));
                let xv = TermExpr::var(x.clone());
                self.verify(t, &TermExpr::app(a.clone(), xv.clone()), &TermExpr::app(b.clone(), xv), &local)
            }
        }
    }
}

/// Checks that `trace` derives `t₁ =_τ t₂` in context `ctx` (Σ followed by Γ)
/// from the equations `h`.
pub fn verify_trace(
    trace: &Trace,
    t1: &TermExpr,
    t2: &TermExpr,
    ty: &TypeExpr,
    ctx: &Context,
    h: &EquationSet,
) -> Result<(), RewriteError> {
    for t in [t1, t2] {
        match infer_term_type(ctx, t) {
            Ok(found) if found.alpha_eq(ty) => {}
            Ok(found) => {
                return Err(RewriteError::IllTypedEndpoint {
                    term: t.to_string(),
                    ty: ty.to_string(),
                    reason: format!("it has type {found}"),
                })
            }
            Err(e) => {
                return Err(RewriteError::IllTypedEndpoint {
                    term: t.to_string(),
                    ty: ty.to_string(),
                    reason: e.to_string(),
                })
            }
        }
    }
    Checker { h, counter: 0 }.verify(trace, t1, t2, ctx)
}

/// Computes the right endpoint of a directed trace (refl, equation
/// instances, forward β, and `trans` chains of those) starting from `t`.
pub fn run_trace(trace: &Trace, t: &TermExpr, ctx: &Context, h: &EquationSet) -> Result<Option<TermExpr>, RewriteError> {
    Checker { h, counter: 0 }.apply(trace, t, ctx)
}

/// Whether an equation merely unfolds a constructor (`0` or `s`) into its
/// Church encoding; oriented rewriting skips those so numerals stay symbolic.
fn unfolds_constructor(e: &Equation) -> bool {
    let mut head = &e.lhs;
    while let TermExpr::App(f, _) = head {
        head = f;
    }
    matches!(head, TermExpr::Var(x) if x == ZERO || x == SUCC)
}

fn match_pattern(
    pat: &TermExpr,
    t: &TermExpr,
    params: &BTreeSet<&str>,
    sub: &mut Vec<(String, TermExpr)>,
) -> bool {
    match (pat, t) {
        (TermExpr::Var(x), _) if params.contains(x.as_str()) => {
            if let Some((_, bound)) = sub.iter().find(|(y, _)| y == x) {
                bound.alpha_eq(t)
            } else {
                sub.push((x.clone(), t.clone()));
                true
            }
        }
        (TermExpr::App(f, a), TermExpr::App(g, b)) => {
            match_pattern(f, g, params, sub) && match_pattern(a, b, params, sub)
        }
        _ => pat.alpha_eq(t),
    }
}

fn rewrite_root(t: &TermExpr, h: &EquationSet, shadowed: &BTreeSet<String>) -> Option<TermExpr> {
    if let Some(r) = t.contract() {
        return Some(r);
    }
    for e in h.equations() {
        if unfolds_constructor(e) {
            continue;
        }
        let params: BTreeSet<&str> = e.params.iter().map(|(x, _)| x.as_str()).collect();
        let symbols = e.lhs.free_vars();
        if symbols.iter().any(|s| !params.contains(s.as_str()) && shadowed.contains(s)) {
            continue;
        }
        let mut sub = Vec::new();
        if match_pattern(&e.lhs, t, &params, &mut sub) {
            return Some(e.rhs.subst_many(&sub));
        }
    }
    None
}

fn rewrite_step(t: &TermExpr, h: &EquationSet, shadowed: &mut BTreeSet<String>) -> Option<TermExpr> {
    if let Some(r) = rewrite_root(t, h, shadowed) {
        return Some(r);
    }
    match t {
        TermExpr::Var(_) => None,
        TermExpr::App(f, a) => {
            if let Some(f2) = rewrite_step(f, h, shadowed) {
                return Some(TermExpr::app(f2, a.as_ref().clone()));
            }
            rewrite_step(a, h, shadowed).map(|a2| TermExpr::app(f.as_ref().clone(), a2))
        }
        TermExpr::TyApp(f, ty) => rewrite_step(f, h, shadowed).map(|f2| TermExpr::ty_app(f2, ty.clone())),
        TermExpr::Lam(x, ty, b) => {
            let fresh = shadowed.insert(x.clone());
            let out = rewrite_step(b, h, shadowed).map(|b2| TermExpr::lam(x.clone(), ty.clone(), b2));
            if fresh {
                shadowed.remove(x);
            }
            out
        }
        TermExpr::TyLam(a, b) => rewrite_step(b, h, shadowed).map(|b2| TermExpr::ty_lam(a.clone(), b2)),
    }
}

/// Rewrites with β and the equations of `h` oriented left to right,
/// leftmost-outermost, until no rule applies. Constructor-unfolding equations
/// are skipped.
pub fn normalize_with_h0(t: &TermExpr, h: &EquationSet, fuel: u64) -> Result<TermExpr, FuelExhausted> {
    let mut cur = t.clone();
    for _ in 0..fuel {
        match rewrite_step(&cur, h, &mut BTreeSet::new()) {
            Some(next) => cur = next,
            None => return Ok(cur),
        }
    }
    match rewrite_step(&cur, h, &mut BTreeSet::new()) {
        None => Ok(cur),
        Some(_) => Err(FuelExhausted { fuel }),
    }
}

/// A name not free in any of `terms` nor bound in `ctx`.
pub fn fresh_for(base: &str, terms: &[&TermExpr], ctx: &Context) -> String {
    let mut avoid: BTreeSet<String> = ctx.entries().iter().map(|e| e.name().to_string()).collect();
    for t in terms {
        avoid.extend(t.free_vars());
    }
    if avoid.contains(base) {
        fresh_avoiding(base, &avoid)
    } else {
        base.to_string()
    }
}
