//! The `⊢ok` judgement: context formation, System F typing of first-order
//! terms, and formula formation.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::names::fresh_avoiding;
use crate::syntax::{Formula, TermExpr, TypeExpr};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContextEntry {
    /// `α : Type`
    TypeVar(String),
    /// `x : τ`
    TermVar(String, TypeExpr),
    /// `X : [τ₁,…,τₙ]`
    PredVar(String, Vec<TypeExpr>),
}

impl ContextEntry {
    pub fn name(&self) -> &str {
        match self {
            ContextEntry::TypeVar(a) => a,
            ContextEntry::TermVar(x, _) => x,
            ContextEntry::PredVar(x, _) => x,
        }
    }

    fn same_sort(&self, other: &ContextEntry) -> bool {
        std::mem::discriminant(self) == std::mem::discriminant(other)
    }
}

impl fmt::Display for ContextEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ContextEntry::TypeVar(a) => write!(f, "{a} : Type"),
            ContextEntry::TermVar(x, t) => write!(f, "{x} : {t}"),
            ContextEntry::PredVar(x, k) => {
                write!(f, "{x} : [")?;
                for (i, t) in k.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{t}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// An ordered context. Lookup finds the rightmost binding.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Context {
    entries: Vec<ContextEntry>,
}

impl Context {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: Vec<ContextEntry>) -> Self {
        Self { entries }
    }

    pub fn entries(&self) -> &[ContextEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn push(&mut self, e: ContextEntry) {
        self.entries.push(e);
    }

    pub fn pop(&mut self) -> Option<ContextEntry> {
        self.entries.pop()
    }

    pub fn truncate(&mut self, len: usize) {
        self.entries.truncate(len);
    }

    pub fn with(&self, e: ContextEntry) -> Context {
        let mut c = self.clone();
        c.push(e);
        c
    }

    pub fn concat(&self, other: &Context) -> Context {
        let mut c = self.clone();
        c.entries.extend(other.entries.iter().cloned());
        c
    }

    pub fn term_type(&self, x: &str) -> Option<&TypeExpr> {
        self.entries.iter().rev().find_map(|e| match e {
            ContextEntry::TermVar(y, t) if y == x => Some(t),
            _ => None,
        })
    }

    pub fn pred_kind(&self, x: &str) -> Option<&[TypeExpr]> {
        self.entries.iter().rev().find_map(|e| match e {
            ContextEntry::PredVar(y, k) if y == x => Some(k.as_slice()),
            _ => None,
        })
    }

    pub fn has_type_var(&self, a: &str) -> bool {
        self.entries
            .iter()
            .any(|e| matches!(e, ContextEntry::TypeVar(b) if b == a))
    }

    pub fn has_term_var(&self, x: &str) -> bool {
        self.term_type(x).is_some()
    }

    pub fn has_pred_var(&self, x: &str) -> bool {
        self.pred_kind(x).is_some()
    }

    pub(crate) fn names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for e in &self.entries {
            out.insert(e.name().to_string());
            match e {
                ContextEntry::TermVar(_, t) => t.all_vars(&mut out),
                ContextEntry::PredVar(_, k) => k.iter().for_each(|t| t.all_vars(&mut out)),
                ContextEntry::TypeVar(_) => {}
            }
        }
        out
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WfErrorKind {
    #[error("`{0}` is declared twice")]
    DuplicateName(String),
    #[error("entry `{entry}` is ill-formed: {reason}")]
    IllFormedEntryType { entry: String, reason: Box<WfError> },
    #[error("unbound type variable `{0}`")]
    UnboundTypeVariable(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("cannot apply `{function}` of type {function_type} to an argument of type {argument_type}")]
    ApplicationMismatch {
        function: String,
        function_type: String,
        argument_type: String,
    },
    #[error("cannot apply `{term}` of type {found} to a type")]
    TypeApplicationMismatch { term: String, found: String },
    #[error("unbound predicate variable `{0}`")]
    UnboundPredicate(String),
    #[error("predicate `{pred}` expects {expected} arguments, got {found}")]
    AtomArityMismatch { pred: String, expected: usize, found: usize },
    #[error("argument {index} of `{pred}` has type {found}, expected {expected}")]
    AtomArgumentType {
        pred: String,
        index: usize,
        expected: String,
        found: String,
    },
}

/// A failed `⊢ok` derivation, with the path of rules leading to the failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WfError {
    pub kind: WfErrorKind,
    pub path: Vec<&'static str>,
}

impl WfError {
    fn new(kind: WfErrorKind) -> Self {
        Self { kind, path: Vec::new() }
    }

    fn within(mut self, rule: &'static str) -> Self {
        self.path.insert(0, rule);
        self
    }
}

impl fmt::Display for WfError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.path.is_empty() {
            write!(f, " (in {})", self.path.join(" > "))?;
        }
        Ok(())
    }
}

impl std::error::Error for WfError {}

impl From<WfErrorKind> for WfError {
    fn from(kind: WfErrorKind) -> Self {
        WfError::new(kind)
    }
}

pub type WfResult<T> = Result<T, WfError>;

/// Checks that `Γ is well-formed` is derivable.
pub fn check_context(ctx: &Context) -> WfResult<()> {
    let mut prefix = Context::new();
    for e in ctx.entries() {
        if prefix
            .entries()
            .iter()
            .any(|p| p.same_sort(e) && p.name() == e.name())
        {
            return Err(WfErrorKind::DuplicateName(e.name().to_string()).into());
        }
        let res = match e {
            ContextEntry::TypeVar(_) => Ok(()),
            ContextEntry::TermVar(_, t) => check_type(&prefix, t),
            ContextEntry::PredVar(_, k) => k.iter().try_for_each(|t| check_type(&prefix, t)),
        };
        res.map_err(|reason| {
            WfError::new(WfErrorKind::IllFormedEntryType {
                entry: e.to_string(),
                reason: Box::new(reason),
            })
        })?;
        prefix.push(e.clone());
    }
    Ok(())
}

/// `Γ ⊢ok τ : Type`
pub fn check_type(ctx: &Context, ty: &TypeExpr) -> WfResult<()> {
    check_type_in(ctx, ty, &mut Vec::new())
}

fn check_type_in(ctx: &Context, ty: &TypeExpr, bound: &mut Vec<String>) -> WfResult<()> {
    match ty {
        TypeExpr::Var(a) => {
            if bound.contains(a) || ctx.has_type_var(a) {
                Ok(())
            } else {
                Err(WfErrorKind::UnboundTypeVariable(a.clone()).into())
            }
        }
        TypeExpr::Arrow(a, b) => {
            check_type_in(ctx, a, bound).map_err(|e| e.within("arrow domain"))?;
            check_type_in(ctx, b, bound).map_err(|e| e.within("arrow codomain"))
        }
        TypeExpr::Forall(a, body) => {
            bound.push(a.clone());
            let r = check_type_in(ctx, body, bound).map_err(|e| e.within("type quantifier"));
            bound.pop();
            r
        }
    }
}

fn fresh_type_binder(ctx: &Context, a: &str, avoid_extra: &BTreeSet<String>) -> Option<String> {
    if ctx.has_type_var(a) {
        let mut avoid = ctx.names();
        avoid.extend(avoid_extra.iter().cloned());
        Some(fresh_avoiding(a, &avoid))
    } else {
        None
    }
}

/// The unique `τ` with `Γ ⊢ok t : τ`.
pub fn infer_term_type(ctx: &Context, t: &TermExpr) -> WfResult<TypeExpr> {
    let mut ctx = ctx.clone();
    infer_in(&mut ctx, t)
}

fn infer_in(ctx: &mut Context, t: &TermExpr) -> WfResult<TypeExpr> {
    match t {
        TermExpr::Var(x) => ctx
            .term_type(x)
            .cloned()
            .ok_or_else(|| WfErrorKind::UnboundVariable(x.clone()).into()),
        TermExpr::App(f, a) => {
            let tf = infer_in(ctx, f).map_err(|e| e.within("application function"))?;
            let ta = infer_in(ctx, a).map_err(|e| e.within("application argument"))?;
            match &tf {
                TypeExpr::Arrow(dom, cod) if dom.alpha_eq(&ta) => Ok(cod.as_ref().clone()),
                _ => Err(WfErrorKind::ApplicationMismatch {
                    function: f.to_string(),
                    function_type: tf.to_string(),
                    argument_type: ta.to_string(),
                }
                .into()),
            }
        }
        TermExpr::TyApp(f, ty) => {
            let tf = infer_in(ctx, f).map_err(|e| e.within("type application"))?;
            check_type(ctx, ty).map_err(|e| e.within("type argument"))?;
            match &tf {
                TypeExpr::Forall(a, body) => Ok(body.subst(a, ty)),
                _ => Err(WfErrorKind::TypeApplicationMismatch {
                    term: f.to_string(),
                    found: tf.to_string(),
                }
                .into()),
            }
        }
        TermExpr::Lam(x, ty, body) => {
            check_type(ctx, ty).map_err(|e| e.within("abstraction annotation"))?;
            ctx.push(ContextEntry::TermVar(x.clone(), ty.clone()));
            let r = infer_in(ctx, body).map_err(|e| e.within("abstraction body"));
            ctx.pop();
            Ok(TypeExpr::arrow(ty.clone(), r?))
        }
        TermExpr::TyLam(a, body) => {
            let mut extra = BTreeSet::new();
            body.all_names(&mut extra);
            if let Some(a2) = fresh_type_binder(ctx, a, &extra) {
                let renamed = body.subst_type(a, &TypeExpr::Var(a2.clone()));
                return infer_in(ctx, &TermExpr::ty_lam(a2, renamed));
            }
            ctx.push(ContextEntry::TypeVar(a.clone()));
            let r = infer_in(ctx, body).map_err(|e| e.within("type abstraction body"));
            ctx.pop();
            Ok(TypeExpr::forall(a.clone(), r?))
        }
    }
}

/// `Γ ⊢ok P : Prop`
pub fn check_formula(ctx: &Context, p: &Formula) -> WfResult<()> {
    let mut ctx = ctx.clone();
    check_formula_in(&mut ctx, p)
}

fn check_formula_in(ctx: &mut Context, p: &Formula) -> WfResult<()> {
    match p {
        Formula::Atom(x, args) => {
            let kind = ctx
                .pred_kind(x)
                .ok_or_else(|| WfError::new(WfErrorKind::UnboundPredicate(x.clone())))?
                .to_vec();
            if kind.len() != args.len() {
                return Err(WfErrorKind::AtomArityMismatch {
                    pred: x.clone(),
                    expected: kind.len(),
                    found: args.len(),
                }
                .into());
            }
            for (i, (a, k)) in args.iter().zip(&kind).enumerate() {
                let ta = infer_in(ctx, a).map_err(|e| e.within("atom argument"))?;
                if !ta.alpha_eq(k) {
                    return Err(WfErrorKind::AtomArgumentType {
                        pred: x.clone(),
                        index: i,
                        expected: k.to_string(),
                        found: ta.to_string(),
                    }
                    .into());
                }
            }
            Ok(())
        }
        Formula::Lolli(a, b) => {
            check_formula_in(ctx, a).map_err(|e| e.within("linear arrow premise"))?;
            check_formula_in(ctx, b).map_err(|e| e.within("linear arrow conclusion"))
        }
        Formula::Bang(a) => check_formula_in(ctx, a).map_err(|e| e.within("exponential")),
        Formula::Forall2(x, kind, body) => {
            for t in kind {
                check_type(ctx, t).map_err(|e| e.within("second-order kind"))?;
            }
            ctx.push(ContextEntry::PredVar(x.clone(), kind.clone()));
            let r = check_formula_in(ctx, body).map_err(|e| e.within("second-order quantifier"));
            ctx.pop();
            r
        }
        Formula::Forall1(x, ty, body) => {
            check_type(ctx, ty).map_err(|e| e.within("first-order annotation"))?;
            ctx.push(ContextEntry::TermVar(x.clone(), ty.clone()));
            let r = check_formula_in(ctx, body).map_err(|e| e.within("first-order quantifier"));
            ctx.pop();
            r
        }
        Formula::ForallTy(a, body) => {
            let mut extra = BTreeSet::new();
            body.all_names(&mut extra);
            if let Some(a2) = fresh_type_binder(ctx, a, &extra) {
                let renamed = body.subst_type(a, &TypeExpr::Var(a2.clone()));
                return check_formula_in(ctx, &Formula::forall_ty(a2, renamed));
            }
            ctx.push(ContextEntry::TypeVar(a.clone()));
            let r = check_formula_in(ctx, body).map_err(|e| e.within("type quantifier"));
            ctx.pop();
            r
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::library::{church_zero_term, equality, extensionality, nat, nat_pred, tensor};

    fn tv(a: &str) -> TypeExpr {
        TypeExpr::var(a)
    }
    fn v(x: &str) -> TermExpr {
        TermExpr::var(x)
    }
    fn ctx(entries: Vec<ContextEntry>) -> Context {
        Context::from_entries(entries)
    }

    #[test]
    fn context_examples() {
        assert!(check_context(&Context::new()).is_ok());
        let ok = ctx(vec![ContextEntry::TypeVar("a".into()), ContextEntry::TermVar("x".into(), tv("a"))]);
        assert!(check_context(&ok).is_ok());
        let bad = ctx(vec![ContextEntry::TermVar("x".into(), tv("a"))]);
        assert!(matches!(
            check_context(&bad).unwrap_err().kind,
            WfErrorKind::IllFormedEntryType { .. }
        ));
        let dup = ctx(vec![ContextEntry::TypeVar("a".into()), ContextEntry::TypeVar("a".into())]);
        assert!(matches!(check_context(&dup).unwrap_err().kind, WfErrorKind::DuplicateName(_)));
    }

    #[test]
    fn type_examples() {
        let g = ctx(vec![ContextEntry::TypeVar("a".into())]);
        assert!(check_type(&g, &TypeExpr::arrow(tv("a"), tv("a"))).is_ok());
        let poly = TypeExpr::forall("a", TypeExpr::arrow(tv("a"), tv("a")));
        assert!(check_type(&Context::new(), &poly).is_ok());
        assert!(matches!(
            check_type(&Context::new(), &tv("b")).unwrap_err().kind,
            WfErrorKind::UnboundTypeVariable(_)
        ));
    }

    #[test]
    fn term_examples() {
        let g = ctx(vec![ContextEntry::TypeVar("a".into())]);
        let id = TermExpr::lam("x", tv("a"), v("x"));
        assert_eq!(infer_term_type(&g, &id).unwrap(), TypeExpr::arrow(tv("a"), tv("a")));
        assert_eq!(infer_term_type(&Context::new(), &church_zero_term()).unwrap(), nat());
        let g = ctx(vec![ContextEntry::TypeVar("a".into()), ContextEntry::TermVar("f".into(), tv("a"))]);
        let err = infer_term_type(&g, &TermExpr::app(v("f"), v("f"))).unwrap_err();
        assert!(matches!(err.kind, WfErrorKind::ApplicationMismatch { .. }));
    }

    #[test]
    fn type_abstraction_does_not_capture_context_variables() {
        // α:Type, x:α ⊢ Λα. x  has type ∀α'. α, not ∀α. α.
        let g = ctx(vec![ContextEntry::TypeVar("a".into()), ContextEntry::TermVar("x".into(), tv("a"))]);
        let ty = infer_term_type(&g, &TermExpr::ty_lam("a", v("x"))).unwrap();
        assert_eq!(ty, TypeExpr::forall("b", tv("a")));
    }

    #[test]
    fn formula_examples() {
        let t = tv("t");
        let g = ctx(vec![
            ContextEntry::TypeVar("t".into()),
            ContextEntry::TermVar("x".into(), t.clone()),
            ContextEntry::TermVar("y".into(), t.clone()),
        ]);
        assert!(check_formula(&g, &equality(t, v("x"), v("y"))).is_ok());

        let g = ctx(vec![
            ContextEntry::TermVar("s".into(), TypeExpr::arrow(nat(), nat())),
            ContextEntry::TermVar("0".into(), nat()),
            ContextEntry::TermVar("x".into(), nat()),
        ]);
        assert!(check_formula(&g, &nat_pred(v("x"))).is_ok());

        let g = ctx(vec![ContextEntry::PredVar("X".into(), vec![]), ContextEntry::PredVar("Y".into(), vec![])]);
        assert!(check_formula(&g, &tensor(Formula::atom("X", vec![]), Formula::atom("Y", vec![]))).is_ok());
        assert!(check_formula(&Context::new(), &extensionality()).is_ok());

        let g = ctx(vec![
            ContextEntry::TypeVar("t".into()),
            ContextEntry::TermVar("a".into(), tv("t")),
            ContextEntry::TermVar("b".into(), tv("t")),
            ContextEntry::PredVar("X".into(), vec![tv("t")]),
        ]);
        let err = check_formula(&g, &Formula::atom("X", vec![v("a"), v("b")])).unwrap_err();
        assert!(matches!(err.kind, WfErrorKind::AtomArityMismatch { .. }));
    }
}
