//! Forgetful maps from formulas to System F types (`F⁻`) and to elementary
//! affine types (`F°`), the matching context transforms, and erasure of typed
//! terms to pure λ-terms.

mod eal_type;
mod pure;

pub use eal_type::EalType;
pub use pure::{Normalized, PureTerm};

use crate::syntax::{pred_type_var, Formula, TermExpr, TypeExpr};
use crate::wf::{Context, ContextEntry};

/// `F⁻`: atoms become `α_X`, `⊸` becomes `→`, first-order and type
/// quantifiers disappear, `∀X` becomes `∀α_X`, and `!` is erased.
pub fn minus_proj(f: &Formula) -> TypeExpr {
    match f {
        Formula::Atom(x, _) => TypeExpr::Var(pred_type_var(x)),
        Formula::Lolli(a, b) => TypeExpr::arrow(minus_proj(a), minus_proj(b)),
        Formula::Forall2(x, _, body) => TypeExpr::forall(pred_type_var(x), minus_proj(body)),
        Formula::Forall1(_, _, body) | Formula::ForallTy(_, body) => minus_proj(body),
        Formula::Bang(a) => minus_proj(a),
    }
}

/// `F°`: like `F⁻` but keeping `!` and mapping `⊸` to `⊸`.
pub fn circle_proj(f: &Formula) -> EalType {
    match f {
        Formula::Atom(x, _) => EalType::Var(pred_type_var(x)),
        Formula::Lolli(a, b) => EalType::lolli(circle_proj(a), circle_proj(b)),
        Formula::Forall2(x, _, body) => EalType::forall(pred_type_var(x), circle_proj(body)),
        Formula::Forall1(_, _, body) | Formula::ForallTy(_, body) => circle_proj(body),
        Formula::Bang(a) => EalType::bang(circle_proj(a)),
    }
}

/// `Γ*`: every `X:[τ₁…τₙ]` becomes `α_X:Type`.
pub fn gamma_star(ctx: &Context) -> Context {
    Context::from_entries(
        ctx.entries()
            .iter()
            .map(|e| match e {
                ContextEntry::PredVar(x, _) => ContextEntry::TypeVar(pred_type_var(x)),
                other => other.clone(),
            })
            .collect(),
    )
}

/// `Γ⁻`: every `X:[τ₁…τₙ]` becomes `α_X:Type, X:[τ₁…τₙ, α_X]`.
pub fn gamma_minus_ctx(ctx: &Context) -> Context {
    let mut out = Vec::with_capacity(ctx.len());
    for e in ctx.entries() {
        match e {
            ContextEntry::PredVar(x, kind) => {
                let a = pred_type_var(x);
                let mut kind = kind.clone();
                kind.push(TypeExpr::Var(a.clone()));
                out.push(ContextEntry::TypeVar(a));
                out.push(ContextEntry::PredVar(x.clone(), kind));
            }
            other => out.push(other.clone()),
        }
    }
    Context::from_entries(out)
}

/// Removes all type information: annotations, type abstractions and type
/// applications.
pub fn erase(t: &TermExpr) -> PureTerm {
    fn go(t: &TermExpr, bound: &mut Vec<String>) -> PureTerm {
        match t {
            TermExpr::Var(x) => match bound.iter().rev().position(|b| b == x) {
                Some(i) => PureTerm::Var(i),
                None => PureTerm::Free(x.clone()),
            },
            TermExpr::App(f, a) => PureTerm::app(go(f, bound), go(a, bound)),
            TermExpr::TyApp(f, _) => go(f, bound),
            TermExpr::TyLam(_, b) => go(b, bound),
            TermExpr::Lam(x, _, b) => {
                bound.push(x.clone());
                let body = go(b, bound);
                bound.pop();
                PureTerm::lam(x.clone(), body)
            }
        }
    }
    go(t, &mut Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::library::{church_zero_term, equality, nat, nat_pred, unit};
    use crate::wf::check_type;

    #[test]
    fn minus_examples() {
        let x = TermExpr::var("x");
        assert_eq!(minus_proj(&equality(nat(), x.clone(), x.clone())), unit());
        assert_eq!(minus_proj(&nat_pred(x.clone())), nat());
        let f = Formula::forall1("x", nat(), Formula::atom("X", vec![x]));
        assert_eq!(minus_proj(&f), TypeExpr::var(pred_type_var("X")));
    }

    #[test]
    fn circle_examples() {
        let x = TermExpr::var("x");
        assert_eq!(circle_proj(&nat_pred(x.clone())), EalType::nat());
        let atom = Formula::atom("X", vec![x]);
        assert_eq!(circle_proj(&atom), EalType::var(pred_type_var("X")));
        assert_eq!(circle_proj(&Formula::bang(atom)), EalType::bang(EalType::var(pred_type_var("X"))));
    }

    #[test]
    fn context_transforms() {
        let g = Context::from_entries(vec![ContextEntry::PredVar("X".into(), vec![nat()])]);
        let a = pred_type_var("X");
        assert_eq!(gamma_star(&g).entries(), &[ContextEntry::TypeVar(a.clone())]);
        assert_eq!(
            gamma_minus_ctx(&g).entries(),
            &[
                ContextEntry::TypeVar(a.clone()),
                ContextEntry::PredVar("X".into(), vec![nat(), TypeExpr::var(a)])
            ]
        );
        let plain = Context::from_entries(vec![
            ContextEntry::TypeVar("a".into()),
            ContextEntry::TermVar("x".into(), TypeExpr::var("a")),
        ]);
        assert_eq!(gamma_star(&plain), plain);
        assert_eq!(gamma_minus_ctx(&plain), plain);
        assert!(gamma_star(&Context::new()).is_empty());
    }

    #[test]
    fn erase_examples() {
        assert_eq!(erase(&church_zero_term()), PureTerm::church(0));
        let id = TermExpr::ty_lam("a", TermExpr::lam("x", TypeExpr::var("a"), TermExpr::var("x")));
        let applied = TermExpr::ty_app(id, nat());
        assert_eq!(erase(&applied), PureTerm::lam("x", PureTerm::Var(0)));
        assert_eq!(erase(&TermExpr::var("y")), PureTerm::free("y"));
    }

    #[test]
    fn minus_projection_is_well_formed_in_star_context() {
        let g = Context::from_entries(vec![ContextEntry::PredVar("X".into(), vec![nat()])]);
        let f = Formula::lolli(
            Formula::atom("X", vec![church_zero_term()]),
            nat_pred(church_zero_term()),
        );
        assert!(check_type(&gamma_star(&g), &minus_proj(&f)).is_ok());
    }
}
