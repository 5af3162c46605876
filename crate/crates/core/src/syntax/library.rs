//! Standard formulas and types: Leibniz equality, the numeral predicate
//! `N`, tensor, extensionality, `nat` and `unit`.

use std::collections::BTreeSet;

use super::formula::Formula;
use super::names::fresh_avoiding;
use super::terms::TermExpr;
use super::types::TypeExpr;

/// Name of the zero symbol of the signature.
pub const ZERO: &str = "0";
/// Name of the successor symbol of the signature.
pub const SUCC: &str = "s";

/// `∀α. (α → α) → α → α`
pub fn nat() -> TypeExpr {
    let a = || TypeExpr::var("a");
    TypeExpr::forall(
        "a",
        TypeExpr::arrow(TypeExpr::arrow(a(), a()), TypeExpr::arrow(a(), a())),
    )
}

/// `∀α. α → α`
pub fn unit() -> TypeExpr {
    TypeExpr::forall("a", TypeExpr::arrow(TypeExpr::var("a"), TypeExpr::var("a")))
}

/// `nat → nat`
pub fn nat_to_nat() -> TypeExpr {
    TypeExpr::arrow(nat(), nat())
}

/// Church zero `Λα. λf:α→α. λx:α. x`.
pub fn church_zero_term() -> TermExpr {
    let a = || TypeExpr::var("a");
    TermExpr::ty_lam(
        "a",
        TermExpr::lam(
            "f",
            TypeExpr::arrow(a(), a()),
            TermExpr::lam("x", a(), TermExpr::var("x")),
        ),
    )
}

/// Church successor as printed in the defining equation of `s`:
/// `Λα. λf:α→α. λx:α. n α f (f x)`.
pub fn church_succ_body(n: TermExpr) -> TermExpr {
    let mut avoid = n.free_vars();
    avoid.extend(n.free_type_vars());
    let alpha = if avoid.contains("a") { fresh_avoiding("a", &avoid) } else { "a".into() };
    let f = if avoid.contains("f") { fresh_avoiding("f", &avoid) } else { "f".into() };
    let x = if avoid.contains("x") { fresh_avoiding("x", &avoid) } else { "x".into() };
    let av = || TypeExpr::var(alpha.clone());
    TermExpr::ty_lam(
        alpha.clone(),
        TermExpr::lam(
            f.clone(),
            TypeExpr::arrow(av(), av()),
            TermExpr::lam(
                x.clone(),
                av(),
                TermExpr::apps(
                    TermExpr::ty_app(n, av()),
                    [
                        TermExpr::var(f.clone()),
                        TermExpr::app(TermExpr::var(f), TermExpr::var(x)),
                    ],
                ),
            ),
        ),
    )
}

/// `s t`
pub fn succ(t: TermExpr) -> TermExpr {
    TermExpr::app(TermExpr::var(SUCC), t)
}

/// `s (s … 0)` with `n` successors.
pub fn numeral_term(n: usize) -> TermExpr {
    (0..n).fold(TermExpr::var(ZERO), |acc, _| succ(acc))
}

fn pick(base: &str, avoid: &BTreeSet<String>) -> String {
    if avoid.contains(base) {
        fresh_avoiding(base, avoid)
    } else {
        base.to_string()
    }
}

/// Leibniz equality `∀X:[τ]. X t₁ ⊸ X t₂`.
pub fn equality(ty: TypeExpr, lhs: TermExpr, rhs: TermExpr) -> Formula {
    Formula::forall2(
        "X",
        vec![ty],
        Formula::lolli(Formula::atom("X", vec![lhs]), Formula::atom("X", vec![rhs])),
    )
}

/// The numeral predicate
/// `N t ≡ ∀X:[nat]. !(∀y:nat. X y ⊸ X (s y)) ⊸ !(X 0 ⊸ X t)`.
pub fn nat_pred(t: TermExpr) -> Formula {
    let mut avoid = t.free_vars();
    avoid.insert(SUCC.into());
    avoid.insert(ZERO.into());
    let y = pick("y", &avoid);
    let x = || "X".to_string();
    let yv = || TermExpr::var(y.clone());
    let step = Formula::forall1(
        y.clone(),
        nat(),
        Formula::lolli(Formula::atom(x(), vec![yv()]), Formula::atom(x(), vec![succ(yv())])),
    );
    Formula::forall2(
        x(),
        vec![nat()],
        Formula::lolli(
            Formula::bang(step),
            Formula::bang(Formula::lolli(
                Formula::atom(x(), vec![TermExpr::var(ZERO)]),
                Formula::atom(x(), vec![t]),
            )),
        ),
    )
}

/// `P ⊗ Q ≡ ∀X. (P ⊸ Q ⊸ X) ⊸ X`.
pub fn tensor(p: Formula, q: Formula) -> Formula {
    let mut avoid = p.free_preds();
    avoid.extend(q.free_preds());
    let x = pick("X", &avoid);
    let xa = || Formula::atom(x.clone(), vec![]);
    Formula::forall2(
        x.clone(),
        vec![],
        Formula::lolli(Formula::lolli(p, Formula::lolli(q, xa())), xa()),
    )
}

/// `∀αβ. ∀f g:α→β. (∀x:α. f x =_β g x) ⊸ f =_{α→β} g`.
pub fn extensionality() -> Formula {
    let a = || TypeExpr::var("a");
    let b = || TypeExpr::var("b");
    let ab = || TypeExpr::arrow(a(), b());
    let f = || TermExpr::var("f");
    let g = || TermExpr::var("g");
    let pointwise = Formula::forall1(
        "x",
        a(),
        equality(
            b(),
            TermExpr::app(f(), TermExpr::var("x")),
            TermExpr::app(g(), TermExpr::var("x")),
        ),
    );
    Formula::forall_ty(
        "a",
        Formula::forall_ty(
            "b",
            Formula::forall1(
                "f",
                ab(),
                Formula::forall1("g", ab(), Formula::lolli(pointwise, equality(ab(), f(), g()))),
            ),
        ),
    )
}

/// Recognizes `N t`, returning `t`.
pub fn as_nat_pred(f: &Formula) -> Option<TermExpr> {
    let Formula::Forall2(x, kind, body) = f else { return None };
    if kind.len() != 1 || !kind[0].alpha_eq(&nat()) {
        return None;
    }
    let Formula::Lolli(_, concl) = body.as_ref() else { return None };
    let Formula::Bang(inner) = concl.as_ref() else { return None };
    let Formula::Lolli(_, target) = inner.as_ref() else { return None };
    let Formula::Atom(y, args) = target.as_ref() else { return None };
    if y != x || args.len() != 1 {
        return None;
    }
    let t = args[0].clone();
    nat_pred(t.clone()).alpha_eq(f).then_some(t)
}

/// Recognizes `t₁ =_τ t₂`.
pub fn as_equality(f: &Formula) -> Option<(TypeExpr, TermExpr, TermExpr)> {
    let Formula::Forall2(x, kind, body) = f else { return None };
    if kind.len() != 1 {
        return None;
    }
    let Formula::Lolli(l, r) = body.as_ref() else { return None };
    match (l.as_ref(), r.as_ref()) {
        (Formula::Atom(a, la), Formula::Atom(b, ra))
            if a == x && b == x && la.len() == 1 && ra.len() == 1 =>
        {
            Some((kind[0].clone(), la[0].clone(), ra[0].clone()))
        }
        _ => None,
    }
}

/// Recognizes `P ⊗ Q`.
pub fn as_tensor(f: &Formula) -> Option<(Formula, Formula)> {
    let Formula::Forall2(x, kind, body) = f else { return None };
    if !kind.is_empty() {
        return None;
    }
    let Formula::Lolli(k, res) = body.as_ref() else { return None };
    if !matches!(res.as_ref(), Formula::Atom(y, a) if y == x && a.is_empty()) {
        return None;
    }
    let Formula::Lolli(p, rest) = k.as_ref() else { return None };
    let Formula::Lolli(q, res2) = rest.as_ref() else { return None };
    if !matches!(res2.as_ref(), Formula::Atom(y, a) if y == x && a.is_empty()) {
        return None;
    }
    if p.free_preds().contains(x) || q.free_preds().contains(x) {
        return None;
    }
    Some((p.as_ref().clone(), q.as_ref().clone()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nat_pred_avoids_capturing_its_argument() {
        let n = nat_pred(TermExpr::var("y"));
        assert!(n.free_vars().contains("y"));
        assert_eq!(as_nat_pred(&n), Some(TermExpr::var("y")));
    }

    #[test]
    fn recognizers_round_trip() {
        let e = equality(nat(), TermExpr::var("a"), TermExpr::var("b"));
        assert_eq!(as_equality(&e).unwrap().2, TermExpr::var("b"));
        let t = tensor(Formula::atom("P", vec![]), Formula::atom("X", vec![]));
        let (p, q) = as_tensor(&t).unwrap();
        assert_eq!(p, Formula::atom("P", vec![]));
        assert_eq!(q, Formula::atom("X", vec![]));
        assert!(as_nat_pred(&e).is_none());
    }
}
