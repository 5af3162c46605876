//! From types, terms, formulas, traces and proof scripts to s-expressions.
//! Reading the output back gives the same value up to α-equivalence.

use elx_core::kernel::{EqDirection, ProofScript};
use elx_core::rewrite::{BetaDirection, Equation, Orientation, Trace};
use elx_core::syntax::library::{as_equality, as_nat_pred, as_tensor, nat, unit};
use elx_core::syntax::{Formula, TermExpr, TypeExpr};
use elx_core::wf::ContextEntry;

use super::sexpr::SExpr;
use super::{Item, ProofItem};

fn atom(s: impl Into<String>) -> SExpr {
    SExpr::atom(s)
}

fn list(items: impl IntoIterator<Item = SExpr>) -> SExpr {
    SExpr::list(items.into_iter().collect())
}

fn form(head: &str, rest: impl IntoIterator<Item = SExpr>) -> SExpr {
    list(std::iter::once(atom(head)).chain(rest))
}

fn position(pos: &[usize]) -> SExpr {
    list(pos.iter().map(|i| atom(i.to_string())))
}

pub fn write_type(t: &TypeExpr) -> SExpr {
    if t.alpha_eq(&nat()) {
        return atom("nat");
    }
    if t.alpha_eq(&unit()) {
        return atom("unit");
    }
    match t {
        TypeExpr::Var(a) => atom(a.clone()),
        TypeExpr::Forall(a, body) => form("forall", [atom(a.clone()), write_type(body)]),
        TypeExpr::Arrow(..) => {
            let mut parts = Vec::new();
            let mut cur = t;
            while let TypeExpr::Arrow(d, c) = cur {
                parts.push(write_type(d));
                cur = c;
            }
            parts.push(write_type(cur));
            form("->", parts)
        }
    }
}

pub fn write_term(t: &TermExpr) -> SExpr {
    match t {
        TermExpr::Var(x) => atom(x.clone()),
        TermExpr::Lam(x, ty, body) => form("fun", [atom(x.clone()), write_type(ty), write_term(body)]),
        TermExpr::TyLam(a, body) => form("Fun", [atom(a.clone()), write_term(body)]),
        TermExpr::TyApp(f, ty) => form("tapp", [write_term(f), write_type(ty)]),
        TermExpr::App(..) => {
            let mut args = Vec::new();
            let mut cur = t;
            while let TermExpr::App(f, a) = cur {
                args.push(write_term(a));
                cur = f;
            }
            args.push(write_term(cur));
            args.reverse();
            list(args)
        }
    }
}

pub fn write_formula(f: &Formula) -> SExpr {
    if let Some(t) = as_nat_pred(f) {
        return form("N", [write_term(&t)]);
    }
    if let Some((ty, a, b)) = as_equality(f) {
        return form("eq", [write_type(&ty), write_term(&a), write_term(&b)]);
    }
    if let Some((p, q)) = as_tensor(f) {
        return form("tensor", [write_formula(&p), write_formula(&q)]);
    }
    match f {
        Formula::Atom(x, args) => form("atom", std::iter::once(atom(x.clone())).chain(args.iter().map(write_term))),
        Formula::Lolli(..) => {
            let mut parts = Vec::new();
            let mut cur = f;
            while let Formula::Lolli(p, q) = cur {
                parts.push(write_formula(p));
                cur = q;
            }
            parts.push(write_formula(cur));
            form("-o", parts)
        }
        Formula::Forall2(x, kind, body) => {
            form("forall2", [atom(x.clone()), list(kind.iter().map(write_type)), write_formula(body)])
        }
        Formula::Forall1(x, ty, body) => form("forall1", [atom(x.clone()), write_type(ty), write_formula(body)]),
        Formula::ForallTy(a, body) => form("forallt", [atom(a.clone()), write_formula(body)]),
        Formula::Bang(p) => form("!", [write_formula(p)]),
    }
}

pub fn write_trace(t: &Trace) -> SExpr {
    match t {
        Trace::Refl => atom("refl"),
        Trace::Axiom { equation, inst, pos, orientation } => form(
            "ax",
            [
                atom(equation.clone()),
                list(inst.iter().map(|(x, t)| list([atom(x.clone()), write_term(t)]))),
                position(pos),
                atom(match orientation {
                    Orientation::LeftToRight => "ltr",
                    Orientation::RightToLeft => "rtl",
                }),
            ],
        ),
        Trace::Beta { pos, direction } => form(
            "beta",
            [
                position(pos),
                atom(match direction {
                    BetaDirection::Forward => "fwd",
                    BetaDirection::Backward => "bwd",
                }),
            ],
        ),
        Trace::Sym(t) => form("sym", [write_trace(t)]),
        Trace::Trans(a, mid, b) => {
            let mid = mid.as_ref().map(|m| form("mid", [write_term(m)]));
            form("trans", std::iter::once(write_trace(a)).chain(mid).chain([write_trace(b)]))
        }
        Trace::Cong(pos, t) => form("cong", [position(pos), write_trace(t)]),
        Trace::Ext(x, t) => form("ext", [atom(x.clone()), write_trace(t)]),
    }
}

pub fn write_script(s: &ProofScript) -> SExpr {
    let head = s.rule_name();
    match s {
        ProofScript::Axiom { label, formula } => form(head, [atom(label.clone()), write_formula(formula)]),
        ProofScript::Weaken { label, formula, premise } => {
            form(head, [atom(label.clone()), write_formula(formula), write_script(premise)])
        }
        ProofScript::App(f, a) => form(head, [write_script(f), write_script(a)]),
        ProofScript::Abs { label, premise } | ProofScript::Contract { label, premise } => {
            form(head, [atom(label.clone()), write_script(premise)])
        }
        ProofScript::Promote { premises, inner } => form(
            head,
            [list(premises.iter().map(|(x, p)| list([atom(x.clone()), write_script(p)]))), write_script(inner)],
        ),
        ProofScript::IntroType { var, premise } => form(head, [atom(var.clone()), write_script(premise)]),
        ProofScript::Intro1 { var, ty, premise } => form(head, [atom(var.clone()), write_type(ty), write_script(premise)]),
        ProofScript::Intro2 { var, kind, premise } => {
            form(head, [atom(var.clone()), list(kind.iter().map(write_type)), write_script(premise)])
        }
        ProofScript::ElimType { ty, premise } => form(head, [write_type(ty), write_script(premise)]),
        ProofScript::Elim1 { term, premise } => form(head, [write_term(term), write_script(premise)]),
        ProofScript::Elim2 { formula, params, premise } => form(
            head,
            [write_formula(formula), list(params.iter().map(|p| atom(p.clone()))), write_script(premise)],
        ),
        ProofScript::Equal { hole, var, t1, t2, ty, direction, trace, premise } => form(
            head,
            [
                atom(var.clone()),
                write_formula(hole),
                write_term(t1),
                write_term(t2),
                write_type(ty),
                atom(match direction {
                    EqDirection::Forward => "fwd",
                    EqDirection::Backward => "bwd",
                }),
                write_trace(trace),
                write_script(premise),
            ],
        ),
        ProofScript::Use(name) => form(head, [atom(name.clone())]),
    }
}

fn write_equation(e: &Equation) -> SExpr {
    form(
        "equation",
        [
            atom(e.name.clone()),
            list(e.params.iter().map(|(x, t)| list([atom(x.clone()), write_type(t)]))),
            write_type(&e.ty),
            write_term(&e.lhs),
            write_term(&e.rhs),
        ],
    )
}

pub fn write_item(item: &Item) -> SExpr {
    match item {
        Item::Signature(ContextEntry::TypeVar(a)) => form("type", [atom(a.clone())]),
        Item::Signature(ContextEntry::TermVar(x, t)) => form("term", [atom(x.clone()), write_type(t)]),
        Item::Signature(ContextEntry::PredVar(x, kind)) => {
            form("pred", [atom(x.clone()), list(kind.iter().map(write_type))])
        }
        Item::Equation(e) => write_equation(e),
        Item::Proof(ProofItem { name, claim, script, .. }) => {
            let claim = claim.as_ref().map(|f| form("claim", [write_formula(f)]));
            form("proof", std::iter::once(atom(name.clone())).chain(claim).chain([write_script(script)]))
        }
    }
}
