//! The default signature Σ of arithmetic symbols and the equation set H₀
//! defining them.

use crate::rewrite::{Equation, EquationSet};
use crate::syntax::library::{church_succ_body, church_zero_term, nat, nat_to_nat, succ, SUCC, ZERO};
use crate::syntax::{TermExpr, TypeExpr};
use crate::wf::{Context, ContextEntry};

pub const PLUS: &str = "plus";
pub const MULT: &str = "mult";
pub const PRED: &str = "pred";
pub const MINUS: &str = "minus";
pub const SUM: &str = "sum";
pub const PROD: &str = "prod";

fn binary() -> TypeExpr {
    TypeExpr::arrow(nat(), TypeExpr::arrow(nat(), nat()))
}

fn iterator() -> TypeExpr {
    TypeExpr::arrow(nat_to_nat(), TypeExpr::arrow(nat(), nat()))
}

/// `Σ = 0:nat, s:nat→nat, pred, mult, minus, plus, sum, prod`.
pub fn signature() -> Context {
    let term = |x: &str, t: TypeExpr| ContextEntry::TermVar(x.into(), t);
    Context::from_entries(vec![
        term(ZERO, nat()),
        term(SUCC, nat_to_nat()),
        term(PRED, nat_to_nat()),
        term(MULT, binary()),
        term(MINUS, binary()),
        term(PLUS, binary()),
        term(SUM, iterator()),
        term(PROD, iterator()),
    ])
}

fn v(x: &str) -> TermExpr {
    TermExpr::var(x)
}

fn call(f: &str, args: impl IntoIterator<Item = TermExpr>) -> TermExpr {
    TermExpr::apps(v(f), args)
}

fn eq(name: &str, params: &[(&str, TypeExpr)], lhs: TermExpr, rhs: TermExpr) -> Equation {
    Equation {
        name: name.into(),
        params: params.iter().map(|(x, t)| (x.to_string(), t.clone())).collect(),
        ty: nat(),
        lhs,
        rhs,
    }
}

/// The fourteen defining equations, in the order they are usually listed.
pub fn h0() -> EquationSet {
    let n = || ("n", nat());
    let x = || ("x", nat());
    let y = || ("y", nat());
    let f = || ("f", nat_to_nat());
    let zero = || v(ZERO);
    EquationSet::new(vec![
        eq("zero-def", &[], zero(), church_zero_term()),
        eq("succ-def", &[n()], succ(v("n")), church_succ_body(v("n"))),
        eq(
            "plus-succ",
            &[x(), y()],
            call(PLUS, [v("x"), succ(v("y"))]),
            succ(call(PLUS, [v("x"), v("y")])),
        ),
        eq("plus-zero", &[x()], call(PLUS, [v("x"), zero()]), v("x")),
        eq(
            "mult-succ",
            &[x(), y()],
            call(MULT, [v("x"), succ(v("y"))]),
            call(PLUS, [v("x"), call(MULT, [v("x"), v("y")])]),
        ),
        eq("mult-zero", &[x()], call(MULT, [v("x"), zero()]), zero()),
        eq("pred-succ", &[x()], call(PRED, [succ(v("x"))]), v("x")),
        eq("pred-zero", &[], call(PRED, [zero()]), zero()),
        eq(
            "minus-succ",
            &[x(), y()],
            call(MINUS, [v("x"), succ(v("y"))]),
            call(PRED, [call(MINUS, [v("x"), v("y")])]),
        ),
        eq("minus-zero", &[x()], call(MINUS, [v("x"), zero()]), v("x")),
        eq(
            "sum-succ",
            &[x(), f()],
            call(SUM, [v("f"), succ(v("x"))]),
            call(PLUS, [call(SUM, [v("f"), v("x")]), TermExpr::app(v("f"), v("x"))]),
        ),
        eq("sum-zero", &[f()], call(SUM, [v("f"), zero()]), zero()),
        eq(
            "prod-succ",
            &[x(), f()],
            call(PROD, [v("f"), succ(v("x"))]),
            call(MULT, [call(PROD, [v("f"), v("x")]), TermExpr::app(v("f"), v("x"))]),
        ),
        eq("prod-zero", &[f()], call(PROD, [v("f"), zero()]), succ(zero())),
    ])
}
