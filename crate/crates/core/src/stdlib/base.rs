//! Proofs of the base totality statements: zero, successor, identity,
//! addition, multiplication, predecessor, truncated subtraction, and the
//! coercion `N x ⊸ !N x`.

use crate::kernel::{EqDirection, ProofScript};
use crate::rewrite::{Orientation, Trace};
use crate::syntax::library::{nat, nat_pred, succ, SUCC, ZERO};
use crate::syntax::{Formula, TermExpr};
use crate::theory::{MINUS, MULT, PLUS, PRED};

use ProofScript as P;

pub(crate) fn v(x: &str) -> TermExpr {
    TermExpr::var(x)
}

pub(crate) fn zero() -> TermExpr {
    v(ZERO)
}

pub(crate) fn call(f: &str, args: impl IntoIterator<Item = TermExpr>) -> TermExpr {
    TermExpr::apps(v(f), args)
}

pub(crate) fn n(t: TermExpr) -> Formula {
    nat_pred(t)
}

pub(crate) fn atom(x: &str, t: TermExpr) -> Formula {
    Formula::atom(x, vec![t])
}

/// `∀y. X y ⊸ X (s y)`
pub(crate) fn step_formula(x: &str) -> Formula {
    Formula::forall1("y", nat(), Formula::lolli(atom(x, v("y")), atom(x, succ(v("y")))))
}

pub(crate) fn apps(f: ProofScript, args: impl IntoIterator<Item = ProofScript>) -> ProofScript {
    args.into_iter().fold(f, P::app)
}

/// Instantiates leading first-order quantifiers in order.
pub(crate) fn inst(script: ProofScript, terms: impl IntoIterator<Item = TermExpr>) -> ProofScript {
    terms.into_iter().fold(script, |s, t| P::elim1(t, s))
}

/// A one-step trace using a defining equation at the root.
pub(crate) fn by(equation: &str, args: &[(&str, TermExpr)], orientation: Orientation) -> Trace {
    Trace::axiom(
        equation,
        args.iter().map(|(x, t)| (x.to_string(), t.clone())).collect(),
        vec![],
        orientation,
    )
}

/// Rewrites the goal `hole[t₁/q]` into `hole[t₂/q]`, where `hole` mentions
/// the variable `q`.
pub(crate) fn rewrite(hole: Formula, t1: TermExpr, t2: TermExpr, trace: Trace, premise: ProofScript) -> ProofScript {
    P::equal(hole, "q", t1, t2, nat(), EqDirection::Forward, trace, premise)
}

/// `!(Q[0] ⊸ Q[t])` from the numeral hypothesis `label : N t` and a proof of
/// the step `!(∀y. Q[y] ⊸ Q[s y])`, where `Q` is given with parameter `z`.
pub(crate) fn iterate(label: &str, t: TermExpr, q: Formula, step: ProofScript) -> ProofScript {
    P::app(P::elim2(q, &["z"], P::axiom(label, n(t))), step)
}

/// `⊢ N 0`
pub fn proof_zero() -> ProofScript {
    let body = P::promote(vec![], P::abs("a", P::axiom("a", atom("X", zero()))));
    P::intro2(
        "X",
        vec![nat()],
        P::abs("h", P::weaken("h", Formula::bang(step_formula("X")), body)),
    )
}

/// `⊢ ∀y. N y ⊸ N (s y)`
pub fn proof_succ() -> ProofScript {
    let h = || Formula::bang(step_formula("X"));
    let y = || v("y");
    let run = iterate("n", y(), atom("X", v("z")), P::axiom("h", h()));
    let inner = P::abs(
        "w",
        P::app(
            P::elim1(y(), P::axiom("g", step_formula("X"))),
            P::app(
                P::axiom("a", Formula::lolli(atom("X", zero()), atom("X", y()))),
                P::axiom("w", atom("X", zero())),
            ),
        ),
    );
    let boxed = P::promote(vec![("a", run), ("g", P::axiom("h", h()))], inner);
    P::intro1(
        "y",
        nat(),
        P::abs("n", P::intro2("X", vec![nat()], P::abs("h", P::contract("h", boxed)))),
    )
}

/// `⊢ ∀x. N x ⊸ N x`
pub fn proof_identity() -> ProofScript {
    P::intro1("x", nat(), P::abs("n", P::axiom("n", n(v("x")))))
}

/// `⊢ ∀x y. N x ⊸ N y ⊸ N (plus x y)`.
///
/// Iterates `N y` at `X (plus x z)` and `N x` at `X z`, then composes the
/// two iterations inside one box. Traces: `plus-succ` (right to left) at
/// the step, `plus-zero` (right to left) at the junction.
pub fn proof_plus() -> ProofScript {
    let (x, y) = (|| v("x"), || v("y"));
    let plus = |a: TermExpr, b: TermExpr| call(PLUS, [a, b]);
    let h = || Formula::bang(step_formula("X"));
    let step_inner = P::intro1(
        "w",
        nat(),
        P::abs(
            "u",
            rewrite(
                atom("X", v("q")),
                succ(plus(x(), v("w"))),
                plus(x(), succ(v("w"))),
                by("plus-succ", &[("x", x()), ("y", v("w"))], Orientation::RightToLeft),
                P::app(
                    P::elim1(plus(x(), v("w")), P::axiom("g", step_formula("X"))),
                    P::axiom("u", atom("X", plus(x(), v("w")))),
                ),
            ),
        ),
    );
    let step = P::promote(vec![("g", P::axiom("h", h()))], step_inner);
    let outer_run = iterate("m", y(), atom("X", plus(x(), v("z"))), step);
    let inner_run = iterate("n", x(), atom("X", v("z")), P::axiom("h", h()));
    let junction = P::abs(
        "w",
        P::app(
            P::axiom("p", Formula::lolli(atom("X", plus(x(), zero())), atom("X", plus(x(), y())))),
            rewrite(
                atom("X", v("q")),
                x(),
                plus(x(), zero()),
                by("plus-zero", &[("x", x())], Orientation::RightToLeft),
                P::app(
                    P::axiom("r", Formula::lolli(atom("X", zero()), atom("X", x()))),
                    P::axiom("w", atom("X", zero())),
                ),
            ),
        ),
    );
    let boxed = P::promote(vec![("p", outer_run), ("r", inner_run)], junction);
    P::intro1(
        "x",
        nat(),
        P::intro1(
            "y",
            nat(),
            P::abs(
                "n",
                P::abs("m", P::intro2("X", vec![nat()], P::abs("h", P::contract("h", boxed)))),
            ),
        ),
    )
}

/// `⊢ ∀x y. !N x ⊸ N y ⊸ !N (mult x y)`.
///
/// Iterates `N y` at `N (mult x z)`; the step adds `x` (from the banged
/// hypothesis, inside the step's box) using addition. Traces: `mult-succ`
/// and `mult-zero`, both right to left.
pub fn proof_mult() -> ProofScript {
    let (x, y) = (|| v("x"), || v("y"));
    let mult = |a: TermExpr, b: TermExpr| call(MULT, [a, b]);
    let step_inner = P::intro1(
        "w",
        nat(),
        P::abs(
            "u",
            rewrite(
                n(v("q")),
                call(PLUS, [x(), mult(x(), v("w"))]),
                mult(x(), succ(v("w"))),
                by("mult-succ", &[("x", x()), ("y", v("w"))], Orientation::RightToLeft),
                apps(
                    inst(P::use_lemma("plus"), [x(), mult(x(), v("w"))]),
                    [P::axiom("c", n(x())), P::axiom("u", n(mult(x(), v("w"))))],
                ),
            ),
        ),
    );
    let step = P::promote(vec![("c", P::axiom("b", Formula::bang(n(x()))))], step_inner);
    let run = iterate("m", y(), n(mult(x(), v("z"))), step);
    let base = rewrite(
        n(v("q")),
        zero(),
        mult(x(), zero()),
        by("mult-zero", &[("x", x())], Orientation::RightToLeft),
        P::use_lemma("zero"),
    );
    let boxed = P::promote(
        vec![("p", run)],
        P::app(P::axiom("p", Formula::lolli(n(mult(x(), zero())), n(mult(x(), y())))), base),
    );
    P::intro1("x", nat(), P::intro1("y", nat(), P::abs("b", P::abs("m", boxed))))
}

/// `∀Y:[nat]. (X 0 ⊸ Y 0) ⊸ (∀y. X y ⊸ Y (s y)) ⊸ Y t`: a value of
/// `X 0` waiting for a way to handle the zero and successor cases of `t`.
fn pred_carrier(t: TermExpr) -> Formula {
    let yv = |a: TermExpr| atom("Y", a);
    Formula::forall2(
        "Y",
        vec![nat()],
        Formula::lolli(
            Formula::lolli(atom("X", zero()), yv(zero())),
            Formula::lolli(
                Formula::forall1("y", nat(), Formula::lolli(atom("X", v("y")), yv(succ(v("y"))))),
                yv(t),
            ),
        ),
    )
}

/// `⊢ ∀x. N x ⊸ N (pred x)`.
///
/// Iterates `N x` at the carrier `C z` (see [`pred_carrier`]) from
/// `λa. λb. a w`; each step discards the zero handler and passes the
/// previous result, run with the identity and the step hypothesis, to the
/// successor handler. Traces: `pred-zero` and `pred-succ`, right to left.
pub fn proof_pred() -> ProofScript {
    let x = || v("x");
    let pred = |a: TermExpr| call(PRED, [a]);
    let h = || Formula::bang(step_formula("X"));
    let zero_handler = || Formula::lolli(atom("X", zero()), atom("Y", zero()));
    let succ_handler = || Formula::forall1("y", nat(), Formula::lolli(atom("X", v("y")), atom("Y", succ(v("y")))));
    let identity_x0 = || P::abs("i", P::axiom("i", atom("X", zero())));

    // f : ∀y. X y ⊸ X (s y), g : C w ⊢ C (s w)
    let run_previous = apps(
        P::elim2(atom("X", v("z")), &["z"], P::axiom("g", pred_carrier(v("w")))),
        [identity_x0(), P::axiom("f", step_formula("X"))],
    );
    let step_body = P::intro2(
        "Y",
        vec![nat()],
        P::abs(
            "a",
            P::weaken(
                "a",
                zero_handler(),
                P::abs(
                    "b",
                    P::app(P::elim1(v("w"), P::axiom("b", succ_handler())), run_previous),
                ),
            ),
        ),
    );
    let step = P::promote(
        vec![("f", P::axiom("h", h()))],
        P::intro1("w", nat(), P::abs("g", step_body)),
    );
    let base = P::intro2(
        "Y",
        vec![nat()],
        P::abs(
            "a",
            P::abs(
                "b",
                P::weaken(
                    "b",
                    succ_handler(),
                    P::app(P::axiom("a", zero_handler()), P::axiom("e", atom("X", zero()))),
                ),
            ),
        ),
    );
    let run = iterate("n", x(), pred_carrier(v("z")), step);
    let on_zero = P::abs(
        "i",
        rewrite(
            atom("X", v("q")),
            zero(),
            pred(zero()),
            by("pred-zero", &[], Orientation::RightToLeft),
            P::axiom("i", atom("X", zero())),
        ),
    );
    let on_succ = P::intro1(
        "u",
        nat(),
        P::abs(
            "i",
            rewrite(
                atom("X", v("q")),
                v("u"),
                pred(succ(v("u"))),
                by("pred-succ", &[("x", v("u"))], Orientation::RightToLeft),
                P::axiom("i", atom("X", v("u"))),
            ),
        ),
    );
    let finish = P::abs(
        "e",
        apps(
            P::elim2(
                atom("X", pred(v("z"))),
                &["z"],
                P::app(P::axiom("p", Formula::lolli(pred_carrier(zero()), pred_carrier(x()))), base),
            ),
            [on_zero, on_succ],
        ),
    );
    let boxed = P::promote(vec![("p", run)], finish);
    P::intro1(
        "x",
        nat(),
        P::abs("n", P::intro2("X", vec![nat()], P::abs("h", boxed))),
    )
}

/// `⊢ ∀x y. !N x ⊸ N y ⊸ !N (minus x y)`.
///
/// Iterates `N y` at `N (minus x z)` with the predecessor as a closed step,
/// starting from `x`. Traces: `minus-succ` and `minus-zero`, right to left.
pub fn proof_minus() -> ProofScript {
    let (x, y) = (|| v("x"), || v("y"));
    let minus = |a: TermExpr, b: TermExpr| call(MINUS, [a, b]);
    let step = P::promote(
        vec![],
        P::intro1(
            "w",
            nat(),
            P::abs(
                "u",
                rewrite(
                    n(v("q")),
                    call(PRED, [minus(x(), v("w"))]),
                    minus(x(), succ(v("w"))),
                    by("minus-succ", &[("x", x()), ("y", v("w"))], Orientation::RightToLeft),
                    P::app(
                        inst(P::use_lemma("pred"), [minus(x(), v("w"))]),
                        P::axiom("u", n(minus(x(), v("w")))),
                    ),
                ),
            ),
        ),
    );
    let run = iterate("m", y(), n(minus(x(), v("z"))), step);
    let start = rewrite(
        n(v("q")),
        x(),
        minus(x(), zero()),
        by("minus-zero", &[("x", x())], Orientation::RightToLeft),
        P::axiom("c", n(x())),
    );
    let boxed = P::promote(
        vec![("p", run), ("c", P::axiom("b", Formula::bang(n(x()))))],
        P::app(P::axiom("p", Formula::lolli(n(minus(x(), zero())), n(minus(x(), y())))), start),
    );
    P::intro1("x", nat(), P::intro1("y", nat(), P::abs("b", P::abs("m", boxed))))
}

/// `⊢ ∀x. N x ⊸ !N x`: iterate the successor proof from the zero proof.
pub fn proof_coercion() -> ProofScript {
    let x = || v("x");
    let run = iterate("n", x(), n(v("z")), P::promote(vec![], P::use_lemma("succ")));
    let boxed = P::promote(
        vec![("a", run)],
        P::app(P::axiom("a", Formula::lolli(n(zero()), n(x()))), P::use_lemma("zero")),
    );
    P::intro1("x", nat(), P::abs("n", boxed))
}

/// The statements proved by the base proofs, in dependency order.
pub fn base_statements() -> Vec<(&'static str, Formula)> {
    let (x, y) = (|| v("x"), || v("y"));
    let all = |vars: &[&str], body: Formula| {
        vars.iter().rev().fold(body, |acc, z| Formula::forall1(*z, nat(), acc))
    };
    let lolli = Formula::lolli;
    let bang = Formula::bang;
    vec![
        ("zero", n(zero())),
        ("succ", all(&["y"], lolli(n(y()), n(TermExpr::app(v(SUCC), y()))))),
        ("id", all(&["x"], lolli(n(x()), n(x())))),
        ("plus", all(&["x", "y"], lolli(n(x()), lolli(n(y()), n(call(PLUS, [x(), y()])))))),
        (
            "mult",
            all(&["x", "y"], lolli(bang(n(x())), lolli(n(y()), bang(n(call(MULT, [x(), y()])))))),
        ),
        ("pred", all(&["x"], lolli(n(x()), n(call(PRED, [x()]))))),
        (
            "minus",
            all(&["x", "y"], lolli(bang(n(x())), lolli(n(y()), bang(n(call(MINUS, [x(), y()])))))),
        ),
        ("coercion", all(&["x"], lolli(n(x()), bang(n(x()))))),
    ]
}

/// The base proofs paired with their statements, in dependency order.
pub fn base_library() -> Vec<(&'static str, Formula, ProofScript)> {
    let proofs = [
        proof_zero(),
        proof_succ(),
        proof_identity(),
        proof_plus(),
        proof_mult(),
        proof_pred(),
        proof_minus(),
        proof_coercion(),
    ];
    base_statements()
        .into_iter()
        .zip(proofs)
        .map(|((name, statement), proof)| (name, statement, proof))
        .collect()
}
