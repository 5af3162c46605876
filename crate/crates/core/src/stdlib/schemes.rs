//! Proof schemes over totality statements
//! `∀x₁…xₙ. !^{k₁}N x₁ ⊸ … ⊸ !^{kₙ}N xₙ ⊸ !^k N t`: normalization of premise
//! exponentials by coercion, composition, and bounded sum and product.

use crate::kernel::{Kernel, KernelError, ProofScript};
use crate::rewrite::Orientation;
use crate::syntax::library::{as_nat_pred, nat, nat_to_nat, succ, tensor};
use crate::syntax::{Formula, TermExpr};
use crate::theory::{MULT, PLUS, PROD, SUM};

use super::base::{by, call, inst, n, rewrite, v, zero};
use ProofScript as P;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum SchemeError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("component proof rejected: {0}")]
    Kernel(KernelError),
}

/// The shape of a totality statement.
#[derive(Clone, Debug, PartialEq)]
pub struct Totality {
    pub vars: Vec<String>,
    pub premise_bangs: Vec<usize>,
    pub out_bangs: usize,
    /// The computed term, mentioning `vars`.
    pub out_term: TermExpr,
}

impl Totality {
    pub fn is_normal(&self) -> bool {
        self.premise_bangs.iter().all(|&k| k == 0)
    }

    /// The statement this shape describes.
    pub fn formula(&self) -> Formula {
        let mut body = Formula::bangs(self.out_bangs, n(self.out_term.clone()));
        for (x, &k) in self.vars.iter().zip(&self.premise_bangs).rev() {
            body = Formula::lolli(Formula::bangs(k, n(v(x))), body);
        }
        self.vars.iter().rev().fold(body, |acc, x| Formula::forall1(x.clone(), nat(), acc))
    }

    /// The computed term with the variables replaced by `args`.
    pub fn instantiate(&self, args: &[TermExpr]) -> TermExpr {
        let map: Vec<(String, TermExpr)> = self.vars.iter().cloned().zip(args.iter().cloned()).collect();
        self.out_term.subst_many(&map)
    }
}

/// Recognizes a totality statement.
pub fn totality_shape(f: &Formula) -> Option<Totality> {
    let mut vars = Vec::new();
    let mut cur = f;
    while let Formula::Forall1(x, ty, body) = cur {
        if !ty.alpha_eq(&nat()) {
            return None;
        }
        vars.push(x.clone());
        cur = body;
    }
    let mut premise_bangs = Vec::new();
    for x in &vars {
        let Formula::Lolli(p, rest) = cur else { return None };
        let (k, core) = p.unbang();
        let t = as_nat_pred(core)?;
        if !t.alpha_eq(&v(x)) {
            return None;
        }
        premise_bangs.push(k);
        cur = rest;
    }
    let (out_bangs, core) = cur.unbang();
    let out_term = as_nat_pred(core)?;
    Some(Totality { vars, premise_bangs, out_bangs, out_term })
}

/// Checks a closed script and reads off its totality shape.
pub fn shape_of(kernel: &Kernel, script: &ProofScript) -> Result<Totality, SchemeError> {
    let proof = kernel.check(script).map_err(SchemeError::Kernel)?;
    if !proof.sequent.delta.is_empty() {
        return Err(SchemeError::ShapeMismatch("the proof has open hypotheses".into()));
    }
    totality_shape(&proof.sequent.goal)
        .ok_or_else(|| SchemeError::ShapeMismatch(format!("{} is not a totality statement", proof.sequent.goal)))
}

/// From `script : !^j N t`, a proof of `!^{j+1} N t`: the coercion, applied
/// under `j` boxes.
pub fn bang_coerce(script: ProofScript, t: &TermExpr, j: usize) -> ProofScript {
    if j == 0 {
        return P::app(inst(P::use_lemma("coercion"), [t.clone()]), script);
    }
    let label = format!("c{j}");
    let inner = bang_coerce(P::axiom(&label, Formula::bangs(j - 1, n(t.clone()))), t, j - 1);
    P::promote(vec![(&label, script)], inner)
}

/// Lifts `script : !^from N t` to `!^to N t`.
pub fn lift_bangs(mut script: ProofScript, t: &TermExpr, from: usize, to: usize) -> ProofScript {
    for j in from..to {
        script = bang_coerce(script, t, j);
    }
    script
}

/// Brings a totality proof to the form with undecorated premises by
/// precomposing coercions. `shape` lists the expected premise exponents.
pub fn normalize_totality(kernel: &Kernel, script: ProofScript, shape: &[usize]) -> Result<ProofScript, SchemeError> {
    let tot = shape_of(kernel, &script)?;
    if tot.premise_bangs != shape {
        return Err(SchemeError::ShapeMismatch(format!(
            "premises carry {:?}, expected {:?}",
            tot.premise_bangs, shape
        )));
    }
    if tot.is_normal() {
        return Ok(script);
    }
    let labels: Vec<String> = (0..tot.vars.len()).map(|i| format!("a{i}")).collect();
    let mut body = inst(script, tot.vars.iter().map(|x| v(x)));
    for ((x, &k), label) in tot.vars.iter().zip(&tot.premise_bangs).zip(&labels) {
        body = P::app(body, lift_bangs(P::axiom(label, n(v(x))), &v(x), 0, k));
    }
    for label in labels.iter().rev() {
        body = P::abs(label, body);
    }
    Ok(tot.vars.iter().rev().fold(body, |acc, x| P::intro1(x, nat(), acc)))
}

/// `!^{level+k} N (f …)` from premises `!^level N tᵢ`, by promoting the
/// applied `f` proof `level` times.
fn promote_over(applied_f: &ProofScript, premises: Vec<(ProofScript, TermExpr)>, level: usize) -> ProofScript {
    if level == 0 {
        return premises.into_iter().fold(applied_f.clone(), |acc, (p, _)| P::app(acc, p));
    }
    let labels: Vec<String> = (0..premises.len()).map(|i| format!("d{level}_{i}")).collect();
    let inner_premises = premises
        .iter()
        .zip(&labels)
        .map(|((_, t), l)| (P::axiom(l, Formula::bangs(level - 1, n(t.clone()))), t.clone()))
        .collect();
    let inner = promote_over(applied_f, inner_premises, level - 1);
    let outer = labels.iter().map(String::as_str).zip(premises.into_iter().map(|(p, _)| p)).collect();
    P::promote(outer, inner)
}

/// Composition: from `f` total in `p` variables with output exponent `k`
/// and `g₁ … g_p` total in `q` variables with output exponents `kᵢ` (all in
/// normal form), a proof of
/// `∀x₁…x_q. N x₁ ⊸ … ⊸ N x_q ⊸ !^{s+k+1} N (f (g₁ x⃗) … (g_p x⃗))`
/// where `s = k₁ + … + k_p`.
pub fn compose_scheme(kernel: &Kernel, f: ProofScript, gs: Vec<ProofScript>) -> Result<ProofScript, SchemeError> {
    let ft = shape_of(kernel, &f)?;
    if ft.vars.len() != gs.len() {
        return Err(SchemeError::ArityMismatch { expected: ft.vars.len(), found: gs.len() });
    }
    let gts = gs.iter().map(|g| shape_of(kernel, g)).collect::<Result<Vec<_>, _>>()?;
    let q = gts.first().map(|t| t.vars.len()).unwrap_or(0);
    if let Some(bad) = gts.iter().find(|t| t.vars.len() != q) {
        return Err(SchemeError::ArityMismatch { expected: q, found: bad.vars.len() });
    }
    if !ft.is_normal() || gts.iter().any(|t| !t.is_normal()) {
        return Err(SchemeError::ShapeMismatch("component proofs must have undecorated premises".into()));
    }
    let xs: Vec<String> = (1..=q).map(|j| format!("x{j}")).collect();
    let xv: Vec<TermExpr> = xs.iter().map(|x| v(x)).collect();
    let s: usize = gts.iter().map(|t| t.out_bangs).sum();

    // Inner layer: a_{j,i} : N x_j ⊢ !^s N (gᵢ x⃗), then f under s boxes.
    let g_terms: Vec<TermExpr> = gts.iter().map(|t| t.instantiate(&xv)).collect();
    let mut lifted = Vec::new();
    for (i, (g, gt)) in gs.into_iter().zip(&gts).enumerate() {
        let mut applied = inst(g, xv.iter().cloned());
        for (j, x) in xv.iter().enumerate() {
            applied = P::app(applied, P::axiom(&format!("a{}_{}", j + 1, i + 1), n(x.clone())));
        }
        lifted.push((lift_bangs(applied, &g_terms[i], gt.out_bangs, s), g_terms[i].clone()));
    }
    let applied_f = inst(f, g_terms.iter().cloned());
    let layered = promote_over(&applied_f, lifted, s);

    // One more box, fed by p copies of b_j : !N x_j, contracted.
    let mut premises = Vec::new();
    let copy_labels: Vec<Vec<String>> = (1..=q)
        .map(|j| (1..=gts.len()).map(|i| format!("a{j}_{i}")).collect())
        .collect();
    for (j, x) in xv.iter().enumerate() {
        for label in &copy_labels[j] {
            premises.push((label.as_str(), P::axiom(&format!("b{}", j + 1), Formula::bang(n(x.clone())))));
        }
    }
    let mut body = P::promote(premises, layered);
    for j in 1..=q {
        for _ in 1..gts.len() {
            body = P::contract(&format!("b{j}"), body);
        }
    }
    // Discharge each b_j against the coercion of a fresh a_j : N x_j.
    for (j, x) in xv.iter().enumerate().rev() {
        let b = format!("b{}", j + 1);
        let a = format!("a{}", j + 1);
        body = P::app(P::abs(&b, body), bang_coerce(P::axiom(&a, n(x.clone())), x, 0));
    }
    for j in (1..=q).rev() {
        body = P::abs(&format!("a{j}"), body);
    }
    Ok(xs.iter().rev().fold(body, |acc, x| P::intro1(x, nat(), acc)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Bounded {
    Sum,
    Product,
}

impl Bounded {
    fn symbol(self) -> &'static str {
        match self {
            Bounded::Sum => SUM,
            Bounded::Product => PROD,
        }
    }

    /// Exponent on the accumulator component of the iterated pair.
    fn acc_bangs(self, k: usize) -> usize {
        match self {
            Bounded::Sum => k,
            Bounded::Product => k + 1,
        }
    }
}

/// `P ⊗ Q` from proofs of both components.
fn tensor_intro(a: Formula, b: Formula, pa: ProofScript, pb: ProofScript) -> ProofScript {
    let t = || Formula::atom("T", vec![]);
    let k = Formula::lolli(a, Formula::lolli(b, t()));
    P::intro2("T", vec![], P::abs("k", P::app(P::app(P::axiom("k", k), pa), pb)))
}

/// Consumes `pair : A ⊗ B` into `goal`, with a handler proving
/// `A ⊸ B ⊸ goal`.
fn tensor_elim(pair: ProofScript, goal: Formula, handler: ProofScript) -> ProofScript {
    P::app(P::elim2(goal, &[], pair), handler)
}

/// `Pair(t) = N t ⊗ !^acc N (op f t)`
fn pair(kind: Bounded, acc: usize, t: TermExpr) -> Formula {
    tensor(n(t.clone()), Formula::bangs(acc, n(call(kind.symbol(), [v("f"), t]))))
}

/// From `!^level` proofs of the accumulator and of `N (f y)`, the next
/// accumulator value at `!^acc`.
fn combine(kind: Bounded, level: usize, acc: ProofScript, fy: ProofScript) -> ProofScript {
    let y = || v("y");
    let fy_term = || TermExpr::app(v("f"), y());
    let acc_term = || call(kind.symbol(), [v("f"), y()]);
    if level == 0 {
        let op = match kind {
            Bounded::Sum => PLUS,
            Bounded::Product => MULT,
        };
        return P::app(P::app(inst(P::use_lemma(op), [acc_term(), fy_term()]), acc), fy);
    }
    let (l1, l2) = (format!("e{level}"), format!("o{level}"));
    let inner_acc = Formula::bangs(kind.acc_bangs(0) + level - 1, n(acc_term()));
    let inner_fy = Formula::bangs(level - 1, n(fy_term()));
    let inner = combine(kind, level - 1, P::axiom(&l1, inner_acc), P::axiom(&l2, inner_fy));
    P::promote(vec![(&l1, acc), (&l2, fy)], inner)
}

/// The generic bounded iteration lemma
/// `∀f. !!H ⊸ ∀n. N n ⊸ !^{acc+2} N (op f n)` with
/// `H = ∀y. N y ⊸ !^k N (f y)`, iterating `N n` at `!Pair(z)`.
fn bounded_lemma(kind: Bounded, k: usize) -> ProofScript {
    let acc = kind.acc_bangs(k);
    let y = || v("y");
    let op = |t: TermExpr| call(kind.symbol(), [v("f"), t]);
    let h = || Formula::forall1("y", nat(), Formula::lolli(n(v("y")), Formula::bangs(k, n(TermExpr::app(v("f"), v("y"))))));

    // q1 : Pair(y) ⊢ N (s y)
    let first = tensor_elim(
        P::axiom("q1", pair(kind, acc, y())),
        n(succ(y())),
        P::abs(
            "a1",
            P::abs(
                "b1",
                P::weaken(
                    "b1",
                    Formula::bangs(acc, n(op(y()))),
                    P::app(inst(P::use_lemma("succ"), [y()]), P::axiom("a1", n(y()))),
                ),
            ),
        ),
    );
    // q2 : Pair(y), g : H ⊢ !^acc N (op f (s y))
    let next_term = match kind {
        Bounded::Sum => call(PLUS, [op(y()), TermExpr::app(v("f"), y())]),
        Bounded::Product => call(MULT, [op(y()), TermExpr::app(v("f"), y())]),
    };
    let equation = match kind {
        Bounded::Sum => "sum-succ",
        Bounded::Product => "prod-succ",
    };
    let f_of_y = P::app(P::elim1(y(), P::axiom("g", h())), P::axiom("a2", n(y())));
    let combined = combine(kind, k, P::axiom("b2", Formula::bangs(acc, n(op(y())))), f_of_y);
    let second = tensor_elim(
        P::axiom("q2", pair(kind, acc, y())),
        Formula::bangs(acc, n(op(succ(y())))),
        P::abs(
            "a2",
            P::abs(
                "b2",
                rewrite(
                    Formula::bangs(acc, n(v("q"))),
                    next_term,
                    op(succ(y())),
                    by(equation, &[("x", y()), ("f", v("f"))], Orientation::RightToLeft),
                    combined,
                ),
            ),
        ),
    );
    let next_pair = tensor_intro(n(succ(y())), Formula::bangs(acc, n(op(succ(y())))), first, second);
    let step_body = P::promote(
        vec![
            ("q1", P::axiom("p", Formula::bang(pair(kind, acc, y())))),
            ("q2", P::axiom("p", Formula::bang(pair(kind, acc, y())))),
            ("g", P::axiom("hb", Formula::bang(h()))),
        ],
        next_pair,
    );
    let k1 = P::intro1("y", nat(), P::abs("p", P::contract("p", step_body)));
    let step = P::promote(vec![("hb", P::axiom("hh", Formula::bang(Formula::bang(h()))))], k1);

    // ⊢ !Pair(0)
    let (start, start_eq) = match kind {
        Bounded::Sum => (P::use_lemma("zero"), "sum-zero"),
        Bounded::Product => (P::app(inst(P::use_lemma("succ"), [zero()]), P::use_lemma("zero")), "prod-zero"),
    };
    let start_term = match kind {
        Bounded::Sum => zero(),
        Bounded::Product => succ(zero()),
    };
    let mut acc_start = start;
    for _ in 0..acc {
        acc_start = P::promote(vec![], acc_start);
    }
    let acc_start = rewrite(
        Formula::bangs(acc, n(v("q"))),
        start_term,
        op(zero()),
        by(start_eq, &[("f", v("f"))], Orientation::RightToLeft),
        acc_start,
    );
    let base = P::promote(
        vec![],
        tensor_intro(n(zero()), Formula::bangs(acc, n(op(zero()))), P::use_lemma("zero"), acc_start),
    );

    // The run, then the second component under two boxes.
    let carrier = Formula::bang(pair(kind, acc, v("z")));
    let run = P::app(P::elim2(carrier, &["z"], P::axiom("nn", n(v("n")))), step);
    let second_of = tensor_elim(
        P::axiom("pr", pair(kind, acc, v("n"))),
        Formula::bangs(acc, n(op(v("n")))),
        P::abs("a", P::abs("b", P::weaken("a", n(v("n")), P::axiom("b", Formula::bangs(acc, n(op(v("n")))))))),
    );
    let r_formula = Formula::lolli(
        Formula::bang(pair(kind, acc, zero())),
        Formula::bang(pair(kind, acc, v("n"))),
    );
    let inner = P::promote(vec![("pr", P::app(P::axiom("r", r_formula), base))], second_of);
    let boxed = P::promote(vec![("r", run)], inner);
    P::intro1(
        "f",
        nat_to_nat(),
        P::abs("hh", P::intro1("n", nat(), P::abs("nn", boxed))),
    )
}

fn bounded(kernel: &Kernel, kind: Bounded, f: ProofScript, k: usize) -> Result<ProofScript, SchemeError> {
    let ft = shape_of(kernel, &f)?;
    if ft.vars.len() != 1 {
        return Err(SchemeError::ArityMismatch { expected: 1, found: ft.vars.len() });
    }
    if !ft.is_normal() || ft.out_bangs != k {
        return Err(SchemeError::ShapeMismatch(format!(
            "expected ∀y. N y ⊸ !^{k} N (f y), found premise {:?} and output !^{}",
            ft.premise_bangs, ft.out_bangs
        )));
    }
    let function = TermExpr::lam(ft.vars[0].clone(), nat(), ft.out_term.clone());
    let twice_boxed = P::promote(vec![], P::promote(vec![], f));
    Ok(P::app(P::elim1(function, bounded_lemma(kind, k)), twice_boxed))
}

/// From `f : ∀y. N y ⊸ !^k N (F y)`, a proof of
/// `∀n. N n ⊸ !^{k+2} N (sum (λy. F y) n)`.
pub fn bounded_sum(kernel: &Kernel, f: ProofScript, k: usize) -> Result<ProofScript, SchemeError> {
    bounded(kernel, Bounded::Sum, f, k)
}

/// From `f : ∀y. N y ⊸ !^k N (F y)`, a proof of
/// `∀n. N n ⊸ !^{k+3} N (prod (λy. F y) n)`. The accumulator sits one box
/// deeper than in the sum because multiplication consumes it banged.
pub fn bounded_product(kernel: &Kernel, f: ProofScript, k: usize) -> Result<ProofScript, SchemeError> {
    bounded(kernel, Bounded::Product, f, k)
}
