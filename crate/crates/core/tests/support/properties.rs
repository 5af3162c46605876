//! Randomized kernel property suites. Each suite draws its inputs as
//! streams of choices that drive builders over the standard library's
//! proofs and terms, so that most generated cases are well typed.

#![allow(dead_code)]

use std::cell::Cell;
use std::collections::BTreeSet;
use std::sync::OnceLock;

use elx_core::kernel::{CheckedProof, Derivation, DerivationRule, Hypotheses, Kernel, ProofScript};
use elx_core::proj::erase;
use elx_core::rewrite::{verify_trace, EquationSet, BetaDirection, Orientation, Trace};
use elx_core::stdlib::{base_library, bounded_product, bounded_sum, compose_scheme, normalize_totality, std_kernel};
use elx_core::syntax::library::{church_succ_body, church_zero_term, nat, SUCC, ZERO};
use elx_core::syntax::{Formula, TermExpr, TypeExpr};
use elx_core::theory::{h0, signature, MINUS, MULT, PLUS, PRED, PROD, SUM};
use elx_core::wf::{infer_term_type, Context};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// A deterministic stream of choices.
pub struct Choices {
    bytes: Vec<u32>,
    at: usize,
}

impl Choices {
    pub fn new(bytes: Vec<u32>) -> Self {
        Self { bytes, at: 0 }
    }

    /// A number in `0..n`, or 0 once the stream is spent.
    pub fn pick(&mut self, n: usize) -> usize {
        if n == 0 {
            return 0;
        }
        let b = self.bytes.get(self.at).copied().unwrap_or(0);
        self.at += 1;
        b as usize % n
    }

    pub fn chance(&mut self, percent: usize) -> bool {
        self.pick(100) < percent
    }
}

fn choices() -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(any::<u32>(), 48)
}

/// Closed proofs of the library, with their scripts.
pub struct Pool {
    pub kernel: Kernel,
    pub proofs: Vec<(ProofScript, CheckedProof)>,
    pub subterms: Vec<TermExpr>,
    pub formulas: Vec<Formula>,
}

pub fn pool() -> &'static Pool {
    static POOL: OnceLock<Pool> = OnceLock::new();
    POOL.get_or_init(|| {
        let kernel = std_kernel().expect("standard library checks");
        let lemma = ProofScript::use_lemma;
        let mut scripts: Vec<ProofScript> = base_library().into_iter().map(|(_, _, s)| s).collect();
        scripts.push(normalize_totality(&kernel, lemma("mult"), &[1, 0]).unwrap());
        scripts.push(compose_scheme(&kernel, lemma("plus"), vec![lemma("id"), lemma("id")]).unwrap());
        scripts.push(bounded_sum(&kernel, lemma("id"), 0).unwrap());
        scripts.push(bounded_product(&kernel, lemma("succ"), 0).unwrap());
        let proofs: Vec<(ProofScript, CheckedProof)> =
            scripts.into_iter().map(|s| (s.clone(), kernel.check(&s).expect("library proof"))).collect();
        let mut subterms = Vec::new();
        let mut formulas = Vec::new();
        for (_, p) in &proofs {
            collect_subterms(&p.term, &mut subterms);
            p.derivation.walk(&mut |d: &Derivation| {
                formulas.push(d.sequent.goal.clone());
                formulas.extend(d.sequent.delta.iter().map(|(_, f)| f.clone()));
            });
        }
        formulas.dedup_by(|a, b| a.alpha_eq(b));
        Pool { kernel, proofs, subterms, formulas }
    })
}

fn collect_subterms(t: &TermExpr, out: &mut Vec<TermExpr>) {
    out.push(t.clone());
    for c in t.children() {
        collect_subterms(c, out);
    }
}

/// Renames every binder of `t` to a fresh name.
pub fn alpha_variant(t: &TermExpr, counter: &mut usize) -> TermExpr {
    let mut fresh = |base: &str| {
        *counter += 1;
        format!("{base}_v{counter}")
    };
    match t {
        TermExpr::Var(_) => t.clone(),
        TermExpr::App(f, a) => TermExpr::app(alpha_variant(f, counter), alpha_variant(a, counter)),
        TermExpr::TyApp(f, ty) => TermExpr::ty_app(alpha_variant(f, counter), ty.clone()),
        TermExpr::Lam(x, ty, b) => {
            let y = fresh(x);
            let body = b.subst(x, &TermExpr::var(y.clone()));
            TermExpr::lam(y, ty.clone(), alpha_variant(&body, counter))
        }
        TermExpr::TyLam(a, b) => {
            let c = fresh(a);
            let body = b.subst_type(a, &TypeExpr::var(c.clone()));
            TermExpr::ty_lam(c, alpha_variant(&body, counter))
        }
    }
}

fn formula_variant(f: &Formula, counter: &mut usize) -> Formula {
    let mut fresh = |base: &str| {
        *counter += 1;
        format!("{base}_v{counter}")
    };
    match f {
        Formula::Atom(x, args) => Formula::atom(x.clone(), args.iter().map(|t| alpha_variant(t, counter)).collect()),
        Formula::Lolli(p, q) => Formula::lolli(formula_variant(p, counter), formula_variant(q, counter)),
        Formula::Forall1(x, ty, body) => {
            let y = fresh(x);
            let body = body.subst_term(x, &TermExpr::var(y.clone()));
            Formula::forall1(y, ty.clone(), formula_variant(&body, counter))
        }
        Formula::Forall2(x, kind, body) => Formula::forall2(x.clone(), kind.clone(), formula_variant(body, counter)),
        Formula::ForallTy(a, body) => Formula::forall_ty(a.clone(), formula_variant(body, counter)),
        Formula::Bang(p) => Formula::bang(formula_variant(p, counter)),
    }
}

fn positions(t: &TermExpr, here: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(here.clone());
    for (i, c) in t.children().into_iter().enumerate() {
        here.push(i);
        positions(c, here, out);
        here.pop();
    }
}

fn all_positions(t: &TermExpr) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    positions(t, &mut Vec::new(), &mut out);
    out
}

/// Contracts a randomly chosen redex.
fn random_beta(t: &TermExpr, c: &mut Choices) -> Option<TermExpr> {
    let redexes: Vec<Vec<usize>> =
        all_positions(t).into_iter().filter(|p| t.subterm_at(p).and_then(TermExpr::contract).is_some()).collect();
    if redexes.is_empty() {
        return None;
    }
    let p = &redexes[c.pick(redexes.len())];
    let r = t.subterm_at(p)?.contract()?;
    t.replace_at(p, r)
}

/// The System F Church numeral `n`.
pub fn church_term(n: usize) -> TermExpr {
    (0..n).fold(church_zero_term(), |acc, _| church_succ_body(acc))
}

/// A closed library program applied to as many Church numerals as its
/// type takes, with its type.
fn applied_program(c: &mut Choices) -> (TermExpr, TypeExpr) {
    let pool = pool();
    let (_, p) = &pool.proofs[c.pick(pool.proofs.len())];
    let mut t = p.term.clone();
    let mut ty = infer_term_type(&signature(), &t).expect("extracted terms are typed");
    while let TypeExpr::Arrow(dom, cod) = &ty {
        if !dom.alpha_eq(&nat()) || !c.chance(80) {
            break;
        }
        t = TermExpr::app(t, church_term(c.pick(3)));
        ty = cod.as_ref().clone();
    }
    (t, ty)
}

pub struct SuiteReport {
    pub cases: u32,
    /// Cases where the property's hypothesis held, so it was really tested.
    pub exercised: u32,
}

fn runner(cases: u32) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn run_suite(cases: u32, body: impl Fn(&mut Choices) -> Result<bool, String>) -> Result<SuiteReport, String> {
    let exercised = Cell::new(0u32);
    runner(cases)
        .run(&choices(), |bytes| {
            let hit = body(&mut Choices::new(bytes)).map_err(TestCaseError::fail)?;
            exercised.set(exercised.get() + u32::from(hit));
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok(SuiteReport { cases, exercised: exercised.get() })
}

/// Substitution commutes with renaming bound variables, on terms and on
/// formulas, and with erasure.
pub fn subst_alpha(cases: u32) -> Result<SuiteReport, String> {
    let pool = pool();
    run_suite(cases, |c| {
        let t = &pool.subterms[c.pick(pool.subterms.len())];
        let s = &pool.subterms[c.pick(pool.subterms.len())];
        let free: Vec<String> = t.free_vars().into_iter().collect();
        let x = if free.is_empty() || c.chance(10) { "z".to_string() } else { free[c.pick(free.len())].clone() };
        let mut counter = 0;
        let variant = alpha_variant(t, &mut counter);
        if !variant.alpha_eq(t) {
            return Err(format!("renaming changed {t}"));
        }
        let (a, b) = (t.subst(&x, s), variant.subst(&x, s));
        if !a.alpha_eq(&b) {
            return Err(format!("{t}[{s}/{x}] = {a} but the variant gives {b}"));
        }
        if erase(&a) != erase(t).subst_free(&x, &erase(s)) {
            return Err(format!("erasure does not commute with {t}[{s}/{x}]"));
        }
        let f = &pool.formulas[c.pick(pool.formulas.len())];
        let fv = formula_variant(f, &mut counter);
        if !f.subst_term(&x, s).alpha_eq(&fv.subst_term(&x, s)) {
            return Err(format!("{f}[{s}/{x}] differs on a variant"));
        }
        Ok(t.occurs_free(&x))
    })
}

/// Normal forms are normal and normalizing again changes nothing.
pub fn beta_idempotence(cases: u32) -> Result<SuiteReport, String> {
    run_suite(cases, |c| {
        let (t, _) = applied_program(c);
        let nf = t.beta_normalize(100_000).map_err(|e| format!("{t}: {e}"))?;
        if !nf.is_normal() || nf.beta_normalize(1000).map_err(|e| e.to_string())? != nf {
            return Err(format!("{nf} is not stable"));
        }
        let pure = erase(&t).normalize(100_000).map_err(|e| e.to_string())?;
        let again = pure.term.normalize(100_000).map_err(|e| e.to_string())?;
        if again.steps != 0 || again.term != pure.term || pure.term != erase(&nf) {
            return Err(format!("pure normal form of {t} is not stable"));
        }
        Ok(nf != t)
    })
}

/// Each β-step, at a random redex, preserves the type.
pub fn subject_reduction(cases: u32) -> Result<SuiteReport, String> {
    let sigma = signature();
    run_suite(cases, |c| {
        let (mut t, ty) = applied_program(c);
        let mut steps = 0;
        for _ in 0..12 {
            let Some(next) = random_beta(&t, c) else { break };
            match infer_term_type(&sigma, &next) {
                Ok(found) if found.alpha_eq(&ty) => {}
                Ok(found) => return Err(format!("{t} : {ty} reduced to {next} : {found}")),
                Err(e) => return Err(format!("{t} reduced to ill-typed {next}: {e}")),
            }
            t = next;
            steps += 1;
        }
        Ok(steps > 0)
    })
}

fn script_children(s: &ProofScript) -> Vec<&ProofScript> {
    match s {
        ProofScript::Axiom { .. } | ProofScript::Use(_) => vec![],
        ProofScript::App(f, a) => vec![f, a],
        ProofScript::Promote { premises, inner } => premises.iter().map(|(_, p)| p).chain([inner.as_ref()]).collect(),
        ProofScript::Weaken { premise, .. }
        | ProofScript::Abs { premise, .. }
        | ProofScript::Contract { premise, .. }
        | ProofScript::IntroType { premise, .. }
        | ProofScript::Intro1 { premise, .. }
        | ProofScript::Intro2 { premise, .. }
        | ProofScript::ElimType { premise, .. }
        | ProofScript::Elim1 { premise, .. }
        | ProofScript::Elim2 { premise, .. }
        | ProofScript::Equal { premise, .. } => vec![premise],
    }
}

/// Every script node with the Γ of its derivation node.
fn script_nodes<'a>(s: &'a ProofScript, d: &Derivation, out: &mut Vec<(&'a ProofScript, Context)>) {
    out.push((s, d.sequent.gamma.clone()));
    if matches!(s, ProofScript::Use(_)) {
        return;
    }
    for (sc, dc) in script_children(s).into_iter().zip(&d.children) {
        script_nodes(sc, dc, out);
    }
}

fn mutate(s: &ProofScript, c: &mut Choices, formulas: &[Formula]) -> ProofScript {
    let labels = ["h", "n", "a", "g", "m", "fresh"];
    let kind = c.pick(7);
    let mut nodes = Vec::new();
    fn collect<'a>(s: &'a ProofScript, out: &mut Vec<&'a ProofScript>) {
        out.push(s);
        for ch in script_children(s) {
            collect(ch, out);
        }
    }
    collect(s, &mut nodes);
    let target = nodes[c.pick(nodes.len())].clone();
    let replacement = match (kind, &target) {
        (0, ProofScript::Contract { premise, .. } | ProofScript::Weaken { premise, .. }) => premise.as_ref().clone(),
        (1, ProofScript::Axiom { formula, .. }) => ProofScript::axiom(labels[c.pick(labels.len())], formula.clone()),
        (2, _) => ProofScript::weaken(labels[c.pick(labels.len())], formulas[c.pick(formulas.len())].clone(), target.clone()),
        (3, _) => ProofScript::contract(labels[c.pick(labels.len())], target.clone()),
        (4, ProofScript::App(f, _)) => ProofScript::app(f.as_ref().clone(), f.as_ref().clone()),
        (5, ProofScript::App(f, a)) => ProofScript::app(a.as_ref().clone(), f.as_ref().clone()),
        (6, _) => ProofScript::promote(vec![], target.clone()),
        _ => return s.clone(),
    };
    replace_node(s, &target, &replacement)
}

fn replace_node(s: &ProofScript, target: &ProofScript, with: &ProofScript) -> ProofScript {
    if s == target {
        return with.clone();
    }
    let r = |p: &ProofScript| Box::new(replace_node(p, target, with));
    match s {
        ProofScript::Axiom { .. } | ProofScript::Use(_) => s.clone(),
        ProofScript::App(f, a) => ProofScript::App(r(f), r(a)),
        ProofScript::Promote { premises, inner } => ProofScript::Promote {
            premises: premises.iter().map(|(l, p)| (l.clone(), replace_node(p, target, with))).collect(),
            inner: r(inner),
        },
        ProofScript::Weaken { label, formula, premise } => {
            ProofScript::Weaken { label: label.clone(), formula: formula.clone(), premise: r(premise) }
        }
        ProofScript::Abs { label, premise } => ProofScript::Abs { label: label.clone(), premise: r(premise) },
        ProofScript::Contract { label, premise } => ProofScript::Contract { label: label.clone(), premise: r(premise) },
        ProofScript::IntroType { var, premise } => ProofScript::IntroType { var: var.clone(), premise: r(premise) },
        ProofScript::Intro1 { var, ty, premise } => ProofScript::Intro1 { var: var.clone(), ty: ty.clone(), premise: r(premise) },
        ProofScript::Intro2 { var, kind, premise } => {
            ProofScript::Intro2 { var: var.clone(), kind: kind.clone(), premise: r(premise) }
        }
        ProofScript::ElimType { ty, premise } => ProofScript::ElimType { ty: ty.clone(), premise: r(premise) },
        ProofScript::Elim1 { term, premise } => ProofScript::Elim1 { term: term.clone(), premise: r(premise) },
        ProofScript::Elim2 { formula, params, premise } => {
            ProofScript::Elim2 { formula: formula.clone(), params: params.clone(), premise: r(premise) }
        }
        ProofScript::Equal { hole, var, t1, t2, ty, direction, trace, premise } => ProofScript::Equal {
            hole: hole.clone(),
            var: var.clone(),
            t1: t1.clone(),
            t2: t2.clone(),
            ty: ty.clone(),
            direction: *direction,
            trace: trace.clone(),
            premise: r(premise),
        },
    }
}

/// Removes one entry `x : p` from `delta`, if present.
fn take(delta: &mut Hypotheses, x: &str, p: Option<&Formula>) -> Option<Formula> {
    let i = delta.iter().position(|(y, q)| y == x && p.is_none_or(|p| p.conv(q)))?;
    Some(delta.remove(i).1)
}

fn same(a: &Hypotheses, b: &Hypotheses) -> bool {
    let mut rest = b.clone();
    a.len() == b.len() && a.iter().all(|(x, p)| take(&mut rest, x, Some(p)).is_some())
}

fn union<'a>(parts: impl IntoIterator<Item = &'a Hypotheses>) -> Hypotheses {
    parts.into_iter().flat_map(|h| h.iter().cloned()).collect()
}

fn count_free(t: &TermExpr, x: &str) -> usize {
    match t {
        TermExpr::Var(y) => usize::from(y == x),
        TermExpr::App(f, a) => count_free(f, x) + count_free(a, x),
        TermExpr::TyApp(f, _) | TermExpr::TyLam(_, f) => count_free(f, x),
        TermExpr::Lam(y, _, b) => {
            if y == x {
                0
            } else {
                count_free(b, x)
            }
        }
    }
}

/// Hypotheses are introduced by axioms and weakenings, consumed once by
/// abstractions and boxes, duplicated only by contraction of `!`-formulas,
/// and passed through unchanged by every other rule.
fn bookkeeping(d: &Derivation) -> Result<(), String> {
    let delta = &d.sequent.delta;
    let ch: Vec<&Hypotheses> = d.children.iter().map(|c| &c.sequent.delta).collect();
    let fail = |why: &str| Err(format!("{} node {}: {why}", d.rule.name(), d.sequent));
    let ok = match &d.rule {
        DerivationRule::Axiom { label } => delta.len() == 1 && delta[0].0 == *label && delta[0].1.alpha_eq(&d.sequent.goal),
        DerivationRule::Weaken { label } => {
            let mut rest = delta.clone();
            take(&mut rest, label, None).is_some() && same(&rest, ch[0]) && !ch[0].iter().any(|(y, _)| y == label)
        }
        DerivationRule::App => same(delta, &union(ch.iter().copied())),
        DerivationRule::Abs { label } => {
            let Formula::Lolli(p, _) = &d.sequent.goal else { return fail("goal is not an implication") };
            let mut rest = ch[0].clone();
            ch[0].iter().filter(|(y, _)| y == label).count() == 1
                && take(&mut rest, label, Some(&**p)).is_some()
                && same(&rest, delta)
        }
        DerivationRule::Promote { labels } => {
            let (inner, premises) = ch.split_last().expect("promotion has a body");
            let inner_labels: BTreeSet<&str> = inner.iter().map(|(x, _)| x.as_str()).collect();
            inner.len() == labels.len()
                && inner_labels == labels.iter().map(String::as_str).collect()
                && same(delta, &union(premises.iter().copied()))
        }
        DerivationRule::Contract { label } => {
            let mut rest = ch[0].clone();
            let removed = take(&mut rest, label, None);
            matches!(&removed, Some(Formula::Bang(_)))
                && delta.iter().any(|(y, q)| y == label && q.conv(removed.as_ref().unwrap()))
                && same(&rest, delta)
        }
        DerivationRule::Use { .. } => delta.is_empty(),
        _ => same(delta, ch[0]),
    };
    if !ok {
        return fail("hypotheses are not accounted for");
    }
    for (x, p) in delta {
        let copies = delta.iter().filter(|(y, _)| y == x).count();
        if copies > 1 && !matches!(p, Formula::Bang(_)) {
            return fail(&format!("`{x}` : {p} occurs {copies} times"));
        }
        if !matches!(p, Formula::Bang(_)) && count_free(&d.term, x) > 1 {
            return fail(&format!("linear `{x}` is used more than once in {}", d.term));
        }
    }
    d.children.iter().try_for_each(bookkeeping)
}

/// Every accepted derivation, whether a library subproof or a mutation of
/// one, accounts for each hypothesis exactly once modulo `!`-rules.
pub fn linear_bookkeeping(cases: u32) -> Result<SuiteReport, String> {
    let pool = pool();
    run_suite(cases, |c| {
        let (script, proof) = &pool.proofs[c.pick(pool.proofs.len())];
        let mut nodes = Vec::new();
        script_nodes(script, &proof.derivation, &mut nodes);
        let (sub, gamma) = &nodes[c.pick(nodes.len())];
        let mut candidate = (*sub).clone();
        for _ in 0..c.pick(3) {
            candidate = mutate(&candidate, c, &pool.formulas);
        }
        match pool.kernel.check_in(&candidate, gamma) {
            Ok(checked) => bookkeeping(&checked.derivation).map(|()| true),
            Err(_) => Ok(false),
        }
    })
}

/// Direct evaluation of closed arithmetic terms.
pub fn eval(t: &TermExpr, env: &[(String, u64)]) -> Option<u64> {
    let mut head = t;
    let mut args = Vec::new();
    while let TermExpr::App(f, a) = head {
        args.push(a.as_ref());
        head = f;
    }
    args.reverse();
    let val = |i: usize| eval(args[i], env);
    let apply = |f: &TermExpr, n: u64| -> Option<u64> {
        let TermExpr::Lam(y, _, body) = f else { return None };
        let mut inner = env.to_vec();
        inner.push((y.clone(), n));
        eval(body, &inner)
    };
    match (head, args.len()) {
        (TermExpr::Lam(..), 1) => apply(head, val(0)?),
        (TermExpr::Var(x), 0) if x == ZERO => Some(0),
        (TermExpr::Var(x), 0) => env.iter().rev().find(|(y, _)| y == x).map(|(_, v)| *v),
        (TermExpr::Var(x), 1) if x == SUCC => val(0)?.checked_add(1),
        (TermExpr::Var(x), 1) if x == PRED => Some(val(0)?.saturating_sub(1)),
        (TermExpr::Var(x), 2) if x == PLUS => val(0)?.checked_add(val(1)?),
        (TermExpr::Var(x), 2) if x == MULT => val(0)?.checked_mul(val(1)?),
        (TermExpr::Var(x), 2) if x == MINUS => Some(val(0)?.saturating_sub(val(1)?)),
        (TermExpr::Var(x), 2) if x == SUM || x == PROD => {
            let n = val(1)?;
            if n > 64 {
                return None;
            }
            let mut acc = u64::from(x == PROD);
            for i in 0..n {
                let v = apply(args[0], i)?;
                acc = if x == SUM { acc.checked_add(v)? } else { acc.checked_mul(v)? };
            }
            Some(acc)
        }
        _ => None,
    }
}

fn v(x: &str) -> TermExpr {
    TermExpr::var(x)
}

fn call(f: &str, args: Vec<TermExpr>) -> TermExpr {
    TermExpr::apps(v(f), args)
}

/// A random arithmetic term over `vars`.
fn arith(c: &mut Choices, depth: usize, vars: &[&str]) -> TermExpr {
    let leaf = |c: &mut Choices| {
        if !vars.is_empty() && c.chance(40) {
            v(vars[c.pick(vars.len())])
        } else {
            (0..c.pick(3)).fold(v(ZERO), |acc, _| call(SUCC, vec![acc]))
        }
    };
    if depth == 0 {
        return leaf(c);
    }
    match c.pick(8) {
        0 => leaf(c),
        1 => call(SUCC, vec![arith(c, depth - 1, vars)]),
        2 => call(PRED, vec![arith(c, depth - 1, vars)]),
        3 => call(PLUS, vec![arith(c, depth - 1, vars), arith(c, depth - 1, vars)]),
        4 => call(MULT, vec![arith(c, depth - 1, vars), arith(c, depth - 1, vars)]),
        5 => call(MINUS, vec![arith(c, depth - 1, vars), arith(c, depth - 1, vars)]),
        _ => {
            let f = TermExpr::lam("y", nat(), arith(c, 1, &["y"]));
            let op = if c.chance(50) { SUM } else { PROD };
            call(op, vec![f, arith(c, depth - 1, vars)])
        }
    }
}

fn match_pattern(pat: &TermExpr, t: &TermExpr, params: &[&str], sub: &mut Vec<(String, TermExpr)>) -> bool {
    match (pat, t) {
        (TermExpr::Var(x), _) if params.contains(&x.as_str()) => match sub.iter().find(|(y, _)| y == x) {
            Some((_, bound)) => bound.alpha_eq(t),
            None => {
                sub.push((x.clone(), t.clone()));
                true
            }
        },
        (TermExpr::App(f, a), TermExpr::App(g, b)) => match_pattern(f, g, params, sub) && match_pattern(a, b, params, sub),
        _ => pat.alpha_eq(t),
    }
}

/// Positions of `t` outside every binder.
fn open_positions(t: &TermExpr, here: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(here.clone());
    if matches!(t, TermExpr::Lam(..) | TermExpr::TyLam(..)) {
        return;
    }
    for (i, c) in t.children().into_iter().enumerate() {
        here.push(i);
        open_positions(c, here, out);
        here.pop();
    }
}

/// One random rewriting step of `t`: a trace proving `t = t'` and `t'`.
fn random_step(t: &TermExpr, c: &mut Choices, sigma: &Context, h: &EquationSet) -> Option<(Trace, TermExpr)> {
    let mut positions = Vec::new();
    open_positions(t, &mut Vec::new(), &mut positions);
    let pos = positions[c.pick(positions.len())].clone();
    let sub = t.subterm_at(&pos)?;
    if let Some(r) = sub.contract() {
        return Some((Trace::beta(pos.clone(), BetaDirection::Forward), t.replace_at(&pos, r)?));
    }
    let equations: Vec<_> = h.equations().iter().filter(|e| !["zero-def", "succ-def"].contains(&e.name.as_str())).collect();
    let e = equations[c.pick(equations.len())];
    if !infer_term_type(sigma, sub).is_ok_and(|ty| ty.alpha_eq(&e.ty)) {
        return None;
    }
    let orientation = if c.chance(70) { Orientation::LeftToRight } else { Orientation::RightToLeft };
    let (from, to) = match orientation {
        Orientation::LeftToRight => (&e.lhs, &e.rhs),
        Orientation::RightToLeft => (&e.rhs, &e.lhs),
    };
    let params: Vec<&str> = e.params.iter().map(|(x, _)| x.as_str()).collect();
    let mut inst = Vec::new();
    if !match_pattern(from, sub, &params, &mut inst) {
        return None;
    }
    for (x, ty) in &e.params {
        if !inst.iter().any(|(y, _)| y == x) {
            let value = if ty.alpha_eq(&nat()) { arith(c, 1, &[]) } else { TermExpr::lam("y", nat(), arith(c, 1, &["y"])) };
            inst.push((x.clone(), value));
        }
    }
    inst.sort_by_key(|(x, _)| params.iter().position(|p| p == x));
    let next = t.replace_at(&pos, to.subst_many(&inst))?;
    let step = if c.chance(25) && !pos.is_empty() {
        let split = c.pick(pos.len() + 1);
        Trace::cong(pos[..split].to_vec(), Trace::axiom(&e.name, inst, pos[split..].to_vec(), orientation))
    } else if c.chance(20) {
        let back = match orientation {
            Orientation::LeftToRight => Orientation::RightToLeft,
            Orientation::RightToLeft => Orientation::LeftToRight,
        };
        Trace::sym(Trace::axiom(&e.name, inst, pos, back))
    } else {
        Trace::axiom(&e.name, inst, pos, orientation)
    };
    Some((step, next))
}

/// Traces accepted by the checker relate terms with equal values, and the
/// traces built here from genuine rewriting steps are accepted.
pub fn trace_soundness(cases: u32) -> Result<SuiteReport, String> {
    let (sigma, h) = (signature(), h0());
    run_suite(cases, |c| {
        let t1 = arith(c, 3, &[]);
        let Some(v1) = eval(&t1, &[]) else { return Ok(false) };
        let mut cur = t1.clone();
        let mut trace = Trace::Refl;
        for _ in 0..6 {
            if let Some((step, next)) = random_step(&cur, c, &sigma, &h) {
                if cur.size() + next.size() > 400 {
                    break;
                }
                trace = Trace::trans(trace, Some(cur.clone()), step);
                cur = next;
            }
        }
        if eval(&cur, &[]) != Some(v1) {
            return Err(format!("rewriting changed the value: {t1} ~> {cur}"));
        }
        if let Err(e) = verify_trace(&trace, &t1, &cur, &nat(), &sigma, &h) {
            return Err(format!("genuine trace {trace} for {t1} = {cur} rejected: {e}"));
        }
        let claimed = match c.pick(3) {
            0 => call(SUCC, vec![cur.clone()]),
            1 => arith(c, 2, &[]),
            _ => cur.clone(),
        };
        let accepted = verify_trace(&trace, &t1, &claimed, &nat(), &sigma, &h).is_ok();
        if accepted && eval(&claimed, &[]) != Some(v1) {
            return Err(format!("accepted {trace} for {t1} = {claimed} with different values"));
        }
        Ok(!matches!(trace, Trace::Refl))
    })
}

pub type Suite = (&'static str, fn(u32) -> Result<SuiteReport, String>);

pub const SUITES: [Suite; 5] = [
    ("substitution/alpha commutation", subst_alpha),
    ("beta idempotence", beta_idempotence),
    ("subject reduction", subject_reduction),
    ("linear bookkeeping", linear_bookkeeping),
    ("equality trace soundness", trace_soundness),
];
