//! The sequent calculus `Γ; Δ ⊢ t : P` parametrized by a signature Σ and an
//! equation set H. Scripts name every rule and its payload; the checker
//! passes Γ down the tree and synthesizes Δ, the extracted term and the goal
//! bottom-up.

use std::collections::BTreeMap;
use std::fmt;

use crate::proj::{gamma_star, minus_proj};
use crate::rewrite::{verify_trace, EquationSet, RewriteError, Trace};
use crate::syntax::{pred_type_var, Formula, TermExpr, TypeExpr};
use crate::wf::{check_formula, check_type, infer_term_type, Context, ContextEntry, WfError};

/// Which endpoint of an EQUALITY trace is the left one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqDirection {
    /// The trace proves `t₁ = t₂`.
    Forward,
    /// The trace proves `t₂ = t₁`.
    Backward,
}

/// A proof script: one node per rule application, with explicit payloads.
#[derive(Clone, Debug, PartialEq)]
pub enum ProofScript {
    Axiom {
        label: String,
        formula: Formula,
    },
    Weaken {
        label: String,
        formula: Formula,
        premise: Box<ProofScript>,
    },
    App(Box<ProofScript>, Box<ProofScript>),
    Abs {
        label: String,
        premise: Box<ProofScript>,
    },
    /// Premises proving `!Pᵢ`, each bound to the label `xᵢ` that the inner
    /// derivation uses for `Pᵢ`.
    Promote {
        premises: Vec<(String, ProofScript)>,
        inner: Box<ProofScript>,
    },
    Contract {
        label: String,
        premise: Box<ProofScript>,
    },
    IntroType {
        var: String,
        premise: Box<ProofScript>,
    },
    Intro1 {
        var: String,
        ty: TypeExpr,
        premise: Box<ProofScript>,
    },
    Intro2 {
        var: String,
        kind: Vec<TypeExpr>,
        premise: Box<ProofScript>,
    },
    ElimType {
        ty: TypeExpr,
        premise: Box<ProofScript>,
    },
    Elim1 {
        term: TermExpr,
        premise: Box<ProofScript>,
    },
    Elim2 {
        formula: Formula,
        params: Vec<String>,
        premise: Box<ProofScript>,
    },
    Equal {
        hole: Formula,
        var: String,
        t1: TermExpr,
        t2: TermExpr,
        ty: TypeExpr,
        direction: EqDirection,
        trace: Trace,
        premise: Box<ProofScript>,
    },
    /// A previously checked closed lemma.
    Use(String),
}

impl ProofScript {
    pub fn axiom(label: &str, formula: Formula) -> Self {
        ProofScript::Axiom { label: label.into(), formula }
    }

    pub fn weaken(label: &str, formula: Formula, premise: ProofScript) -> Self {
        ProofScript::Weaken { label: label.into(), formula, premise: Box::new(premise) }
    }

    pub fn app(f: ProofScript, a: ProofScript) -> Self {
        ProofScript::App(Box::new(f), Box::new(a))
    }

    pub fn abs(label: &str, premise: ProofScript) -> Self {
        ProofScript::Abs { label: label.into(), premise: Box::new(premise) }
    }

    pub fn promote(premises: Vec<(&str, ProofScript)>, inner: ProofScript) -> Self {
        ProofScript::Promote {
            premises: premises.into_iter().map(|(l, p)| (l.to_string(), p)).collect(),
            inner: Box::new(inner),
        }
    }

    pub fn contract(label: &str, premise: ProofScript) -> Self {
        ProofScript::Contract { label: label.into(), premise: Box::new(premise) }
    }

    pub fn intro_type(var: &str, premise: ProofScript) -> Self {
        ProofScript::IntroType { var: var.into(), premise: Box::new(premise) }
    }

    pub fn intro1(var: &str, ty: TypeExpr, premise: ProofScript) -> Self {
        ProofScript::Intro1 { var: var.into(), ty, premise: Box::new(premise) }
    }

    pub fn intro2(var: &str, kind: Vec<TypeExpr>, premise: ProofScript) -> Self {
        ProofScript::Intro2 { var: var.into(), kind, premise: Box::new(premise) }
    }

    pub fn elim_type(ty: TypeExpr, premise: ProofScript) -> Self {
        ProofScript::ElimType { ty, premise: Box::new(premise) }
    }

    pub fn elim1(term: TermExpr, premise: ProofScript) -> Self {
        ProofScript::Elim1 { term, premise: Box::new(premise) }
    }

    pub fn elim2(formula: Formula, params: &[&str], premise: ProofScript) -> Self {
        ProofScript::Elim2 {
            formula,
            params: params.iter().map(|p| p.to_string()).collect(),
            premise: Box::new(premise),
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn equal(
        hole: Formula,
        var: &str,
        t1: TermExpr,
        t2: TermExpr,
        ty: TypeExpr,
        direction: EqDirection,
        trace: Trace,
        premise: ProofScript,
    ) -> Self {
        ProofScript::Equal { hole, var: var.into(), t1, t2, ty, direction, trace, premise: Box::new(premise) }
    }

    pub fn use_lemma(name: &str) -> Self {
        ProofScript::Use(name.into())
    }

    pub fn rule_name(&self) -> &'static str {
        match self {
            ProofScript::Axiom { .. } => "axiom",
            ProofScript::Weaken { .. } => "weaken",
            ProofScript::App(..) => "app",
            ProofScript::Abs { .. } => "abs",
            ProofScript::Promote { .. } => "promote",
            ProofScript::Contract { .. } => "contract",
            ProofScript::IntroType { .. } => "intro-type",
            ProofScript::Intro1 { .. } => "intro1",
            ProofScript::Intro2 { .. } => "intro2",
            ProofScript::ElimType { .. } => "elim-type",
            ProofScript::Elim1 { .. } => "elim1",
            ProofScript::Elim2 { .. } => "elim2",
            ProofScript::Equal { .. } => "equal",
            ProofScript::Use(_) => "use",
        }
    }

    /// Number of rule applications, not counting lemma bodies.
    pub fn size(&self) -> usize {
        match self {
            ProofScript::Axiom { .. } | ProofScript::Use(_) => 1,
            ProofScript::App(a, b) => 1 + a.size() + b.size(),
            ProofScript::Promote { premises, inner } => {
                1 + inner.size() + premises.iter().map(|(_, p)| p.size()).sum::<usize>()
            }
            ProofScript::Weaken { premise, .. }
            | ProofScript::Abs { premise, .. }
            | ProofScript::Contract { premise, .. }
            | ProofScript::IntroType { premise, .. }
            | ProofScript::Intro1 { premise, .. }
            | ProofScript::Intro2 { premise, .. }
            | ProofScript::ElimType { premise, .. }
            | ProofScript::Elim1 { premise, .. }
            | ProofScript::Elim2 { premise, .. }
            | ProofScript::Equal { premise, .. } => 1 + premise.size(),
        }
    }
}

/// A multiset of labeled hypotheses.
pub type Hypotheses = Vec<(String, Formula)>;

#[derive(Clone, Debug, PartialEq)]
pub struct Sequent {
    /// Γ, without the signature.
    pub gamma: Context,
    pub delta: Hypotheses,
    pub goal: Formula,
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; ", self.gamma)?;
        for (i, (x, p)) in self.delta.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x} : {p}")?;
        }
        write!(f, " |- {}", self.goal)
    }
}

/// The rule applied at a derivation node, with what later translations need.
#[derive(Clone, Debug, PartialEq)]
pub enum DerivationRule {
    Axiom { label: String },
    Weaken { label: String },
    App,
    Abs { label: String },
    Promote { labels: Vec<String> },
    Contract { label: String },
    IntroType,
    Intro1,
    Intro2 { var: String },
    ElimType,
    Elim1,
    Elim2 { instance: Formula, params: Vec<String> },
    Equal,
    Use { name: String },
}

impl DerivationRule {
    pub fn name(&self) -> &'static str {
        match self {
            DerivationRule::Axiom { .. } => "axiom",
            DerivationRule::Weaken { .. } => "weaken",
            DerivationRule::App => "app",
            DerivationRule::Abs { .. } => "abs",
            DerivationRule::Promote { .. } => "promote",
            DerivationRule::Contract { .. } => "contract",
            DerivationRule::IntroType => "intro-type",
            DerivationRule::Intro1 => "intro1",
            DerivationRule::Intro2 { .. } => "intro2",
            DerivationRule::ElimType => "elim-type",
            DerivationRule::Elim1 => "elim1",
            DerivationRule::Elim2 { .. } => "elim2",
            DerivationRule::Equal => "equal",
            DerivationRule::Use { .. } => "use",
        }
    }
}

/// An annotated derivation: every node carries its sequent and term.
#[derive(Clone, Debug, PartialEq)]
pub struct Derivation {
    pub rule: DerivationRule,
    pub sequent: Sequent,
    pub term: TermExpr,
    pub children: Vec<Derivation>,
}

impl Derivation {
    pub fn size(&self) -> usize {
        1 + self.children.iter().map(Derivation::size).sum::<usize>()
    }

    /// Visits every node, parents before children.
    pub fn walk(&self, f: &mut impl FnMut(&Derivation)) {
        f(self);
        for c in &self.children {
            c.walk(f);
        }
    }

    /// Indented one-line-per-node rendering.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        self.dump_into(0, &mut out);
        out
    }

    fn dump_into(&self, depth: usize, out: &mut String) {
        use std::fmt::Write;
        let _ = writeln!(
            out,
            "{}{}: {} ▷ {}",
            "  ".repeat(depth),
            self.rule.name(),
            self.sequent,
            self.term
        );
        for c in &self.children {
            c.dump_into(depth + 1, out);
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckedProof {
    pub sequent: Sequent,
    pub term: TermExpr,
    pub derivation: Derivation,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum KernelErrorKind {
    #[error("linearity violation on `{label}`: {reason}")]
    LinearityViolation { label: String, reason: String },
    #[error("cannot contract `{label}`: {formula} is not of the form !P")]
    NonBangContraction { label: String, formula: String },
    #[error("promotion: {0}")]
    PromotionShape(String),
    #[error("`{var}` occurs free in hypothesis {formula}")]
    SideConditionFreeVariable { var: String, formula: String },
    #[error("ill-formed payload: {0}")]
    IllFormedPayload(String),
    #[error("hole mismatch: expected {expected}, found {found}")]
    HoleMismatch { expected: String, found: String },
    #[error("equality trace rejected: {0}")]
    EqualityTraceRejected(RewriteError),
    #[error("well-formedness failure: {0}")]
    WellformednessFailure(WfError),
    #[error("goal mismatch: expected {expected}, found {found}")]
    GoalMismatch { expected: String, found: String },
    #[error("unknown lemma `{0}`")]
    UnknownLemma(String),
    #[error("extracted term is not typed by the projected goal: {0}")]
    ExtractionIllTyped(WfError),
}

/// A failed check, with the rule path (root first) to the failing node.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelError {
    pub kind: KernelErrorKind,
    pub path: Vec<String>,
}

impl KernelError {
    fn new(kind: KernelErrorKind) -> Self {
        Self { kind, path: Vec::new() }
    }

    fn within(mut self, step: String) -> Self {
        self.path.insert(0, step);
        self
    }
}

impl From<KernelErrorKind> for KernelError {
    fn from(kind: KernelErrorKind) -> Self {
        KernelError::new(kind)
    }
}

impl fmt::Display for KernelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if !self.path.is_empty() {
            write!(f, " (at {})", self.path.join(" > "))?;
        }
        Ok(())
    }
}

impl std::error::Error for KernelError {}

pub type KernelResult<T> = Result<T, KernelError>;

fn wf_err(e: WfError) -> KernelError {
    KernelErrorKind::WellformednessFailure(e).into()
}

fn linearity(label: &str, reason: impl Into<String>) -> KernelError {
    KernelErrorKind::LinearityViolation { label: label.into(), reason: reason.into() }.into()
}

/// `Q[t₂/x]`, provided `P₁` is `Q[t₁/x]` up to conversion.
pub fn apply_equality(p1: &Formula, q: &Formula, x: &str, t1: &TermExpr, t2: &TermExpr) -> KernelResult<Formula> {
    let expected = q.subst_term(x, t1);
    if !p1.conv(&expected) {
        return Err(KernelErrorKind::HoleMismatch { expected: expected.to_string(), found: p1.to_string() }.into());
    }
    Ok(q.subst_term(x, t2))
}

/// Partitions `delta` according to the requested label sets. Every
/// hypothesis must be requested exactly once.
pub fn split_linear_context(delta: &Hypotheses, left: &[&str], right: &[&str]) -> KernelResult<(Hypotheses, Hypotheses)> {
    if let Some(x) = left.iter().find(|x| right.contains(x)) {
        return Err(linearity(x, "requested by both premises"));
    }
    let mut l = Vec::new();
    let mut r = Vec::new();
    for (x, p) in delta {
        if left.contains(&x.as_str()) {
            l.push((x.clone(), p.clone()));
        } else if right.contains(&x.as_str()) {
            r.push((x.clone(), p.clone()));
        } else {
            return Err(linearity(x, "unused hypothesis"));
        }
    }
    for x in left.iter().chain(right) {
        if !delta.iter().any(|(y, _)| y == x) {
            return Err(linearity(x, "missing hypothesis"));
        }
    }
    Ok((l, r))
}

fn is_bang(p: &Formula) -> bool {
    matches!(p, Formula::Bang(_))
}

/// Multiset union; a label may occur on both sides only as copies of the
/// same `!P`, to be merged later by CONTRACTION.
fn merge(mut a: Hypotheses, b: Hypotheses) -> KernelResult<Hypotheses> {
    for (x, p) in b {
        if let Some((_, q)) = a.iter().find(|(y, _)| *y == x) {
            if !(is_bang(&p) && p.conv(q)) {
                return Err(linearity(&x, "used by two premises"));
            }
        }
        a.push((x, p));
    }
    Ok(a)
}

fn dedup_labels(delta: &Hypotheses) -> Hypotheses {
    let mut out: Hypotheses = Vec::new();
    for (x, p) in delta {
        if !out.iter().any(|(y, _)| y == x) {
            out.push((x.clone(), p.clone()));
        }
    }
    out
}

/// A checker for one signature, equation set and lemma library.
#[derive(Clone, Debug)]
pub struct Kernel {
    sigma: Context,
    h: EquationSet,
    lemmas: BTreeMap<String, CheckedProof>,
}

struct Node {
    delta: Hypotheses,
    term: TermExpr,
    goal: Formula,
    derivation: Derivation,
}

impl Kernel {
    pub fn new(sigma: Context, h: EquationSet) -> Self {
        Self { sigma, h, lemmas: BTreeMap::new() }
    }

    pub fn sigma(&self) -> &Context {
        &self.sigma
    }

    pub fn equations(&self) -> &EquationSet {
        &self.h
    }

    pub fn lemma(&self, name: &str) -> Option<&CheckedProof> {
        self.lemmas.get(name)
    }

    /// Registers a closed proof for `use`.
    pub fn add_lemma(&mut self, name: &str, proof: CheckedProof) -> KernelResult<()> {
        if !proof.sequent.delta.is_empty() || !proof.sequent.gamma.is_empty() {
            return Err(linearity(name, "lemmas must be closed"));
        }
        self.lemmas.insert(name.into(), proof);
        Ok(())
    }

    /// Checks a script in the empty Γ.
    pub fn check(&self, script: &ProofScript) -> KernelResult<CheckedProof> {
        self.check_in(script, &Context::new())
    }

    /// Checks a script in the given Γ, then re-checks the extracted term
    /// against the projected sequent.
    pub fn check_in(&self, script: &ProofScript, gamma: &Context) -> KernelResult<CheckedProof> {
        let full = self.sigma.concat(gamma);
        let node = self.node(script, &full, self.sigma.len())?;
        let mut ctx = gamma_star(&full);
        for (x, p) in dedup_labels(&node.delta) {
            ctx.push(ContextEntry::TermVar(x, minus_proj(&p)));
        }
        match infer_term_type(&ctx, &node.term) {
            Ok(ty) if ty.alpha_eq(&minus_proj(&node.goal)) => {}
            Ok(ty) => {
                return Err(KernelErrorKind::GoalMismatch {
                    expected: minus_proj(&node.goal).to_string(),
                    found: ty.to_string(),
                }
                .into())
            }
            Err(e) => return Err(KernelErrorKind::ExtractionIllTyped(e).into()),
        }
        Ok(CheckedProof {
            sequent: node.derivation.sequent.clone(),
            term: node.term,
            derivation: node.derivation,
        })
    }

    /// Checks a closed proof of `statement`: no hypotheses may be left over.
    pub fn check_claim(&self, script: &ProofScript, statement: &Formula) -> KernelResult<CheckedProof> {
        check_formula(&self.sigma, statement).map_err(wf_err)?;
        let proof = self.check(script)?;
        split_linear_context(&proof.sequent.delta, &[], &[])?;
        if !proof.sequent.goal.conv(statement) {
            return Err(KernelErrorKind::GoalMismatch {
                expected: statement.to_string(),
                found: proof.sequent.goal.to_string(),
            }
            .into());
        }
        Ok(proof)
    }

    fn node(&self, script: &ProofScript, ctx: &Context, sigma_len: usize) -> KernelResult<Node> {
        self.node_inner(script, ctx, sigma_len)
    }

    fn finish(
        &self,
        rule: DerivationRule,
        ctx: &Context,
        sigma_len: usize,
        delta: Hypotheses,
        term: TermExpr,
        goal: Formula,
        children: Vec<Derivation>,
    ) -> Node {
        let gamma = Context::from_entries(ctx.entries()[sigma_len..].to_vec());
        let derivation = Derivation {
            rule,
            sequent: Sequent { gamma, delta: delta.clone(), goal: goal.clone() },
            term: term.clone(),
            children,
        };
        Node { delta, term, goal, derivation }
    }

    fn child(&self, script: &ProofScript, ctx: &Context, sigma_len: usize, step: String) -> KernelResult<Node> {
        self.node(script, ctx, sigma_len).map_err(|e| e.within(step))
    }

    fn check_label(&self, label: &str, ctx: &Context) -> KernelResult<()> {
        if ctx.has_term_var(label) {
            return Err(KernelErrorKind::IllFormedPayload(format!(
                "hypothesis label `{label}` clashes with a first-order variable"
            ))
            .into());
        }
        Ok(())
    }

    fn check_unbound(&self, var: &str, ctx: &Context) -> KernelResult<()> {
        if ctx.entries().iter().any(|e| e.name() == var) {
            return Err(KernelErrorKind::IllFormedPayload(format!("`{var}` is already bound")).into());
        }
        Ok(())
    }

    fn node_inner(&self, script: &ProofScript, ctx: &Context, sl: usize) -> KernelResult<Node> {
        let name = script.rule_name();
        match script {
            ProofScript::Axiom { label, formula } => {
                check_formula(ctx, formula).map_err(wf_err)?;
                self.check_label(label, ctx)?;
                let delta = vec![(label.clone(), formula.clone())];
                Ok(self.finish(
                    DerivationRule::Axiom { label: label.clone() },
                    ctx,
                    sl,
                    delta,
                    TermExpr::var(label.clone()),
                    formula.clone(),
                    vec![],
                ))
            }
            ProofScript::Weaken { label, formula, premise } => {
                let n = self.child(premise, ctx, sl, name.into())?;
                check_formula(ctx, formula).map_err(wf_err)?;
                self.check_label(label, ctx)?;
                if n.delta.iter().any(|(x, _)| x == label) {
                    return Err(linearity(label, "weakening an existing hypothesis"));
                }
                let mut delta = n.delta;
                delta.push((label.clone(), formula.clone()));
                Ok(self.finish(
                    DerivationRule::Weaken { label: label.clone() },
                    ctx,
                    sl,
                    delta,
                    n.term,
                    n.goal,
                    vec![n.derivation],
                ))
            }
            ProofScript::App(f, a) => {
                let nf = self.child(f, ctx, sl, "app[0]".into())?;
                let na = self.child(a, ctx, sl, "app[1]".into())?;
                let Formula::Lolli(p, q) = &nf.goal else {
                    return Err(KernelErrorKind::GoalMismatch {
                        expected: "a linear implication".into(),
                        found: nf.goal.to_string(),
                    }
                    .into());
                };
                if !na.goal.conv(p) {
                    return Err(KernelErrorKind::GoalMismatch { expected: p.to_string(), found: na.goal.to_string() }.into());
                }
                let goal = q.as_ref().clone();
                let delta = merge(nf.delta, na.delta)?;
                Ok(self.finish(
                    DerivationRule::App,
                    ctx,
                    sl,
                    delta,
                    TermExpr::app(nf.term, na.term),
                    goal,
                    vec![nf.derivation, na.derivation],
                ))
            }
            ProofScript::Abs { label, premise } => {
                let n = self.child(premise, ctx, sl, name.into())?;
                let copies: Vec<usize> = n
                    .delta
                    .iter()
                    .enumerate()
                    .filter(|(_, (x, _))| x == label)
                    .map(|(i, _)| i)
                    .collect();
                match copies.len() {
                    0 => return Err(linearity(label, "abstracted hypothesis is missing")),
                    1 => {}
                    _ => return Err(linearity(label, "abstracted hypothesis occurs twice; contract first")),
                }
                let mut delta = n.delta;
                let (_, p) = delta.remove(copies[0]);
                let term = TermExpr::lam(label.clone(), minus_proj(&p), n.term);
                let goal = Formula::lolli(p, n.goal);
                Ok(self.finish(DerivationRule::Abs { label: label.clone() }, ctx, sl, delta, term, goal, vec![n.derivation]))
            }
            ProofScript::Promote { premises, inner } => {
                let mut labels = Vec::new();
                let mut delta = Vec::new();
                let mut subst = Vec::new();
                let mut children = Vec::new();
                let mut expected = Vec::new();
                for (i, (label, p)) in premises.iter().enumerate() {
                    if labels.contains(label) {
                        return Err(KernelErrorKind::PromotionShape(format!("label `{label}` bound twice")).into());
                    }
                    let n = self.child(p, ctx, sl, format!("promote[{i}]"))?;
                    let Formula::Bang(pi) = &n.goal else {
                        return Err(KernelError::from(KernelErrorKind::PromotionShape(format!(
                            "premise {i} concludes {}, not !P",
                            n.goal
                        )))
                        .within(format!("promote[{i}]")));
                    };
                    expected.push((label.clone(), pi.as_ref().clone()));
                    labels.push(label.clone());
                    subst.push((label.clone(), n.term));
                    delta = merge(delta, n.delta)?;
                    children.push(n.derivation);
                }
                let ni = self.child(inner, ctx, sl, "promote[inner]".into())?;
                if ni.delta.len() != expected.len() {
                    return Err(KernelErrorKind::PromotionShape(format!(
                        "inner derivation uses {} hypotheses, {} were promoted",
                        ni.delta.len(),
                        expected.len()
                    ))
                    .into());
                }
                for (x, p) in &ni.delta {
                    match expected.iter().find(|(y, _)| y == x) {
                        Some((_, q)) if q.conv(p) => {}
                        Some((_, q)) => {
                            return Err(KernelErrorKind::PromotionShape(format!(
                                "inner hypothesis `{x}` is {p}, premise provides {q}"
                            ))
                            .into())
                        }
                        None => {
                            return Err(KernelErrorKind::PromotionShape(format!(
                                "inner hypothesis `{x}` has no premise"
                            ))
                            .into())
                        }
                    }
                }
                let term = ni.term.subst_many(&subst);
                let goal = Formula::bang(ni.goal);
                children.push(ni.derivation);
                Ok(self.finish(DerivationRule::Promote { labels }, ctx, sl, delta, term, goal, children))
            }
            ProofScript::Contract { label, premise } => {
                let n = self.child(premise, ctx, sl, name.into())?;
                let copies: Vec<usize> = n
                    .delta
                    .iter()
                    .enumerate()
                    .filter(|(_, (x, _))| x == label)
                    .map(|(i, _)| i)
                    .collect();
                if copies.len() < 2 {
                    return Err(linearity(label, "contraction needs two copies"));
                }
                let (p, q) = (&n.delta[copies[0]].1, &n.delta[copies[1]].1);
                if !is_bang(p) {
                    return Err(KernelErrorKind::NonBangContraction { label: label.clone(), formula: p.to_string() }.into());
                }
                if !p.conv(q) {
                    return Err(linearity(label, format!("copies disagree: {p} and {q}")));
                }
                let mut delta = n.delta;
                delta.remove(copies[1]);
                Ok(self.finish(
                    DerivationRule::Contract { label: label.clone() },
                    ctx,
                    sl,
                    delta,
                    n.term,
                    n.goal,
                    vec![n.derivation],
                ))
            }
            ProofScript::IntroType { var, premise } => {
                self.check_unbound(var, ctx)?;
                let inner = ctx.with(ContextEntry::TypeVar(var.clone()));
                let n = self.child(premise, &inner, sl, name.into())?;
                for (_, p) in &n.delta {
                    if p.free_type_vars().contains(var) {
                        return Err(KernelErrorKind::SideConditionFreeVariable { var: var.clone(), formula: p.to_string() }.into());
                    }
                }
                let goal = Formula::forall_ty(var.clone(), n.goal);
                Ok(self.finish(DerivationRule::IntroType, ctx, sl, n.delta, n.term, goal, vec![n.derivation]))
            }
            ProofScript::Intro1 { var, ty, premise } => {
                self.check_unbound(var, ctx)?;
                check_type(ctx, ty).map_err(wf_err)?;
                let inner = ctx.with(ContextEntry::TermVar(var.clone(), ty.clone()));
                let n = self.child(premise, &inner, sl, name.into())?;
                for (_, p) in &n.delta {
                    if p.free_vars().contains(var) {
                        return Err(KernelErrorKind::SideConditionFreeVariable { var: var.clone(), formula: p.to_string() }.into());
                    }
                }
                let goal = Formula::forall1(var.clone(), ty.clone(), n.goal);
                Ok(self.finish(DerivationRule::Intro1, ctx, sl, n.delta, n.term, goal, vec![n.derivation]))
            }
            ProofScript::Intro2 { var, kind, premise } => {
                self.check_unbound(var, ctx)?;
                for t in kind {
                    check_type(ctx, t).map_err(wf_err)?;
                }
                let inner = ctx.with(ContextEntry::PredVar(var.clone(), kind.clone()));
                let n = self.child(premise, &inner, sl, name.into())?;
                for (_, p) in &n.delta {
                    if p.free_preds().contains(var) {
                        return Err(KernelErrorKind::SideConditionFreeVariable { var: var.clone(), formula: p.to_string() }.into());
                    }
                }
                let term = TermExpr::ty_lam(pred_type_var(var), n.term);
                let goal = Formula::forall2(var.clone(), kind.clone(), n.goal);
                Ok(self.finish(DerivationRule::Intro2 { var: var.clone() }, ctx, sl, n.delta, term, goal, vec![n.derivation]))
            }
            ProofScript::ElimType { ty, premise } => {
                let n = self.child(premise, ctx, sl, name.into())?;
                check_type(ctx, ty).map_err(wf_err)?;
                let Formula::ForallTy(a, body) = &n.goal else {
                    return Err(KernelErrorKind::GoalMismatch {
                        expected: "a type quantifier".into(),
                        found: n.goal.to_string(),
                    }
                    .into());
                };
                let goal = body.subst_type(a, ty);
                Ok(self.finish(DerivationRule::ElimType, ctx, sl, n.delta, n.term, goal, vec![n.derivation]))
            }
            ProofScript::Elim1 { term, premise } => {
                let n = self.child(premise, ctx, sl, name.into())?;
                let Formula::Forall1(x, ty, body) = &n.goal else {
                    return Err(KernelErrorKind::GoalMismatch {
                        expected: "a first-order quantifier".into(),
                        found: n.goal.to_string(),
                    }
                    .into());
                };
                let found = infer_term_type(ctx, term).map_err(wf_err)?;
                if !found.alpha_eq(ty) {
                    return Err(KernelErrorKind::IllFormedPayload(format!("{term} has type {found}, expected {ty}")).into());
                }
                let goal = body.subst_term(x, term);
                Ok(self.finish(DerivationRule::Elim1, ctx, sl, n.delta, n.term, goal, vec![n.derivation]))
            }
            ProofScript::Elim2 { formula, params, premise } => {
                let n = self.child(premise, ctx, sl, name.into())?;
                let Formula::Forall2(x, kind, body) = &n.goal else {
                    return Err(KernelErrorKind::GoalMismatch {
                        expected: "a second-order quantifier".into(),
                        found: n.goal.to_string(),
                    }
                    .into());
                };
                if kind.len() != params.len() {
                    return Err(KernelErrorKind::IllFormedPayload(format!(
                        "`{x}` takes {} parameters, {} given",
                        kind.len(),
                        params.len()
                    ))
                    .into());
                }
                let mut local = ctx.clone();
                for (p, t) in params.iter().zip(kind) {
                    local.push(ContextEntry::TermVar(p.clone(), t.clone()));
                }
                check_formula(&local, formula).map_err(wf_err)?;
                let goal = body
                    .subst_pred(x, params, formula)
                    .map_err(|e| KernelError::from(KernelErrorKind::IllFormedPayload(e.to_string())))?;
                let term = TermExpr::ty_app(n.term, minus_proj(formula));
                Ok(self.finish(
                    DerivationRule::Elim2 { instance: formula.clone(), params: params.clone() },
                    ctx,
                    sl,
                    n.delta,
                    term,
                    goal,
                    vec![n.derivation],
                ))
            }
            ProofScript::Equal { hole, var, t1, t2, ty, direction, trace, premise } => {
                let n = self.child(premise, ctx, sl, name.into())?;
                check_type(ctx, ty).map_err(wf_err)?;
                check_formula(&ctx.with(ContextEntry::TermVar(var.clone(), ty.clone())), hole).map_err(wf_err)?;
                let (a, b) = match direction {
                    EqDirection::Forward => (t1, t2),
                    EqDirection::Backward => (t2, t1),
                };
                verify_trace(trace, a, b, ty, ctx, &self.h)
                    .map_err(|e| KernelError::from(KernelErrorKind::EqualityTraceRejected(e)))?;
                let goal = apply_equality(&n.goal, hole, var, t1, t2)?;
                Ok(self.finish(DerivationRule::Equal, ctx, sl, n.delta, n.term, goal, vec![n.derivation]))
            }
            ProofScript::Use(lemma) => {
                let proof = self
                    .lemmas
                    .get(lemma)
                    .ok_or_else(|| KernelError::from(KernelErrorKind::UnknownLemma(lemma.clone())))?;
                Ok(self.finish(
                    DerivationRule::Use { name: lemma.clone() },
                    ctx,
                    sl,
                    vec![],
                    proof.term.clone(),
                    proof.sequent.goal.clone(),
                    vec![proof.derivation.clone()],
                ))
            }
        }
    }
}

/// Checks a closed script against Σ and H with no lemmas.
pub fn check_proof(script: &ProofScript, sigma: &Context, h: &EquationSet) -> KernelResult<CheckedProof> {
    Kernel::new(sigma.clone(), h.clone()).check(script)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::Orientation;
    use crate::syntax::library::{nat, nat_pred};
    use crate::theory::{h0, signature, PLUS};

    fn kernel() -> Kernel {
        Kernel::new(signature(), h0())
    }
    fn v(x: &str) -> TermExpr {
        TermExpr::var(x)
    }
    fn atom(x: &str) -> Formula {
        Formula::atom(x, vec![])
    }
    fn gamma(entries: Vec<ContextEntry>) -> Context {
        Context::from_entries(entries)
    }

    #[test]
    fn axiom_concludes_its_hypothesis() {
        let g = gamma(vec![ContextEntry::TermVar("x".into(), nat())]);
        let p = nat_pred(v("x"));
        let out = kernel().check_in(&ProofScript::axiom("h", p.clone()), &g).unwrap();
        assert_eq!(out.sequent.delta, vec![("h".to_string(), p.clone())]);
        assert_eq!(out.sequent.goal, p);
        assert_eq!(out.term, v("h"));
    }

    #[test]
    fn identity_on_numerals() {
        // ∀x. N x ⊸ N x
        let script = ProofScript::intro1("x", nat(), ProofScript::abs("n", ProofScript::axiom("n", nat_pred(v("x")))));
        let statement = Formula::forall1("x", nat(), Formula::lolli(nat_pred(v("x")), nat_pred(v("x"))));
        let out = kernel().check_claim(&script, &statement).unwrap();
        assert_eq!(out.term, TermExpr::lam("n", nat(), v("n")));
    }

    #[test]
    fn application_cannot_share_linear_hypotheses() {
        let g = gamma(vec![ContextEntry::PredVar("P".into(), vec![]), ContextEntry::PredVar("Q".into(), vec![])]);
        let f = ProofScript::axiom("x", Formula::lolli(atom("P"), atom("Q")));
        let a = ProofScript::axiom("x", atom("P"));
        let err = kernel().check_in(&ProofScript::app(f, a), &g).unwrap_err();
        assert!(matches!(err.kind, KernelErrorKind::LinearityViolation { .. }), "{err}");
    }

    #[test]
    fn contraction_requires_bang() {
        let g = gamma(vec![ContextEntry::PredVar("P".into(), vec![])]);
        let pp = Formula::lolli(atom("P"), Formula::lolli(atom("P"), atom("P")));
        let body = ProofScript::app(
            ProofScript::app(ProofScript::axiom("f", pp), ProofScript::axiom("x", atom("P"))),
            ProofScript::axiom("y", atom("P")),
        );
        let bp = Formula::bang(atom("P"));
        let pair = Formula::lolli(bp.clone(), Formula::lolli(bp.clone(), atom("P")));
        let dup = ProofScript::app(
            ProofScript::app(ProofScript::axiom("f", pair), ProofScript::axiom("x", bp.clone())),
            ProofScript::axiom("x", bp.clone()),
        );
        let ok = kernel().check_in(&ProofScript::contract("x", dup), &g).unwrap();
        assert_eq!(ok.sequent.delta.len(), 2);
        let err = kernel().check_in(&ProofScript::contract("x", body), &g).unwrap_err();
        assert!(matches!(err.kind, KernelErrorKind::LinearityViolation { .. }));

        let pq = Formula::lolli(atom("P"), Formula::lolli(atom("P"), atom("P")));
        let linear_dup = ProofScript::app(
            ProofScript::app(ProofScript::axiom("f", pq), ProofScript::axiom("x", atom("P"))),
            ProofScript::axiom("x", atom("P")),
        );
        let err = kernel().check_in(&linear_dup, &g).unwrap_err();
        assert!(matches!(err.kind, KernelErrorKind::LinearityViolation { .. }));
    }

    #[test]
    fn promotion_substitutes_premises() {
        let g = gamma(vec![ContextEntry::PredVar("P".into(), vec![])]);
        let bp = Formula::bang(atom("P"));
        let script = ProofScript::promote(vec![("y", ProofScript::axiom("z", bp.clone()))], ProofScript::axiom("y", atom("P")));
        let out = kernel().check_in(&script, &g).unwrap();
        assert_eq!(out.term, v("z"));
        assert_eq!(out.sequent.goal, bp);
        assert_eq!(out.sequent.delta, vec![("z".to_string(), bp.clone())]);

        let bad = ProofScript::promote(vec![("y", ProofScript::axiom("z", atom("P")))], ProofScript::axiom("y", atom("P")));
        assert!(matches!(kernel().check_in(&bad, &g).unwrap_err().kind, KernelErrorKind::PromotionShape(_)));
    }

    #[test]
    fn intro_side_conditions() {
        let script = ProofScript::intro1("x", nat(), ProofScript::axiom("n", nat_pred(v("x"))));
        let err = kernel().check(&script).unwrap_err();
        assert!(matches!(err.kind, KernelErrorKind::SideConditionFreeVariable { .. }));
    }

    #[test]
    fn second_order_intro_and_elim_extract_type_abstraction() {
        // ∀X:[]. X ⊸ X, then instantiate at Y.
        let id = ProofScript::intro2("X", vec![], ProofScript::abs("a", ProofScript::axiom("a", atom("X"))));
        let out = kernel().check(&id).unwrap();
        let ax = pred_type_var("X");
        assert_eq!(
            out.term,
            TermExpr::ty_lam(ax.clone(), TermExpr::lam("a", TypeExpr::var(ax), v("a")))
        );
        let g = gamma(vec![ContextEntry::PredVar("Y".into(), vec![])]);
        let inst = ProofScript::elim2(atom("Y"), &[], id);
        let out = kernel().check_in(&inst, &g).unwrap();
        assert_eq!(out.sequent.goal, Formula::lolli(atom("Y"), atom("Y")));
    }

    #[test]
    fn equality_rewrites_through_the_hole() {
        let g = gamma(vec![ContextEntry::TermVar("a".into(), nat())]);
        let t1 = TermExpr::apps(v(PLUS), [v("a"), v("0")]);
        let script = ProofScript::equal(
            nat_pred(v("y")),
            "y",
            t1.clone(),
            v("a"),
            nat(),
            EqDirection::Forward,
            Trace::axiom("plus-zero", vec![("x".into(), v("a"))], vec![], Orientation::LeftToRight),
            ProofScript::axiom("n", nat_pred(t1.clone())),
        );
        let out = kernel().check_in(&script, &g).unwrap();
        assert_eq!(out.sequent.goal, nat_pred(v("a")));
        assert_eq!(out.term, v("n"));

        let wrong = apply_equality(&nat_pred(v("a")), &nat_pred(v("y")), "y", &t1, &v("a"));
        assert!(matches!(wrong.unwrap_err().kind, KernelErrorKind::HoleMismatch { .. }));
        let constant = apply_equality(&atom("P"), &atom("P"), "y", &t1, &v("a")).unwrap();
        assert_eq!(constant, atom("P"));
    }

    #[test]
    fn splitting_examples() {
        let d = vec![("a".to_string(), atom("P")), ("b".to_string(), atom("Q"))];
        let (l, r) = split_linear_context(&d, &["a"], &["b"]).unwrap();
        assert_eq!((l.len(), r.len()), (1, 1));
        assert!(split_linear_context(&d[..1].to_vec(), &["a"], &["a"]).is_err());
        assert!(split_linear_context(&d, &["a"], &[]).is_err());
    }
}
