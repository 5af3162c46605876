//! Second-order formulas:
//! `X t₁…tₙ | P ⊸ Q | ∀X:[τ₁,…,τₙ]. P | ∀x:τ. P | ∀α. P | !P`.

use std::collections::BTreeSet;

use super::names::{fresh_avoiding, AlphaEnv};
use super::terms::TermExpr;
use super::types::TypeExpr;
use super::{ArityMismatch, FuelExhausted};

#[derive(Clone, Debug)]
pub enum Formula {
    Atom(String, Vec<TermExpr>),
    Lolli(Box<Formula>, Box<Formula>),
    Forall2(String, Vec<TypeExpr>, Box<Formula>),
    Forall1(String, TypeExpr, Box<Formula>),
    ForallTy(String, Box<Formula>),
    Bang(Box<Formula>),
}

/// Fuel used when deciding convertibility of formulas. Embedded terms are
/// well-typed System F terms in practice, so this only guards adversarial
/// input.
pub const CONV_FUEL: u64 = 200_000;

impl Formula {
    pub fn atom(x: impl Into<String>, args: Vec<TermExpr>) -> Self {
        Formula::Atom(x.into(), args)
    }

    pub fn lolli(p: Formula, q: Formula) -> Self {
        Formula::Lolli(Box::new(p), Box::new(q))
    }

    pub fn forall2(x: impl Into<String>, kind: Vec<TypeExpr>, body: Formula) -> Self {
        Formula::Forall2(x.into(), kind, Box::new(body))
    }

    pub fn forall1(x: impl Into<String>, ty: TypeExpr, body: Formula) -> Self {
        Formula::Forall1(x.into(), ty, Box::new(body))
    }

    pub fn forall_ty(a: impl Into<String>, body: Formula) -> Self {
        Formula::ForallTy(a.into(), Box::new(body))
    }

    pub fn bang(p: Formula) -> Self {
        Formula::Bang(Box::new(p))
    }

    /// `!ᵏP`.
    pub fn bangs(k: usize, p: Formula) -> Self {
        (0..k).fold(p, |acc, _| Formula::bang(acc))
    }

    /// Strips leading `!`s, returning their count and the remainder.
    pub fn unbang(&self) -> (usize, &Formula) {
        let mut k = 0;
        let mut cur = self;
        while let Formula::Bang(inner) = cur {
            k += 1;
            cur = inner;
        }
        (k, cur)
    }

    /// Free first-order variables.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_free(&mut Vec::new(), &mut out);
        out
    }

    fn walk_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => {
                for a in args {
                    for x in a.free_vars() {
                        if !bound.contains(&x) {
                            out.insert(x);
                        }
                    }
                }
            }
            Formula::Lolli(p, q) => {
                p.walk_free(bound, out);
                q.walk_free(bound, out);
            }
            Formula::Forall1(x, _, body) => {
                bound.push(x.clone());
                body.walk_free(bound, out);
                bound.pop();
            }
            Formula::Forall2(_, _, body) | Formula::ForallTy(_, body) | Formula::Bang(body) => {
                body.walk_free(bound, out)
            }
        }
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            Formula::Atom(_, args) => args.iter().any(|a| a.occurs_free(x)),
            Formula::Lolli(p, q) => p.occurs_free(x) || q.occurs_free(x),
            Formula::Forall1(y, _, body) => y != x && body.occurs_free(x),
            Formula::Forall2(_, _, body) | Formula::ForallTy(_, body) | Formula::Bang(body) => {
                body.occurs_free(x)
            }
        }
    }

    /// Free second-order variables.
    pub fn free_preds(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_preds(&mut Vec::new(), &mut out);
        out
    }

    fn walk_preds(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(x, _) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Formula::Lolli(p, q) => {
                p.walk_preds(bound, out);
                q.walk_preds(bound, out);
            }
            Formula::Forall2(x, _, body) => {
                bound.push(x.clone());
                body.walk_preds(bound, out);
                bound.pop();
            }
            Formula::Forall1(_, _, body) | Formula::ForallTy(_, body) | Formula::Bang(body) => {
                body.walk_preds(bound, out)
            }
        }
    }

    /// Free type variables, including those inside embedded terms.
    pub fn free_type_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_types(&mut Vec::new(), &mut out);
        out
    }

    fn walk_types(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => {
                for a in args {
                    a.collect_free_types(bound, out);
                }
            }
            Formula::Lolli(p, q) => {
                p.walk_types(bound, out);
                q.walk_types(bound, out);
            }
            Formula::Forall2(_, kind, body) => {
                for t in kind {
                    t.collect_free(bound, out);
                }
                body.walk_types(bound, out);
            }
            Formula::Forall1(_, ty, body) => {
                ty.collect_free(bound, out);
                body.walk_types(bound, out);
            }
            Formula::ForallTy(a, body) => {
                bound.push(a.clone());
                body.walk_types(bound, out);
                bound.pop();
            }
            Formula::Bang(body) => body.walk_types(bound, out),
        }
    }

    pub(crate) fn all_names(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(x, args) => {
                out.insert(x.clone());
                for a in args {
                    a.all_names(out);
                }
            }
            Formula::Lolli(p, q) => {
                p.all_names(out);
                q.all_names(out);
            }
            Formula::Forall2(x, kind, body) => {
                out.insert(x.clone());
                for t in kind {
                    t.all_vars(out);
                }
                body.all_names(out);
            }
            Formula::Forall1(x, ty, body) => {
                out.insert(x.clone());
                ty.all_vars(out);
                body.all_names(out);
            }
            Formula::ForallTy(a, body) => {
                out.insert(a.clone());
                body.all_names(out);
            }
            Formula::Bang(body) => body.all_names(out),
        }
    }

    /// Capture-avoiding `self[t/x]`.
    pub fn subst_term(&self, x: &str, t: &TermExpr) -> Formula {
        self.subst_terms(&[(x.to_string(), t.clone())])
    }

    /// Simultaneous capture-avoiding substitution of first-order variables.
    pub fn subst_terms(&self, map: &[(String, TermExpr)]) -> Formula {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            Formula::Atom(x, args) => {
                Formula::Atom(x.clone(), args.iter().map(|a| a.subst_many(map)).collect())
            }
            Formula::Lolli(p, q) => Formula::lolli(p.subst_terms(map), q.subst_terms(map)),
            Formula::Bang(p) => Formula::bang(p.subst_terms(map)),
            Formula::Forall2(x, kind, body) => {
                Formula::forall2(x.clone(), kind.clone(), body.subst_terms(map))
            }
            Formula::Forall1(y, ty, body) => {
                let inner: Vec<(String, TermExpr)> = map
                    .iter()
                    .filter(|(k, _)| k != y && body.occurs_free(k))
                    .cloned()
                    .collect();
                if inner.is_empty() {
                    return self.clone();
                }
                let mut fv = BTreeSet::new();
                for (_, v) in &inner {
                    fv.extend(v.free_vars());
                }
                if fv.contains(y) {
                    let mut avoid = fv;
                    body.all_names(&mut avoid);
                    avoid.extend(inner.iter().map(|(k, _)| k.clone()));
                    let y2 = fresh_avoiding(y, &avoid);
                    let renamed = body.subst_term(y, &TermExpr::Var(y2.clone()));
                    Formula::forall1(y2, ty.clone(), renamed.subst_terms(&inner))
                } else {
                    Formula::forall1(y.clone(), ty.clone(), body.subst_terms(&inner))
                }
            }
            Formula::ForallTy(a, body) => {
                let mut ftv = BTreeSet::new();
                for (_, v) in map {
                    ftv.extend(v.free_type_vars());
                }
                if ftv.contains(a) {
                    let mut avoid = ftv;
                    body.all_names(&mut avoid);
                    let a2 = fresh_avoiding(a, &avoid);
                    let renamed = body.subst_type(a, &TypeExpr::Var(a2.clone()));
                    Formula::forall_ty(a2, renamed.subst_terms(map))
                } else {
                    Formula::forall_ty(a.clone(), body.subst_terms(map))
                }
            }
        }
    }

    /// Capture-avoiding `self[τ/α]`.
    pub fn subst_type(&self, alpha: &str, tau: &TypeExpr) -> Formula {
        match self {
            Formula::Atom(x, args) => Formula::Atom(
                x.clone(),
                args.iter().map(|a| a.subst_type(alpha, tau)).collect(),
            ),
            Formula::Lolli(p, q) => Formula::lolli(p.subst_type(alpha, tau), q.subst_type(alpha, tau)),
            Formula::Bang(p) => Formula::bang(p.subst_type(alpha, tau)),
            Formula::Forall2(x, kind, body) => Formula::forall2(
                x.clone(),
                kind.iter().map(|t| t.subst(alpha, tau)).collect(),
                body.subst_type(alpha, tau),
            ),
            Formula::Forall1(x, ty, body) => {
                Formula::forall1(x.clone(), ty.subst(alpha, tau), body.subst_type(alpha, tau))
            }
            Formula::ForallTy(b, body) => {
                if b == alpha {
                    return self.clone();
                }
                if tau.occurs_free(b) {
                    let mut avoid = tau.free_vars();
                    body.all_names(&mut avoid);
                    avoid.insert(alpha.to_string());
                    let b2 = fresh_avoiding(b, &avoid);
                    let renamed = body.subst_type(b, &TypeExpr::Var(b2.clone()));
                    Formula::forall_ty(b2, renamed.subst_type(alpha, tau))
                } else {
                    Formula::forall_ty(b.clone(), body.subst_type(alpha, tau))
                }
            }
        }
    }

    fn rename_pred(&self, from: &str, to: &str) -> Formula {
        match self {
            Formula::Atom(x, args) if x == from => Formula::Atom(to.to_string(), args.clone()),
            Formula::Atom(..) => self.clone(),
            Formula::Lolli(p, q) => Formula::lolli(p.rename_pred(from, to), q.rename_pred(from, to)),
            Formula::Bang(p) => Formula::bang(p.rename_pred(from, to)),
            Formula::Forall2(x, _, _) if x == from => self.clone(),
            Formula::Forall2(x, kind, body) => {
                Formula::forall2(x.clone(), kind.clone(), body.rename_pred(from, to))
            }
            Formula::Forall1(x, ty, body) => {
                Formula::forall1(x.clone(), ty.clone(), body.rename_pred(from, to))
            }
            Formula::ForallTy(a, body) => Formula::forall_ty(a.clone(), body.rename_pred(from, to)),
        }
    }

    /// `self[Q/X x₁…xₙ]`: every occurrence `X t₁…tₙ` becomes
    /// `Q[t₁/x₁,…,tₙ/xₙ]`.
    pub fn subst_pred(&self, x: &str, params: &[String], q: &Formula) -> Result<Formula, ArityMismatch> {
        let q_fv: BTreeSet<String> = q
            .free_vars()
            .into_iter()
            .filter(|v| !params.contains(v))
            .collect();
        let q_fp = q.free_preds();
        let q_ftv = q.free_type_vars();
        self.subst_pred_in(x, params, q, &q_fv, &q_fp, &q_ftv)
    }

    fn subst_pred_in(
        &self,
        x: &str,
        params: &[String],
        q: &Formula,
        q_fv: &BTreeSet<String>,
        q_fp: &BTreeSet<String>,
        q_ftv: &BTreeSet<String>,
    ) -> Result<Formula, ArityMismatch> {
        let rec = |p: &Formula| p.subst_pred_in(x, params, q, q_fv, q_fp, q_ftv);
        Ok(match self {
            Formula::Atom(y, args) if y == x => {
                if args.len() != params.len() {
                    return Err(ArityMismatch {
                        var: x.to_string(),
                        expected: params.len(),
                        found: args.len(),
                    });
                }
                let map: Vec<(String, TermExpr)> =
                    params.iter().cloned().zip(args.iter().cloned()).collect();
                q.subst_terms(&map)
            }
            Formula::Atom(..) => self.clone(),
            Formula::Lolli(a, b) => Formula::lolli(rec(a)?, rec(b)?),
            Formula::Bang(a) => Formula::bang(rec(a)?),
            Formula::Forall2(y, _, _) if y == x => self.clone(),
            Formula::Forall2(y, kind, body) => {
                if q_fp.contains(y) {
                    let mut avoid = q_fp.clone();
                    body.all_names(&mut avoid);
                    q.all_names(&mut avoid);
                    avoid.insert(x.to_string());
                    let y2 = fresh_avoiding(y, &avoid);
                    let renamed = body.rename_pred(y, &y2);
                    Formula::forall2(y2, kind.clone(), rec(&renamed)?)
                } else {
                    Formula::forall2(y.clone(), kind.clone(), rec(body)?)
                }
            }
            Formula::Forall1(y, ty, body) => {
                if q_fv.contains(y) {
                    let mut avoid = q_fv.clone();
                    body.all_names(&mut avoid);
                    q.all_names(&mut avoid);
                    let y2 = fresh_avoiding(y, &avoid);
                    let renamed = body.subst_term(y, &TermExpr::Var(y2.clone()));
                    Formula::forall1(y2, ty.clone(), rec(&renamed)?)
                } else {
                    Formula::forall1(y.clone(), ty.clone(), rec(body)?)
                }
            }
            Formula::ForallTy(a, body) => {
                if q_ftv.contains(a) {
                    let mut avoid = q_ftv.clone();
                    body.all_names(&mut avoid);
                    q.all_names(&mut avoid);
                    let a2 = fresh_avoiding(a, &avoid);
                    let renamed = body.subst_type(a, &TypeExpr::Var(a2.clone()));
                    Formula::forall_ty(a2, rec(&renamed)?)
                } else {
                    Formula::forall_ty(a.clone(), rec(body)?)
                }
            }
        })
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        self.alpha_eq_in(other, &mut AlphaEnv::new())
    }

    fn alpha_eq_in(&self, other: &Formula, env: &mut AlphaEnv) -> bool {
        match (self, other) {
            (Formula::Atom(x, a1), Formula::Atom(y, a2)) => {
                env.so_same(x, y)
                    && a1.len() == a2.len()
                    && a1.iter().zip(a2).all(|(s, t)| s.alpha_eq_in(t, env))
            }
            (Formula::Lolli(p1, q1), Formula::Lolli(p2, q2)) => {
                p1.alpha_eq_in(p2, env) && q1.alpha_eq_in(q2, env)
            }
            (Formula::Bang(p1), Formula::Bang(p2)) => p1.alpha_eq_in(p2, env),
            (Formula::Forall2(x, k1, b1), Formula::Forall2(y, k2, b2)) => {
                k1.len() == k2.len()
                    && k1.iter().zip(k2).all(|(s, t)| s.alpha_eq_in(t, env))
                    && env.with_so(x, y, |env| b1.alpha_eq_in(b2, env))
            }
            (Formula::Forall1(x, t1, b1), Formula::Forall1(y, t2, b2)) => {
                t1.alpha_eq_in(t2, env) && env.with_fo(x, y, |env| b1.alpha_eq_in(b2, env))
            }
            (Formula::ForallTy(a, b1), Formula::ForallTy(b, b2)) => {
                env.with_ty(a, b, |env| b1.alpha_eq_in(b2, env))
            }
            _ => false,
        }
    }

    /// One leftmost-outermost β-step inside the embedded terms.
    pub fn beta_step(&self) -> Option<Formula> {
        match self {
            Formula::Atom(x, args) => {
                for (i, a) in args.iter().enumerate() {
                    if let Some(a2) = a.beta_step() {
                        let mut out = args.clone();
                        out[i] = a2;
                        return Some(Formula::Atom(x.clone(), out));
                    }
                }
                None
            }
            Formula::Lolli(p, q) => match p.beta_step() {
                Some(p2) => Some(Formula::Lolli(Box::new(p2), q.clone())),
                None => q.beta_step().map(|q2| Formula::Lolli(p.clone(), Box::new(q2))),
            },
            Formula::Bang(p) => p.beta_step().map(Formula::bang),
            Formula::Forall2(x, k, body) => body
                .beta_step()
                .map(|b| Formula::forall2(x.clone(), k.clone(), b)),
            Formula::Forall1(x, ty, body) => body
                .beta_step()
                .map(|b| Formula::forall1(x.clone(), ty.clone(), b)),
            Formula::ForallTy(a, body) => body.beta_step().map(|b| Formula::forall_ty(a.clone(), b)),
        }
    }

    /// Normalizes every embedded term; `fuel` bounds the total number of
    /// contractions.
    pub fn beta_normalize(&self, fuel: u64) -> Result<Formula, FuelExhausted> {
        let mut budget = fuel;
        self.normalize_in(&mut budget).map_err(|_| FuelExhausted { fuel })
    }

    fn normalize_in(&self, budget: &mut u64) -> Result<Formula, FuelExhausted> {
        Ok(match self {
            Formula::Atom(x, args) => {
                let mut out = Vec::with_capacity(args.len());
                for a in args {
                    let mut cur = a.clone();
                    while let Some(next) = cur.beta_step() {
                        if *budget == 0 {
                            return Err(FuelExhausted { fuel: 0 });
                        }
                        *budget -= 1;
                        cur = next;
                    }
                    out.push(cur);
                }
                Formula::Atom(x.clone(), out)
            }
            Formula::Lolli(p, q) => Formula::lolli(p.normalize_in(budget)?, q.normalize_in(budget)?),
            Formula::Bang(p) => Formula::bang(p.normalize_in(budget)?),
            Formula::Forall2(x, k, body) => {
                Formula::forall2(x.clone(), k.clone(), body.normalize_in(budget)?)
            }
            Formula::Forall1(x, ty, body) => {
                Formula::forall1(x.clone(), ty.clone(), body.normalize_in(budget)?)
            }
            Formula::ForallTy(a, body) => Formula::forall_ty(a.clone(), body.normalize_in(budget)?),
        })
    }

    /// α-equivalence modulo β-conversion of embedded terms.
    pub fn conv(&self, other: &Formula) -> bool {
        if self.alpha_eq(other) {
            return true;
        }
        match (self.beta_normalize(CONV_FUEL), other.beta_normalize(CONV_FUEL)) {
            (Ok(a), Ok(b)) => a.alpha_eq(&b),
            _ => false,
        }
    }

    /// Number of `!` on each root-to-atom path, left to right.
    pub fn bang_paths(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.walk_bangs(0, &mut out);
        out
    }

    fn walk_bangs(&self, depth: usize, out: &mut Vec<usize>) {
        match self {
            Formula::Atom(..) => out.push(depth),
            Formula::Lolli(p, q) => {
                p.walk_bangs(depth, out);
                q.walk_bangs(depth, out);
            }
            Formula::Bang(p) => p.walk_bangs(depth + 1, out),
            Formula::Forall2(_, _, b) | Formula::Forall1(_, _, b) | Formula::ForallTy(_, b) => {
                b.walk_bangs(depth, out)
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_, args) => 1 + args.iter().map(TermExpr::size).sum::<usize>(),
            Formula::Lolli(p, q) => 1 + p.size() + q.size(),
            Formula::Bang(p) => 1 + p.size(),
            Formula::Forall2(_, k, b) => 1 + k.iter().map(TypeExpr::size).sum::<usize>() + b.size(),
            Formula::Forall1(_, t, b) => 1 + t.size() + b.size(),
            Formula::ForallTy(_, b) => 1 + b.size(),
        }
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Self) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for Formula {}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> TermExpr {
        TermExpr::var(x)
    }
    fn nat_ty() -> TypeExpr {
        TypeExpr::var("nat")
    }

    #[test]
    fn alpha_renames_predicates() {
        let a = Formula::forall2("X", vec![nat_ty()], Formula::atom("X", vec![v("0")]));
        let b = Formula::forall2("Y", vec![nat_ty()], Formula::atom("Y", vec![v("0")]));
        assert_eq!(a, b);
    }

    #[test]
    fn pred_subst_two_atoms() {
        let p = Formula::lolli(Formula::atom("X", vec![v("a")]), Formula::atom("X", vec![v("b")]));
        let q = Formula::atom("Z", vec![v("x"), v("x")]);
        let out = p.subst_pred("X", &["x".into()], &q).unwrap();
        let expect = Formula::lolli(
            Formula::atom("Z", vec![v("a"), v("a")]),
            Formula::atom("Z", vec![v("b"), v("b")]),
        );
        assert_eq!(out, expect);
    }

    #[test]
    fn pred_subst_under_first_order_binder() {
        let p = Formula::forall1("y", nat_ty(), Formula::atom("X", vec![v("y")]));
        let q = Formula::atom("Z", vec![v("x")]);
        let out = p.subst_pred("X", &["x".into()], &q).unwrap();
        assert_eq!(out, Formula::forall1("y", nat_ty(), Formula::atom("Z", vec![v("y")])));
    }

    #[test]
    fn pred_subst_avoids_capture() {
        // (∀y. X y)[Z x y / X x]: the y free in Q must stay free.
        let p = Formula::forall1("y", nat_ty(), Formula::atom("X", vec![v("y")]));
        let q = Formula::atom("Z", vec![v("x"), v("y")]);
        let out = p.subst_pred("X", &["x".into()], &q).unwrap();
        assert!(out.occurs_free("y"));
    }

    #[test]
    fn pred_subst_arity_mismatch() {
        let p = Formula::atom("X", vec![v("a"), v("b")]);
        let err = p.subst_pred("X", &["x".into()], &Formula::atom("Z", vec![])).unwrap_err();
        assert_eq!((err.expected, err.found), (1, 2));
    }

    #[test]
    fn conv_reduces_embedded_terms() {
        let redex = TermExpr::app(TermExpr::lam("z", nat_ty(), v("z")), v("a"));
        let p = Formula::atom("X", vec![redex]);
        assert!(p.conv(&Formula::atom("X", vec![v("a")])));
        assert!(!p.alpha_eq(&Formula::atom("X", vec![v("a")])));
    }
}
