//! System F types: `α | ∀α. τ | σ → τ`.

use std::collections::BTreeSet;

use super::names::{fresh_avoiding, AlphaEnv};

#[derive(Clone, Debug)]
pub enum TypeExpr {
    Var(String),
    Forall(String, Box<TypeExpr>),
    Arrow(Box<TypeExpr>, Box<TypeExpr>),
}

impl TypeExpr {
    pub fn var(name: impl Into<String>) -> Self {
        TypeExpr::Var(name.into())
    }

    pub fn arrow(dom: TypeExpr, cod: TypeExpr) -> Self {
        TypeExpr::Arrow(Box::new(dom), Box::new(cod))
    }

    pub fn forall(name: impl Into<String>, body: TypeExpr) -> Self {
        TypeExpr::Forall(name.into(), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    pub(crate) fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            TypeExpr::Var(a) => {
                if !bound.contains(a) {
                    out.insert(a.clone());
                }
            }
            TypeExpr::Forall(a, body) => {
                bound.push(a.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
            TypeExpr::Arrow(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
        }
    }

    pub fn occurs_free(&self, a: &str) -> bool {
        match self {
            TypeExpr::Var(b) => a == b,
            TypeExpr::Forall(b, body) => a != b && body.occurs_free(a),
            TypeExpr::Arrow(x, y) => x.occurs_free(a) || y.occurs_free(a),
        }
    }

    /// Every variable name appearing anywhere, bound or free.
    pub(crate) fn all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            TypeExpr::Var(a) => {
                out.insert(a.clone());
            }
            TypeExpr::Forall(a, body) => {
                out.insert(a.clone());
                body.all_vars(out);
            }
            TypeExpr::Arrow(x, y) => {
                x.all_vars(out);
                y.all_vars(out);
            }
        }
    }

    /// Capture-avoiding `self[σ/α]`.
    pub fn subst(&self, alpha: &str, sigma: &TypeExpr) -> TypeExpr {
        match self {
            TypeExpr::Var(b) if b == alpha => sigma.clone(),
            TypeExpr::Var(_) => self.clone(),
            TypeExpr::Arrow(x, y) => TypeExpr::arrow(x.subst(alpha, sigma), y.subst(alpha, sigma)),
            TypeExpr::Forall(b, body) => {
                if b == alpha || !body.occurs_free(alpha) {
                    return self.clone();
                }
                if sigma.occurs_free(b) {
                    let mut avoid = sigma.free_vars();
                    body.all_vars(&mut avoid);
                    avoid.insert(alpha.to_string());
                    let b2 = fresh_avoiding(b, &avoid);
                    let renamed = body.subst(b, &TypeExpr::Var(b2.clone()));
                    TypeExpr::forall(b2, renamed.subst(alpha, sigma))
                } else {
                    TypeExpr::forall(b.clone(), body.subst(alpha, sigma))
                }
            }
        }
    }

    pub fn alpha_eq(&self, other: &TypeExpr) -> bool {
        self.alpha_eq_in(other, &mut AlphaEnv::new())
    }

    pub(crate) fn alpha_eq_in(&self, other: &TypeExpr, env: &mut AlphaEnv) -> bool {
        match (self, other) {
            (TypeExpr::Var(a), TypeExpr::Var(b)) => env.ty_same(a, b),
            (TypeExpr::Arrow(a1, b1), TypeExpr::Arrow(a2, b2)) => {
                a1.alpha_eq_in(a2, env) && b1.alpha_eq_in(b2, env)
            }
            (TypeExpr::Forall(a, x), TypeExpr::Forall(b, y)) => {
                env.with_ty(a, b, |env| x.alpha_eq_in(y, env))
            }
            _ => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            TypeExpr::Var(_) => 1,
            TypeExpr::Forall(_, b) => 1 + b.size(),
            TypeExpr::Arrow(a, b) => 1 + a.size() + b.size(),
        }
    }
}

/// Structural equality is α-equivalence.
impl PartialEq for TypeExpr {
    fn eq(&self, other: &Self) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for TypeExpr {}
