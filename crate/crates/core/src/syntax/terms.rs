//! Church-style first-order terms: `x | s t | t τ | λx:τ. t | Λα. t`.

use std::collections::BTreeSet;

use super::names::{fresh_avoiding, AlphaEnv};
use super::types::TypeExpr;
use super::FuelExhausted;

#[derive(Clone, Debug)]
pub enum TermExpr {
    Var(String),
    App(Box<TermExpr>, Box<TermExpr>),
    TyApp(Box<TermExpr>, TypeExpr),
    Lam(String, TypeExpr, Box<TermExpr>),
    TyLam(String, Box<TermExpr>),
}

impl TermExpr {
    pub fn var(name: impl Into<String>) -> Self {
        TermExpr::Var(name.into())
    }

    pub fn app(f: TermExpr, a: TermExpr) -> Self {
        TermExpr::App(Box::new(f), Box::new(a))
    }

    /// Left-nested application `f a₁ … aₙ`.
    pub fn apps(f: TermExpr, args: impl IntoIterator<Item = TermExpr>) -> Self {
        args.into_iter().fold(f, TermExpr::app)
    }

    pub fn ty_app(f: TermExpr, ty: TypeExpr) -> Self {
        TermExpr::TyApp(Box::new(f), ty)
    }

    pub fn lam(x: impl Into<String>, ty: TypeExpr, body: TermExpr) -> Self {
        TermExpr::Lam(x.into(), ty, Box::new(body))
    }

    pub fn ty_lam(a: impl Into<String>, body: TermExpr) -> Self {
        TermExpr::TyLam(a.into(), Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            TermExpr::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            TermExpr::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            TermExpr::TyApp(f, _) | TermExpr::TyLam(_, f) => f.collect_free(bound, out),
            TermExpr::Lam(x, _, body) => {
                bound.push(x.clone());
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn occurs_free(&self, x: &str) -> bool {
        match self {
            TermExpr::Var(y) => x == y,
            TermExpr::App(f, a) => f.occurs_free(x) || a.occurs_free(x),
            TermExpr::TyApp(f, _) | TermExpr::TyLam(_, f) => f.occurs_free(x),
            TermExpr::Lam(y, _, body) => x != y && body.occurs_free(x),
        }
    }

    pub fn free_type_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free_types(&mut Vec::new(), &mut out);
        out
    }

    pub(crate) fn collect_free_types(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            TermExpr::Var(_) => {}
            TermExpr::App(f, a) => {
                f.collect_free_types(bound, out);
                a.collect_free_types(bound, out);
            }
            TermExpr::TyApp(f, ty) => {
                f.collect_free_types(bound, out);
                ty.collect_free(bound, out);
            }
            TermExpr::Lam(_, ty, body) => {
                ty.collect_free(bound, out);
                body.collect_free_types(bound, out);
            }
            TermExpr::TyLam(a, body) => {
                bound.push(a.clone());
                body.collect_free_types(bound, out);
                bound.pop();
            }
        }
    }

    /// All names used anywhere in the term, of either sort.
    pub(crate) fn all_names(&self, out: &mut BTreeSet<String>) {
        match self {
            TermExpr::Var(x) => {
                out.insert(x.clone());
            }
            TermExpr::App(f, a) => {
                f.all_names(out);
                a.all_names(out);
            }
            TermExpr::TyApp(f, ty) => {
                f.all_names(out);
                ty.all_vars(out);
            }
            TermExpr::Lam(x, ty, body) => {
                out.insert(x.clone());
                ty.all_vars(out);
                body.all_names(out);
            }
            TermExpr::TyLam(a, body) => {
                out.insert(a.clone());
                body.all_names(out);
            }
        }
    }

    /// Capture-avoiding `self[s/x]`.
    pub fn subst(&self, x: &str, s: &TermExpr) -> TermExpr {
        self.subst_many(&[(x.to_string(), s.clone())])
    }

    /// Simultaneous capture-avoiding substitution of first-order variables.
    pub fn subst_many(&self, map: &[(String, TermExpr)]) -> TermExpr {
        if map.is_empty() {
            return self.clone();
        }
        match self {
            TermExpr::Var(y) => map
                .iter()
                .find(|(k, _)| k == y)
                .map(|(_, v)| v.clone())
                .unwrap_or_else(|| self.clone()),
            TermExpr::App(f, a) => TermExpr::app(f.subst_many(map), a.subst_many(map)),
            TermExpr::TyApp(f, ty) => TermExpr::ty_app(f.subst_many(map), ty.clone()),
            TermExpr::Lam(y, ty, body) => {
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
                    let renamed = body.subst(y, &TermExpr::Var(y2.clone()));
                    TermExpr::lam(y2, ty.clone(), renamed.subst_many(&inner))
                } else {
                    TermExpr::lam(y.clone(), ty.clone(), body.subst_many(&inner))
                }
            }
            TermExpr::TyLam(a, body) => {
                let mut ftv = BTreeSet::new();
                for (_, v) in map {
                    ftv.extend(v.free_type_vars());
                }
                if ftv.contains(a) {
                    let mut avoid = ftv;
                    body.all_names(&mut avoid);
                    let a2 = fresh_avoiding(a, &avoid);
                    let renamed = body.subst_type(a, &TypeExpr::Var(a2.clone()));
                    TermExpr::ty_lam(a2, renamed.subst_many(map))
                } else {
                    TermExpr::ty_lam(a.clone(), body.subst_many(map))
                }
            }
        }
    }

    /// Capture-avoiding `self[τ/α]`.
    pub fn subst_type(&self, alpha: &str, tau: &TypeExpr) -> TermExpr {
        match self {
            TermExpr::Var(_) => self.clone(),
            TermExpr::App(f, a) => TermExpr::app(f.subst_type(alpha, tau), a.subst_type(alpha, tau)),
            TermExpr::TyApp(f, ty) => TermExpr::ty_app(f.subst_type(alpha, tau), ty.subst(alpha, tau)),
            TermExpr::Lam(x, ty, body) => {
                TermExpr::lam(x.clone(), ty.subst(alpha, tau), body.subst_type(alpha, tau))
            }
            TermExpr::TyLam(b, body) => {
                if b == alpha {
                    return self.clone();
                }
                if tau.occurs_free(b) {
                    let mut avoid = tau.free_vars();
                    body.all_names(&mut avoid);
                    avoid.insert(alpha.to_string());
                    let b2 = fresh_avoiding(b, &avoid);
                    let renamed = body.subst_type(b, &TypeExpr::Var(b2.clone()));
                    TermExpr::ty_lam(b2, renamed.subst_type(alpha, tau))
                } else {
                    TermExpr::ty_lam(b.clone(), body.subst_type(alpha, tau))
                }
            }
        }
    }

    pub fn alpha_eq(&self, other: &TermExpr) -> bool {
        self.alpha_eq_in(other, &mut AlphaEnv::new())
    }

    pub(crate) fn alpha_eq_in(&self, other: &TermExpr, env: &mut AlphaEnv) -> bool {
        match (self, other) {
            (TermExpr::Var(x), TermExpr::Var(y)) => env.fo_same(x, y),
            (TermExpr::App(f1, a1), TermExpr::App(f2, a2)) => {
                f1.alpha_eq_in(f2, env) && a1.alpha_eq_in(a2, env)
            }
            (TermExpr::TyApp(f1, t1), TermExpr::TyApp(f2, t2)) => {
                f1.alpha_eq_in(f2, env) && t1.alpha_eq_in(t2, env)
            }
            (TermExpr::Lam(x, t1, b1), TermExpr::Lam(y, t2, b2)) => {
                t1.alpha_eq_in(t2, env) && env.with_fo(x, y, |env| b1.alpha_eq_in(b2, env))
            }
            (TermExpr::TyLam(a, b1), TermExpr::TyLam(b, b2)) => {
                env.with_ty(a, b, |env| b1.alpha_eq_in(b2, env))
            }
            _ => false,
        }
    }

    /// Contracts `self` if it is itself a redex.
    pub fn contract(&self) -> Option<TermExpr> {
        match self {
            TermExpr::App(f, a) => match f.as_ref() {
                TermExpr::Lam(x, _, body) => Some(body.subst(x, a)),
                _ => None,
            },
            TermExpr::TyApp(f, ty) => match f.as_ref() {
                TermExpr::TyLam(a, body) => Some(body.subst_type(a, ty)),
                _ => None,
            },
            _ => None,
        }
    }

    /// One leftmost-outermost β-step, or `None` on a normal form.
    pub fn beta_step(&self) -> Option<TermExpr> {
        if let Some(r) = self.contract() {
            return Some(r);
        }
        match self {
            TermExpr::Var(_) => None,
            TermExpr::App(f, a) => {
                if let Some(f2) = f.beta_step() {
                    Some(TermExpr::App(Box::new(f2), a.clone()))
                } else {
                    a.beta_step().map(|a2| TermExpr::App(f.clone(), Box::new(a2)))
                }
            }
            TermExpr::TyApp(f, ty) => f.beta_step().map(|f2| TermExpr::ty_app(f2, ty.clone())),
            TermExpr::Lam(x, ty, body) => body
                .beta_step()
                .map(|b| TermExpr::lam(x.clone(), ty.clone(), b)),
            TermExpr::TyLam(a, body) => body.beta_step().map(|b| TermExpr::ty_lam(a.clone(), b)),
        }
    }

    /// One innermost (leftmost) β-step: a redex is contracted only once its
    /// components are normal.
    pub fn beta_step_innermost(&self) -> Option<TermExpr> {
        match self {
            TermExpr::Var(_) => None,
            TermExpr::App(f, a) => {
                if let Some(f2) = f.beta_step_innermost() {
                    return Some(TermExpr::App(Box::new(f2), a.clone()));
                }
                if let Some(a2) = a.beta_step_innermost() {
                    return Some(TermExpr::App(f.clone(), Box::new(a2)));
                }
                self.contract()
            }
            TermExpr::TyApp(f, ty) => {
                if let Some(f2) = f.beta_step_innermost() {
                    return Some(TermExpr::ty_app(f2, ty.clone()));
                }
                self.contract()
            }
            TermExpr::Lam(x, ty, body) => body
                .beta_step_innermost()
                .map(|b| TermExpr::lam(x.clone(), ty.clone(), b)),
            TermExpr::TyLam(a, body) => body
                .beta_step_innermost()
                .map(|b| TermExpr::ty_lam(a.clone(), b)),
        }
    }

    /// Leftmost-outermost normalization within `fuel` contractions.
    pub fn beta_normalize(&self, fuel: u64) -> Result<TermExpr, FuelExhausted> {
        normalize_with(self, fuel, TermExpr::beta_step)
    }

    pub fn beta_normalize_innermost(&self, fuel: u64) -> Result<TermExpr, FuelExhausted> {
        normalize_with(self, fuel, TermExpr::beta_step_innermost)
    }

    pub fn is_normal(&self) -> bool {
        self.beta_step().is_none()
    }

    pub fn size(&self) -> usize {
        match self {
            TermExpr::Var(_) => 1,
            TermExpr::App(f, a) => 1 + f.size() + a.size(),
            TermExpr::TyApp(f, ty) => 1 + f.size() + ty.size(),
            TermExpr::Lam(_, ty, b) => 1 + ty.size() + b.size(),
            TermExpr::TyLam(_, b) => 1 + b.size(),
        }
    }

    /// Immediate subterms, addressed by position index.
    pub fn children(&self) -> Vec<&TermExpr> {
        match self {
            TermExpr::Var(_) => vec![],
            TermExpr::App(f, a) => vec![f, a],
            TermExpr::TyApp(f, _) | TermExpr::Lam(_, _, f) | TermExpr::TyLam(_, f) => vec![f],
        }
    }

    /// Subterm at a path of child indices (`App`: 0 function, 1 argument;
    /// every other node: 0 for its single term child).
    pub fn subterm_at(&self, path: &[usize]) -> Option<&TermExpr> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i).and_then(|c| c.subterm_at(rest)),
        }
    }

    /// Replaces the subterm at `path`. Binders along the path are kept as they
    /// are, so the replacement may mention them.
    pub fn replace_at(&self, path: &[usize], with: TermExpr) -> Option<TermExpr> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(with);
        };
        Some(match (self, i) {
            (TermExpr::App(f, a), 0) => TermExpr::App(Box::new(f.replace_at(rest, with)?), a.clone()),
            (TermExpr::App(f, a), 1) => TermExpr::App(f.clone(), Box::new(a.replace_at(rest, with)?)),
            (TermExpr::TyApp(f, ty), 0) => TermExpr::ty_app(f.replace_at(rest, with)?, ty.clone()),
            (TermExpr::Lam(x, ty, b), 0) => TermExpr::lam(x.clone(), ty.clone(), b.replace_at(rest, with)?),
            (TermExpr::TyLam(a, b), 0) => TermExpr::ty_lam(a.clone(), b.replace_at(rest, with)?),
            _ => return None,
        })
    }
}

fn normalize_with(
    t: &TermExpr,
    fuel: u64,
    step: impl Fn(&TermExpr) -> Option<TermExpr>,
) -> Result<TermExpr, FuelExhausted> {
    let mut cur = t.clone();
    let mut used = 0;
    loop {
        match step(&cur) {
            None => return Ok(cur),
            Some(next) => {
                if used == fuel {
                    return Err(FuelExhausted { fuel });
                }
                used += 1;
                cur = next;
            }
        }
    }
}

impl PartialEq for TermExpr {
    fn eq(&self, other: &Self) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for TermExpr {}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &str) -> TermExpr {
        TermExpr::var(x)
    }
    fn tv(a: &str) -> TypeExpr {
        TypeExpr::var(a)
    }

    #[test]
    fn alpha_examples() {
        let a = TermExpr::lam("x", tv("a"), v("x"));
        assert_eq!(a, TermExpr::lam("y", tv("a"), v("y")));
        assert_ne!(a, TermExpr::lam("x", tv("b"), v("x")));
    }

    #[test]
    fn subst_examples() {
        let s = v("s");
        assert_eq!(v("x").subst("x", &s), s);
        let shadow = TermExpr::lam("x", tv("t"), v("x"));
        assert_eq!(shadow.subst("x", &s), shadow);
        let id = TermExpr::lam("y", tv("t"), v("y"));
        let out = TermExpr::app(v("f"), v("x")).subst("x", &id);
        assert_eq!(out, TermExpr::app(v("f"), id));
    }

    #[test]
    fn subst_avoids_capture() {
        // (λy. x y)[y/x] must not capture.
        let t = TermExpr::lam("y", tv("t"), TermExpr::app(v("x"), v("y")));
        let out = t.subst("x", &v("y"));
        let expect = TermExpr::lam("z", tv("t"), TermExpr::app(v("y"), v("z")));
        assert_eq!(out, expect);
        // Type-level capture through Λ.
        let t = TermExpr::ty_lam("a", TermExpr::app(v("x"), v("k")));
        let arg = TermExpr::lam("u", tv("a"), v("u"));
        let out = t.subst("x", &arg);
        match out {
            TermExpr::TyLam(b, _) => assert_ne!(b, "a"),
            _ => panic!(),
        }
    }

    #[test]
    fn beta_examples() {
        let id = TermExpr::lam("x", tv("a"), v("x"));
        assert_eq!(TermExpr::app(id.clone(), v("y")).beta_step().unwrap(), v("y"));
        let poly = TermExpr::ty_lam("a", TermExpr::lam("x", tv("a"), v("x")));
        assert_eq!(
            TermExpr::ty_app(poly, tv("b")).beta_step().unwrap(),
            TermExpr::lam("x", tv("b"), v("x"))
        );
        assert!(v("x").beta_step().is_none());
        let nested = TermExpr::app(
            id.clone(),
            TermExpr::app(TermExpr::lam("y", tv("a"), v("y")), v("z")),
        );
        assert_eq!(nested.beta_normalize(10).unwrap(), v("z"));
    }

    #[test]
    fn fuel_is_enforced() {
        let id = TermExpr::lam("x", tv("a"), v("x"));
        let three = TermExpr::app(id.clone(), TermExpr::app(id.clone(), TermExpr::app(id, v("z"))));
        assert!(three.beta_normalize(1).is_err());
        assert!(three.beta_normalize(3).is_ok());
    }

    #[test]
    fn positions() {
        let t = TermExpr::app(v("f"), TermExpr::lam("x", tv("a"), v("x")));
        assert_eq!(t.subterm_at(&[1, 0]), Some(&v("x")));
        assert!(t.subterm_at(&[2]).is_none());
        let r = t.replace_at(&[0], v("g")).unwrap();
        assert_eq!(r, TermExpr::app(v("g"), TermExpr::lam("x", tv("a"), v("x"))));
    }
}
