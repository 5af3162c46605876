//! Second-order elementary affine types `α | ∀α. τ | σ ⊸ τ | !τ`.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::names::fresh_avoiding;
use crate::syntax::AlphaEnv;

#[derive(Clone, Debug)]
pub enum EalType {
    Var(String),
    Forall(String, Box<EalType>),
    Lolli(Box<EalType>, Box<EalType>),
    Bang(Box<EalType>),
}

impl EalType {
    pub fn var(a: impl Into<String>) -> Self {
        EalType::Var(a.into())
    }

    pub fn forall(a: impl Into<String>, body: EalType) -> Self {
        EalType::Forall(a.into(), Box::new(body))
    }

    pub fn lolli(a: EalType, b: EalType) -> Self {
        EalType::Lolli(Box::new(a), Box::new(b))
    }

    pub fn bang(a: EalType) -> Self {
        EalType::Bang(Box::new(a))
    }

    pub fn bangs(k: usize, a: EalType) -> Self {
        (0..k).fold(a, |acc, _| EalType::bang(acc))
    }

    /// `∀α. !(α ⊸ α) ⊸ !(α ⊸ α)`
    pub fn nat() -> Self {
        let a = || EalType::var("a");
        let aa = || EalType::lolli(a(), a());
        EalType::forall("a", EalType::lolli(EalType::bang(aa()), EalType::bang(aa())))
    }

    /// Strips leading `!`s, returning their number and the rest.
    pub fn unbang(&self) -> (usize, &EalType) {
        let mut k = 0;
        let mut t = self;
        while let EalType::Bang(inner) = t {
            k += 1;
            t = inner;
        }
        (k, t)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self {
            EalType::Var(a) => {
                if !bound.contains(a) {
                    out.insert(a.clone());
                }
            }
            EalType::Forall(a, b) => {
                bound.push(a.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            EalType::Lolli(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            EalType::Bang(a) => a.collect_free(bound, out),
        }
    }

    pub fn occurs_free(&self, a: &str) -> bool {
        match self {
            EalType::Var(b) => a == b,
            EalType::Forall(b, body) => a != b && body.occurs_free(a),
            EalType::Lolli(x, y) => x.occurs_free(a) || y.occurs_free(a),
            EalType::Bang(x) => x.occurs_free(a),
        }
    }

    fn all_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            EalType::Var(a) => {
                out.insert(a.clone());
            }
            EalType::Forall(a, b) => {
                out.insert(a.clone());
                b.all_vars(out);
            }
            EalType::Lolli(x, y) => {
                x.all_vars(out);
                y.all_vars(out);
            }
            EalType::Bang(x) => x.all_vars(out),
        }
    }

    /// Capture-avoiding `self[σ/α]`.
    pub fn subst(&self, alpha: &str, sigma: &EalType) -> EalType {
        match self {
            EalType::Var(b) if b == alpha => sigma.clone(),
            EalType::Var(_) => self.clone(),
            EalType::Lolli(x, y) => EalType::lolli(x.subst(alpha, sigma), y.subst(alpha, sigma)),
            EalType::Bang(x) => EalType::bang(x.subst(alpha, sigma)),
            EalType::Forall(b, body) => {
                if b == alpha || !body.occurs_free(alpha) {
                    return self.clone();
                }
                if sigma.occurs_free(b) {
                    let mut avoid = sigma.free_vars();
                    body.all_vars(&mut avoid);
                    avoid.insert(alpha.to_string());
                    let b2 = fresh_avoiding(b, &avoid);
                    let renamed = body.subst(b, &EalType::Var(b2.clone()));
                    EalType::forall(b2, renamed.subst(alpha, sigma))
                } else {
                    EalType::forall(b.clone(), body.subst(alpha, sigma))
                }
            }
        }
    }

    pub fn alpha_eq(&self, other: &EalType) -> bool {
        self.alpha_eq_in(other, &mut AlphaEnv::new())
    }

    fn alpha_eq_in(&self, other: &EalType, env: &mut AlphaEnv) -> bool {
        match (self, other) {
            (EalType::Var(a), EalType::Var(b)) => env.ty_same(a, b),
            (EalType::Lolli(a1, b1), EalType::Lolli(a2, b2)) => {
                a1.alpha_eq_in(a2, env) && b1.alpha_eq_in(b2, env)
            }
            (EalType::Bang(a), EalType::Bang(b)) => a.alpha_eq_in(b, env),
            (EalType::Forall(a, x), EalType::Forall(b, y)) => {
                env.with_ty(a, b, |env| x.alpha_eq_in(y, env))
            }
            _ => false,
        }
    }

    /// Number of `!` on each root-to-variable path, left to right.
    pub fn bang_paths(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.walk_bangs(0, &mut out);
        out
    }

    fn walk_bangs(&self, depth: usize, out: &mut Vec<usize>) {
        match self {
            EalType::Var(_) => out.push(depth),
            EalType::Forall(_, b) => b.walk_bangs(depth, out),
            EalType::Lolli(a, b) => {
                a.walk_bangs(depth, out);
                b.walk_bangs(depth, out);
            }
            EalType::Bang(a) => a.walk_bangs(depth + 1, out),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            EalType::Var(_) => 1,
            EalType::Forall(_, b) | EalType::Bang(b) => 1 + b.size(),
            EalType::Lolli(a, b) => 1 + a.size() + b.size(),
        }
    }
}

impl PartialEq for EalType {
    fn eq(&self, other: &Self) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for EalType {}

fn fmt_eal(t: &EalType, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        EalType::Var(a) => write!(f, "{a}"),
        EalType::Bang(a) => {
            write!(f, "!")?;
            fmt_eal(a, 1, f)
        }
        EalType::Lolli(a, b) => {
            if level > 0 {
                write!(f, "(")?;
            }
            fmt_eal(a, 1, f)?;
            write!(f, " -o ")?;
            fmt_eal(b, 0, f)?;
            if level > 0 {
                write!(f, ")")?;
            }
            Ok(())
        }
        EalType::Forall(a, b) => {
            if level > 0 {
                write!(f, "(")?;
            }
            write!(f, "forall {a}. ")?;
            fmt_eal(b, 0, f)?;
            if level > 0 {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for EalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_eal(self, 0, f)
    }
}
