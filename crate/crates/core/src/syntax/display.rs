//! Surface-syntax printing. Derived forms (`nat`, `unit`, `N(t)`,
//! `eq[τ](a, b)`, `P * Q`) are folded back when recognized.

use std::fmt;

use super::formula::Formula;
use super::library::{as_equality, as_nat_pred, as_tensor, nat, unit};
use super::terms::TermExpr;
use super::types::TypeExpr;

fn fmt_type(t: &TypeExpr, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if t.alpha_eq(&nat()) {
        return write!(f, "nat");
    }
    if t.alpha_eq(&unit()) {
        return write!(f, "unit");
    }
    match t {
        TypeExpr::Var(a) => write!(f, "{a}"),
        TypeExpr::Arrow(a, b) => {
            if level > 0 {
                write!(f, "(")?;
            }
            fmt_type(a, 1, f)?;
            write!(f, " -> ")?;
            fmt_type(b, 0, f)?;
            if level > 0 {
                write!(f, ")")?;
            }
            Ok(())
        }
        TypeExpr::Forall(a, body) => {
            if level > 0 {
                write!(f, "(")?;
            }
            write!(f, "forall {a}. ")?;
            fmt_type(body, 0, f)?;
            if level > 0 {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for TypeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_type(self, 0, f)
    }
}

fn fmt_term(t: &TermExpr, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t {
        TermExpr::Var(x) => write!(f, "{x}"),
        TermExpr::App(g, a) => {
            if level > 1 {
                write!(f, "(")?;
            }
            fmt_term(g, 1, f)?;
            write!(f, " ")?;
            fmt_term(a, 2, f)?;
            if level > 1 {
                write!(f, ")")?;
            }
            Ok(())
        }
        TermExpr::TyApp(g, ty) => {
            if level > 1 {
                write!(f, "(")?;
            }
            fmt_term(g, 1, f)?;
            write!(f, " [{ty}]")?;
            if level > 1 {
                write!(f, ")")?;
            }
            Ok(())
        }
        TermExpr::Lam(x, ty, body) => {
            if level > 0 {
                write!(f, "(")?;
            }
            write!(f, "fun({x}:{ty}) ")?;
            fmt_term(body, 0, f)?;
            if level > 0 {
                write!(f, ")")?;
            }
            Ok(())
        }
        TermExpr::TyLam(a, body) => {
            if level > 0 {
                write!(f, "(")?;
            }
            write!(f, "Fun({a}) ")?;
            fmt_term(body, 0, f)?;
            if level > 0 {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for TermExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_term(self, 0, f)
    }
}

fn write_terms(args: &[TermExpr], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            write!(f, ", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

/// Levels: 0 admits quantifiers and `-o`, 1 admits `*`, 2 is atomic.
fn fmt_formula(p: &Formula, level: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if let Some(t) = as_nat_pred(p) {
        return write!(f, "N({t})");
    }
    if let Some((ty, a, b)) = as_equality(p) {
        return write!(f, "eq[{ty}]({a}, {b})");
    }
    let open = |f: &mut fmt::Formatter<'_>, need: u8| -> fmt::Result {
        if level > need {
            write!(f, "(")?;
        }
        Ok(())
    };
    let close = |f: &mut fmt::Formatter<'_>, need: u8| -> fmt::Result {
        if level > need {
            write!(f, ")")?;
        }
        Ok(())
    };
    if let Some((a, b)) = as_tensor(p) {
        open(f, 1)?;
        fmt_formula(&a, 2, f)?;
        write!(f, " * ")?;
        fmt_formula(&b, 1, f)?;
        return close(f, 1);
    }
    match p {
        Formula::Atom(x, args) => {
            write!(f, "{x}")?;
            if !args.is_empty() {
                write!(f, "(")?;
                write_terms(args, f)?;
                write!(f, ")")?;
            }
            Ok(())
        }
        Formula::Lolli(a, b) => {
            open(f, 0)?;
            fmt_formula(a, 1, f)?;
            write!(f, " -o ")?;
            fmt_formula(b, 0, f)?;
            close(f, 0)
        }
        Formula::Bang(a) => {
            write!(f, "!")?;
            fmt_formula(a, 2, f)
        }
        Formula::Forall2(x, kind, body) => {
            open(f, 0)?;
            write!(f, "forall2 {x}:[")?;
            for (i, t) in kind.iter().enumerate() {
                if i > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{t}")?;
            }
            write!(f, "]. ")?;
            fmt_formula(body, 0, f)?;
            close(f, 0)
        }
        Formula::Forall1(x, ty, body) => {
            open(f, 0)?;
            write!(f, "forall {x}:{ty}. ")?;
            fmt_formula(body, 0, f)?;
            close(f, 0)
        }
        Formula::ForallTy(a, body) => {
            open(f, 0)?;
            write!(f, "forallt {a}. ")?;
            fmt_formula(body, 0, f)?;
            close(f, 0)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_formula(self, 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::library::{equality, nat_pred, tensor};

    #[test]
    fn folds_derived_forms() {
        assert_eq!(nat().to_string(), "nat");
        assert_eq!(TypeExpr::arrow(nat(), nat()).to_string(), "nat -> nat");
        let x = TermExpr::var("x");
        assert_eq!(nat_pred(x.clone()).to_string(), "N(x)");
        assert_eq!(equality(nat(), x.clone(), x.clone()).to_string(), "eq[nat](x, x)");
        let a = Formula::atom("A", vec![]);
        let t = tensor(a.clone(), Formula::bang(a.clone()));
        assert_eq!(Formula::lolli(t, a).to_string(), "A * !A -o A");
    }

    #[test]
    fn parenthesizes_by_precedence() {
        let a = || TypeExpr::var("a");
        let t = TypeExpr::arrow(TypeExpr::arrow(a(), a()), a());
        assert_eq!(t.to_string(), "(a -> a) -> a");
        let f = TermExpr::var("f");
        let app = TermExpr::app(f.clone(), TermExpr::app(f.clone(), TermExpr::var("x")));
        assert_eq!(app.to_string(), "f (f x)");
        let lam = TermExpr::lam("x", a(), TermExpr::ty_app(f, a()));
        assert_eq!(TermExpr::app(lam, TermExpr::var("y")).to_string(), "(fun(x:a) f [a]) y");
        let p = Formula::atom("P", vec![]);
        let l = Formula::lolli(Formula::lolli(p.clone(), p.clone()), Formula::bang(Formula::lolli(p.clone(), p)));
        assert_eq!(l.to_string(), "(P -o P) -o !(P -o P)");
    }
}
