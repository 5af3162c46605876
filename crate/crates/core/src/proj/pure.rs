//! Untyped λ-terms in de Bruijn form. Binders keep a name hint for printing
//! only; equality ignores it, so `==` is α-equivalence.

use std::collections::BTreeSet;
use std::fmt;

use crate::syntax::names::fresh_name;
use crate::syntax::FuelExhausted;

#[derive(Clone, Debug)]
pub enum PureTerm {
    /// Bound variable, by de Bruijn index.
    Var(usize),
    /// Free variable, by name.
    Free(String),
    Lam(String, Box<PureTerm>),
    App(Box<PureTerm>, Box<PureTerm>),
}

impl PartialEq for PureTerm {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (PureTerm::Var(i), PureTerm::Var(j)) => i == j,
            (PureTerm::Free(x), PureTerm::Free(y)) => x == y,
            (PureTerm::Lam(_, a), PureTerm::Lam(_, b)) => a == b,
            (PureTerm::App(f1, a1), PureTerm::App(f2, a2)) => f1 == f2 && a1 == a2,
            _ => false,
        }
    }
}

impl Eq for PureTerm {}

/// A normal form together with the number of β-contractions used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub term: PureTerm,
    pub steps: u64,
}

struct Budget {
    fuel: u64,
    steps: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<(), FuelExhausted> {
        if self.steps >= self.fuel {
            return Err(FuelExhausted { fuel: self.fuel });
        }
        self.steps += 1;
        Ok(())
    }
}

impl PureTerm {
    pub fn free(x: impl Into<String>) -> Self {
        PureTerm::Free(x.into())
    }

    pub fn lam(hint: impl Into<String>, body: PureTerm) -> Self {
        PureTerm::Lam(hint.into(), Box::new(body))
    }

    pub fn app(f: PureTerm, a: PureTerm) -> Self {
        PureTerm::App(Box::new(f), Box::new(a))
    }

    pub fn apps(f: PureTerm, args: impl IntoIterator<Item = PureTerm>) -> Self {
        args.into_iter().fold(f, PureTerm::app)
    }

    /// Abstracts the free variable `x`: `λx. self`.
    pub fn abstract_free(&self, x: &str) -> PureTerm {
        fn go(t: &PureTerm, x: &str, depth: usize) -> PureTerm {
            match t {
                PureTerm::Var(i) => PureTerm::Var(if *i >= depth { i + 1 } else { *i }),
                PureTerm::Free(y) if y == x => PureTerm::Var(depth),
                PureTerm::Free(_) => t.clone(),
                PureTerm::Lam(h, b) => PureTerm::lam(h.clone(), go(b, x, depth + 1)),
                PureTerm::App(f, a) => PureTerm::app(go(f, x, depth), go(a, x, depth)),
            }
        }
        PureTerm::lam(x, go(self, x, 0))
    }

    /// Replaces the free variable `x` by `s`.
    pub fn subst_free(&self, x: &str, s: &PureTerm) -> PureTerm {
        fn go(t: &PureTerm, x: &str, s: &PureTerm, depth: usize) -> PureTerm {
            match t {
                PureTerm::Free(y) if y == x => s.shift(depth as isize, 0),
                PureTerm::Var(_) | PureTerm::Free(_) => t.clone(),
                PureTerm::Lam(h, b) => PureTerm::lam(h.clone(), go(b, x, s, depth + 1)),
                PureTerm::App(f, a) => PureTerm::app(go(f, x, s, depth), go(a, x, s, depth)),
            }
        }
        go(self, x, s, 0)
    }

    /// Replaces the free variables of `map` simultaneously.
    pub fn subst_free_many(&self, map: &[(String, PureTerm)]) -> PureTerm {
        fn go(t: &PureTerm, map: &[(String, PureTerm)], depth: usize) -> PureTerm {
            match t {
                PureTerm::Free(y) => match map.iter().find(|(x, _)| x == y) {
                    Some((_, s)) => s.shift(depth as isize, 0),
                    None => t.clone(),
                },
                PureTerm::Var(_) => t.clone(),
                PureTerm::Lam(h, b) => PureTerm::lam(h.clone(), go(b, map, depth + 1)),
                PureTerm::App(f, a) => PureTerm::app(go(f, map, depth), go(a, map, depth)),
            }
        }
        go(self, map, 0)
    }

    pub fn shift(&self, d: isize, cutoff: usize) -> PureTerm {
        match self {
            PureTerm::Var(i) if *i >= cutoff => PureTerm::Var((*i as isize + d) as usize),
            PureTerm::Var(_) | PureTerm::Free(_) => self.clone(),
            PureTerm::Lam(h, b) => PureTerm::lam(h.clone(), b.shift(d, cutoff + 1)),
            PureTerm::App(f, a) => PureTerm::app(f.shift(d, cutoff), a.shift(d, cutoff)),
        }
    }

    /// `body[arg/0]` for the body of a binder, removing that binder.
    pub fn instantiate(body: &PureTerm, arg: &PureTerm) -> PureTerm {
        fn go(t: &PureTerm, arg: &PureTerm, depth: usize) -> PureTerm {
            match t {
                PureTerm::Var(i) if *i == depth => arg.shift(depth as isize, 0),
                PureTerm::Var(i) if *i > depth => PureTerm::Var(i - 1),
                PureTerm::Var(_) | PureTerm::Free(_) => t.clone(),
                PureTerm::Lam(h, b) => PureTerm::lam(h.clone(), go(b, arg, depth + 1)),
                PureTerm::App(f, a) => PureTerm::app(go(f, arg, depth), go(a, arg, depth)),
            }
        }
        go(body, arg, 0)
    }

    pub fn free_names(&self) -> BTreeSet<String> {
        fn go(t: &PureTerm, out: &mut BTreeSet<String>) {
            match t {
                PureTerm::Free(x) => {
                    out.insert(x.clone());
                }
                PureTerm::Var(_) => {}
                PureTerm::Lam(_, b) => go(b, out),
                PureTerm::App(f, a) => {
                    go(f, out);
                    go(a, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    /// No dangling indices and no free names.
    pub fn is_closed(&self) -> bool {
        self.max_dangling(0).is_none() && self.free_names().is_empty()
    }

    fn max_dangling(&self, depth: usize) -> Option<usize> {
        match self {
            PureTerm::Var(i) if *i >= depth => Some(i - depth),
            PureTerm::Var(_) | PureTerm::Free(_) => None,
            PureTerm::Lam(_, b) => b.max_dangling(depth + 1),
            PureTerm::App(f, a) => f.max_dangling(depth).max(a.max_dangling(depth)),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            PureTerm::Var(_) | PureTerm::Free(_) => 1,
            PureTerm::Lam(_, b) => 1 + b.size(),
            PureTerm::App(f, a) => 1 + f.size() + a.size(),
        }
    }

    pub fn is_normal(&self) -> bool {
        match self {
            PureTerm::Var(_) | PureTerm::Free(_) => true,
            PureTerm::Lam(_, b) => b.is_normal(),
            PureTerm::App(f, a) => !matches!(**f, PureTerm::Lam(..)) && f.is_normal() && a.is_normal(),
        }
    }

    /// Normal-order (leftmost-outermost) normalization with a step budget.
    pub fn normalize(&self, fuel: u64) -> Result<Normalized, FuelExhausted> {
        let mut budget = Budget { fuel, steps: 0 };
        let term = nf(self.clone(), &mut budget)?;
        Ok(Normalized { term, steps: budget.steps })
    }

    /// Weak head normal form with a step budget.
    pub fn whnf(&self, fuel: u64) -> Result<Normalized, FuelExhausted> {
        let mut budget = Budget { fuel, steps: 0 };
        let term = whnf(self.clone(), &mut budget)?;
        Ok(Normalized { term, steps: budget.steps })
    }

    /// Church numeral `λf. λx. fⁿ x`.
    pub fn church(n: u64) -> PureTerm {
        let mut body = PureTerm::Var(0);
        for _ in 0..n {
            body = PureTerm::app(PureTerm::Var(1), body);
        }
        PureTerm::lam("f", PureTerm::lam("x", body))
    }

    /// Reads a normal Church numeral `λf. λx. fⁿ x` back.
    pub fn decode_church(&self) -> Option<u64> {
        let PureTerm::Lam(_, outer) = self else { return None };
        match outer.as_ref() {
            PureTerm::Lam(_, body) => {
                let mut n = 0;
                let mut t = body.as_ref();
                loop {
                    match t {
                        PureTerm::Var(0) => return Some(n),
                        PureTerm::App(f, a) if matches!(**f, PureTerm::Var(1)) => {
                            n += 1;
                            t = a;
                        }
                        _ => return None,
                    }
                }
            }
            _ => None,
        }
    }
}

fn whnf(mut t: PureTerm, budget: &mut Budget) -> Result<PureTerm, FuelExhausted> {
    loop {
        match t {
            PureTerm::App(f, a) => {
                let f = whnf(*f, budget)?;
                match f {
                    PureTerm::Lam(_, body) => {
                        budget.tick()?;
                        t = PureTerm::instantiate(&body, &a);
                    }
                    other => return Ok(PureTerm::App(Box::new(other), a)),
                }
            }
            other => return Ok(other),
        }
    }
}

fn nf(t: PureTerm, budget: &mut Budget) -> Result<PureTerm, FuelExhausted> {
    match whnf(t, budget)? {
        PureTerm::Lam(h, b) => Ok(PureTerm::Lam(h, Box::new(nf(*b, budget)?))),
        PureTerm::App(f, a) => {
            let f = nf(*f, budget)?;
            let a = nf(*a, budget)?;
            Ok(PureTerm::App(Box::new(f), Box::new(a)))
        }
        other => Ok(other),
    }
}

fn fmt_pure(
    t: &PureTerm,
    names: &mut Vec<String>,
    free: &BTreeSet<String>,
    level: u8,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    match t {
        PureTerm::Var(i) => match names.len().checked_sub(i + 1) {
            Some(k) => write!(f, "{}", names[k]),
            None => write!(f, "#{i}"),
        },
        PureTerm::Free(x) => write!(f, "{x}"),
        PureTerm::Lam(h, b) => {
            if level > 0 {
                write!(f, "(")?;
            }
            let name = if names.contains(h) || free.contains(h) {
                fresh_name(h, |c| names.iter().any(|n| n == c) || free.contains(c))
            } else {
                h.clone()
            };
            write!(f, "λ{name}. ")?;
            names.push(name);
            fmt_pure(b, names, free, 0, f)?;
            names.pop();
            if level > 0 {
                write!(f, ")")?;
            }
            Ok(())
        }
        PureTerm::App(g, a) => {
            if level > 1 {
                write!(f, "(")?;
            }
            fmt_pure(g, names, free, 1, f)?;
            write!(f, " ")?;
            fmt_pure(a, names, free, 2, f)?;
            if level > 1 {
                write!(f, ")")?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for PureTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_pure(self, &mut Vec::new(), &self.free_names(), 0, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn church_plus() -> PureTerm {
        // λm. λn. λf. λx. m f (n f x)
        let v = PureTerm::Var;
        let body = PureTerm::apps(v(3), [v(1), PureTerm::apps(v(2), [v(1), v(0)])]);
        PureTerm::lam("m", PureTerm::lam("n", PureTerm::lam("f", PureTerm::lam("x", body))))
    }

    #[test]
    fn church_round_trip() {
        for n in 0..10 {
            assert_eq!(PureTerm::church(n).decode_church(), Some(n));
        }
        assert_eq!(PureTerm::lam("x", PureTerm::Var(0)).decode_church(), None);
        assert_eq!(PureTerm::lam("f", PureTerm::free("y")).decode_church(), None);
    }

    #[test]
    fn normalizes_addition() {
        let t = PureTerm::apps(church_plus(), [PureTerm::church(2), PureTerm::church(3)]);
        let out = t.normalize(1000).unwrap();
        assert_eq!(out.term.decode_church(), Some(5));
        assert!(out.steps > 0);
    }

    #[test]
    fn omega_exhausts_fuel() {
        let d = PureTerm::lam("x", PureTerm::app(PureTerm::Var(0), PureTerm::Var(0)));
        let omega = PureTerm::app(d.clone(), d);
        assert_eq!(omega.normalize(50), Err(FuelExhausted { fuel: 50 }));
    }

    #[test]
    fn normal_order_skips_unused_divergence() {
        let d = PureTerm::lam("x", PureTerm::app(PureTerm::Var(0), PureTerm::Var(0)));
        let omega = PureTerm::app(d.clone(), d);
        let k = PureTerm::lam("a", PureTerm::lam("b", PureTerm::Var(1)));
        let t = PureTerm::apps(k, [PureTerm::free("y"), omega]);
        assert_eq!(t.normalize(10).unwrap().term, PureTerm::free("y"));
    }

    #[test]
    fn printing_freshens_clashes() {
        let t = PureTerm::lam("x", PureTerm::lam("x", PureTerm::app(PureTerm::Var(1), PureTerm::Var(0))));
        assert_eq!(t.to_string(), "λx. λx'. x x'");
        let u = PureTerm::free("y").abstract_free("y");
        assert_eq!(u, PureTerm::lam("z", PureTerm::Var(0)));
    }
}
