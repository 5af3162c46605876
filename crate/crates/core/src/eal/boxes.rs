//! Terms with explicit boxes: each promotion is kept as a box whose body
//! sees only its doors, with the door values recorded outside.

use std::fmt;

use crate::kernel::{CheckedProof, Derivation, DerivationRule};
use crate::proj::PureTerm;

#[derive(Clone, Debug, PartialEq)]
pub enum BoxTerm {
    Var(String),
    Lam(String, Box<BoxTerm>),
    App(Box<BoxTerm>, Box<BoxTerm>),
    /// `box(body)[x₁ ← u₁, …, xₙ ← uₙ]`
    Box(Box<BoxTerm>, Vec<(String, BoxTerm)>),
}

impl BoxTerm {
    pub fn var(x: impl Into<String>) -> Self {
        BoxTerm::Var(x.into())
    }

    pub fn lam(x: impl Into<String>, body: BoxTerm) -> Self {
        BoxTerm::Lam(x.into(), Box::new(body))
    }

    pub fn app(f: BoxTerm, a: BoxTerm) -> Self {
        BoxTerm::App(Box::new(f), Box::new(a))
    }

    pub fn boxed(body: BoxTerm, doors: Vec<(String, BoxTerm)>) -> Self {
        BoxTerm::Box(Box::new(body), doors)
    }

    /// Maximal number of boxes enclosing a node. Door values sit outside
    /// their box.
    pub fn depth(&self) -> usize {
        match self {
            BoxTerm::Var(_) => 0,
            BoxTerm::Lam(_, b) => b.depth(),
            BoxTerm::App(f, a) => f.depth().max(a.depth()),
            BoxTerm::Box(body, doors) => {
                doors.iter().map(|(_, u)| u.depth()).max().unwrap_or(0).max(1 + body.depth())
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            BoxTerm::Var(_) => 1,
            BoxTerm::Lam(_, b) => 1 + b.size(),
            BoxTerm::App(f, a) => 1 + f.size() + a.size(),
            BoxTerm::Box(body, doors) => 1 + body.size() + doors.iter().map(|(_, u)| u.size()).sum::<usize>(),
        }
    }

    pub fn box_count(&self) -> usize {
        match self {
            BoxTerm::Var(_) => 0,
            BoxTerm::Lam(_, b) => b.box_count(),
            BoxTerm::App(f, a) => f.box_count() + a.box_count(),
            BoxTerm::Box(body, doors) => 1 + body.box_count() + doors.iter().map(|(_, u)| u.box_count()).sum::<usize>(),
        }
    }

    /// Performs every recorded substitution.
    pub fn erase(&self) -> PureTerm {
        match self {
            BoxTerm::Var(x) => PureTerm::free(x.clone()),
            BoxTerm::Lam(x, b) => b.erase().abstract_free(x),
            BoxTerm::App(f, a) => PureTerm::app(f.erase(), a.erase()),
            BoxTerm::Box(body, doors) => {
                let map: Vec<(String, PureTerm)> = doors.iter().map(|(x, u)| (x.clone(), u.erase())).collect();
                body.erase().subst_free_many(&map)
            }
        }
    }
}

impl fmt::Display for BoxTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoxTerm::Var(x) => write!(f, "{x}"),
            BoxTerm::Lam(x, b) => write!(f, "(λ{x}. {b})"),
            BoxTerm::App(g, a) => write!(f, "({g} {a})"),
            BoxTerm::Box(body, doors) => {
                write!(f, "box({body})[")?;
                for (i, (x, u)) in doors.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{x} <- {u}")?;
                }
                write!(f, "]")
            }
        }
    }
}

/// The extracted term with every promotion of the proof kept as a box.
pub fn to_box_term(proof: &CheckedProof) -> BoxTerm {
    from_derivation(&proof.derivation)
}

fn from_derivation(d: &Derivation) -> BoxTerm {
    match &d.rule {
        DerivationRule::Axiom { label } => BoxTerm::var(label.clone()),
        DerivationRule::Abs { label } => BoxTerm::lam(label.clone(), from_derivation(&d.children[0])),
        DerivationRule::App => BoxTerm::app(from_derivation(&d.children[0]), from_derivation(&d.children[1])),
        DerivationRule::Promote { labels } => {
            let (body, premises) = d.children.split_last().expect("promotion has a body");
            let doors = labels.iter().cloned().zip(premises.iter().map(from_derivation)).collect();
            BoxTerm::boxed(from_derivation(body), doors)
        }
        _ => from_derivation(&d.children[0]),
    }
}
