//! From s-expressions to types, terms, formulas, traces and proof scripts.

use elx_core::kernel::{EqDirection, ProofScript};
use elx_core::rewrite::{BetaDirection, Equation, Orientation, Trace};
use elx_core::syntax::library::{equality, nat, nat_pred, tensor, unit};
use elx_core::syntax::{Formula, TermExpr, TypeExpr};
use elx_core::wf::ContextEntry;

use super::sexpr::{SExpr, SyntaxError};
use super::{Item, ProofItem};

type Result<T> = std::result::Result<T, SyntaxError>;

/// Words that cannot be used as names because they introduce syntax.
pub const RESERVED: &[&str] = &[
    "nat", "unit", "->", "forall", "fun", "Fun", "tapp", "atom", "-o", "forall2", "forall1", "forallt", "!",
    "N", "eq", "tensor", "refl",
];

fn err(e: &SExpr, message: impl Into<String>) -> SyntaxError {
    SyntaxError::new(e.pos(), message)
}

fn items<'a>(e: &'a SExpr, what: &str) -> Result<&'a [SExpr]> {
    match e {
        SExpr::List(items, _) => Ok(items),
        SExpr::Atom(a, _) => Err(err(e, format!("expected a list for {what}, found `{a}`"))),
    }
}

/// The arguments of `(head a₁ … aₙ)`, checking the count.
fn args(e: &SExpr, n: usize) -> Result<&[SExpr]> {
    let all = items(e, "a form")?;
    let head = all[0].as_atom().unwrap_or("?");
    if all.len() != n + 1 {
        return Err(err(e, format!("`{head}` takes {n} argument(s), found {}", all.len() - 1)));
    }
    Ok(&all[1..])
}

fn name(e: &SExpr) -> Result<String> {
    match e {
        SExpr::Atom(a, _) if RESERVED.contains(&a.as_str()) => Err(err(e, format!("`{a}` is reserved"))),
        SExpr::Atom(a, _) => Ok(a.clone()),
        SExpr::List(..) => Err(err(e, format!("expected a name, found {}", e.flat()))),
    }
}

fn names(e: &SExpr) -> Result<Vec<String>> {
    items(e, "a name list")?.iter().map(name).collect()
}

fn index(e: &SExpr) -> Result<usize> {
    e.as_atom()
        .and_then(|a| a.parse().ok())
        .ok_or_else(|| err(e, format!("expected a child index, found {}", e.flat())))
}

fn position(e: &SExpr) -> Result<Vec<usize>> {
    items(e, "a position")?.iter().map(index).collect()
}

fn keyword<'a>(e: &'a SExpr, options: &[&'a str], what: &str) -> Result<&'a str> {
    match e.as_atom() {
        Some(a) if options.contains(&a) => Ok(options.iter().find(|o| **o == a).expect("present")),
        _ => Err(err(e, format!("expected {what} ({}), found {}", options.join("|"), e.flat()))),
    }
}

pub fn read_type(e: &SExpr) -> Result<TypeExpr> {
    match e {
        SExpr::Atom(a, _) if a == "nat" => Ok(nat()),
        SExpr::Atom(a, _) if a == "unit" => Ok(unit()),
        SExpr::Atom(..) => Ok(TypeExpr::var(name(e)?)),
        SExpr::List(all, _) => match e.head() {
            Some("->") if all.len() >= 3 => {
                let tys = all[1..].iter().map(read_type).collect::<Result<Vec<_>>>()?;
                let (last, init) = tys.split_last().expect("nonempty");
                Ok(init.iter().rev().fold(last.clone(), |acc, t| TypeExpr::arrow(t.clone(), acc)))
            }
            Some("->") => Err(err(e, "`->` takes at least 2 arguments")),
            Some("forall") => {
                let a = args(e, 2)?;
                Ok(TypeExpr::forall(name(&a[0])?, read_type(&a[1])?))
            }
            _ => Err(err(e, format!("unknown type former in {}", e.flat()))),
        },
    }
}

pub fn read_term(e: &SExpr) -> Result<TermExpr> {
    match e {
        SExpr::Atom(..) => Ok(TermExpr::var(name(e)?)),
        SExpr::List(all, _) => match e.head() {
            Some("fun") => {
                let a = args(e, 3)?;
                Ok(TermExpr::lam(name(&a[0])?, read_type(&a[1])?, read_term(&a[2])?))
            }
            Some("Fun") => {
                let a = args(e, 2)?;
                Ok(TermExpr::ty_lam(name(&a[0])?, read_term(&a[1])?))
            }
            Some("tapp") => {
                let a = args(e, 2)?;
                Ok(TermExpr::ty_app(read_term(&a[0])?, read_type(&a[1])?))
            }
            _ if all.len() >= 2 => {
                let f = read_term(&all[0])?;
                let xs = all[1..].iter().map(read_term).collect::<Result<Vec<_>>>()?;
                Ok(TermExpr::apps(f, xs))
            }
            _ => Err(err(e, format!("expected a term, found {}", e.flat()))),
        },
    }
}

fn types(e: &SExpr) -> Result<Vec<TypeExpr>> {
    items(e, "a kind")?.iter().map(read_type).collect()
}

pub fn read_formula(e: &SExpr) -> Result<Formula> {
    let Some(head) = e.head() else {
        return Err(err(e, format!("expected a formula, found {}", e.flat())));
    };
    let all = items(e, "a formula")?;
    match head {
        "atom" if all.len() >= 2 => {
            let xs = all[2..].iter().map(read_term).collect::<Result<Vec<_>>>()?;
            Ok(Formula::atom(name(&all[1])?, xs))
        }
        "-o" if all.len() >= 3 => {
            let fs = all[1..].iter().map(read_formula).collect::<Result<Vec<_>>>()?;
            let (last, init) = fs.split_last().expect("nonempty");
            Ok(init.iter().rev().fold(last.clone(), |acc, p| Formula::lolli(p.clone(), acc)))
        }
        "forall2" => {
            let a = args(e, 3)?;
            Ok(Formula::forall2(name(&a[0])?, types(&a[1])?, read_formula(&a[2])?))
        }
        "forall1" => {
            let a = args(e, 3)?;
            Ok(Formula::forall1(name(&a[0])?, read_type(&a[1])?, read_formula(&a[2])?))
        }
        "forallt" => {
            let a = args(e, 2)?;
            Ok(Formula::forall_ty(name(&a[0])?, read_formula(&a[1])?))
        }
        "!" => Ok(Formula::bang(read_formula(&args(e, 1)?[0])?)),
        "N" => Ok(nat_pred(read_term(&args(e, 1)?[0])?)),
        "eq" => {
            let a = args(e, 3)?;
            Ok(equality(read_type(&a[0])?, read_term(&a[1])?, read_term(&a[2])?))
        }
        "tensor" => {
            let a = args(e, 2)?;
            Ok(tensor(read_formula(&a[0])?, read_formula(&a[1])?))
        }
        "atom" | "-o" => Err(err(e, format!("`{head}` is missing arguments"))),
        other => Err(err(e, format!("unknown formula former `{other}`"))),
    }
}

pub fn read_trace(e: &SExpr) -> Result<Trace> {
    if e.as_atom() == Some("refl") {
        return Ok(Trace::Refl);
    }
    let Some(head) = e.head() else {
        return Err(err(e, format!("expected a trace, found {}", e.flat())));
    };
    match head {
        "ax" => {
            let a = args(e, 4)?;
            let inst = items(&a[1], "an instantiation")?
                .iter()
                .map(|b| {
                    let p = items(b, "a binding")?;
                    match p {
                        [x, t] => Ok((name(x)?, read_term(t)?)),
                        _ => Err(err(b, "a binding is (x t)")),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let orientation = match keyword(&a[3], &["ltr", "rtl"], "an orientation")? {
                "ltr" => Orientation::LeftToRight,
                _ => Orientation::RightToLeft,
            };
            let equation = a[0].as_atom().ok_or_else(|| err(&a[0], "expected an equation name"))?;
            Ok(Trace::axiom(equation, inst, position(&a[2])?, orientation))
        }
        "beta" => {
            let a = args(e, 2)?;
            let direction = match keyword(&a[1], &["fwd", "bwd"], "a direction")? {
                "fwd" => BetaDirection::Forward,
                _ => BetaDirection::Backward,
            };
            Ok(Trace::beta(position(&a[0])?, direction))
        }
        "sym" => Ok(Trace::sym(read_trace(&args(e, 1)?[0])?)),
        "trans" => {
            let all = items(e, "a trace")?;
            match all.len() {
                3 => Ok(Trace::trans(read_trace(&all[1])?, None, read_trace(&all[2])?)),
                4 => {
                    let mid = match all[2].head() {
                        Some("mid") => read_term(&args(&all[2], 1)?[0])?,
                        _ => return Err(err(&all[2], "the middle of `trans` is written (mid t)")),
                    };
                    Ok(Trace::trans(read_trace(&all[1])?, Some(mid), read_trace(&all[3])?))
                }
                _ => Err(err(e, "`trans` takes 2 traces and an optional (mid t)")),
            }
        }
        "cong" => {
            let a = args(e, 2)?;
            Ok(Trace::cong(position(&a[0])?, read_trace(&a[1])?))
        }
        "ext" => {
            let a = args(e, 2)?;
            Ok(Trace::ext(&name(&a[0])?, read_trace(&a[1])?))
        }
        other => Err(err(e, format!("unknown trace step `{other}`"))),
    }
}

pub fn read_script(e: &SExpr) -> Result<ProofScript> {
    let Some(head) = e.head() else {
        return Err(err(e, format!("expected a proof script, found {}", e.flat())));
    };
    let label = |x: &SExpr| name(x);
    Ok(match head {
        "axiom" => {
            let a = args(e, 2)?;
            ProofScript::axiom(&label(&a[0])?, read_formula(&a[1])?)
        }
        "weaken" => {
            let a = args(e, 3)?;
            ProofScript::weaken(&label(&a[0])?, read_formula(&a[1])?, read_script(&a[2])?)
        }
        "app" => {
            let a = args(e, 2)?;
            ProofScript::app(read_script(&a[0])?, read_script(&a[1])?)
        }
        "abs" => {
            let a = args(e, 2)?;
            ProofScript::abs(&label(&a[0])?, read_script(&a[1])?)
        }
        "promote" => {
            let a = args(e, 2)?;
            let premises = items(&a[0], "promotion premises")?
                .iter()
                .map(|b| match items(b, "a premise")? {
                    [x, p] => Ok((label(x)?, read_script(p)?)),
                    _ => Err(err(b, "a promotion premise is (label script)")),
                })
                .collect::<Result<Vec<_>>>()?;
            ProofScript::Promote { premises, inner: Box::new(read_script(&a[1])?) }
        }
        "contract" => {
            let a = args(e, 2)?;
            ProofScript::contract(&label(&a[0])?, read_script(&a[1])?)
        }
        "intro-type" => {
            let a = args(e, 2)?;
            ProofScript::intro_type(&name(&a[0])?, read_script(&a[1])?)
        }
        "intro1" => {
            let a = args(e, 3)?;
            ProofScript::intro1(&name(&a[0])?, read_type(&a[1])?, read_script(&a[2])?)
        }
        "intro2" => {
            let a = args(e, 3)?;
            ProofScript::intro2(&name(&a[0])?, types(&a[1])?, read_script(&a[2])?)
        }
        "elim-type" => {
            let a = args(e, 2)?;
            ProofScript::elim_type(read_type(&a[0])?, read_script(&a[1])?)
        }
        "elim1" => {
            let a = args(e, 2)?;
            ProofScript::elim1(read_term(&a[0])?, read_script(&a[1])?)
        }
        "elim2" => {
            let a = args(e, 3)?;
            ProofScript::Elim2 { formula: read_formula(&a[0])?, params: names(&a[1])?, premise: Box::new(read_script(&a[2])?) }
        }
        "equal" => {
            let a = args(e, 8)?;
            let direction = match keyword(&a[5], &["fwd", "bwd"], "a direction")? {
                "fwd" => EqDirection::Forward,
                _ => EqDirection::Backward,
            };
            ProofScript::equal(
                read_formula(&a[1])?,
                &name(&a[0])?,
                read_term(&a[2])?,
                read_term(&a[3])?,
                read_type(&a[4])?,
                direction,
                read_trace(&a[6])?,
                read_script(&a[7])?,
            )
        }
        "use" => ProofScript::use_lemma(&name(&args(e, 1)?[0])?),
        other => return Err(err(e, format!("unknown rule `{other}`"))),
    })
}

fn read_equation(e: &SExpr) -> Result<Equation> {
    let a = args(e, 5)?;
    let params = items(&a[1], "equation parameters")?
        .iter()
        .map(|b| match items(b, "a parameter")? {
            [x, t] => Ok((name(x)?, read_type(t)?)),
            _ => Err(err(b, "a parameter is (x type)")),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Equation { name: name(&a[0])?, params, ty: read_type(&a[2])?, lhs: read_term(&a[3])?, rhs: read_term(&a[4])? })
}

pub fn read_item(e: &SExpr) -> Result<Item> {
    let Some(head) = e.head() else {
        return Err(err(e, format!("expected a declaration, found {}", e.flat())));
    };
    Ok(match head {
        "type" => Item::Signature(ContextEntry::TypeVar(name(&args(e, 1)?[0])?)),
        "term" => {
            let a = args(e, 2)?;
            Item::Signature(ContextEntry::TermVar(name(&a[0])?, read_type(&a[1])?))
        }
        "pred" => {
            let a = args(e, 2)?;
            Item::Signature(ContextEntry::PredVar(name(&a[0])?, types(&a[1])?))
        }
        "equation" => Item::Equation(read_equation(e)?),
        "proof" => {
            let all = items(e, "a proof")?;
            let (claim, script) = match all.len() {
                3 => (None, &all[2]),
                4 if all[2].head() == Some("claim") => (Some(read_formula(&args(&all[2], 1)?[0])?), &all[3]),
                4 => return Err(err(&all[2], "the statement of a proof is written (claim F)")),
                _ => return Err(err(e, "a proof is (proof NAME [(claim F)] SCRIPT)")),
            };
            Item::Proof(ProofItem { name: name(&all[1])?, claim, script: read_script(script)?, pos: e.pos() })
        }
        other => return Err(err(e, format!("unknown declaration `{other}`"))),
    })
}
