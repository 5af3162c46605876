//! The proof-script file format.
//!
//! A file is a sequence of declarations:
//!
//! ```text
//! (type a)                          ; signature entries
//! (term two nat)
//! (pred X (nat nat))
//! (equation two-def () nat two (s (s 0)))
//! (proof NAME (claim FORMULA) SCRIPT)
//! (proof NAME SCRIPT)
//! ```
//!
//! A file without signature or equation declarations is checked against the
//! standard signature and equations, with the standard library available to
//! `use`. Otherwise the file's own declarations are the whole theory.

mod read;
mod sexpr;
mod write;

pub use read::{read_formula, read_script, read_term, read_trace, read_type, RESERVED};
pub use sexpr::{read_all, Pos, SExpr, SyntaxError};
pub use write::{write_formula, write_script, write_term, write_trace, write_type};

use elx_core::kernel::ProofScript;
use elx_core::rewrite::Equation;
use elx_core::syntax::Formula;
use elx_core::wf::ContextEntry;

/// Column at which the printer starts breaking lines.
pub const WIDTH: usize = 100;

#[derive(Clone, Debug)]
pub struct ProofItem {
    pub name: String,
    pub claim: Option<Formula>,
    pub script: ProofScript,
    pub pos: Pos,
}

impl PartialEq for ProofItem {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.claim == other.claim && self.script == other.script
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Signature(ContextEntry),
    Equation(Equation),
    Proof(ProofItem),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScriptFile {
    pub items: Vec<Item>,
}

impl ScriptFile {
    pub fn parse(text: &str) -> Result<Self, SyntaxError> {
        let items = read_all(text)?.iter().map(read::read_item).collect::<Result<_, _>>()?;
        Ok(Self { items })
    }

    /// One declaration per paragraph, each within [`WIDTH`] columns where
    /// possible.
    pub fn print(&self) -> String {
        let mut out = String::new();
        for (i, item) in self.items.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&write::write_item(item).pretty(WIDTH));
            out.push('\n');
        }
        out
    }

    pub fn proofs(&self) -> impl Iterator<Item = &ProofItem> {
        self.items.iter().filter_map(|i| match i {
            Item::Proof(p) => Some(p),
            _ => None,
        })
    }

    pub fn proof(&self, name: &str) -> Option<&ProofItem> {
        self.proofs().find(|p| p.name == name)
    }

    pub fn signature(&self) -> Vec<ContextEntry> {
        self.items
            .iter()
            .filter_map(|i| match i {
                Item::Signature(e) => Some(e.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn equations(&self) -> Vec<Equation> {
        self.items
            .iter()
            .filter_map(|i| match i {
                Item::Equation(e) => Some(e.clone()),
                _ => None,
            })
            .collect()
    }

    /// Whether the file is checked against the standard theory.
    pub fn uses_standard_theory(&self) -> bool {
        self.items.iter().all(|i| matches!(i, Item::Proof(_)))
    }
}

#[cfg(test)]
mod tests;
