//! Loading a script file and checking its proofs in order. Each closed
//! proof that checks becomes available to `use` in the proofs after it.

use std::path::Path;

use elx_core::kernel::{CheckedProof, Kernel, KernelError};
use elx_core::rewrite::EquationSet;
use elx_core::stdlib::std_kernel;
use elx_core::wf::{check_context, Context};

use crate::script::{Pos, ProofItem, ScriptFile, SyntaxError};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{1}:{0}")]
    Syntax(SyntaxError, String),
    #[error("ill-formed theory: {0}")]
    Theory(String),
    #[error("duplicate proof `{name}` at {pos}")]
    Duplicate { name: String, pos: Pos },
}

pub struct ProofOutcome {
    pub item: ProofItem,
    pub result: Result<CheckedProof, KernelError>,
}

impl ProofOutcome {
    pub fn ok(&self) -> bool {
        self.result.is_ok()
    }
}

pub struct Session {
    pub kernel: Kernel,
    pub outcomes: Vec<ProofOutcome>,
}

pub fn load(path: &Path) -> Result<ScriptFile, LoadError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| LoadError::Io { path: path.display().to_string(), source })?;
    ScriptFile::parse(&text).map_err(|e| LoadError::Syntax(e, path.display().to_string()))
}

/// The kernel a file is checked against.
pub fn theory_kernel(file: &ScriptFile) -> Result<Kernel, LoadError> {
    if file.uses_standard_theory() {
        return std_kernel().map_err(|(name, e)| LoadError::Theory(format!("standard lemma `{name}`: {e}")));
    }
    let sigma = Context::from_entries(file.signature());
    check_context(&sigma).map_err(|e| LoadError::Theory(e.to_string()))?;
    let h = EquationSet::new(file.equations());
    h.check(&sigma).map_err(|(name, e)| LoadError::Theory(format!("equation `{name}`: {e}")))?;
    Ok(Kernel::new(sigma, h))
}

impl Session {
    pub fn check(file: &ScriptFile) -> Result<Session, LoadError> {
        let mut seen = std::collections::BTreeSet::new();
        for p in file.proofs() {
            if !seen.insert(p.name.as_str()) {
                return Err(LoadError::Duplicate { name: p.name.clone(), pos: p.pos });
            }
        }
        let mut kernel = theory_kernel(file)?;
        let mut outcomes = Vec::new();
        for item in file.proofs() {
            let result = match &item.claim {
                Some(claim) => kernel.check_claim(&item.script, claim),
                None => kernel.check(&item.script),
            };
            if let Ok(proof) = &result {
                if proof.sequent.delta.is_empty() {
                    kernel.add_lemma(&item.name, proof.clone()).expect("closed proof");
                }
            }
            outcomes.push(ProofOutcome { item: item.clone(), result });
        }
        Ok(Session { kernel, outcomes })
    }

    pub fn all_ok(&self) -> bool {
        self.outcomes.iter().all(ProofOutcome::ok)
    }

    pub fn outcome(&self, name: &str) -> Option<&ProofOutcome> {
        self.outcomes.iter().find(|o| o.item.name == name)
    }
}
