//! Workloads shared by the benchmarks: the standard proofs and a few
//! derived ones, checked once.

use elx_core::eal::{apply_numerals, church_encode, to_box_term, BoxTerm};
use elx_core::kernel::{CheckedProof, Kernel, ProofScript};
use elx_core::proj::{erase, PureTerm};
use elx_core::stdlib::{
    base_library, bounded_product, bounded_sum, compose_scheme, normalize_totality, std_kernel, totality_shape,
};

/// A closed proof with its script, under a short name.
pub struct Workload {
    pub name: &'static str,
    pub script: ProofScript,
    pub proof: CheckedProof,
}

impl Workload {
    /// The erased program applied to Church numerals.
    pub fn pure_program(&self, inputs: &[u64]) -> PureTerm {
        PureTerm::apps(erase(&self.proof.term), inputs.iter().map(|&n| church_encode(n)))
    }

    /// The box term applied to numerals carrying the premises' exponents.
    pub fn box_program(&self, inputs: &[u64]) -> BoxTerm {
        let shape = totality_shape(&self.proof.sequent.goal).expect("a totality statement");
        let args: Vec<(u64, usize)> = inputs.iter().copied().zip(shape.premise_bangs).collect();
        apply_numerals(to_box_term(&self.proof), &args)
    }
}

/// The standard kernel together with the workloads it checks.
pub fn workloads() -> (Kernel, Vec<Workload>) {
    let kernel = std_kernel().expect("the standard library checks");
    let lemma = ProofScript::use_lemma;
    let mut scripts: Vec<(&'static str, ProofScript)> =
        base_library().into_iter().map(|(name, _, script)| (name, script)).collect();
    let derived = [
        ("mult-normal", normalize_totality(&kernel, lemma("mult"), &[1, 0])),
        ("double", compose_scheme(&kernel, lemma("plus"), vec![lemma("id"), lemma("id")])),
        ("sum-id", bounded_sum(&kernel, lemma("id"), 0)),
        ("prod-succ", bounded_product(&kernel, lemma("succ"), 0)),
    ];
    for (name, script) in derived {
        scripts.push((name, script.expect("the schemes apply")));
    }
    let workloads = scripts
        .into_iter()
        .map(|(name, script)| {
            let proof = kernel.check(&script).expect("workloads check");
            Workload { name, script, proof }
        })
        .collect();
    (kernel, workloads)
}

pub fn workload<'a>(all: &'a [Workload], name: &str) -> &'a Workload {
    all.iter().find(|w| w.name == name).unwrap_or_else(|| panic!("no workload `{name}`"))
}
