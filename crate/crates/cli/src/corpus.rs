//! The standard corpus: the base library and derived proofs as script
//! files, generated from the in-code constructions.

use elx_core::kernel::{Kernel, ProofScript};
use elx_core::rewrite::{Equation, Orientation, Trace};
use elx_core::stdlib::{
    base_library, bounded_product, bounded_sum, compose_scheme, normalize_totality, proof_succ, proof_zero, std_kernel,
};
use elx_core::syntax::library::{nat, nat_pred, nat_to_nat, succ, SUCC, ZERO};
use elx_core::syntax::TermExpr;
use elx_core::wf::ContextEntry;

use crate::script::{Item, Pos, ProofItem, ScriptFile};

fn proof(name: &str, claim: Option<elx_core::syntax::Formula>, script: ProofScript) -> Item {
    Item::Proof(ProofItem { name: name.into(), claim, script, pos: Pos::default() })
}

fn lemma(name: &str) -> ProofScript {
    ProofScript::use_lemma(name)
}

/// `base.elx`: the base totality proofs with their statements.
pub fn base_file() -> ScriptFile {
    ScriptFile { items: base_library().into_iter().map(|(name, claim, script)| proof(name, Some(claim), script)).collect() }
}

/// `schemes.elx`: normalized, composed and bounded proofs built by the
/// schemes, each with the statement the kernel derives for it.
pub fn schemes_file() -> Result<ScriptFile, String> {
    let mut kernel: Kernel = std_kernel().map_err(|(name, e)| format!("{name}: {e}"))?;
    let mut items = Vec::new();
    let mut add = |kernel: &mut Kernel, name: &str, script: Result<ProofScript, _>| -> Result<(), String> {
        let script = script.map_err(|e: elx_core::stdlib::SchemeError| format!("{name}: {e}"))?;
        let checked = kernel.check(&script).map_err(|e| format!("{name}: {e}"))?;
        items.push(proof(name, Some(checked.sequent.goal.clone()), script));
        kernel.add_lemma(name, checked).map_err(|e| format!("{name}: {e}"))
    };
    let s = normalize_totality(&kernel, lemma("mult"), &[1, 0]);
    add(&mut kernel, "mult-normal", s)?;
    let s = normalize_totality(&kernel, lemma("minus"), &[1, 0]);
    add(&mut kernel, "minus-normal", s)?;
    let s = compose_scheme(&kernel, lemma("plus"), vec![lemma("id"), lemma("id")]);
    add(&mut kernel, "double", s)?;
    let s = bounded_sum(&kernel, lemma("id"), 0);
    add(&mut kernel, "sum-id", s)?;
    let s = bounded_product(&kernel, lemma("succ"), 0);
    add(&mut kernel, "prod-succ", s)?;
    let s = bounded_sum(&kernel, lemma("double"), 1);
    add(&mut kernel, "sum-double", s)?;
    Ok(ScriptFile { items })
}

/// `theory.elx`: a file with its own signature and equations, proving that
/// a defined constant is a natural number.
pub fn theory_file() -> ScriptFile {
    let v = TermExpr::var;
    let two = || v("two");
    let two_numeral = || succ(succ(v(ZERO)));
    let built = ProofScript::app(
        ProofScript::elim1(succ(v(ZERO)), lemma("succ")),
        ProofScript::app(ProofScript::elim1(v(ZERO), lemma("succ")), lemma("zero")),
    );
    let two_proof = ProofScript::equal(
        nat_pred(v("q")),
        "q",
        two_numeral(),
        two(),
        nat(),
        elx_core::kernel::EqDirection::Forward,
        Trace::axiom("two-def", vec![], vec![], Orientation::RightToLeft),
        built,
    );
    ScriptFile {
        items: vec![
            Item::Signature(ContextEntry::TermVar(ZERO.into(), nat())),
            Item::Signature(ContextEntry::TermVar(SUCC.into(), nat_to_nat())),
            Item::Signature(ContextEntry::TermVar("two".into(), nat())),
            Item::Equation(Equation { name: "two-def".into(), params: vec![], ty: nat(), lhs: two(), rhs: two_numeral() }),
            proof("zero", Some(nat_pred(v(ZERO))), proof_zero()),
            proof("succ", None, proof_succ()),
            proof("two", Some(nat_pred(two())), two_proof),
        ],
    }
}

/// Every corpus file with its file name.
pub fn standard_corpus() -> Result<Vec<(&'static str, ScriptFile)>, String> {
    Ok(vec![("base.elx", base_file()), ("schemes.elx", schemes_file()?), ("theory.elx", theory_file())])
}
