use elx_core::kernel::ProofScript;
use elx_core::stdlib::{base_library, bounded_product, bounded_sum, compose_scheme, std_kernel};

use super::*;

fn lemma(name: &str) -> ProofScript {
    ProofScript::use_lemma(name)
}

fn round_trip(file: &ScriptFile) {
    let text = file.print();
    let back = ScriptFile::parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
    assert_eq!(&back, file);
    assert_eq!(back.print(), text);
}

#[test]
fn base_library_round_trips() {
    let items = base_library()
        .into_iter()
        .map(|(name, claim, script)| Item::Proof(ProofItem { name: name.into(), claim: Some(claim), script, pos: Pos::default() }))
        .collect();
    round_trip(&ScriptFile { items });
}

#[test]
fn scheme_outputs_round_trip() {
    let kernel = std_kernel().unwrap();
    let scripts = [
        compose_scheme(&kernel, lemma("plus"), vec![lemma("id"), lemma("id")]).unwrap(),
        bounded_sum(&kernel, lemma("id"), 0).unwrap(),
        bounded_product(&kernel, lemma("succ"), 0).unwrap(),
    ];
    let items = scripts
        .into_iter()
        .enumerate()
        .map(|(i, script)| Item::Proof(ProofItem { name: format!("p{i}"), claim: None, script, pos: Pos::default() }))
        .collect();
    round_trip(&ScriptFile { items });
}

#[test]
fn theory_declarations_round_trip() {
    let text = "(type a)\n(term two nat)\n(pred X (nat (-> a a)))\n\
                (equation two-def () nat two (s (s 0)))\n\
                (proof k (claim (forall1 x nat (-o (atom X x x) (atom X x x)))) (intro1 x nat (abs h (axiom h (atom X x x)))))\n";
    let file = ScriptFile::parse(text).unwrap();
    assert_eq!(file.signature().len(), 3);
    assert_eq!(file.equations().len(), 1);
    assert!(!file.uses_standard_theory());
    round_trip(&file);
}

#[test]
fn sugar_reads_as_its_expansion() {
    let e = &read_all("(forall1 x nat (-o (N x) (! (N (s x)))))").unwrap()[0];
    let f = read_formula(e).unwrap();
    assert_eq!(write_formula(&f).flat(), "(forall1 x nat (-o (N x) (! (N (s x)))))");
    let t = read_term(&read_all("(fun f (-> nat nat) (f (f x)))").unwrap()[0]).unwrap();
    assert_eq!(write_term(&t).flat(), "(fun f (-> nat nat) (f (f x)))");
}

#[test]
fn unknown_keywords_are_named() {
    let err = ScriptFile::parse("(proof p\n  (axoim h (N x)))").unwrap_err();
    assert_eq!(err.pos, Pos { line: 2, col: 3 });
    assert!(err.message.contains("`axoim`"), "{err}");
    let err = ScriptFile::parse("(lemma p (use q))").unwrap_err();
    assert!(err.message.contains("`lemma`"), "{err}");
    let err = ScriptFile::parse("(proof p (equal q (N q) x y nat sideways refl (use a)))").unwrap_err();
    assert!(err.message.contains("sideways"), "{err}");
}

#[test]
fn malformed_input_is_located() {
    let err = ScriptFile::parse("(proof p (use q)").unwrap_err();
    assert_eq!(err.pos, Pos { line: 1, col: 1 });
    let err = ScriptFile::parse("(proof p (abs h (axiom h (N x) extra)))").unwrap_err();
    assert!(err.message.contains("takes 2"), "{err}");
    let err = ScriptFile::parse("(proof p (abs nat (use q)))").unwrap_err();
    assert!(err.message.contains("reserved"), "{err}");
}
