use super::*;
use crate::kernel::CheckedProof;
use crate::proj::{circle_proj, erase, EalType};
use crate::stdlib::{base_statements, std_kernel, totality_shape};

fn lemmas() -> Vec<(&'static str, CheckedProof)> {
    let k = std_kernel().unwrap();
    base_statements().into_iter().map(|(name, _)| (name, k.lemma(name).unwrap().clone())).collect()
}

fn lemma(name: &str) -> CheckedProof {
    lemmas().into_iter().find(|(n, _)| *n == name).unwrap().1
}

#[test]
fn library_translations_are_eal_derivations() {
    for (name, proof) in lemmas() {
        let d = translate_to_eal(&proof);
        assert_eq!(check_eal(&d), Ok(()), "{name}");
        assert!(d.delta.is_empty());
        assert!(d.ty.alpha_eq(&circle_proj(&proof.sequent.goal)), "{name}");
        assert_eq!(d.term, erase(&proof.term), "{name}");
    }
}

#[test]
fn coercion_concludes_at_banged_nat() {
    let d = translate_to_eal(&lemma("coercion"));
    assert!(d.ty.alpha_eq(&EalType::lolli(EalType::nat(), EalType::bang(EalType::nat()))), "{}", d.ty);
    assert!(d.count("promotion") >= 1);
}

#[test]
fn first_order_quantifiers_are_invisible() {
    let d = translate_to_eal(&lemma("id"));
    assert!(d.ty.alpha_eq(&EalType::lolli(EalType::nat(), EalType::nat())));
}

fn leaf(x: &str, ty: EalType) -> EalDerivation {
    EalDerivation { rule: EalRule::Axiom, delta: vec![(x.into(), ty.clone())], term: PureTerm::free(x), ty, children: vec![] }
}

#[test]
fn contraction_needs_banged_copies() {
    let a = EalType::var("a");
    let premise = EalDerivation {
        rule: EalRule::Weakening { var: "x".into() },
        delta: vec![("x".into(), a.clone()), ("x".into(), a.clone())],
        term: PureTerm::free("x"),
        ty: a.clone(),
        children: vec![leaf("x", a.clone())],
    };
    assert_eq!(check_eal(&premise), Ok(()));
    let bad = EalDerivation {
        rule: EalRule::Contraction { var: "x".into() },
        delta: vec![("x".into(), a.clone())],
        term: PureTerm::free("x"),
        ty: a,
        children: vec![premise],
    };
    let err = check_eal(&bad).unwrap_err();
    assert_eq!(err.rule, "contraction");
    assert!(err.path.is_empty());
}

#[test]
fn forall_intro_side_condition() {
    let a = EalType::var("a");
    let bad = EalDerivation {
        rule: EalRule::ForallIntro { var: "a".into() },
        delta: vec![("x".into(), a.clone())],
        term: PureTerm::free("x"),
        ty: EalType::forall("a", a.clone()),
        children: vec![leaf("x", a)],
    };
    assert_eq!(check_eal(&bad).unwrap_err().rule, "forall-intro");
}

#[test]
fn box_terms_erase_to_the_extracted_term() {
    for (name, proof) in lemmas() {
        let bt = to_box_term(&proof);
        assert_eq!(bt.erase(), erase(&proof.term), "{name}");
    }
    assert!(to_box_term(&lemma("coercion")).depth() >= 1);
}

#[test]
fn single_promotion_over_an_axiom() {
    let bt = BoxTerm::boxed(BoxTerm::var("x"), vec![("x".into(), BoxTerm::var("u"))]);
    assert_eq!(bt.depth(), 1);
    assert_eq!(bt.erase(), PureTerm::free("u"));
}

#[test]
fn box_free_redex_works_at_depth_zero() {
    let t = BoxTerm::app(BoxTerm::lam("x", BoxTerm::var("x")), BoxTerm::var("y"));
    let (nf, profile) = stratified_normalize(&t, 10).unwrap();
    assert_eq!(nf, PureTerm::free("y"));
    assert_eq!(profile.total_steps, 1);
    assert_eq!(profile.levels[0].beta_steps, 1);
    assert_eq!(profile.box_depth, 0);
}

#[test]
fn budget_is_enforced() {
    let id = || BoxTerm::lam("x", BoxTerm::var("x"));
    let t = BoxTerm::app(BoxTerm::app(id(), id()), BoxTerm::app(id(), BoxTerm::var("y")));
    let err = stratified_normalize(&t, 1).unwrap_err();
    assert_eq!(err.fuel, 1);
    assert!(stratified_normalize(&t, 3).is_ok());
}

#[test]
fn numerals_round_trip() {
    assert_eq!(church_encode(0), PureTerm::lam("f", PureTerm::lam("x", PureTerm::Var(0))));
    let two = PureTerm::lam("f", PureTerm::lam("x", PureTerm::app(PureTerm::Var(1), PureTerm::app(PureTerm::Var(1), PureTerm::Var(0)))));
    assert_eq!(church_decode(&two), Ok(2));
    assert!(church_decode(&PureTerm::lam("x", PureTerm::Var(0))).is_err());
    for n in 0..5 {
        for bangs in 0..3 {
            assert_eq!(church_box(n, bangs).erase(), church_encode(n));
            assert_eq!(church_box(n, bangs).depth(), bangs + 1);
        }
    }
}

#[test]
fn normal_order_examples() {
    let k = PureTerm::lam("x", PureTerm::lam("y", PureTerm::Var(1)));
    let t = PureTerm::apps(k, [PureTerm::free("a"), PureTerm::free("b")]);
    assert_eq!(normal_order_normalize(&t, 10).unwrap().term, PureTerm::free("a"));
    let t = PureTerm::apps(church_encode(2), [PureTerm::free("f"), PureTerm::free("x")]);
    let expected = PureTerm::app(PureTerm::free("f"), PureTerm::app(PureTerm::free("f"), PureTerm::free("x")));
    assert_eq!(normal_order_normalize(&t, 10).unwrap().term, expected);
}

fn strategies_agree(proof: &CheckedProof, max: u64) {
    let shape = totality_shape(&proof.sequent.goal).unwrap();
    let bt = to_box_term(proof);
    for args in crate::oracle::grid(shape.vars.len(), max) {
        let inputs: Vec<(u64, usize)> = args.iter().copied().zip(shape.premise_bangs.iter().copied()).collect();
        let boxed = apply_numerals(bt.clone(), &inputs);
        let (strat, profile) = stratified_normalize(&boxed, 10_000_000).unwrap();
        let plain = PureTerm::apps(erase(&proof.term), args.iter().map(|&n| church_encode(n)));
        let oracle = normal_order_normalize(&plain, 10_000_000).unwrap().term;
        assert_eq!(strat, oracle, "{args:?}");
        assert_eq!(profile.reopened, 0);
        assert_eq!(profile.residual_steps, 0, "{args:?}");
        assert!(profile.deepest_active_level().unwrap_or(0) <= profile.box_depth);
        assert!(profile.levels.iter().all(LevelCost::within_exponential_bound));
    }
}

#[test]
fn stratified_agrees_with_normal_order_on_the_library() {
    for name in ["succ", "id", "plus", "mult", "pred", "minus", "coercion"] {
        strategies_agree(&lemma(name), 3);
    }
}
