mod common;

use std::collections::BTreeSet;

use common::{arb_formula, arb_trace, oracle_complen, oracle_equiv_default, oracle_eval};
use mltl::{
    check_decomposition, complen, convert_nnf, evaluate, is_nnf, parse_formula, parse_trace,
    print_formula, print_trace, progress, semantic_equiv, suffix, EquivBudget, Formula, Interval,
};
use proptest::prelude::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn budget() -> EquivBudget {
    EquivBudget::new(4, 16)
}

/// Formulas whose intervals may be ill-formed.
fn arb_any_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        "[a-c][a-z0-9_]{0,3}".prop_filter("keyword", |s| s != "true" && s != "false")
            .prop_map(Formula::Prop),
    ];
    leaf.prop_recursive(5, 48, 2, |inner| {
        let iv = (0usize..20, 0usize..20).prop_map(|(a, b)| Interval::new(a, b));
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), iv.clone()).prop_map(|(a, i)| Formula::Future(Box::new(a), i)),
            (inner.clone(), iv.clone()).prop_map(|(a, i)| Formula::Global(Box::new(a), i)),
            (inner.clone(), inner.clone(), iv.clone())
                .prop_map(|(a, b, i)| Formula::Until(Box::new(a), Box::new(b), i)),
            (inner.clone(), inner, iv).prop_map(|(a, b, i)| Formula::Release(Box::new(a), Box::new(b), i)),
        ]
    })
}

proptest! {
    #![proptest_config(config(400))]

    #[test]
    fn evaluate_matches_literal_oracle(f in arb_formula(4, 4, 3), t in arb_trace(3, 8)) {
        prop_assert_eq!(evaluate(&t, &f).unwrap(), oracle_eval(t.states(), &f));
    }

    #[test]
    fn complen_matches_oracle(f in arb_formula(5, 6, 2)) {
        prop_assert_eq!(complen(&f), oracle_complen(&f));
        prop_assert!(complen(&f) >= 1);
    }

    #[test]
    fn welldef_is_hereditary(f in arb_any_formula()) {
        if f.intervals_welldef() {
            for g in f.subformulas() {
                prop_assert!(g.intervals_welldef());
            }
        }
        prop_assert_eq!(f.intervals_welldef(), f.first_ill_formed().is_none());
    }

    #[test]
    fn depth_and_size(f in arb_any_formula()) {
        prop_assert_eq!(f.depth() == 0, f.is_atom());
        if !f.is_atom() {
            prop_assert!(f.depth() < f.size());
        }
        prop_assert!(f.subformulas().len() <= f.size());
    }

    #[test]
    fn alphabet_is_union_over_subformulas(f in arb_any_formula()) {
        let union: BTreeSet<String> = f
            .subformulas()
            .into_iter()
            .flat_map(|g| g.alphabet())
            .collect();
        prop_assert_eq!(f.alphabet(), union);
    }

    #[test]
    fn formula_round_trip(f in arb_any_formula()) {
        prop_assert_eq!(parse_formula(&print_formula(&f)).unwrap(), f);
    }

    #[test]
    fn trace_round_trip(t in arb_trace(4, 10)) {
        prop_assert_eq!(parse_trace(&print_trace(&t)).unwrap(), t);
    }

    #[test]
    fn suffix_composes(f in arb_formula(3, 3, 2), t in arb_trace(2, 8), i in 0usize..10, j in 0usize..10) {
        prop_assert_eq!(
            evaluate(&suffix(&suffix(&t, i), j), &f).unwrap(),
            evaluate(&suffix(&t, i + j), &f).unwrap()
        );
    }

    #[test]
    fn empty_trace_falsifies_props(name in "[a-z][a-z0-9]{0,4}") {
        prop_assume!(name != "true" && name != "false");
        prop_assert!(!evaluate(&mltl::Trace::empty(), &Formula::Prop(name)).unwrap());
    }

    #[test]
    fn nnf_properties(f in arb_formula(4, 3, 2)) {
        let n = convert_nnf(&f).unwrap();
        prop_assert!(is_nnf(&n));
        prop_assert_eq!(convert_nnf(&n).unwrap(), n.clone());
        for g in n.subformulas() {
            prop_assert!(is_nnf(g));
        }
    }

    #[test]
    fn decomposition_holds(f in arb_formula(4, 4, 3), t in arb_trace(3, 8), k in 1usize..=8) {
        prop_assume!(!t.is_empty());
        let k = 1 + (k - 1) % t.len();
        prop_assert!(check_decomposition(&f, &t, k).unwrap());
    }

    #[test]
    fn progression_on_empty_trace_is_identity(f in arb_formula(3, 3, 2)) {
        prop_assert_eq!(progress(&f, &mltl::Trace::empty()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(config(120))]

    #[test]
    fn nnf_preserves_semantics(f in arb_formula(3, 2, 2)) {
        let n = convert_nnf(&f).unwrap();
        prop_assert!(semantic_equiv(&f, &n, &budget()).unwrap());
        prop_assert!(oracle_equiv_default(&f, &n));
    }

    #[test]
    fn equivalence_is_an_equivalence(
        a in arb_formula(2, 2, 2),
        b in arb_formula(2, 2, 2),
        c in arb_formula(2, 2, 2),
    ) {
        let eq = |x: &Formula, y: &Formula| semantic_equiv(x, y, &budget()).unwrap();
        prop_assert!(eq(&a, &a));
        prop_assert_eq!(eq(&a, &b), eq(&b, &a));
        if eq(&a, &b) && eq(&b, &c) {
            prop_assert!(eq(&a, &c));
        }
        // transitivity through a rewritten copy
        let n = convert_nnf(&a).unwrap();
        prop_assert_eq!(eq(&n, &b), eq(&a, &b));
    }
}

#[test]
fn nnf_complen_relation() {
    // Not asserted as an invariant: record how often NNF changes complen.
    use mltl::benchgen::{case_rng, gen_formula, GenConfig};
    let cfg = GenConfig {
        max_depth: 4,
        max_bound: 4,
        num_props: 3,
        ..GenConfig::default()
    };
    let (mut same, mut differ) = (0, 0);
    for i in 0..2000 {
        let f = gen_formula(&cfg, &mut case_rng(99, i));
        if complen(&convert_nnf(&f).unwrap()) == complen(&f) {
            same += 1;
        } else {
            differ += 1;
        }
    }
    println!("convert_nnf kept complen on {same} of {} formulas ({differ} changed)", same + differ);
}
