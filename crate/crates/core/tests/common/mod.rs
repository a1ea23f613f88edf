//! Brute-force reference implementations, written directly from the
//! satisfaction relation and kept apart from the library's evaluator.

#![allow(dead_code)]

use std::collections::BTreeSet;

use mltl::{Formula, State, Trace};
use proptest::prelude::*;

fn drop(t: &[State], i: usize) -> &[State] {
    if i >= t.len() {
        &[]
    } else {
        &t[i..]
    }
}

/// Literal satisfaction: every quantifier ranges over its full interval.
pub fn oracle_eval(t: &[State], f: &Formula) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Prop(p) => !t.is_empty() && t[0].contains(p),
        Formula::Not(g) => !oracle_eval(t, g),
        Formula::And(g, h) => oracle_eval(t, g) && oracle_eval(t, h),
        Formula::Or(g, h) => oracle_eval(t, g) || oracle_eval(t, h),
        Formula::Future(g, iv) => {
            assert!(iv.lo <= iv.hi);
            t.len() > iv.lo && (iv.lo..=iv.hi).any(|i| oracle_eval(drop(t, i), g))
        }
        Formula::Global(g, iv) => {
            assert!(iv.lo <= iv.hi);
            t.len() <= iv.lo || (iv.lo..=iv.hi).all(|i| oracle_eval(drop(t, i), g))
        }
        Formula::Until(g, h, iv) => {
            assert!(iv.lo <= iv.hi);
            t.len() > iv.lo
                && (iv.lo..=iv.hi).any(|i| {
                    oracle_eval(drop(t, i), h) && (iv.lo..i).all(|j| oracle_eval(drop(t, j), g))
                })
        }
        Formula::Release(g, h, iv) => {
            assert!(iv.lo <= iv.hi);
            t.len() <= iv.lo
                || (iv.lo..=iv.hi).all(|i| oracle_eval(drop(t, i), h))
                || (iv.lo..=iv.hi).any(|j| {
                    oracle_eval(drop(t, j), g) && (iv.lo..=j).all(|k| oracle_eval(drop(t, k), h))
                })
        }
    }
}

/// Every trace of exactly `len` states over `props`, built by repeated
/// extension rather than by bitmask counting.
pub fn all_traces(props: &[String], len: usize) -> Vec<Vec<State>> {
    let mut states: Vec<State> = vec![State::new()];
    for p in props {
        let with: Vec<State> = states
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.insert(p.clone());
                s
            })
            .collect();
        states.extend(with);
    }
    let mut traces: Vec<Vec<State>> = vec![Vec::new()];
    for _ in 0..len {
        traces = traces
            .into_iter()
            .flat_map(|t| {
                states.iter().map(move |s| {
                    let mut t = t.clone();
                    t.push(s.clone());
                    t
                })
            })
            .collect();
    }
    traces
}

/// Computation length written out independently.
pub fn oracle_complen(f: &Formula) -> usize {
    match f {
        Formula::True | Formula::False | Formula::Prop(_) => 1,
        Formula::Not(g) => oracle_complen(g),
        Formula::And(g, h) | Formula::Or(g, h) => std::cmp::max(oracle_complen(g), oracle_complen(h)),
        Formula::Future(g, iv) | Formula::Global(g, iv) => iv.hi + oracle_complen(g),
        Formula::Until(g, h, iv) | Formula::Release(g, h, iv) => {
            iv.hi + std::cmp::max(oracle_complen(g) - 1, oracle_complen(h))
        }
    }
}

/// Equivalence by enumerating every trace over `alphabet` with lengths
/// `0..=horizon`, judged by the literal oracle.
pub fn oracle_equiv(f: &Formula, g: &Formula, alphabet: &BTreeSet<String>, horizon: usize) -> bool {
    let props: Vec<String> = alphabet.iter().cloned().collect();
    (0..=horizon).all(|len| {
        all_traces(&props, len)
            .iter()
            .all(|t| oracle_eval(t, f) == oracle_eval(t, g))
    })
}

pub fn oracle_equiv_default(f: &Formula, g: &Formula) -> bool {
    let mut alphabet = f.alphabet();
    alphabet.extend(g.alphabet());
    let horizon = oracle_complen(f).max(oracle_complen(g));
    oracle_equiv(f, g, &alphabet, horizon)
}

pub fn interval(max_bound: usize) -> impl Strategy<Value = (usize, usize)> {
    (0..=max_bound).prop_flat_map(|hi| (0..=hi, Just(hi)))
}

/// Well-formed formulas over `p0..p{props-1}`.
pub fn arb_formula(depth: u32, max_bound: usize, props: usize) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        Just(Formula::True),
        Just(Formula::False),
        (0..props).prop_map(|i| Formula::prop(format!("p{i}"))),
        (0..props).prop_map(|i| Formula::prop(format!("p{i}"))),
    ];
    leaf.prop_recursive(depth, 32, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), interval(max_bound)).prop_map(|(a, (lo, hi))| Formula::future(a, lo, hi)),
            (inner.clone(), interval(max_bound)).prop_map(|(a, (lo, hi))| Formula::global(a, lo, hi)),
            (inner.clone(), inner.clone(), interval(max_bound))
                .prop_map(|(a, b, (lo, hi))| Formula::until(a, b, lo, hi)),
            (inner.clone(), inner, interval(max_bound))
                .prop_map(|(a, b, (lo, hi))| Formula::release(a, b, lo, hi)),
        ]
    })
}

pub fn arb_trace(props: usize, max_len: usize) -> impl Strategy<Value = Trace> {
    let state = proptest::collection::btree_set(0..props, 0..=props)
        .prop_map(|s| s.into_iter().map(|i| format!("p{i}")).collect::<State>());
    proptest::collection::vec(state, 0..=max_len).prop_map(Trace::new)
}
