//! Finite-trace satisfaction and bounded semantic equivalence.

use std::collections::BTreeSet;

use crate::ast::{Formula, State, Trace};
use crate::error::{require_welldef, MltlError, Result};
use crate::transforms::complen;

/// Limits for exhaustive trace enumeration.
///
/// `max_traces` is a pre-flight cap on the total number of traces an
/// enumeration may visit, so that a large alphabet or length is refused
/// up front instead of running for hours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EquivBudget {
    pub max_alphabet: usize,
    pub max_length: usize,
    pub max_traces: u64,
}

impl EquivBudget {
    pub const DEFAULT_MAX_TRACES: u64 = 1 << 22;

    pub fn new(max_alphabet: usize, max_length: usize) -> Self {
        EquivBudget {
            max_alphabet: max_alphabet.max(1),
            max_length: max_length.max(1),
            max_traces: Self::DEFAULT_MAX_TRACES,
        }
    }

    pub fn with_max_traces(mut self, max_traces: u64) -> Self {
        self.max_traces = max_traces;
        self
    }

    /// Checks an enumeration of every trace over `alphabet_size` propositions
    /// with lengths `0..=max_len` against this budget.
    pub fn admit(&self, alphabet_size: usize, max_len: usize) -> Result<u64> {
        if alphabet_size > self.max_alphabet {
            return Err(MltlError::BudgetExceeded(format!(
                "alphabet of {alphabet_size} propositions exceeds limit {}",
                self.max_alphabet
            )));
        }
        if max_len > self.max_length {
            return Err(MltlError::BudgetExceeded(format!(
                "trace length {max_len} exceeds limit {}",
                self.max_length
            )));
        }
        let cost = enumeration_cost(alphabet_size, max_len);
        match cost {
            Some(n) if n <= self.max_traces => Ok(n),
            _ => Err(MltlError::BudgetExceeded(format!(
                "enumerating {} traces exceeds limit {}",
                cost.map_or_else(|| "more than 2^64".to_string(), |n| n.to_string()),
                self.max_traces
            ))),
        }
    }
}

impl Default for EquivBudget {
    fn default() -> Self {
        EquivBudget::new(4, 12)
    }
}

/// Number of traces of length `0..=max_len` over `alphabet_size` propositions,
/// or `None` on overflow.
pub fn enumeration_cost(alphabet_size: usize, max_len: usize) -> Option<u64> {
    let per_state = 1u64.checked_shl(u32::try_from(alphabet_size).ok()?)?;
    let mut total = 0u64;
    let mut layer = 1u64;
    for len in 0..=max_len {
        total = total.checked_add(layer)?;
        if len < max_len {
            layer = layer.checked_mul(per_state)?;
        }
    }
    Some(total)
}

/// Drops the first `i` states; over-dropping yields the empty trace.
pub fn suffix(t: &Trace, i: usize) -> Trace {
    Trace::new(t.states().get(i..).unwrap_or(&[]).to_vec())
}

/// The first `k` states, clamped to the trace length.
pub fn prefix(t: &Trace, k: usize) -> Trace {
    Trace::new(t.states()[..k.min(t.len())].to_vec())
}

/// Decides `t ⊨ f`.
///
/// Fails with [`MltlError::IllFormedInterval`] if any interval in `f` has
/// `lo > hi`.
pub fn evaluate(t: &Trace, f: &Formula) -> Result<bool> {
    require_welldef(f)?;
    Ok(eval(t.states(), f))
}

/// Satisfaction on a slice, assuming well-defined intervals.
///
/// Every suffix at or past the end of the trace is the same empty trace, so
/// each quantifier range is truncated at `len`; the position `len` stands for
/// all of them. For Until and Release a witness past `len` needs strictly more
/// than the witness at `len`, so the truncation is exact.
pub(crate) fn eval(t: &[State], f: &Formula) -> bool {
    let len = t.len();
    let at = |i: usize| &t[i.min(len)..];
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Prop(p) => t.first().is_some_and(|s| s.contains(p)),
        Formula::Not(g) => !eval(t, g),
        Formula::And(g, h) => eval(t, g) && eval(t, h),
        Formula::Or(g, h) => eval(t, g) || eval(t, h),
        Formula::Future(g, iv) => {
            len > iv.lo && (iv.lo..=iv.hi.min(len)).any(|i| eval(at(i), g))
        }
        Formula::Global(g, iv) => {
            len <= iv.lo || (iv.lo..=iv.hi.min(len)).all(|i| eval(at(i), g))
        }
        Formula::Until(g, h, iv) => {
            if len <= iv.lo {
                return false;
            }
            for i in iv.lo..=iv.hi.min(len) {
                if eval(at(i), h) {
                    return true;
                }
                if !eval(at(i), g) {
                    return false;
                }
            }
            false
        }
        Formula::Release(g, h, iv) => {
            if len <= iv.lo {
                return true;
            }
            // h must hold from lo until g holds (inclusive) or through hi.
            for i in iv.lo..=iv.hi.min(len) {
                if !eval(at(i), h) {
                    return false;
                }
                if eval(at(i), g) {
                    return true;
                }
            }
            true
        }
    }
}

/// Deterministic enumeration of every trace of one exact length.
///
/// States are ordered by subset bitmask (bit `i` is the `i`-th proposition in
/// sorted order) and traces lexicographically, first position most
/// significant.
#[derive(Debug, Clone)]
pub struct TraceEnumerator {
    states: Vec<State>,
    digits: Vec<usize>,
    done: bool,
}

impl TraceEnumerator {
    fn new(alphabet: &BTreeSet<String>, length: usize) -> Self {
        let props: Vec<&String> = alphabet.iter().collect();
        let states = (0..1usize << props.len())
            .map(|mask| {
                props
                    .iter()
                    .enumerate()
                    .filter(|(bit, _)| mask & (1 << bit) != 0)
                    .map(|(_, p)| p.as_str())
                    .collect()
            })
            .collect();
        TraceEnumerator {
            states,
            digits: vec![0; length],
            done: false,
        }
    }
}

impl Iterator for TraceEnumerator {
    type Item = Trace;

    fn next(&mut self) -> Option<Trace> {
        if self.done {
            return None;
        }
        let out: Trace = self.digits.iter().map(|&d| self.states[d].clone()).collect();
        // odometer increment, last position fastest
        let base = self.states.len();
        let mut pos = self.digits.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.digits[pos] += 1;
            if self.digits[pos] < base {
                break;
            }
            self.digits[pos] = 0;
        }
        Some(out)
    }
}

/// All `(2^|alphabet|)^length` traces of exactly `length` states.
pub fn enumerate_traces(
    alphabet: &BTreeSet<String>,
    length: usize,
    budget: &EquivBudget,
) -> Result<TraceEnumerator> {
    if alphabet.len() > budget.max_alphabet {
        return Err(MltlError::BudgetExceeded(format!(
            "alphabet of {} propositions exceeds limit {}",
            alphabet.len(),
            budget.max_alphabet
        )));
    }
    if length > budget.max_length {
        return Err(MltlError::BudgetExceeded(format!(
            "trace length {length} exceeds limit {}",
            budget.max_length
        )));
    }
    let per_state = 1u64.checked_shl(alphabet.len() as u32);
    let count = per_state.and_then(|b| b.checked_pow(u32::try_from(length).ok()?));
    match count {
        Some(n) if n <= budget.max_traces => Ok(TraceEnumerator::new(alphabet, length)),
        _ => Err(MltlError::BudgetExceeded(format!(
            "{length}-state traces over {} propositions exceed trace limit {}",
            alphabet.len(),
            budget.max_traces
        ))),
    }
}

/// Searches for a trace distinguishing `f` and `g`.
///
/// Traces are drawn over the union of both alphabets with every length from
/// zero up to the larger computation length; beyond that length neither
/// verdict can change. Returns the first distinguishing trace in enumeration
/// order, shortest first.
pub fn equivalence_witness(f: &Formula, g: &Formula, budget: &EquivBudget) -> Result<Option<Trace>> {
    require_welldef(f)?;
    require_welldef(g)?;
    let mut alphabet = f.alphabet();
    alphabet.extend(g.alphabet());
    let horizon = complen(f).max(complen(g));
    budget.admit(alphabet.len(), horizon)?;
    for len in 0..=horizon {
        for t in enumerate_traces(&alphabet, len, budget)? {
            if eval(t.states(), f) != eval(t.states(), g) {
                return Ok(Some(t));
            }
        }
    }
    Ok(None)
}

/// True iff `f` and `g` agree on every trace.
pub fn semantic_equiv(f: &Formula, g: &Formula, budget: &EquivBudget) -> Result<bool> {
    equivalence_witness(f, g, budget).map(|w| w.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::trace;

    fn p() -> Formula {
        Formula::prop("p")
    }

    #[test]
    fn suffix_and_prefix() {
        let t = trace(&[&["a"], &["a", "b"], &["b"], &["a"]]);
        assert_eq!(suffix(&t, 1), trace(&[&["a", "b"], &["b"], &["a"]]));
        assert_eq!(suffix(&t, 0), t);
        assert_eq!(suffix(&trace(&[&[]]), 5), Trace::empty());
        assert_eq!(prefix(&t, 2), trace(&[&["a"], &["a", "b"]]));
        assert_eq!(prefix(&t, 0), Trace::empty());
        let two = trace(&[&["x"], &["y"]]);
        assert_eq!(prefix(&two, 9), two);
    }

    #[test]
    fn end_of_trace_examples() {
        let g01_false = Formula::global(Formula::False, 0, 1);
        assert!(evaluate(&Trace::empty(), &g01_false).unwrap());
        let g13_false = Formula::global(Formula::False, 1, 3);
        assert!(evaluate(&trace(&[&["2"]]), &g13_false).unwrap());
        let f02 = Formula::future(p(), 0, 2);
        assert!(!evaluate(&trace(&[&[], &[]]), &f02).unwrap());
        assert!(evaluate(&trace(&[&[], &[], &["p"]]), &f02).unwrap());
        let g02 = Formula::global(p(), 0, 2);
        assert!(!evaluate(&trace(&[&["p"], &["p"], &[]]), &g02).unwrap());
        assert!(evaluate(&Trace::empty(), &Formula::True).unwrap());
        assert!(!evaluate(&Trace::empty(), &p()).unwrap());
    }

    #[test]
    fn ill_formed_is_an_error() {
        let bad = Formula::future(Formula::True, 5, 3);
        assert_eq!(
            evaluate(&Trace::empty(), &bad),
            Err(MltlError::IllFormedInterval(crate::ast::Interval::new(5, 3)))
        );
    }

    #[test]
    fn until_beyond_trace_end() {
        // the witness position may lie past the end, where G holds vacuously
        let f = Formula::until(
            Formula::global(p(), 0, 0),
            Formula::global(Formula::False, 0, 0),
            0,
            5,
        );
        assert!(evaluate(&trace(&[&["p"]]), &f).unwrap());
        assert!(!evaluate(&trace(&[&[]]), &f).unwrap());
    }

    #[test]
    fn enumeration_order() {
        let b = EquivBudget::default();
        let one: BTreeSet<String> = ["p".to_string()].into();
        let ts: Vec<_> = enumerate_traces(&one, 1, &b).unwrap().collect();
        assert_eq!(ts, vec![trace(&[&[]]), trace(&[&["p"]])]);
        let none = BTreeSet::new();
        let ts: Vec<_> = enumerate_traces(&none, 2, &b).unwrap().collect();
        assert_eq!(ts, vec![trace(&[&[], &[]])]);
        let two: BTreeSet<String> = ["p".to_string(), "q".to_string()].into();
        let ts: Vec<_> = enumerate_traces(&two, 0, &b).unwrap().collect();
        assert_eq!(ts, vec![Trace::empty()]);
        let ts: Vec<_> = enumerate_traces(&two, 2, &b).unwrap().collect();
        assert_eq!(ts.len(), 16);
        assert_eq!(ts[1], trace(&[&[], &["p"]]));
        assert_eq!(ts[3], trace(&[&[], &["p", "q"]]));
        assert_eq!(ts[4], trace(&[&["p"], &[]]));
    }

    #[test]
    fn enumeration_respects_budget() {
        let b = EquivBudget::new(1, 3);
        let two: BTreeSet<String> = ["p".to_string(), "q".to_string()].into();
        assert!(matches!(
            enumerate_traces(&two, 1, &b),
            Err(MltlError::BudgetExceeded(_))
        ));
        let one: BTreeSet<String> = ["p".to_string()].into();
        assert!(enumerate_traces(&one, 4, &b).is_err());
        let tight = EquivBudget::new(4, 12).with_max_traces(100);
        assert!(tight.admit(4, 12).is_err());
        assert_eq!(EquivBudget::default().admit(2, 2), Ok(1 + 4 + 16));
    }

    #[test]
    fn cost_estimate() {
        assert_eq!(enumeration_cost(0, 5), Some(6));
        assert_eq!(enumeration_cost(1, 3), Some(15));
        assert_eq!(enumeration_cost(4, 12), Some((16u64.pow(13) - 1) / 15));
        assert_eq!(enumeration_cost(64, 2), None);
    }

    #[test]
    fn equivalence_examples() {
        let b = EquivBudget::default();
        let g = Formula::global(p(), 0, 2);
        assert!(semantic_equiv(&g, &g, &b).unwrap());
        let nt = || Formula::not(Formula::True);
        let fig4 = Formula::not(Formula::or(
            nt(),
            Formula::or(nt(), Formula::not(Formula::False)),
        ));
        assert!(semantic_equiv(&fig4, &Formula::False, &b).unwrap());
        for (lo, hi) in [(0, 0), (0, 2), (1, 3), (2, 2)] {
            let f = Formula::future(p(), lo, hi);
            let u = Formula::until(Formula::True, p(), lo, hi);
            assert!(semantic_equiv(&f, &u, &b).unwrap());
        }
        let w = equivalence_witness(&p(), &Formula::True, &b).unwrap();
        assert_eq!(w, Some(Trace::empty()));
    }
}
