//! Formula progression: rewriting a formula against consumed states into a
//! residual obligation on the rest of the trace.

use crate::ast::{Formula, Interval, State, Trace};
use crate::error::{require_welldef, MltlError, Result};
use crate::semantics::{prefix, semantic_equiv, suffix, EquivBudget};
use crate::transforms::complen;

/// Outcome of progressing a formula over a trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    ResolvedTrue,
    ResolvedFalse,
    Residual(Formula),
}

/// Progresses `f` through a single state.
pub fn progress_step(f: &Formula, s: &State) -> Result<Formula> {
    require_welldef(f)?;
    Ok(step(f, s))
}

fn step(f: &Formula, s: &State) -> Formula {
    use Formula::*;
    match f {
        True => True,
        False => False,
        Prop(p) => {
            if s.contains(p) {
                True
            } else {
                False
            }
        }
        Not(g) => Formula::not(step(g, s)),
        And(g, h) => Formula::and(step(g, s), step(h, s)),
        Or(g, h) => Formula::or(step(g, s), step(h, s)),
        Until(g, h, Interval { lo, hi }) => {
            let (lo, hi) = (*lo, *hi);
            if lo > 0 {
                Until(g.clone(), h.clone(), Interval::new(lo - 1, hi - 1))
            } else if hi > 0 {
                Formula::or(
                    step(h, s),
                    Formula::and(step(g, s), Until(g.clone(), h.clone(), Interval::new(0, hi - 1))),
                )
            } else {
                step(h, s)
            }
        }
        Future(g, Interval { lo, hi }) => {
            let (lo, hi) = (*lo, *hi);
            if lo > 0 {
                Future(g.clone(), Interval::new(lo - 1, hi - 1))
            } else if hi > 0 {
                Formula::or(step(g, s), Future(g.clone(), Interval::new(0, hi - 1)))
            } else {
                step(g, s)
            }
        }
        Release(g, h, iv) => {
            let dual = Until(
                Box::new(Formula::not((**g).clone())),
                Box::new(Formula::not((**h).clone())),
                *iv,
            );
            Formula::not(step(&dual, s))
        }
        Global(g, iv) => {
            let dual = Future(Box::new(Formula::not((**g).clone())), *iv);
            Formula::not(step(&dual, s))
        }
    }
}

/// Progresses `f` through every state of `t` in order. The empty trace
/// leaves `f` unchanged.
pub fn progress(f: &Formula, t: &Trace) -> Result<Formula> {
    require_welldef(f)?;
    Ok(t.states().iter().fold(f.clone(), |acc, s| step(&acc, s)))
}

/// The residual after each consumed state; element `i` is the progression
/// through `t[0..=i]`.
pub fn progress_residuals(f: &Formula, t: &Trace) -> Result<Vec<Formula>> {
    require_welldef(f)?;
    let mut acc = f.clone();
    let mut out = Vec::with_capacity(t.len());
    for s in t.states() {
        acc = step(&acc, s);
        out.push(acc.clone());
    }
    Ok(out)
}

/// Progresses `f` through `t` and classifies the residual.
///
/// Once `t` covers the computation length of `f` the residual must be
/// equivalent to exactly one constant; anything else is reported as
/// [`MltlError::DichotomyViolation`]. Shorter traces may still resolve to a
/// constant, otherwise the residual is returned as is.
pub fn classify(f: &Formula, t: &Trace, budget: &EquivBudget) -> Result<Verdict> {
    let residual = progress(f, t)?;
    let is_true = semantic_equiv(&residual, &Formula::True, budget)?;
    let is_false = semantic_equiv(&residual, &Formula::False, budget)?;
    match (is_true, is_false) {
        (true, false) => Ok(Verdict::ResolvedTrue),
        (false, true) => Ok(Verdict::ResolvedFalse),
        (false, false) if t.len() < complen(f) => Ok(Verdict::Residual(residual)),
        _ => Err(MltlError::DichotomyViolation {
            residual: crate::parser::print_formula(&residual),
        }),
    }
}

/// Checks that progressing through `t` in one go equals progressing through
/// the first `k` states and then the remaining ones, at structural equality.
pub fn check_decomposition(f: &Formula, t: &Trace, k: usize) -> Result<bool> {
    if k == 0 || k > t.len() {
        return Err(MltlError::PreconditionViolated(format!(
            "split point {k} outside 1..={}",
            t.len()
        )));
    }
    let whole = progress(f, t)?;
    let split = progress(&progress(f, &prefix(t, k))?, &suffix(t, k))?;
    Ok(whole == split)
}
