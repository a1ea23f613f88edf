//! Negation normal form and computation length.

use crate::ast::Formula;
use crate::error::{require_welldef, Result};

/// Pushes negations down to propositions using the operator dualities.
///
/// No constant folding is done: `!true` becomes `false`, but `p & true`
/// stays as it is.
pub fn convert_nnf(f: &Formula) -> Result<Formula> {
    require_welldef(f)?;
    Ok(nnf(f))
}

fn nnf(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        True | False | Prop(_) => f.clone(),
        Not(g) => nnf_negated(g),
        And(g, h) => Formula::and(nnf(g), nnf(h)),
        Or(g, h) => Formula::or(nnf(g), nnf(h)),
        Future(g, iv) => Future(Box::new(nnf(g)), *iv),
        Global(g, iv) => Global(Box::new(nnf(g)), *iv),
        Until(g, h, iv) => Until(Box::new(nnf(g)), Box::new(nnf(h)), *iv),
        Release(g, h, iv) => Release(Box::new(nnf(g)), Box::new(nnf(h)), *iv),
    }
}

/// NNF of `!f`.
fn nnf_negated(f: &Formula) -> Formula {
    use Formula::*;
    match f {
        True => False,
        False => True,
        Prop(_) => Formula::not(f.clone()),
        Not(g) => nnf(g),
        And(g, h) => Formula::or(nnf_negated(g), nnf_negated(h)),
        Or(g, h) => Formula::and(nnf_negated(g), nnf_negated(h)),
        Future(g, iv) => Global(Box::new(nnf_negated(g)), *iv),
        Global(g, iv) => Future(Box::new(nnf_negated(g)), *iv),
        Until(g, h, iv) => Release(Box::new(nnf_negated(g)), Box::new(nnf_negated(h)), *iv),
        Release(g, h, iv) => Until(Box::new(nnf_negated(g)), Box::new(nnf_negated(h)), *iv),
    }
}

/// True iff every negation sits directly above a proposition.
pub fn is_nnf(f: &Formula) -> bool {
    match f {
        Formula::Not(g) => matches!(**g, Formula::Prop(_)),
        _ => f.children().into_iter().all(is_nnf),
    }
}

/// The number of states after which extending a trace can no longer change
/// whether it satisfies `f`. Always at least 1.
pub fn complen(f: &Formula) -> usize {
    match f {
        Formula::True | Formula::False | Formula::Prop(_) => 1,
        Formula::Not(g) => complen(g),
        Formula::And(g, h) | Formula::Or(g, h) => complen(g).max(complen(h)),
        Formula::Future(g, iv) | Formula::Global(g, iv) => iv.hi.saturating_add(complen(g)),
        Formula::Until(g, h, iv) | Formula::Release(g, h, iv) => {
            iv.hi.saturating_add((complen(g) - 1).max(complen(h)))
        }
    }
}
