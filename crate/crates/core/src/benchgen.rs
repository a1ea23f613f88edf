//! Random formulas and traces, and benchmark suites whose labels are
//! computed by direct evaluation and confirmed by progression.
//!
//! Every case draws from its own ChaCha stream keyed by `(seed, index)`, so a
//! suite is reproducible regardless of how many threads produce it.

use std::io::{self, Write};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ast::{Formula, Interval, State, Trace, CONSTRUCTOR_NAMES};
use crate::error::{MltlError, Result};
use crate::parser::{parse_formula, print_formula};
use crate::progression::{classify, Verdict};
use crate::semantics::{evaluate, EquivBudget};
use crate::transforms::complen;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceLenPolicy {
    /// Trace length equals the formula's computation length.
    AtComplen,
    /// Computation length plus a fixed number of extra states.
    AboveComplen(usize),
    /// Uniformly shorter than the computation length (possibly empty).
    BelowComplen,
}

impl std::str::FromStr for TraceLenPolicy {
    type Err = String;

    /// Accepts `at`, `below`, `above` and `above:N` (`above` means `above:1`).
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "at" | "at-complen" => Ok(TraceLenPolicy::AtComplen),
            "below" | "below-complen" => Ok(TraceLenPolicy::BelowComplen),
            "above" | "above-complen" => Ok(TraceLenPolicy::AboveComplen(1)),
            _ => s
                .strip_prefix("above:")
                .and_then(|n| n.parse().ok())
                .map(TraceLenPolicy::AboveComplen)
                .ok_or_else(|| format!("unknown trace length policy '{s}' (expected at, below, above or above:N)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_depth: usize,
    pub max_bound: usize,
    pub num_props: usize,
    pub num_cases: usize,
    pub trace_len_policy: TraceLenPolicy,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_depth: 3,
            max_bound: 3,
            num_props: 2,
            num_cases: 100,
            trace_len_policy: TraceLenPolicy::AtComplen,
        }
    }
}

impl GenConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_props == 0 {
            return Err(MltlError::PreconditionViolated("num_props must be at least 1".into()));
        }
        if self.num_cases == 0 {
            return Err(MltlError::PreconditionViolated("num_cases must be at least 1".into()));
        }
        Ok(())
    }

    /// Proposition names `p0 .. p{num_props-1}`.
    pub fn prop_names(&self) -> Vec<String> {
        (0..self.num_props).map(|i| format!("p{i}")).collect()
    }
}

/// The RNG for case `index` of a suite seeded with `seed`.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

// constructor weights: True, False, Prop, Not, And, Or, Future, Global, Until, Release
const WEIGHTS: [u32; 10] = [1, 1, 2, 2, 2, 2, 2, 2, 2, 2];

/// Draws a formula with well-defined intervals, depth at most
/// `cfg.max_depth` and every interval endpoint at most `cfg.max_bound`.
pub fn gen_formula<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> Formula {
    gen_sized(cfg, cfg.max_depth, rng)
}

fn gen_sized<R: Rng + ?Sized>(cfg: &GenConfig, depth: usize, rng: &mut R) -> Formula {
    let kinds = if depth == 0 { 3 } else { WEIGHTS.len() };
    let total: u32 = WEIGHTS[..kinds].iter().sum();
    let mut pick = rng.gen_range(0..total);
    let mut kind = 0;
    while pick >= WEIGHTS[kind] {
        pick -= WEIGHTS[kind];
        kind += 1;
    }
    let sub = |rng: &mut R| Box::new(gen_sized(cfg, depth - 1, rng));
    match kind {
        0 => Formula::True,
        1 => Formula::False,
        2 => Formula::Prop(format!("p{}", rng.gen_range(0..cfg.num_props.max(1)))),
        3 => Formula::Not(sub(rng)),
        4 => Formula::And(sub(rng), sub(rng)),
        5 => Formula::Or(sub(rng), sub(rng)),
        6 => {
            let iv = gen_interval(cfg, rng);
            Formula::Future(sub(rng), iv)
        }
        7 => {
            let iv = gen_interval(cfg, rng);
            Formula::Global(sub(rng), iv)
        }
        8 => {
            let iv = gen_interval(cfg, rng);
            Formula::Until(sub(rng), sub(rng), iv)
        }
        _ => {
            let iv = gen_interval(cfg, rng);
            Formula::Release(sub(rng), sub(rng), iv)
        }
    }
}

fn gen_interval<R: Rng + ?Sized>(cfg: &GenConfig, rng: &mut R) -> Interval {
    let hi = rng.gen_range(0..=cfg.max_bound);
    let lo = rng.gen_range(0..=hi);
    Interval::new(lo, hi)
}

/// A trace of `len` states, each proposition present with probability 1/2.
pub fn gen_trace<R: Rng + ?Sized>(props: &[String], len: usize, rng: &mut R) -> Trace {
    (0..len)
        .map(|_| {
            props
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .map(String::as_str)
                .collect::<State>()
        })
        .collect()
}

/// One labeled benchmark case, in printed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchmarkRecord {
    pub formula: String,
    pub trace: Vec<Vec<String>>,
    pub label: bool,
    pub complen: usize,
    pub trace_len: usize,
    pub seed_path: String,
    /// False for traces shorter than the computation length, where the
    /// progression verdict is not forced to a constant.
    pub dichotomy_checked: bool,
}

impl BenchmarkRecord {
    pub fn parsed_formula(&self) -> Result<Formula> {
        Ok(parse_formula(&self.formula)?)
    }

    pub fn parsed_trace(&self) -> Trace {
        self.trace
            .iter()
            .map(|s| s.iter().map(String::as_str).collect::<State>())
            .collect()
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serialization cannot fail")
    }
}

/// Independently re-checks a record: the label against direct evaluation,
/// the stored lengths, and, when the trace covers the computation length,
/// the progression verdict.
pub fn validate_record(rec: &BenchmarkRecord) -> Result<()> {
    let f = rec.parsed_formula()?;
    let t = rec.parsed_trace();
    let fail = |what: String| Err(MltlError::CrossCheckFailed(format!("{}: {what}", rec.seed_path)));
    if t.len() != rec.trace_len {
        return fail(format!("trace has {} states, record says {}", t.len(), rec.trace_len));
    }
    let cl = complen(&f);
    if cl != rec.complen {
        return fail(format!("complen is {cl}, record says {}", rec.complen));
    }
    let label = evaluate(&t, &f)?;
    if label != rec.label {
        return fail(format!("label {} disagrees with evaluation {label}", rec.label));
    }
    if rec.dichotomy_checked != (t.len() >= cl) {
        return fail("dichotomy flag inconsistent with trace length".into());
    }
    if rec.dichotomy_checked {
        cross_check(&f, &t, label).or_else(|e| fail(e.to_string()))?;
    }
    Ok(())
}

fn cross_check(f: &Formula, t: &Trace, label: bool) -> Result<()> {
    let budget = EquivBudget::new(f.alphabet().len(), complen(f));
    let verdict = classify(f, t, &budget).map_err(|e| match e {
        MltlError::IllFormedInterval(_) => e,
        other => MltlError::CrossCheckFailed(format!("progression check failed: {other}")),
    })?;
    let agrees = match verdict {
        Verdict::ResolvedTrue => label,
        Verdict::ResolvedFalse => !label,
        Verdict::Residual(_) => false,
    };
    if agrees {
        Ok(())
    } else {
        Err(MltlError::CrossCheckFailed(format!(
            "progression verdict {verdict:?} disagrees with label {label} for {f} on {t}"
        )))
    }
}

/// Generates case `index` of the suite described by `cfg`.
pub fn gen_labeled_case(cfg: &GenConfig, index: u64) -> Result<BenchmarkRecord> {
    cfg.validate()?;
    let mut rng = case_rng(cfg.seed, index);
    let f = gen_formula(cfg, &mut rng);
    let cl = complen(&f);
    let len = match cfg.trace_len_policy {
        TraceLenPolicy::AtComplen => cl,
        TraceLenPolicy::AboveComplen(extra) => cl + extra,
        TraceLenPolicy::BelowComplen => rng.gen_range(0..cl),
    };
    let t = gen_trace(&cfg.prop_names(), len, &mut rng);
    let label = evaluate(&t, &f)?;
    let dichotomy_checked = len >= cl;
    if dichotomy_checked {
        cross_check(&f, &t, label).map_err(|e| {
            MltlError::CrossCheckFailed(format!("seed={}/case={index}: {e}", cfg.seed))
        })?;
    }
    Ok(BenchmarkRecord {
        formula: print_formula(&f),
        trace: t
            .states()
            .iter()
            .map(|s| s.props().iter().cloned().collect())
            .collect(),
        label,
        complen: cl,
        trace_len: len,
        seed_path: format!("seed={}/case={index}", cfg.seed),
        dichotomy_checked,
    })
}

/// Generates all `cfg.num_cases` records in index order. `threads` of `None`
/// uses the global rayon pool.
pub fn generate_suite(cfg: &GenConfig, threads: Option<usize>) -> Result<Vec<BenchmarkRecord>> {
    cfg.validate()?;
    let run = || {
        (0..cfg.num_cases as u64)
            .into_par_iter()
            .map(|i| gen_labeled_case(cfg, i))
            .collect::<Result<Vec<_>>>()
    };
    match threads {
        None => run(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| MltlError::PreconditionViolated(format!("thread pool: {e}")))?
            .install(run),
    }
}

/// Writes records as JSON lines, LF-terminated.
pub fn write_suite<W: Write>(records: &[BenchmarkRecord], mut out: W) -> io::Result<()> {
    for r in records {
        out.write_all(r.to_json_line().as_bytes())?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// Counts every node of every formula by constructor, indexed as in
/// [`CONSTRUCTOR_NAMES`].
pub fn constructor_histogram<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> [usize; 10] {
    let mut hist = [0; CONSTRUCTOR_NAMES.len()];
    let mut stack: Vec<&Formula> = formulas.into_iter().collect();
    while let Some(f) = stack.pop() {
        hist[f.constructor_index()] += 1;
        stack.extend(f.children());
    }
    hist
}
