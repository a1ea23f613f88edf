//! Executable correctness properties of progression, computation length and
//! the NNF rewrite, plus a randomized runner over all of them.
//!
//! Each `check_*` function decides one property for one concrete input and
//! returns `Ok(false)` on a counterexample. [`run_selftest`] draws random
//! inputs for every property and tallies the results.

use rand::Rng;
use rayon::prelude::*;

use crate::ast::{Formula, Interval, State, Trace};
use crate::benchgen::{case_rng, gen_formula, gen_trace, GenConfig};
use crate::error::Result;
use crate::progression::{check_decomposition, progress, progress_step};
use crate::semantics::{evaluate, prefix, semantic_equiv, suffix, EquivBudget};
use crate::transforms::{complen, convert_nnf, is_nnf};

/// For `1 <= k < |t|`, `t ⊨ f` iff the suffix from `k` satisfies the
/// progression of `f` through the first `k` states.
pub fn check_progression_suffix(f: &Formula, t: &Trace, k: usize) -> Result<bool> {
    let direct = evaluate(t, f)?;
    let residual = progress(f, &prefix(t, k))?;
    Ok(direct == evaluate(&suffix(t, k), &residual)?)
}

/// For traces covering the computation length, `t ⊨ f` iff the residual is
/// equivalent to `true`, `t ⊭ f` iff it is equivalent to `false`, and exactly
/// one of the two holds.
pub fn check_resolution(f: &Formula, t: &Trace, budget: &EquivBudget) -> Result<bool> {
    let sat = evaluate(t, f)?;
    let residual = progress(f, t)?;
    let is_true = semantic_equiv(&residual, &Formula::True, budget)?;
    let is_false = semantic_equiv(&residual, &Formula::False, budget)?;
    Ok(sat == is_true && !sat == is_false && is_true != is_false)
}

/// For traces covering the computation length, appending states never
/// changes the verdict.
pub fn check_extension_invariance(f: &Formula, t: &Trace, extension: &Trace) -> Result<bool> {
    Ok(evaluate(t, f)? == evaluate(&t.concat(extension), f)?)
}

/// A formula of computation length 1 progresses to one of computation
/// length 1.
pub fn check_complen_one_preserved(f: &Formula, s: &State) -> Result<bool> {
    if complen(f) != 1 {
        return Ok(true);
    }
    Ok(complen(&progress_step(f, s)?) == 1)
}

/// Progression through a nonempty trace either starts or ends at
/// computation length 1, or shortens it by at least the trace length.
pub fn check_complen_decreases(f: &Formula, t: &Trace) -> Result<bool> {
    let before = complen(f);
    let after = complen(&progress(f, t)?);
    Ok(before == 1 || after == 1 || after <= before.saturating_sub(t.len()))
}

/// A formula of computation length at most 1 progresses through any single
/// state to something equivalent to a constant.
pub fn check_complen_one_dichotomy(f: &Formula, s: &State, budget: &EquivBudget) -> Result<bool> {
    if complen(f) > 1 {
        return Ok(true);
    }
    let r = progress_step(f, s)?;
    Ok(semantic_equiv(&r, &Formula::True, budget)? || semantic_equiv(&r, &Formula::False, budget)?)
}

/// `F φ ≡ true U φ`, `G φ ≡ !F !φ` and `φ R ψ ≡ !(!φ U !ψ)` over `iv`.
pub fn check_dualities(phi: &Formula, psi: &Formula, iv: Interval, budget: &EquivBudget) -> Result<bool> {
    let b = |f: &Formula| Box::new(f.clone());
    let not = |f: &Formula| Formula::not(f.clone());
    let future_as_until = semantic_equiv(
        &Formula::Future(b(phi), iv),
        &Formula::Until(Box::new(Formula::True), b(phi), iv),
        budget,
    )?;
    let global_future = semantic_equiv(
        &Formula::Global(b(phi), iv),
        &Formula::not(Formula::Future(Box::new(not(phi)), iv)),
        budget,
    )?;
    let release_until = semantic_equiv(
        &Formula::Release(b(phi), b(psi), iv),
        &Formula::not(Formula::Until(Box::new(not(phi)), Box::new(not(psi)), iv)),
        budget,
    )?;
    Ok(future_as_until && global_future && release_until)
}

/// NNF conversion preserves semantics, is idempotent, and yields a formula
/// whose subformulas are all in NNF.
pub fn check_nnf(f: &Formula, budget: &EquivBudget) -> Result<bool> {
    let n = convert_nnf(f)?;
    Ok(semantic_equiv(f, &n, budget)?
        && convert_nnf(&n)? == n
        && is_nnf(&n)
        && n.subformulas().into_iter().all(is_nnf))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    /// Diagnostic for the lowest-index failing case.
    pub first_failure: Option<String>,
}

impl PropertyReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelftestConfig {
    pub seed: u64,
    pub cases: usize,
}

impl Default for SelftestConfig {
    fn default() -> Self {
        SelftestConfig { seed: 0, cases: 1000 }
    }
}

type Check = fn(&mut rand_chacha::ChaCha8Rng) -> Result<(bool, String)>;

fn small_cfg(max_depth: usize, max_bound: usize, num_props: usize) -> GenConfig {
    GenConfig {
        max_depth,
        max_bound,
        num_props,
        ..GenConfig::default()
    }
}

fn random_state<R: Rng>(props: &[String], rng: &mut R) -> State {
    gen_trace(props, 1, rng).into_states().remove(0)
}

fn budget() -> EquivBudget {
    EquivBudget::new(4, 16)
}

fn decomposition(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(bool, String)> {
    let cfg = small_cfg(4, 4, 3);
    let f = gen_formula(&cfg, rng);
    let len = rng.gen_range(1..=8);
    let t = gen_trace(&cfg.prop_names(), len, rng);
    let k = rng.gen_range(1..=len);
    Ok((check_decomposition(&f, &t, k)?, format!("{f} on {t} split at {k}")))
}

fn progression_suffix(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(bool, String)> {
    let cfg = small_cfg(4, 4, 3);
    let f = gen_formula(&cfg, rng);
    let len = rng.gen_range(2..=8);
    let t = gen_trace(&cfg.prop_names(), len, rng);
    let k = rng.gen_range(1..len);
    Ok((check_progression_suffix(&f, &t, k)?, format!("{f} on {t} split at {k}")))
}

fn resolution(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(bool, String)> {
    let cfg = small_cfg(3, 3, 2);
    let f = gen_formula(&cfg, rng);
    let len = complen(&f) + rng.gen_range(0..=2);
    let t = gen_trace(&cfg.prop_names(), len, rng);
    Ok((check_resolution(&f, &t, &budget())?, format!("{f} on {t}")))
}

fn extension(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(bool, String)> {
    let cfg = small_cfg(3, 3, 2);
    let f = gen_formula(&cfg, rng);
    let props = cfg.prop_names();
    let len = complen(&f) + rng.gen_range(0..=2);
    let t = gen_trace(&props, len, rng);
    let zlen = rng.gen_range(0..=4);
    let z = gen_trace(&props, zlen, rng);
    Ok((check_extension_invariance(&f, &t, &z)?, format!("{f} on {t} extended by {z}")))
}

fn complen_lemmas(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(bool, String)> {
    let cfg = small_cfg(3, rng.gen_range(0..=3), 2);
    let f = gen_formula(&cfg, rng);
    let props = cfg.prop_names();
    let s = random_state(&props, rng);
    let len = rng.gen_range(1..=6);
    let t = gen_trace(&props, len, rng);
    let ok = check_complen_one_preserved(&f, &s)?
        && check_complen_decreases(&f, &t)?
        && check_complen_one_dichotomy(&f, &s, &budget())?;
    Ok((ok, format!("{f} with state {s} and trace {t}")))
}

fn dualities(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(bool, String)> {
    let cfg = small_cfg(2, 2, 2);
    let phi = gen_formula(&cfg, rng);
    let psi = gen_formula(&cfg, rng);
    let hi = rng.gen_range(0..=2);
    let iv = Interval::new(rng.gen_range(0..=hi), hi);
    Ok((check_dualities(&phi, &psi, iv, &budget())?, format!("{phi}, {psi} over {iv}")))
}

fn nnf(rng: &mut rand_chacha::ChaCha8Rng) -> Result<(bool, String)> {
    let cfg = small_cfg(3, 2, 2);
    let f = gen_formula(&cfg, rng);
    Ok((check_nnf(&f, &budget())?, format!("{f}")))
}

const SUITES: [(&str, Check); 7] = [
    ("decomposition", decomposition),
    ("progression-suffix", progression_suffix),
    ("resolution-dichotomy", resolution),
    ("extension-invariance", extension),
    ("complen-lemmas", complen_lemmas),
    ("dualities", dualities),
    ("nnf", nnf),
];

/// Runs every property on `cfg.cases` random inputs. Case `i` of suite `j`
/// draws from stream `j * 2^32 + i` of `cfg.seed`, so reports do not depend
/// on thread scheduling.
pub fn run_selftest(cfg: &SelftestConfig) -> Vec<PropertyReport> {
    SUITES
        .iter()
        .enumerate()
        .map(|(j, (name, check))| {
            let results: Vec<(bool, String)> = (0..cfg.cases as u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = case_rng(cfg.seed, ((j as u64) << 32) | i);
                    check(&mut rng).unwrap_or_else(|e| (false, format!("error: {e}")))
                })
                .collect();
            let failed = results.iter().filter(|(ok, _)| !ok).count();
            PropertyReport {
                name,
                passed: results.len() - failed,
                failed,
                first_failure: results.into_iter().find(|(ok, _)| !ok).map(|(_, d)| d),
            }
        })
        .collect()
}
