//! Named verification suites shared by the command line and the test harness.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};
use crate::exact::exact_gate;
use crate::gadgets::{
    and_state, eigen_residual, nand_state, phi0, phi1, prepare_eigenstate, t_gadget, toffoli_operator, toffoli_state,
    uphi, uphi_word, verify_identity, IdentityId, IdentityReport, DEFAULT_CAT_SIZE,
};
use crate::gates::Gate;
use crate::numtheory::{cyclotomic_poly, is_cyclotomic, parse_polynomial, VerdictReason};
use crate::random::{haar_state, random_word};
use crate::sim::{Outcome, Preparation, StateVector};
use crate::su2::proj_distance;
use crate::synth::{
    char_poly, eigenvalues, expected_spectrum, fixed_state_residual, fixed_states, rho_basis_forms, rho_generators,
    rho_words, spectrum_distance, transpose_residual,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Ring,
    Cyclotomic,
    Rho,
    Gadgets,
    All,
}

impl Suite {
    pub const MEMBERS: [Suite; 5] = [Suite::Identities, Suite::Ring, Suite::Cyclotomic, Suite::Rho, Suite::Gadgets];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Ring => "ring",
            Suite::Cyclotomic => "cyclotomic",
            Suite::Rho => "rho",
            Suite::Gadgets => "gadgets",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::MEMBERS
            .into_iter()
            .chain([Suite::All])
            .find(|m| m.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| validation(format!("unknown suite {s:?}")))
    }
}

/// Sizes and seed of the randomized checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SuiteConfig {
    pub seed: u64,
    pub ring_words: usize,
    pub ring_max_len: usize,
    pub haar_inputs: usize,
    pub eigenprep_trials: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { seed: 0, ring_words: 10_000, ring_max_len: 50, haar_inputs: 100, eigenprep_trials: 10_000 }
    }
}

/// One named check: `value` compared against `threshold`, or a boolean
/// outcome encoded as `0`/`1` with `threshold` `0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub threshold: f64,
}

impl Check {
    /// Passes when `value < threshold`.
    pub fn below(name: impl Into<String>, value: f64, threshold: f64) -> Self {
        Check { name: name.into(), passed: value < threshold, value, threshold }
    }

    /// Passes when `ok`; the value is the number of failures seen.
    pub fn flag(name: impl Into<String>, ok: bool, failures: usize) -> Self {
        Check { name: name.into(), passed: ok, value: failures as f64, threshold: 0.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub identities: Option<Vec<IdentityReport>>,
}

impl SuiteReport {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        SuiteReport { suite, passed: checks.iter().all(|c| c.passed), checks, identities: None }
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs `suite`; `All` yields one report per member.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<SuiteReport>> {
    match suite {
        Suite::All => Suite::MEMBERS.iter().map(|&s| run_one(s, cfg)).collect(),
        s => Ok(vec![run_one(s, cfg)?]),
    }
}

fn run_one(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match suite {
        Suite::Identities => identities_suite(),
        Suite::Ring => ring_suite(cfg),
        Suite::Cyclotomic => cyclotomic_suite(),
        Suite::Rho => rho_suite(),
        Suite::Gadgets => gadgets_suite(cfg),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

pub fn identities_suite() -> Result<SuiteReport> {
    let reports: Vec<IdentityReport> = IdentityId::ALL.iter().map(|&id| verify_identity(id)).collect::<Result<_>>()?;
    let checks = reports
        .iter()
        .map(|r| Check {
            name: r.id.to_string(),
            passed: r.holds && r.exact_zero,
            value: r.numeric_residual,
            threshold: 1e-12,
        })
        .collect();
    let mut report = SuiteReport::new(Suite::Identities, checks);
    report.identities = Some(reports);
    Ok(report)
}

/// Gates whose exact matrices have Gaussian-integer numerators up to `√2` powers.
pub const GAUSSIAN_ALPHABET: [Gate; 7] = [Gate::H, Gate::S, Gate::X, Gate::Y, Gate::Z, Gate::CNOT, Gate::TOFFOLI];

pub fn ring_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut failures = 0;
    let mut worst_numeric: f64 = 0.0;
    for i in 0..cfg.ring_words {
        let len = rand::Rng::random_range(&mut rng, 0..=cfg.ring_max_len);
        let w = random_word(&GAUSSIAN_ALPHABET, 3, len, &mut rng);
        let m = w.exact()?;
        if !m.gaussian_obstruction() {
            failures += 1;
        }
        if i < 100 {
            worst_numeric = worst_numeric.max(m.numeric::<f64>()?.max_abs_diff(&w.numeric()?));
        }
    }
    let t = exact_gate(Gate::T, &[0], 1)?;
    Ok(SuiteReport::new(
        Suite::Ring,
        vec![
            Check::flag("gaussian_words", failures == 0, failures),
            Check::flag("t_has_no_gaussian_form", !t.gaussian_obstruction(), usize::from(t.gaussian_obstruction())),
            Check::below("exact_matches_numeric", worst_numeric, 1e-9),
        ],
    ))
}

/// Largest `n` for which `Φ_n` is checked to be recognized.
pub const CYCLOTOMIC_MAX_ORDER: u64 = 50;

pub fn cyclotomic_suite() -> Result<SuiteReport> {
    let rejects = [parse_polynomial(&["1", "1", "1/4", "1", "1"])?, parse_polynomial(&["1", "-1/2", "1"])?];
    let mut checks = Vec::new();
    for (name, p) in ["reject_en1_minpoly", "reject_rho_minpoly"].iter().zip(&rejects) {
        let v = is_cyclotomic(p)?;
        let ok = !v.rational && v.reason == VerdictReason::NonIntegerCoefficient;
        checks.push(Check::flag(*name, ok, usize::from(!ok)));
    }
    let mut misses = 0;
    for n in 1..=CYCLOTOMIC_MAX_ORDER {
        let v = is_cyclotomic(&cyclotomic_poly(n)?)?;
        if !(v.rational && v.witness_order == Some(n) && v.reason == VerdictReason::Matched) {
            misses += 1;
        }
    }
    checks.push(Check::flag("accept_phi_n", misses == 0, misses));
    Ok(SuiteReport::new(Suite::Cyclotomic, checks))
}

pub fn rho_suite() -> Result<SuiteReport> {
    let gens = rho_generators();
    let want = expected_spectrum();
    let mut checks = Vec::new();
    for k in ["r2", "r3"] {
        checks.push(Check::below(format!("{k}_spectrum"), spectrum_distance(&eigenvalues(&gens[k]), &want), 1e-10));
        let p = char_poly(gens[k].matrix());
        let target = [1.0, -2.5, 3.0, -2.5, 1.0];
        let d = p.iter().zip(target).map(|(c, t)| (c - Complex::new(t, 0.0)).norm()).fold(0.0, f64::max);
        checks.push(Check::below(format!("{k}_char_poly"), d, 1e-10));
    }
    for (k, f) in ["r1", "r2", "r3"].iter().zip(fixed_states()) {
        checks.push(Check::below(format!("{k}_fixed_state"), fixed_state_residual(&gens[*k], &f), 1e-12));
    }
    let forms = rho_basis_forms()?;
    for (k, v) in &forms.residuals {
        checks.push(Check::below(format!("basis_form.{k}"), *v, 1e-6));
    }
    let words = rho_words();
    checks.push(Check::below("r2_transpose", transpose_residual(&words.r2), 1e-12));
    checks.push(Check::below("r3_transpose", transpose_residual(&words.r3), 1e-12));
    Ok(SuiteReport::new(Suite::Rho, checks))
}

fn max_amp_diff(a: &StateVector<f64>, b: &StateVector<f64>) -> f64 {
    a.amplitudes().iter().zip(b.amplitudes()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

/// Results of repeated `U_φ` eigenstate preparation from `|+⟩`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EigenprepStats {
    pub trials: usize,
    pub plus_count: usize,
    /// Born weight of `|φ0⟩` in `|+⟩`.
    pub plus_probability: f64,
    pub max_eigen_residual: f64,
    pub max_probability_error: f64,
    pub repeat_mismatches: usize,
}

impl EigenprepStats {
    pub fn frequency(&self) -> f64 {
        self.plus_count as f64 / self.trials as f64
    }

    /// `|frequency - p| / sqrt(p (1 - p) / trials)`.
    pub fn sigmas_from(&self, p: f64) -> f64 {
        (self.frequency() - p).abs() / (p * (1.0 - p) / self.trials as f64).sqrt()
    }
}

pub fn eigenprep_stats(trials: usize, seed: u64) -> Result<EigenprepStats> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = uphi();
    let plus = StateVector::prepare(Preparation::Plus(1))?;
    let p_plus = plus.inner(&phi0())?.norm_sqr();
    let mut stats = EigenprepStats {
        trials,
        plus_count: 0,
        plus_probability: p_plus,
        max_eigen_residual: 0.0,
        max_probability_error: 0.0,
        repeat_mismatches: 0,
    };
    for _ in 0..trials {
        let run = prepare_eigenstate(&u, 1, &plus, DEFAULT_CAT_SIZE, &mut rng, None)?;
        let rec = &run.outcome_trace[0];
        let expected = if rec.outcome == Outcome::Plus { p_plus } else { 1.0 - p_plus };
        stats.plus_count += usize::from(rec.outcome == Outcome::Plus);
        stats.max_probability_error = stats.max_probability_error.max((rec.probability - expected).abs());
        stats.max_eigen_residual = stats.max_eigen_residual.max(eigen_residual(&u, &run.output, rec.outcome)?);
        let again = prepare_eigenstate(&u, 1, &run.output, DEFAULT_CAT_SIZE, &mut rng, None)?;
        let rep = &again.outcome_trace[0];
        if rep.outcome != rec.outcome || (rep.probability - 1.0).abs() > 1e-12 {
            stats.repeat_mismatches += 1;
        }
    }
    Ok(stats)
}

/// Smallest fidelity with `T|ψ⟩` over Haar inputs and both forced branches.
pub fn t_gadget_min_fidelity(inputs: usize, seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = Gate::T.matrix::<f64>();
    let mut worst: f64 = 1.0;
    for _ in 0..inputs {
        let psi = haar_state(1, &mut rng);
        let want = psi.apply(&t, &[0])?;
        for b in [0, 1] {
            let run = t_gadget(&psi, &mut rng, Some(b))?;
            worst = worst.min(run.output.fidelity(&want)?);
        }
    }
    Ok(worst)
}

/// Largest amplitude error of the forced `+`/`-` Toffoli-state runs against `|AND⟩`/`|NAND⟩`.
pub fn toffoli_state_error(seed: u64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let and = toffoli_state(&mut rng, Some(Outcome::Plus))?;
    let nand = toffoli_state(&mut rng, Some(Outcome::Minus))?;
    let mut err = max_amp_diff(&and.output, &and_state()).max(max_amp_diff(&nand.output, &nand_state()));
    for run in [&and, &nand] {
        err = err.max((run.outcome_trace[0].probability - 0.5).abs());
        err = err.max(eigen_residual(&toffoli_operator(), &run.output, run.outcome_trace[0].outcome)?);
    }
    Ok(err)
}

pub fn gadgets_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let fidelity = t_gadget_min_fidelity(cfg.haar_inputs, cfg.seed)?;
    let stats = eigenprep_stats(cfg.eigenprep_trials, cfg.seed)?;
    let uphi_dist = proj_distance(&uphi_word().numeric::<f64>()?, &uphi())?;
    let eig = eigen_residual(&uphi(), &phi0(), Outcome::Plus)?.max(eigen_residual(&uphi(), &phi1(), Outcome::Minus)?);
    let checks = vec![
        Check::below("t_gadget_infidelity", 1.0 - fidelity, 1e-12),
        Check::below("uphi_word", uphi_dist, 1e-14),
        Check::below("uphi_eigenvectors", eig, 1e-14),
        Check::below("eigenprep_frequency_sigmas", stats.sigmas_from(stats.plus_probability), 5.0),
        Check::below("eigenprep_probability", stats.max_probability_error, 1e-12),
        Check::below("eigenprep_eigen_residual", stats.max_eigen_residual, 1e-10),
        Check::flag("eigenprep_repeatable", stats.repeat_mismatches == 0, stats.repeat_mismatches),
        Check::below("toffoli_state", toffoli_state_error(cfg.seed)?, 1e-12),
    ];
    Ok(SuiteReport::new(Suite::Gadgets, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let cfg = SuiteConfig { seed: 1, ring_words: 200, ring_max_len: 20, haar_inputs: 10, eigenprep_trials: 200 };
        for r in run_suite(Suite::All, &cfg).unwrap() {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("RHO".parse::<Suite>().unwrap(), Suite::Rho);
        assert!("nope".parse::<Suite>().is_err());
    }
}
