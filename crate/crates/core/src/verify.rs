//! Randomized cross-checks of the χ engine against the brute-force oracles
//! and the purity bounds. Drives the `verify` subcommand.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chi::ChiTable;
use crate::error::{Error, Result};
use crate::oracle::{self, PairFockSpace, ENUMERATION_MAX_MODES, OPERATOR_MAX_MODES};
use crate::spectrum::SchmidtSpectrum;

pub const CHI_TOLERANCE: f64 = 1e-12;
pub const EPSILON_TOLERANCE: f64 = 1e-10;
pub const COMMUTATOR_TOLERANCE: f64 = 1e-12;
pub const BOUND_SLACK: f64 = 1e-10;
pub const CONCAVITY_SLACK: f64 = 1e-12;

/// Largest spectrum drawn for the bound and monotonicity checks.
pub const LARGE_MODES: usize = 200;

const CONCENTRATIONS: [f64; 3] = [0.2, 1.0, 5.0];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub m_max: usize,
    pub trials: usize,
    pub seed: u64,
    /// Perturb one χ entry so that the failure path can be exercised.
    pub corrupt_chi: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { m_max: OPERATOR_MAX_MODES, trials: 200, seed: 42, corrupt_chi: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyFailure {
    pub check: &'static str,
    pub trial: usize,
    pub detail: String,
    pub lambdas: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub checks: Vec<CheckSummary>,
    pub first_failure: Option<VerifyFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// `|a − b| / max(|a|, |b|)`, zero when both vanish.
pub fn relative_difference(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 { 0.0 } else { (a - b).abs() / scale }
}

struct Tally {
    checks: Vec<CheckSummary>,
    first_failure: Option<VerifyFailure>,
}

impl Tally {
    fn new(names: &[&'static str]) -> Self {
        Self {
            checks: names.iter().map(|&name| CheckSummary { name, passed: 0, failed: 0 }).collect(),
            first_failure: None,
        }
    }

    fn record(&mut self, name: &'static str, ok: bool, trial: usize, spectrum: &SchmidtSpectrum, detail: impl FnOnce() -> String) {
        let check = self.checks.iter_mut().find(|c| c.name == name).expect("registered check");
        if ok {
            check.passed += 1;
        } else {
            check.failed += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(VerifyFailure {
                    check: name,
                    trial,
                    detail: detail(),
                    lambdas: spectrum.lambdas().to_vec(),
                });
            }
        }
    }
}

fn build_table(spectrum: &SchmidtSpectrum, corrupt: bool) -> Result<ChiTable> {
    let modes = spectrum.mode_count();
    let table = ChiTable::new(spectrum, modes + 1)?;
    Ok(if corrupt { table.perturbed(modes.min(2), 1.0 + 1e-6) } else { table })
}

fn check_bounds(tally: &mut Tally, trial: usize, spectrum: &SchmidtSpectrum, table: &ChiTable) -> Result<()> {
    let purity = spectrum.purity();
    for n in 1..spectrum.mode_count() {
        let ratio = table.chi_ratio(n)?;
        let (lower, upper) = crate::chi::bounds(spectrum, n)?;
        let ok = ratio >= lower - BOUND_SLACK * (n as f64 * purity).max(1.0) && ratio <= upper + BOUND_SLACK;
        tally.record("sandwich_bounds", ok, trial, spectrum, || {
            format!("N = {n}: ratio {ratio:e} outside [{lower:e}, {upper:e}]")
        });
    }
    for (i, margin) in table.log_concavity_margins().into_iter().enumerate() {
        tally.record("ratio_monotone", margin >= -CONCAVITY_SLACK, trial, spectrum, || {
            format!("N = {}: 1 - chi_(N+1) chi_(N-1) / chi_N^2 = {margin:e}", i + 1)
        });
    }
    Ok(())
}

fn check_oracles(tally: &mut Tally, trial: usize, spectrum: &SchmidtSpectrum, table: &ChiTable) -> Result<()> {
    let modes = spectrum.mode_count();
    for n in 0..=modes {
        let dp = table.chi(n)?;
        let enumerated = oracle::chi_by_enumeration(spectrum, n)?;
        let diff = relative_difference(dp, enumerated);
        tally.record("chi_dp_vs_enumeration", diff <= CHI_TOLERANCE, trial, spectrum, || {
            format!("N = {n}: DP {dp:e} vs enumeration {enumerated:e} (rel {diff:e})")
        });
    }
    if modes > OPERATOR_MAX_MODES {
        return Ok(());
    }
    let space = PairFockSpace::new(spectrum)?;
    for n in 0..=modes {
        let dp = table.chi(n)?;
        let fock = space.chi(n);
        let diff = relative_difference(dp, fock);
        tally.record("chi_dp_vs_fock", diff <= CHI_TOLERANCE, trial, spectrum, || {
            format!("N = {n}: DP {dp:e} vs Fock {fock:e} (rel {diff:e})")
        });
    }
    for n in 1..=modes {
        let closed = table.epsilon_norm(n)?;
        let explicit = space.epsilon_norm(n)?;
        tally.record("epsilon_fock", (closed - explicit).abs() <= EPSILON_TOLERANCE, trial, spectrum, || {
            format!("N = {n}: closed form {closed:e} vs explicit {explicit:e}")
        });
        let from_ratio = table.commutator_expectation(n)?;
        let explicit = space.commutator_expectation(n)?;
        tally.record(
            "commutator_fock",
            (from_ratio - explicit).abs() <= COMMUTATOR_TOLERANCE,
            trial,
            spectrum,
            || format!("N = {n}: 2 ratio - 1 = {from_ratio:e} vs explicit {explicit:e}"),
        );
    }
    for n in 0..=modes {
        let (coefficient, residual) = space.raising_coefficient(n)?;
        let expected = table.alpha(n + 1)? * ((n + 1) as f64).sqrt();
        let ok = (coefficient - expected).abs() <= COMMUTATOR_TOLERANCE && residual <= COMMUTATOR_TOLERANCE;
        tally.record("raising_ladder", ok, trial, spectrum, || {
            format!("N = {n}: coefficient {coefficient:e} vs alpha sqrt(N+1) = {expected:e}, residual {residual:e}")
        });
    }
    Ok(())
}

/// Runs `trials` random spectra through every cross-check.
pub fn run_verification(config: &VerifyConfig) -> Result<VerifyReport> {
    if config.m_max == 0 || config.m_max > ENUMERATION_MAX_MODES {
        return Err(Error::InvalidParameter {
            name: "m_max",
            reason: format!("must lie in 1..={ENUMERATION_MAX_MODES}, got {}", config.m_max),
        });
    }
    let mut tally = Tally::new(&[
        "chi_dp_vs_enumeration",
        "chi_dp_vs_fock",
        "epsilon_fock",
        "commutator_fock",
        "raising_ladder",
        "sandwich_bounds",
        "ratio_monotone",
    ]);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for trial in 0..config.trials {
        let concentration = CONCENTRATIONS[trial % CONCENTRATIONS.len()];
        let small = SchmidtSpectrum::random_dirichlet(rng.random_range(1..=config.m_max), concentration, rng.random())?;
        let table = build_table(&small, config.corrupt_chi)?;
        check_oracles(&mut tally, trial, &small, &table)?;
        check_bounds(&mut tally, trial, &small, &table)?;

        let large = SchmidtSpectrum::random_dirichlet(rng.random_range(2..=LARGE_MODES), concentration, rng.random())?;
        let table = build_table(&large, config.corrupt_chi)?;
        check_bounds(&mut tally, trial, &large, &table)?;
    }
    Ok(VerifyReport { config: *config, checks: tally.checks, first_failure: tally.first_failure })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_passes() {
        let report = run_verification(&VerifyConfig { trials: 30, ..VerifyConfig::default() }).unwrap();
        assert!(report.passed(), "{:?}", report.first_failure);
        assert!(report.checks.iter().all(|c| c.passed > 0), "{:?}", report.checks);
    }

    #[test]
    fn corrupted_table_fails() {
        let config = VerifyConfig { trials: 5, corrupt_chi: true, ..VerifyConfig::default() };
        let report = run_verification(&config).unwrap();
        assert!(!report.passed());
        let failure = report.first_failure.unwrap();
        assert!(!failure.lambdas.is_empty());
    }

    #[test]
    fn rejects_oversized_m_max() {
        let config = VerifyConfig { m_max: 13, ..VerifyConfig::default() };
        assert!(run_verification(&config).is_err());
    }

    #[test]
    fn deterministic() {
        let config = VerifyConfig { trials: 4, ..VerifyConfig::default() };
        assert_eq!(run_verification(&config).unwrap(), run_verification(&config).unwrap());
    }
}
