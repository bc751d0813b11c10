//! The normalization constants `χ_N` of the antisymmetrized N-pair state and
//! the bosonic-quality metrics derived from them.
//!
//! `χ_N = N! · e_N(λ)`, where `e_N` is the N-th elementary symmetric polynomial
//! of the Schmidt coefficients. The table is built with the usual
//! `e_k ← e_k + λ·e_{k−1}` recursion over modes, with every entry held as a
//! [`ScaledFloat`] so nothing underflows even when `χ_N` is far below `f64`
//! range.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scaled::ScaledFloat;
use crate::spectrum::SchmidtSpectrum;

/// Slack for clamping provably non-negative quantities that round below zero.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// Absolute slack used when counting ties in [`max_occupancy`].
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ChiTable {
    chi: Vec<ScaledFloat>,
    mode_count: usize,
    purity: f64,
    linear_entropy: f64,
}

/// Per-N summary of how bosonic the composite behaves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BosonicMetrics {
    #[serde(rename = "N")]
    pub n: usize,
    /// `χ_{N+1}/χ_N`.
    pub chi_ratio: f64,
    /// `α_{N+1} = √(χ_{N+1}/χ_N)`, the ladder coefficient in `c†|N⟩ = α_{N+1}√(N+1)|N+1⟩`.
    pub alpha: f64,
    /// `⟨ε_N|ε_N⟩`.
    pub epsilon_norm: f64,
    /// `⟨N|[c, c†]|N⟩`.
    pub commutator: f64,
    /// `1 − N·P`.
    pub lower_bound: f64,
    /// `1 − P`.
    pub upper_bound: f64,
}

/// Maximum occupancy at which the composite still looks bosonic to within δ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Occupancy {
    /// Largest N with `1 − N·P ≥ 1 − δ`.
    pub bound_based: usize,
    /// Largest N with `χ_{N+1}/χ_N ≥ 1 − δ`.
    pub exact: usize,
}

/// Builds `χ_0 ..= χ_{n_max}` for `spectrum`. `n_max` may be at most `M + 1`.
pub fn chi_table(spectrum: &SchmidtSpectrum, n_max: usize) -> Result<ChiTable> {
    ChiTable::new(spectrum, n_max)
}

impl ChiTable {
    pub fn new(spectrum: &SchmidtSpectrum, n_max: usize) -> Result<Self> {
        let modes = spectrum.mode_count();
        if n_max > modes + 1 {
            return Err(Error::InvalidParameter {
                name: "N_max",
                reason: format!("must not exceed M + 1 = {}, got {n_max}", modes + 1),
            });
        }
        let mut e = vec![ScaledFloat::ZERO; n_max + 1];
        e[0] = ScaledFloat::ONE;
        for (seen, &lambda) in spectrum.nonzero().iter().enumerate() {
            let top = n_max.min(seen + 1);
            for k in (1..=top).rev() {
                e[k] = e[k] + e[k - 1] * lambda;
            }
        }
        let mut factorial = ScaledFloat::ONE;
        for (k, entry) in e.iter_mut().enumerate().skip(1) {
            factorial = factorial * k as f64;
            *entry = *entry * factorial;
        }
        Ok(Self { chi: e, mode_count: modes, purity: spectrum.purity(), linear_entropy: spectrum.linear_entropy() })
    }

    pub fn n_max(&self) -> usize {
        self.chi.len() - 1
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    /// Purity of the spectrum the table was built from.
    pub fn purity(&self) -> f64 {
        self.purity
    }

    fn entry(&self, n: usize) -> Result<ScaledFloat> {
        self.chi
            .get(n)
            .copied()
            .ok_or(Error::OutOfTable { n, n_max: self.n_max() })
    }

    fn defined(&self, n: usize) -> Result<ScaledFloat> {
        let chi = self.entry(n)?;
        if chi.is_zero() {
            return Err(Error::UndefinedState { n, mode_count: self.mode_count });
        }
        Ok(chi)
    }

    fn require_positive(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidParameter { name: "N", reason: "must be at least 1".into() });
        }
        Ok(())
    }

    /// `χ_N` as a plain float; may underflow to zero for large tables.
    pub fn chi(&self, n: usize) -> Result<f64> {
        self.entry(n).map(ScaledFloat::to_f64)
    }

    /// `ln χ_N`, with `-∞` for `χ_N = 0`.
    pub fn log_chi(&self, n: usize) -> Result<f64> {
        self.entry(n).map(ScaledFloat::ln)
    }

    pub fn log_chi_values(&self) -> Vec<f64> {
        self.chi.iter().map(|c| c.ln()).collect()
    }

    /// `χ_{N+1}/χ_N`; zero when `χ_{N+1}` vanishes but `χ_N` does not.
    pub fn chi_ratio(&self, n: usize) -> Result<f64> {
        Self::require_positive(n)?;
        let current = self.defined(n)?;
        let next = self.entry(n + 1)?;
        Ok(if next.is_zero() { 0.0 } else { next.ratio(current) })
    }

    /// `α_N = √(χ_N/χ_{N−1})`.
    pub fn alpha(&self, n: usize) -> Result<f64> {
        Self::require_positive(n)?;
        let previous = self.defined(n - 1)?;
        let current = self.entry(n)?;
        Ok(if current.is_zero() { 0.0 } else { current.ratio(previous).sqrt() })
    }

    /// `⟨ε_N|ε_N⟩ = 1 − χ_{N+1}/χ_N − N (χ_N/χ_{N−1} − χ_{N+1}/χ_N)`.
    pub fn epsilon_norm(&self, n: usize) -> Result<f64> {
        Self::require_positive(n)?;
        let ratio = self.chi_ratio(n)?;
        let previous_ratio = self.defined(n)?.ratio(self.defined(n - 1)?);
        let value = 1.0 - ratio - n as f64 * (previous_ratio - ratio);
        Ok(if (-CLAMP_TOLERANCE..0.0).contains(&value) { 0.0 } else { value })
    }

    /// `⟨N|[c, c†]|N⟩ = 2 χ_{N+1}/χ_N − 1`.
    pub fn commutator_expectation(&self, n: usize) -> Result<f64> {
        Ok(2.0 * self.chi_ratio(n)? - 1.0)
    }

    pub fn metrics(&self, n: usize) -> Result<BosonicMetrics> {
        let chi_ratio = self.chi_ratio(n)?;
        let (lower_bound, upper_bound) = bounds_from_purity(self.linear_entropy, n);
        Ok(BosonicMetrics {
            n,
            chi_ratio,
            alpha: chi_ratio.sqrt(),
            epsilon_norm: self.epsilon_norm(n)?,
            commutator: 2.0 * chi_ratio - 1.0,
            lower_bound,
            upper_bound,
        })
    }

    /// `χ_N² − χ_{N+1}χ_{N−1}` for `N = 1 ..= n_max − 1`, as plain floats.
    ///
    /// These underflow for large spectra; [`log_concavity_margins`](Self::log_concavity_margins)
    /// gives the same certificate relative to `χ_N²`.
    pub fn log_concavity_certificate(&self) -> Vec<f64> {
        (1..self.n_max())
            .map(|n| {
                let square = self.chi[n].sqr();
                let product = self.chi[n + 1] * self.chi[n - 1];
                square.to_f64() - product.to_f64()
            })
            .collect()
    }

    /// `1 − χ_{N+1}χ_{N−1}/χ_N²` for `N = 1 ..= n_max − 1`; zero where `χ_N = 0`.
    /// Non-negative entries certify that the χ-ratio is non-increasing.
    pub fn log_concavity_margins(&self) -> Vec<f64> {
        (1..self.n_max())
            .map(|n| {
                let square = self.chi[n].sqr();
                if square.is_zero() {
                    return 0.0;
                }
                let product = self.chi[n + 1] * self.chi[n - 1];
                if product.is_zero() {
                    1.0
                } else {
                    1.0 - product.ratio(square)
                }
            })
            .collect()
    }

    /// Copy of the table with `χ_n` multiplied by `factor`. Used to exercise
    /// the failure paths of the verification suite.
    #[doc(hidden)]
    pub fn perturbed(&self, n: usize, factor: f64) -> Self {
        let mut copy = self.clone();
        if let Some(entry) = copy.chi.get_mut(n) {
            *entry = *entry * factor;
        }
        copy
    }
}

// written in terms of `1 − P` so the N = 1 bounds carry no cancellation
fn bounds_from_purity(linear_entropy: f64, n: usize) -> (f64, f64) {
    (n as f64 * linear_entropy - (n - 1) as f64, linear_entropy)
}

/// The purity bounds `(1 − N·P, 1 − P)` on `χ_{N+1}/χ_N`.
pub fn bounds(spectrum: &SchmidtSpectrum, n: usize) -> Result<(f64, f64)> {
    ChiTable::require_positive(n)?;
    Ok(bounds_from_purity(spectrum.linear_entropy(), n))
}

/// How many composites fit in one state before the χ-ratio drops below `1 − δ`,
/// once from the purity lower bound and once from the exact table.
pub fn max_occupancy(spectrum: &SchmidtSpectrum, delta: f64) -> Result<Occupancy> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter {
            name: "delta",
            reason: format!("must lie in (0, 1), got {delta}"),
        });
    }
    let purity = spectrum.purity();
    let bound_based = ((delta + TIE_TOLERANCE) / purity).floor() as usize;

    let modes = spectrum.mode_count();
    let table = ChiTable::new(spectrum, modes)?;
    let threshold = 1.0 - delta - TIE_TOLERANCE;
    let mut exact = 0;
    // the ratio is non-increasing, and zero at N = M
    for n in 1..modes {
        if table.chi_ratio(n)? >= threshold {
            exact = n;
        } else {
            break;
        }
    }
    Ok(Occupancy { bound_based, exact })
}
