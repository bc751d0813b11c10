//! Per-spectrum analysis reports as emitted by the command-line tool.

use serde::Serialize;

use crate::chi::{BosonicMetrics, ChiTable};
use crate::error::Result;
use crate::spectrum::SchmidtSpectrum;

/// Default cap on the number of metric rows.
pub const DEFAULT_N_MAX_CAP: usize = 64;

/// Where the analysed spectrum came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InputDescriptor {
    Uniform { modes: usize },
    Geometric { z: f64, tail_cutoff: f64 },
    Dirichlet { modes: usize, concentration: f64, seed: u64 },
    SpectrumFile { path: String },
    GridFile { path: String, zero_threshold: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertificateSummary {
    /// Smallest `1 − χ_{N+1}χ_{N−1}/χ_N²` over the reported range.
    pub min_margin: f64,
    pub argmin_n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub input: InputDescriptor,
    pub purity: f64,
    pub mode_count: usize,
    pub n_max: usize,
    /// The requested `N_max` was cut back to the mode count.
    pub truncated: bool,
    pub metrics: Vec<BosonicMetrics>,
    pub log_concavity: CertificateSummary,
    pub warnings: Vec<String>,
    pub lambdas: Vec<f64>,
}

/// `min(M − 1, 64)`, but at least 1.
pub fn default_n_max(mode_count: usize) -> usize {
    mode_count.saturating_sub(1).clamp(1, DEFAULT_N_MAX_CAP)
}

/// Metrics for `N = 1 ..= n_max`. Requests beyond the mode count are truncated
/// to `M` with a warning, since `|N⟩` stops existing past it.
pub fn analyze(
    spectrum: &SchmidtSpectrum,
    input: InputDescriptor,
    n_max: Option<usize>,
) -> Result<AnalysisReport> {
    let modes = spectrum.mode_count();
    let requested = n_max.unwrap_or_else(|| default_n_max(modes));
    if requested == 0 {
        return Err(crate::Error::InvalidParameter { name: "N_max", reason: "must be at least 1".into() });
    }
    let mut warnings = Vec::new();
    let effective = if requested > modes {
        warnings.push(format!(
            "N_max = {requested} exceeds the {modes} nonzero Schmidt modes; truncated to {modes}"
        ));
        modes
    } else {
        requested
    };
    let table = ChiTable::new(spectrum, effective + 1)?;
    let metrics = (1..=effective).map(|n| table.metrics(n)).collect::<Result<Vec<_>>>()?;
    let margins = table.log_concavity_margins();
    let (argmin, min_margin) = margins
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .unwrap_or((0, 1.0));
    Ok(AnalysisReport {
        input,
        purity: spectrum.purity(),
        mode_count: modes,
        n_max: effective,
        truncated: effective < requested,
        metrics,
        log_concavity: CertificateSummary { min_margin, argmin_n: argmin + 1 },
        warnings,
        lambdas: spectrum.lambdas().to_vec(),
    })
}
