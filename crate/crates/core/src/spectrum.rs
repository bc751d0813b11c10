//! Schmidt spectra: the squared Schmidt coefficients `λ_p` of a two-fermion
//! pure state, which are also the eigenvalues of either reduced density matrix.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Values at or below this are treated as SVD noise and do not count as modes.
pub const DEFAULT_ZERO_THRESHOLD: f64 = 1e-14;

/// Negative inputs down to this magnitude are clamped to zero.
pub const NEGATIVE_TOLERANCE: f64 = 1e-12;

/// Largest deviation of the total from 1 that [`SchmidtSpectrum::from_normalized`]
/// silently rescales away.
pub const NORMALIZATION_TOLERANCE: f64 = 1e-6;

const MAX_GENERATED_MODES: usize = 10_000_000;

/// A validated, descending, normalized sequence of Schmidt coefficients.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtSpectrum {
    lambdas: Vec<f64>,
    zero_threshold: f64,
    mode_count: usize,
}

impl SchmidtSpectrum {
    /// Builds a spectrum from unnormalized non-negative weights.
    ///
    /// Tiny negatives are clamped, values are rescaled by their total, entries at
    /// or below `zero_threshold` are set to exactly zero, and the result is sorted
    /// in descending order.
    pub fn from_raw(values: &[f64], zero_threshold: f64) -> Result<Self> {
        if !(zero_threshold.is_finite() && (0.0..1.0).contains(&zero_threshold)) {
            return Err(Error::InvalidParameter {
                name: "zero_threshold",
                reason: format!("must lie in [0, 1), got {zero_threshold}"),
            });
        }
        if values.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        let mut lambdas = Vec::with_capacity(values.len());
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
            if value < -NEGATIVE_TOLERANCE {
                return Err(Error::NegativeValue { index, value });
            }
            lambdas.push(value.max(0.0));
        }
        let total: f64 = lambdas.iter().sum();
        if total <= 0.0 {
            return Err(Error::ZeroTotal);
        }
        rescale(&mut lambdas, total);
        for l in &mut lambdas {
            if *l <= zero_threshold {
                *l = 0.0;
            }
        }
        lambdas.sort_by(|a, b| b.total_cmp(a));
        // rescale again after thresholding; summing smallest first
        let total: f64 = lambdas.iter().rev().sum();
        if total <= 0.0 {
            return Err(Error::ZeroTotal);
        }
        rescale(&mut lambdas, total);
        let mode_count = lambdas.iter().take_while(|&&l| l > 0.0).count();
        Ok(Self { lambdas, zero_threshold, mode_count })
    }

    /// Like [`from_raw`](Self::from_raw), but the input must already sum to 1
    /// within [`NORMALIZATION_TOLERANCE`]. Used for spectra read from files.
    pub fn from_normalized(values: &[f64], zero_threshold: f64) -> Result<Self> {
        let sum: f64 = values.iter().sum();
        if values.is_empty() {
            return Err(Error::EmptySpectrum);
        }
        if sum.is_finite() && (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::NotNormalized { sum, tolerance: NORMALIZATION_TOLERANCE });
        }
        Self::from_raw(values, zero_threshold)
    }

    /// `M` equal coefficients `1/M`.
    pub fn uniform(modes: usize) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidParameter {
                name: "M",
                reason: "a spectrum needs at least one mode".into(),
            });
        }
        Ok(Self {
            lambdas: vec![1.0 / modes as f64; modes],
            zero_threshold: DEFAULT_ZERO_THRESHOLD,
            mode_count: modes,
        })
    }

    /// Geometric spectrum `λ_p ∝ (1 − z) z^p`, truncated once the retained mass
    /// reaches `1 − tail_cutoff`.
    pub fn geometric(z: f64, tail_cutoff: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&z) {
            return Err(Error::InvalidParameter {
                name: "z",
                reason: format!("must lie in [0, 1), got {z}"),
            });
        }
        if !(tail_cutoff > 0.0 && tail_cutoff < 1.0) {
            return Err(Error::InvalidParameter {
                name: "tail_cutoff",
                reason: format!("must lie in (0, 1), got {tail_cutoff}"),
            });
        }
        let mut values = Vec::new();
        let mut term = 1.0 - z;
        let mut retained = 0.0;
        loop {
            values.push(term);
            retained += term;
            if retained >= 1.0 - tail_cutoff {
                break;
            }
            if values.len() >= MAX_GENERATED_MODES {
                return Err(Error::InvalidParameter {
                    name: "tail_cutoff",
                    reason: format!("z = {z} would need more than {MAX_GENERATED_MODES} modes"),
                });
            }
            term *= z;
        }
        Self::from_raw(&values, DEFAULT_ZERO_THRESHOLD)
    }

    /// Dirichlet-distributed spectrum with symmetric `concentration`,
    /// reproducible from `seed`.
    pub fn random_dirichlet(modes: usize, concentration: f64, seed: u64) -> Result<Self> {
        if modes == 0 {
            return Err(Error::InvalidParameter {
                name: "M",
                reason: "a spectrum needs at least one mode".into(),
            });
        }
        if !(concentration > 0.0 && concentration.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "concentration",
                reason: format!("must be positive and finite, got {concentration}"),
            });
        }
        let gamma = Gamma::new(concentration, 1.0).map_err(|e| Error::InvalidParameter {
            name: "concentration",
            reason: e.to_string(),
        })?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let draws: Vec<f64> = (0..modes).map(|_| gamma.sample(&mut rng)).collect();
            // very small concentrations can underflow every draw; draw again
            if draws.iter().any(|&d| d > 0.0) {
                return Self::from_raw(&draws, DEFAULT_ZERO_THRESHOLD);
            }
        }
    }

    /// Parses the spectrum text format: either a JSON array of numbers, a JSON
    /// object with a `lambdas` array, or one number per line with `#` comments.
    /// The values must already be normalized.
    pub fn parse(text: &str, zero_threshold: f64) -> Result<Self> {
        Self::from_normalized(&parse_values(text)?, zero_threshold)
    }

    /// JSON array of the coefficients with round-trip precision.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.lambdas).expect("f64 slice always serializes")
    }

    /// All coefficients, descending, including trailing zeros.
    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// The strictly positive coefficients.
    pub fn nonzero(&self) -> &[f64] {
        &self.lambdas[..self.mode_count]
    }

    /// Number of coefficients above the zero threshold, `M`.
    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn zero_threshold(&self) -> f64 {
        self.zero_threshold
    }

    /// `P = Σ λ_p²`.
    pub fn purity(&self) -> f64 {
        self.nonzero().iter().rev().map(|l| l * l).sum()
    }

    /// `1 − P`, evaluated as `Σ_p λ_p Σ_{q≠p} λ_q` so that it keeps full
    /// relative precision when one mode dominates.
    pub fn linear_entropy(&self) -> f64 {
        let lambdas = self.nonzero();
        let mut suffix = vec![0.0; lambdas.len() + 1];
        for (i, l) in lambdas.iter().enumerate().rev() {
            suffix[i] = suffix[i + 1] + l;
        }
        let mut prefix = 0.0;
        let mut total = 0.0;
        for (i, l) in lambdas.iter().enumerate() {
            total += l * (prefix + suffix[i + 1]);
            prefix += l;
        }
        total
    }
}

/// Divides by `total` unless it already equals 1 up to summation round-off,
/// so that re-reading an emitted spectrum reproduces it bit for bit.
fn rescale(values: &mut [f64], total: f64) {
    if (total - 1.0).abs() <= values.len() as f64 * f64::EPSILON {
        return;
    }
    for v in values {
        *v /= total;
    }
}

#[derive(Deserialize)]
struct SpectrumObject {
    lambdas: Vec<f64>,
}

fn parse_values(text: &str) -> Result<Vec<f64>> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('[') {
        return serde_json::from_str::<Vec<f64>>(trimmed).map_err(|e| Error::Parse(e.to_string()));
    }
    if trimmed.starts_with('{') {
        return serde_json::from_str::<SpectrumObject>(trimmed)
            .map(|o| o.lambdas)
            .map_err(|e| Error::Parse(e.to_string()));
    }
    let mut values = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let value = content
            .parse::<f64>()
            .map_err(|e| Error::Parse(format!("line {}: `{content}`: {e}", lineno + 1)))?;
        values.push(value);
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_raw_sorts_and_normalizes() {
        let s = SchmidtSpectrum::from_raw(&[0.2, 0.5, 0.3], DEFAULT_ZERO_THRESHOLD).unwrap();
        assert_eq!(s.lambdas(), &[0.5, 0.3, 0.2]);
        assert_eq!(s.mode_count(), 3);

        let s = SchmidtSpectrum::from_raw(&[1.0], DEFAULT_ZERO_THRESHOLD).unwrap();
        assert_eq!(s.lambdas(), &[1.0]);
        assert_eq!(s.mode_count(), 1);

        let s = SchmidtSpectrum::from_raw(&[2.0, 2.0], DEFAULT_ZERO_THRESHOLD).unwrap();
        assert_eq!(s.lambdas(), &[0.5, 0.5]);
        assert_eq!(s.mode_count(), 2);
    }

    #[test]
    fn from_raw_rejects_bad_input() {
        let t = DEFAULT_ZERO_THRESHOLD;
        assert_eq!(SchmidtSpectrum::from_raw(&[], t), Err(Error::EmptySpectrum));
        assert!(matches!(
            SchmidtSpectrum::from_raw(&[0.5, -1e-9], t),
            Err(Error::NegativeValue { index: 1, .. })
        ));
        assert!(matches!(
            SchmidtSpectrum::from_raw(&[0.5, f64::NAN], t),
            Err(Error::NonFinite { index: 1, .. })
        ));
        assert!(matches!(
            SchmidtSpectrum::from_raw(&[1.0, f64::INFINITY], t),
            Err(Error::NonFinite { .. })
        ));
        assert_eq!(SchmidtSpectrum::from_raw(&[0.0, 0.0], t), Err(Error::ZeroTotal));
    }

    #[test]
    fn tiny_negatives_and_noise_floor() {
        let s = SchmidtSpectrum::from_raw(&[0.7, -1e-13, 0.3, 1e-16], DEFAULT_ZERO_THRESHOLD)
            .unwrap();
        assert_eq!(s.lambdas(), &[0.7, 0.3, 0.0, 0.0]);
        assert_eq!(s.mode_count(), 2);
        assert_eq!(s.nonzero(), &[0.7, 0.3]);
    }

    #[test]
    fn strict_normalization_for_files() {
        assert!(SchmidtSpectrum::from_normalized(&[0.5, 0.5 + 5e-7], 1e-14).is_ok());
        assert!(matches!(
            SchmidtSpectrum::from_normalized(&[2.0, 2.0], 1e-14),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn purity_examples() {
        assert_eq!(SchmidtSpectrum::uniform(1).unwrap().purity(), 1.0);
        assert_eq!(SchmidtSpectrum::uniform(4).unwrap().purity(), 0.25);
        assert_eq!(SchmidtSpectrum::uniform(2).unwrap().purity(), 0.5);
        let s = SchmidtSpectrum::from_raw(&[0.5, 0.3, 0.2], DEFAULT_ZERO_THRESHOLD).unwrap();
        assert!((s.purity() - 0.38).abs() < 1e-15);
        assert!((s.linear_entropy() - 0.62).abs() < 1e-15);
        assert_eq!(SchmidtSpectrum::uniform(1).unwrap().linear_entropy(), 0.0);
    }

    #[test]
    fn linear_entropy_keeps_precision_for_dominant_mode() {
        let s = SchmidtSpectrum::from_raw(&[1.0, 1e-9], DEFAULT_ZERO_THRESHOLD).unwrap();
        let exact = 2e-9 / (1.0 + 1e-9) / (1.0 + 1e-9);
        assert!((s.linear_entropy() / exact - 1.0).abs() < 1e-14);
        assert!((1.0 - s.purity()) / exact - 1.0 > 1e-10);
    }

    #[test]
    fn uniform_rejects_zero_modes() {
        assert!(SchmidtSpectrum::uniform(0).is_err());
        assert_eq!(SchmidtSpectrum::uniform(4).unwrap().lambdas(), &[0.25; 4]);
    }

    #[test]
    fn geometric_purity_closed_form() {
        let s = SchmidtSpectrum::geometric(0.0, 1e-12).unwrap();
        assert_eq!(s.lambdas(), &[1.0]);
        for z in [0.5, 0.9] {
            let s = SchmidtSpectrum::geometric(z, 1e-12).unwrap();
            let expected = (1.0 - z) / (1.0 + z);
            assert!((s.purity() - expected).abs() < 1e-9, "z = {z}: {}", s.purity());
        }
        assert!((SchmidtSpectrum::geometric(0.9, 1e-12).unwrap().purity() - 1.0 / 19.0).abs() < 1e-9);
        assert!(SchmidtSpectrum::geometric(1.0, 1e-12).is_err());
        assert!(SchmidtSpectrum::geometric(-0.1, 1e-12).is_err());
        assert!(SchmidtSpectrum::geometric(0.5, 0.0).is_err());
    }

    #[test]
    fn dirichlet_is_seeded() {
        assert_eq!(SchmidtSpectrum::random_dirichlet(1, 1.0, 3).unwrap().lambdas(), &[1.0]);
        let a = SchmidtSpectrum::random_dirichlet(50, 1.0, 7).unwrap();
        let b = SchmidtSpectrum::random_dirichlet(50, 1.0, 7).unwrap();
        let c = SchmidtSpectrum::random_dirichlet(50, 1.0, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(SchmidtSpectrum::random_dirichlet(0, 1.0, 7).is_err());
        assert!(SchmidtSpectrum::random_dirichlet(5, 0.0, 7).is_err());
    }

    #[test]
    fn parse_formats() {
        let t = DEFAULT_ZERO_THRESHOLD;
        let text = "# two modes\n0.25\n\n0.75  # dominant\n";
        assert_eq!(SchmidtSpectrum::parse(text, t).unwrap().lambdas(), &[0.75, 0.25]);
        assert_eq!(SchmidtSpectrum::parse("[0.5, 0.5]", t).unwrap().lambdas(), &[0.5, 0.5]);
        let obj = r#"{"lambdas": [0.1, 0.9], "other": 3}"#;
        assert_eq!(SchmidtSpectrum::parse(obj, t).unwrap().lambdas(), &[0.9, 0.1]);
        let err = SchmidtSpectrum::parse("0.5\nabc\n", t).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
    }

    #[test]
    fn json_roundtrip_preserves_values() {
        let s = SchmidtSpectrum::random_dirichlet(30, 0.7, 11).unwrap();
        let back = SchmidtSpectrum::parse(&s.to_json(), s.zero_threshold()).unwrap();
        assert_eq!(back.lambdas(), s.lambdas());
    }
}
