//! A hydrogen atom in a harmonic trap: Gaussian center-of-mass state of width
//! `b`, 1s internal state with Bohr radius `a0`, heavy proton.
//!
//! With the short-range approximation the proton purity factorizes into
//! `∫|ψ|⁴ d³R · ∫|σ|² d³q`, where `σ(q) = ∫ φ(r) φ*(r − q) d³r` is the
//! displacement overlap of the 1s orbital. Lengths are in units of `a0`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{self, Integral, Tolerance};

/// Below this `b/a0` the trap is not much larger than the atom.
pub const VALID_REGIME_RATIO: f64 = 10.0;

/// Purity at or above which the `NP ≪ 1` regime holds only for a handful of atoms.
pub const PURITY_WARNING: f64 = 0.1;

/// `33 / (4 √(2π))`.
pub fn purity_prefactor() -> f64 {
    33.0 / (4.0 * (2.0 * PI).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HydrogenTrapModel {
    a0: f64,
    b: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HydrogenReport {
    pub b_over_a0: f64,
    pub delta: f64,
    pub purity_closed: f64,
    pub purity_quadrature: f64,
    pub relative_difference: f64,
    pub max_atoms: Option<u64>,
    pub valid: bool,
    pub warnings: Vec<String>,
}

impl HydrogenTrapModel {
    pub fn new(a0: f64, b: f64) -> Result<Self> {
        for (name, value) in [("a0", a0), ("b", b)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter { name, reason: format!("must be positive, got {value}") });
            }
        }
        Ok(Self { a0, b })
    }

    /// Model with `a0 = 1`.
    pub fn from_ratio(b_over_a0: f64) -> Result<Self> {
        Self::new(1.0, b_over_a0)
    }

    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn b_over_a0(&self) -> f64 {
        self.b / self.a0
    }

    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.b_over_a0() < VALID_REGIME_RATIO {
            out.push(format!(
                "b/a0 = {} is below {VALID_REGIME_RATIO}: the trap is not much larger than the atom",
                self.b_over_a0()
            ));
        }
        out
    }

    /// `σ(q) = e^{−u}(1 + u + u²/3)`, `u = q/a0`.
    pub fn sigma_overlap(&self, q: f64) -> Result<f64> {
        if q.is_nan() || q < 0.0 {
            return Err(Error::InvalidParameter { name: "q", reason: format!("must be non-negative, got {q}") });
        }
        Ok(sigma_closed(q / self.a0))
    }

    /// `σ(q)` by direct integration of `φ(r) φ(r − q)` over 3-D space in
    /// cylindrical coordinates about the displacement axis.
    pub fn sigma_overlap_quadrature(&self, q: f64, tol: Tolerance) -> Result<Integral> {
        if q.is_nan() || q < 0.0 {
            return Err(Error::InvalidParameter { name: "q", reason: format!("must be non-negative, got {q}") });
        }
        let u = q / self.a0;
        const REACH: f64 = 60.0;
        let z_breaks: Vec<f64> = if u > 0.0 {
            vec![-REACH, 0.0, u, u + REACH]
        } else {
            vec![-REACH, 0.0, REACH]
        };
        let inner_tol = Tolerance { relative: tol.relative * 1e-2, absolute: tol.absolute * 1e-2, ..tol };
        let failure = std::cell::Cell::new(None);
        let radial = |rho: f64| {
            let rho2 = rho * rho;
            let slab = quadrature::integrate_with_breaks(
                |z: f64| {
                    let dz = z - u;
                    (-(rho2 + z * z).sqrt() - (rho2 + dz * dz).sqrt()).exp()
                },
                &z_breaks,
                inner_tol,
            );
            match slab {
                Ok(r) => rho * r.value,
                Err(e) => {
                    failure.set(Some(e));
                    0.0
                }
            }
        };
        // φ(r)φ(r−q) = e^{−r1−r2}/π, and the azimuth gives 2π
        let outer = quadrature::integrate_with_breaks(radial, &[0.0, 1.0, REACH], tol)?;
        if let Some(e) = failure.take() {
            return Err(e);
        }
        Ok(Integral { value: 2.0 * outer.value, error_estimate: 2.0 * outer.error_estimate, ..outer })
    }

    /// `∫|ψ(R)|⁴ d³R = 1/((2π)^{3/2} b³)`.
    pub fn trap_quartic_integral(&self) -> f64 {
        1.0 / ((2.0 * PI).powf(1.5) * self.b.powi(3))
    }

    /// `∫|ψ(R)|⁴ d³R` by radial quadrature.
    pub fn trap_quartic_integral_radial(&self, tol: Tolerance) -> Result<Integral> {
        let b = self.b;
        let norm4 = 1.0 / (PI.powi(3) * b.powi(6));
        let r = quadrature::integrate_to_infinity(
            |r: f64| 4.0 * PI * r * r * norm4 * (-2.0 * r * r / (b * b)).exp(),
            0.0,
            tol,
        )?;
        Ok(r)
    }

    /// `∫|σ(q)|² d³q = 4π a0³ ∫ σ(u)² u² du` by adaptive radial quadrature.
    pub fn sigma_square_integral(&self, tol: Tolerance) -> Result<Integral> {
        let r = quadrature::integrate_to_infinity(
            |u: f64| {
                let s = sigma_closed(u);
                s * s * u * u
            },
            0.0,
            tol,
        )?;
        let scale = 4.0 * PI * self.a0.powi(3);
        Ok(Integral { value: scale * r.value, error_estimate: scale * r.error_estimate, ..r })
    }

    /// `P = 33/(4√(2π)) (a0/b)³`.
    pub fn purity_closed(&self) -> f64 {
        purity_prefactor() * (self.a0 / self.b).powi(3)
    }

    /// The factorized purity with the `σ²` integral done numerically.
    pub fn purity_quadrature(&self) -> Result<f64> {
        if self.b_over_a0() < 1.0 {
            return Err(Error::InvalidParameter {
                name: "b",
                reason: format!("quadrature purity needs b/a0 >= 1, got {}", self.b_over_a0()),
            });
        }
        let sigma = self.sigma_square_integral(Tolerance::new(0.0, 1e-13))?;
        Ok(self.trap_quartic_integral() * sigma.value)
    }

    /// `⌊δ/P⌋`: atoms in the trap before the χ-ratio lower bound drops below `1 − δ`.
    pub fn max_atoms(&self, delta: f64) -> Result<u64> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParameter { name: "delta", reason: format!("must lie in (0, 1), got {delta}") });
        }
        let purity = self.purity_closed();
        if purity >= 1.0 {
            return Err(Error::RegimeViolation { purity, b_over_a0: self.b_over_a0() });
        }
        Ok((delta / purity).floor() as u64)
    }

    /// Closed-form and quadrature purities side by side with the atom count.
    pub fn report(&self, delta: f64) -> Result<HydrogenReport> {
        let purity_closed = self.purity_closed();
        let purity_quadrature = self.purity_quadrature()?;
        let mut warnings = self.warnings();
        let max_atoms = match self.max_atoms(delta) {
            Ok(n) => Some(n),
            Err(Error::RegimeViolation { purity, .. }) => {
                warnings.push(format!(
                    "purity {purity:.6} >= 1: the short-range approximation is invalid here"
                ));
                None
            }
            Err(e) => return Err(e),
        };
        if (PURITY_WARNING..1.0).contains(&purity_closed) {
            warnings.push(format!(
                "purity {purity_closed:.6} >= {PURITY_WARNING}: only a few atoms fit before composite effects appear"
            ));
        }
        Ok(HydrogenReport {
            b_over_a0: self.b_over_a0(),
            delta,
            purity_closed,
            purity_quadrature,
            relative_difference: (purity_quadrature - purity_closed).abs() / purity_closed,
            max_atoms,
            valid: purity_closed < 1.0,
            warnings,
        })
    }
}

fn sigma_closed(u: f64) -> f64 {
    (-u).exp() * (1.0 + u + u * u / 3.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_values() {
        let m = HydrogenTrapModel::from_ratio(10.0).unwrap();
        assert_eq!(m.sigma_overlap(0.0).unwrap(), 1.0);
        assert!((m.sigma_overlap(1.0).unwrap() - 0.858_385_362_733_365).abs() < 1e-14);
        assert!(m.sigma_overlap(200.0).unwrap() < 1e-80);
        assert!(m.sigma_overlap(-1.0).is_err());
    }

    #[test]
    fn closed_purity_scaling() {
        let p10 = HydrogenTrapModel::from_ratio(10.0).unwrap().purity_closed();
        let p20 = HydrogenTrapModel::from_ratio(20.0).unwrap().purity_closed();
        assert!((p10 - 3.291_273_813_311_82e-3).abs() < 1e-15);
        assert!((p20 * 8.0 - p10).abs() < 1e-17);
        let p1 = HydrogenTrapModel::from_ratio(1.0).unwrap().purity_closed();
        assert!((p1 - 3.291_273_813_311_82).abs() < 1e-13);
    }

    #[test]
    fn max_atoms_values() {
        let atoms = |b: f64| HydrogenTrapModel::from_ratio(b).unwrap().max_atoms(0.1).unwrap();
        assert_eq!(atoms(10.0), 30);
        assert_eq!(atoms(20.0), 243);
        assert_eq!(atoms(100.0), 30_383);
        let m = HydrogenTrapModel::from_ratio(10.0).unwrap();
        assert_eq!(m.max_atoms(1e-6).unwrap(), 0);
        assert!(matches!(
            HydrogenTrapModel::from_ratio(1.0).unwrap().max_atoms(0.1),
            Err(Error::RegimeViolation { .. })
        ));
        assert!(m.max_atoms(0.0).is_err());
    }

    #[test]
    fn report_flags_invalid_regime() {
        let r = HydrogenTrapModel::from_ratio(1.0).unwrap().report(0.1).unwrap();
        assert!(!r.valid);
        assert_eq!(r.max_atoms, None);
        assert!(r.warnings.len() >= 2);
        let r = HydrogenTrapModel::from_ratio(10.0).unwrap().report(0.1).unwrap();
        assert!(r.valid && r.warnings.is_empty());
        assert_eq!(r.max_atoms, Some(30));
        assert!(r.relative_difference < 1e-8);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(HydrogenTrapModel::new(0.0, 1.0).is_err());
        assert!(HydrogenTrapModel::new(1.0, f64::NAN).is_err());
        assert!(HydrogenTrapModel::from_ratio(0.5).unwrap().purity_quadrature().is_err());
    }
}
