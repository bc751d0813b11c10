//! Globally adaptive 15-point Gauss–Kronrod quadrature.
#![allow(clippy::excessive_precision)]

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Kronrod abscissae, descending; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub absolute: f64,
    pub relative: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self { absolute: 1e-14, relative: 1e-12, max_intervals: 2000 }
    }
}

impl Tolerance {
    pub fn new(absolute: f64, relative: f64) -> Self {
        Self { absolute, relative, ..Self::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment { a, b, value: kronrod * half, error: ((kronrod - gauss) * half).abs() }
}

/// Integrates `f` over `[a, b]`, bisecting the worst segment until the summed
/// error estimate meets `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Integral> {
    integrate_with_breaks(f, &[a, b], tol)
}

/// Like [`integrate`] but starts from the given breakpoints, which should
/// include any kinks or cusps of the integrand. `points` must be increasing.
pub fn integrate_with_breaks<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    tol: Tolerance,
) -> Result<Integral> {
    if points.len() < 2 || points.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less)) {
        return Err(Error::InvalidParameter {
            name: "breakpoints",
            reason: "need at least two strictly increasing points".into(),
        });
    }
    let mut heap: BinaryHeap<Segment> =
        points.windows(2).map(|w| kronrod(&f, w[0], w[1])).collect();
    let mut evaluations = 15 * heap.len();
    loop {
        let value: f64 = heap.iter().map(|s| s.value).sum();
        let error: f64 = heap.iter().map(|s| s.error).sum();
        let target = tol.absolute.max(tol.relative * value.abs());
        if error <= target {
            return Ok(Integral { value, error_estimate: error, evaluations });
        }
        if heap.len() >= tol.max_intervals {
            return Err(Error::QuadratureNotConverged { achieved: error, requested: target });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(worst.a < mid && mid < worst.b) {
            // interval can no longer be split in floating point
            return Err(Error::QuadratureNotConverged { achieved: error, requested: target });
        }
        heap.push(kronrod(&f, worst.a, mid));
        heap.push(kronrod(&f, mid, worst.b));
        evaluations += 30;
    }
}

/// Integrates `f` over `[a, ∞)` via the substitution `x = a + t/(1 − t)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, tol: Tolerance) -> Result<Integral> {
    let mapped = |t: f64| {
        if t >= 1.0 {
            return 0.0;
        }
        let s = 1.0 - t;
        let value = f(a + t / s) / (s * s);
        if value.is_finite() { value } else { 0.0 }
    };
    integrate(mapped, 0.0, 1.0, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_for_polynomials() {
        // Kronrod-15 integrates degree 22 exactly on a single segment
        let r = integrate(|x| x.powi(22), -1.0, 1.0, Tolerance::default()).unwrap();
        assert!((r.value - 2.0 / 23.0).abs() < 1e-15);
        let r = integrate(|x| 3.0 * x * x, 0.0, 2.0, Tolerance::default()).unwrap();
        assert!((r.value - 8.0).abs() < 1e-14);
    }

    #[test]
    fn oscillatory_and_cusped() {
        let r = integrate(f64::sin, 0.0, std::f64::consts::PI, Tolerance::default()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-13);
        let r = integrate_with_breaks(|x: f64| (-x.abs()).exp(), &[-5.0, 0.0, 5.0], Tolerance::default())
            .unwrap();
        assert!((r.value - 2.0 * (1.0 - (-5.0f64).exp())).abs() < 1e-13);
    }

    #[test]
    fn semi_infinite() {
        let r = integrate_to_infinity(|x: f64| (-x).exp(), 0.0, Tolerance::default()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13);
        let r = integrate_to_infinity(|x: f64| x.powi(6) * (-2.0 * x).exp(), 0.0, Tolerance::default())
            .unwrap();
        assert!((r.value - 720.0 / 128.0).abs() < 1e-12);
    }

    #[test]
    fn reports_non_convergence() {
        let tol = Tolerance { absolute: 0.0, relative: 1e-15, max_intervals: 4 };
        let err = integrate(|x: f64| x.sqrt().recip(), 1e-300, 1.0, tol).unwrap_err();
        assert!(matches!(err, Error::QuadratureNotConverged { .. }));
        assert!(integrate_with_breaks(|x| x, &[1.0, 0.0], Tolerance::default()).is_err());
    }
}
