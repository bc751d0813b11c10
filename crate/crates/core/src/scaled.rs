//! Floating-point values with an unbounded binary exponent.
//!
//! `χ_N` for a uniform spectrum of a thousand modes already sits near
//! `1e-67` and the intermediate elementary symmetric sums span hundreds of
//! decades, so the DP keeps every entry as `mantissa · 2^exponent` with the
//! mantissa held in `[0.5, 1)`.

use std::cmp::Ordering;
use std::ops::{Add, Mul};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledFloat {
    mantissa: f64,
    exponent: i64,
}

const MANTISSA_MASK: u64 = (1 << 52) - 1;

/// Splits a finite non-zero `x` into `(m, e)` with `x = m · 2^e`, `|m| ∈ [0.5, 1)`.
fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let biased = ((bits >> 52) & 0x7ff) as i64;
    if biased == 0 {
        // subnormal
        let (m, e) = frexp(x * f64::powi(2.0, 64));
        return (m, e - 64);
    }
    let sign = bits & (1 << 63);
    let m = f64::from_bits(sign | (1022 << 52) | (bits & MANTISSA_MASK));
    (m, biased - 1022)
}

/// `x · 2^e`, saturating to zero or infinity.
pub(crate) fn ldexp(mut x: f64, mut e: i64) -> f64 {
    const STEP: i64 = 1000;
    let big = f64::powi(2.0, STEP as i32);
    let small = f64::powi(2.0, -STEP as i32);
    while e > STEP {
        x *= big;
        e -= STEP;
        if x.is_infinite() {
            return x;
        }
    }
    while e < -STEP {
        x *= small;
        e += STEP;
        if x == 0.0 {
            return x;
        }
    }
    x * f64::powi(2.0, e as i32)
}

impl ScaledFloat {
    pub const ZERO: Self = Self { mantissa: 0.0, exponent: 0 };
    pub const ONE: Self = Self { mantissa: 0.5, exponent: 1 };

    pub fn new(x: f64) -> Self {
        let (mantissa, exponent) = frexp(x);
        Self { mantissa, exponent }
    }

    pub fn is_zero(self) -> bool {
        self.mantissa == 0.0
    }

    pub fn mantissa(self) -> f64 {
        self.mantissa
    }

    pub fn exponent(self) -> i64 {
        self.exponent
    }

    fn normalized(mantissa: f64, exponent: i64) -> Self {
        if mantissa == 0.0 {
            return Self::ZERO;
        }
        let (m, e) = frexp(mantissa);
        Self { mantissa: m, exponent: exponent + e }
    }

    /// Natural logarithm; `-∞` for zero.
    pub fn ln(self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.mantissa.ln() + self.exponent as f64 * std::f64::consts::LN_2
        }
    }

    /// Plain `f64` value; underflows to zero or overflows to infinity out of range.
    pub fn to_f64(self) -> f64 {
        ldexp(self.mantissa, self.exponent)
    }

    /// `self / other` as an `f64`. The quotient must be representable.
    pub fn ratio(self, other: Self) -> f64 {
        ldexp(self.mantissa / other.mantissa, self.exponent - other.exponent)
    }

    pub fn scale(self, factor: f64) -> Self {
        Self::normalized(self.mantissa * factor, self.exponent)
    }

    pub fn sqr(self) -> Self {
        self * self
    }
}

impl Add for ScaledFloat {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        let (hi, lo) = if self.exponent >= rhs.exponent { (self, rhs) } else { (rhs, self) };
        let shift = lo.exponent - hi.exponent;
        // below 2^-60 relative the smaller term cannot change the sum
        if shift < -60 {
            return hi;
        }
        Self::normalized(hi.mantissa + ldexp(lo.mantissa, shift), hi.exponent)
    }
}

impl Mul for ScaledFloat {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self::normalized(self.mantissa * rhs.mantissa, self.exponent + rhs.exponent)
    }
}

impl Mul<f64> for ScaledFloat {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl PartialOrd for ScaledFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        // only used for non-negative values
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => Some(
                self.exponent
                    .cmp(&other.exponent)
                    .then(self.mantissa.partial_cmp(&other.mantissa)?),
            ),
        }
    }
}
