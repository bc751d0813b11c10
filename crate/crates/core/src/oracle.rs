//! Brute-force references for the χ algebra.
//!
//! Two routes independent of the DP in [`crate::chi`]: a direct sum over
//! distinct index tuples, and explicit operator matrices on the Fock space of
//! paired modes. A Schmidt mode `p` is either empty or holds exactly one `A`
//! and one `B` fermion, because `c† = Σ_p √λ_p a_p† b_p†` only ever creates
//! pairs. Basis states are occupation bitmasks, so the space has dimension `2^M`.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::spectrum::SchmidtSpectrum;

pub const ENUMERATION_MAX_MODES: usize = 12;
pub const OPERATOR_MAX_MODES: usize = 6;

/// `χ_N` as `N!` times the sum over all `N`-element subsets of the modes.
pub fn chi_by_enumeration(spectrum: &SchmidtSpectrum, n: usize) -> Result<f64> {
    let lambdas = spectrum.nonzero();
    let modes = lambdas.len();
    if modes > ENUMERATION_MAX_MODES {
        return Err(Error::TooManyModes {
            what: "enumeration oracle",
            limit: ENUMERATION_MAX_MODES,
            modes,
        });
    }
    if n > modes {
        return Ok(0.0);
    }
    let mut sum = 0.0;
    for mask in 0u32..(1 << modes) {
        if mask.count_ones() as usize != n {
            continue;
        }
        let product: f64 = (0..modes)
            .filter(|p| mask & (1 << p) != 0)
            .map(|p| lambdas[p])
            .product();
        sum += product;
    }
    let factorial: f64 = (1..=n).map(|k| k as f64).product();
    Ok(factorial * sum)
}

/// The paired-mode Fock space of one spectrum with its composite creation operator.
#[derive(Debug, Clone)]
pub struct PairFockSpace {
    mode_count: usize,
    creation: DMatrix<f64>,
}

impl PairFockSpace {
    pub fn new(spectrum: &SchmidtSpectrum) -> Result<Self> {
        let lambdas = spectrum.nonzero();
        let modes = lambdas.len();
        if modes > OPERATOR_MAX_MODES {
            return Err(Error::TooManyModes {
                what: "Fock-operator oracle",
                limit: OPERATOR_MAX_MODES,
                modes,
            });
        }
        let dim = 1usize << modes;
        let mut creation = DMatrix::zeros(dim, dim);
        for state in 0..dim {
            for (p, &lambda) in lambdas.iter().enumerate() {
                let bit = 1 << p;
                // a_p† b_p† moves past other pairs an even number of times, so no sign
                if state & bit == 0 {
                    creation[(state | bit, state)] = lambda.sqrt();
                }
            }
        }
        Ok(Self { mode_count: modes, creation })
    }

    pub fn mode_count(&self) -> usize {
        self.mode_count
    }

    pub fn dimension(&self) -> usize {
        self.creation.nrows()
    }

    /// Matrix of `c†` in the occupation basis.
    pub fn creation(&self) -> &DMatrix<f64> {
        &self.creation
    }

    /// Matrix of `c`, the adjoint of `c†`.
    pub fn annihilation(&self) -> DMatrix<f64> {
        self.creation.transpose()
    }

    pub fn vacuum(&self) -> DVector<f64> {
        let mut v = DVector::zeros(self.dimension());
        v[0] = 1.0;
        v
    }

    /// `(c†)^N |0⟩`, unnormalized.
    pub fn raw_state(&self, n: usize) -> DVector<f64> {
        let mut v = self.vacuum();
        for _ in 0..n {
            v = &self.creation * v;
        }
        v
    }

    /// The normalized state `|N⟩`; fails when `(c†)^N |0⟩ = 0`.
    pub fn state(&self, n: usize) -> Result<DVector<f64>> {
        let v = self.raw_state(n);
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::UndefinedState { n, mode_count: self.mode_count });
        }
        Ok(v / norm)
    }

    /// `χ_N = ⟨0|c^N (c†)^N|0⟩ / N!`.
    pub fn chi(&self, n: usize) -> f64 {
        let factorial: f64 = (1..=n).map(|k| k as f64).product();
        self.raw_state(n).norm_squared() / factorial
    }

    /// Squared norm of the part of `c|N⟩` orthogonal to `|N−1⟩`.
    pub fn epsilon_norm(&self, n: usize) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidParameter { name: "N", reason: "must be at least 1".into() });
        }
        let upper = self.state(n)?;
        let lower = self.state(n - 1)?;
        let lowered = self.annihilation() * &upper;
        let overlap = lower.dot(&lowered);
        Ok((lowered - lower * overlap).norm_squared())
    }

    /// `⟨N| (c c† − c† c) |N⟩` from the explicit commutator matrix.
    pub fn commutator_expectation(&self, n: usize) -> Result<f64> {
        let state = self.state(n)?;
        let annihilation = self.annihilation();
        let commutator = &annihilation * &self.creation - &self.creation * &annihilation;
        Ok(state.dot(&(commutator * &state)))
    }

    /// Decomposes `c†|N⟩ = k |N+1⟩ + r` and returns `(k, ‖r‖)`. When
    /// `|N+1⟩` does not exist, `k` is zero and `r` is all of `c†|N⟩`.
    pub fn raising_coefficient(&self, n: usize) -> Result<(f64, f64)> {
        let state = self.state(n)?;
        let raised = &self.creation * &state;
        match self.state(n + 1) {
            Ok(next) => {
                let k = next.dot(&raised);
                Ok((k, (raised - next * k).norm()))
            }
            Err(Error::UndefinedState { .. }) => Ok((0.0, raised.norm())),
            Err(e) => Err(e),
        }
    }
}

/// `χ_N` from the explicit Fock-space matrices.
pub fn chi_by_fock(spectrum: &SchmidtSpectrum, n: usize) -> Result<f64> {
    Ok(PairFockSpace::new(spectrum)?.chi(n))
}

/// `⟨ε_N|ε_N⟩` from explicit state vectors.
pub fn epsilon_by_fock(spectrum: &SchmidtSpectrum, n: usize) -> Result<f64> {
    PairFockSpace::new(spectrum)?.epsilon_norm(n)
}
