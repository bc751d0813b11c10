//! How bosonic is a pair of entangled fermions?
//!
//! A composite made of two distinguishable fermions in the pure state
//! `Σ_p √λ_p a_p† b_p† |0⟩` behaves like an elementary boson to the extent that
//! the χ-ratio `χ_{N+1}/χ_N` is close to one. This crate computes the `χ_N`
//! table for a Schmidt spectrum without underflow, the derived ladder and
//! commutator diagnostics, and the purity bounds `1 − N·P ≤ χ_{N+1}/χ_N ≤ 1 − P`.
//! Spectra come from explicit coefficients, generators, or SVD of a gridded
//! two-particle wavefunction; a trapped-hydrogen model gives the purity in
//! closed form.
//!
//! The [`oracle`] module holds brute-force references (subset enumeration and
//! explicit Fock-space matrices) used by the test suite and by [`verify`].

pub mod chi;
mod error;
pub mod oracle;
pub mod quadrature;
pub mod report;
mod scaled;
pub mod spectrum;
pub mod verify;
pub mod wavefunction;

pub use chi::{bounds, chi_table, max_occupancy, BosonicMetrics, ChiTable, Occupancy};
pub use error::{Error, Result};
pub use report::{analyze, AnalysisReport, InputDescriptor};
pub use scaled::ScaledFloat;
pub use spectrum::{SchmidtSpectrum, DEFAULT_ZERO_THRESHOLD};
pub use wavefunction::{schmidt_from_grid, GridWavefunction, HydrogenTrapModel, UniformGrid};
