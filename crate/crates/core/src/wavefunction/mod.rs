//! From two-particle wavefunctions to Schmidt spectra, plus the trapped
//! hydrogen example.

mod grid;
mod hydrogen;

pub use grid::{
    build_trapped_pair, schmidt_from_grid, AmplitudeLayout, Complex64, GridFile, GridWavefunction,
    RelativeProfile, UniformGrid, CENTER_EXTENT_WIDTHS, POINTS_PER_SCALE,
};
pub use hydrogen::{
    purity_prefactor, HydrogenReport, HydrogenTrapModel, PURITY_WARNING, VALID_REGIME_RATIO,
};
