//! Shared inputs for the criterion benches.

use coboson::wavefunction::{GridWavefunction, UniformGrid};
use coboson::SchmidtSpectrum;

pub fn dirichlet(modes: usize) -> SchmidtSpectrum {
    SchmidtSpectrum::random_dirichlet(modes, 1.0, 0x5eed).expect("valid parameters")
}

pub fn double_gaussian(points: usize) -> GridWavefunction {
    let grid = UniformGrid::symmetric(6.0, points).expect("valid grid");
    GridWavefunction::double_gaussian(1.0, 0.1, grid, grid).expect("normalizable")
}
