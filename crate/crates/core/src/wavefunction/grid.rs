//! Two-particle amplitudes tabulated on a product of uniform 1-D grids, and
//! their Schmidt spectra via SVD.

use std::fs;
use std::path::Path;

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectrum::SchmidtSpectrum;

pub type Complex64 = Complex<f64>;

const NORM_TOLERANCE: f64 = 1e-6;

/// Uniform grid of `points` nodes from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniformGrid {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl UniformGrid {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self> {
        let grid = Self { min, max, points };
        grid.validate()?;
        Ok(grid)
    }

    /// Grid of `points` nodes on `[-half_width, half_width]`.
    pub fn symmetric(half_width: f64, points: usize) -> Result<Self> {
        Self::new(-half_width, half_width, points)
    }

    fn validate(&self) -> Result<()> {
        if !(self.min.is_finite() && self.max.is_finite() && self.min < self.max) {
            return Err(Error::InvalidParameter {
                name: "grid",
                reason: format!("need finite min < max, got [{}, {}]", self.min, self.max),
            });
        }
        if self.points < 2 {
            return Err(Error::InvalidParameter {
                name: "grid",
                reason: format!("need at least 2 points, got {}", self.points),
            });
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.max - self.min) / (self.points - 1) as f64
    }

    pub fn extent(&self) -> f64 {
        self.max - self.min
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        self.min + i as f64 * self.spacing()
    }

    pub fn coordinates(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.points).map(|i| self.coordinate(i))
    }
}

/// `Ψ(x_A, x_B)` on a product grid, normalized so that `Σ|Ψ|² h_A h_B = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridWavefunction {
    grid_a: UniformGrid,
    grid_b: UniformGrid,
    amplitudes: DMatrix<Complex64>,
}

impl GridWavefunction {
    /// Takes row-major amplitudes (index `i_A · n_B + i_B`) and normalizes them.
    pub fn new(grid_a: UniformGrid, grid_b: UniformGrid, amplitudes: Vec<Complex64>) -> Result<Self> {
        grid_a.validate()?;
        grid_b.validate()?;
        let expected = grid_a.points * grid_b.points;
        if amplitudes.len() != expected {
            return Err(Error::InvalidParameter {
                name: "amplitudes",
                reason: format!("expected {expected} values for the grid, got {}", amplitudes.len()),
            });
        }
        if let Some(index) = amplitudes.iter().position(|z| !(z.re.is_finite() && z.im.is_finite())) {
            let z = amplitudes[index];
            return Err(Error::NonFinite { index, value: if z.re.is_finite() { z.im } else { z.re } });
        }
        let matrix = DMatrix::from_row_slice(grid_a.points, grid_b.points, &amplitudes);
        let mut wf = Self { grid_a, grid_b, amplitudes: matrix };
        let norm = wf.norm_squared();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalizable);
        }
        wf.amplitudes /= Complex64::from(norm.sqrt());
        debug_assert!((wf.norm_squared() - 1.0).abs() < NORM_TOLERANCE);
        Ok(wf)
    }

    /// Tabulates `f(x_A, x_B)` on the grid and normalizes.
    pub fn from_fn<F>(grid_a: UniformGrid, grid_b: UniformGrid, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> Complex64,
    {
        grid_a.validate()?;
        grid_b.validate()?;
        let mut values = Vec::with_capacity(grid_a.points * grid_b.points);
        for xa in grid_a.coordinates() {
            for xb in grid_b.coordinates() {
                values.push(f(xa, xb));
            }
        }
        Self::new(grid_a, grid_b, values)
    }

    /// `ψ_A(x_A) ψ_B(x_B)`.
    pub fn product_state<FA, FB>(grid_a: UniformGrid, grid_b: UniformGrid, fa: FA, fb: FB) -> Result<Self>
    where
        FA: Fn(f64) -> Complex64,
        FB: Fn(f64) -> Complex64,
    {
        Self::from_fn(grid_a, grid_b, |x, y| fa(x) * fb(y))
    }

    /// `exp(−(x+y)²/4σ₊² − (x−y)²/4σ₋²)`.
    pub fn double_gaussian(
        sigma_plus: f64,
        sigma_minus: f64,
        grid_a: UniformGrid,
        grid_b: UniformGrid,
    ) -> Result<Self> {
        for (name, value) in [("sigma_plus", sigma_plus), ("sigma_minus", sigma_minus)] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidParameter { name, reason: format!("must be positive, got {value}") });
            }
        }
        Self::from_fn(grid_a, grid_b, |x, y| {
            let s = x + y;
            let d = x - y;
            Complex64::from((-s * s / (4.0 * sigma_plus * sigma_plus) - d * d / (4.0 * sigma_minus * sigma_minus)).exp())
        })
    }

    pub fn grid_a(&self) -> &UniformGrid {
        &self.grid_a
    }

    pub fn grid_b(&self) -> &UniformGrid {
        &self.grid_b
    }

    /// Amplitude matrix indexed `(i_A, i_B)`.
    pub fn amplitudes(&self) -> &DMatrix<Complex64> {
        &self.amplitudes
    }

    /// `Σ |Ψ|² h_A h_B`.
    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>()
            * self.grid_a.spacing()
            * self.grid_b.spacing()
    }
}

/// Schmidt spectrum from the singular values of `Ψ · √(h_A h_B)`.
pub fn schmidt_from_grid(wf: &GridWavefunction, zero_threshold: f64) -> Result<SchmidtSpectrum> {
    let weight = (wf.grid_a.spacing() * wf.grid_b.spacing()).sqrt();
    let singular = if wf.amplitudes.iter().all(|z| z.im == 0.0) {
        wf.amplitudes.map(|z| z.re * weight).singular_values()
    } else {
        wf.amplitudes.map(|z| z * weight).singular_values()
    };
    let lambdas: Vec<f64> = singular.iter().map(|s| s * s).collect();
    if lambdas.iter().all(|&l| l == 0.0) {
        return Err(Error::NotNormalizable);
    }
    SchmidtSpectrum::from_raw(&lambdas, zero_threshold)
}

/// Shape of the internal (relative-coordinate) wavefunction `φ(r − R)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RelativeProfile {
    /// `exp(−x²/2w²)`
    Gaussian { width: f64 },
    /// `exp(−|x|/a)`, the 1-D analogue of a 1s orbital.
    Exponential { scale: f64 },
}

impl RelativeProfile {
    pub fn scale(&self) -> f64 {
        match *self {
            Self::Gaussian { width } => width,
            Self::Exponential { scale } => scale,
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Self::Gaussian { width } => (-x * x / (2.0 * width * width)).exp(),
            Self::Exponential { scale } => (-x.abs() / scale).exp(),
        }
    }
}

/// Minimum grid points per profile length scale.
pub const POINTS_PER_SCALE: f64 = 8.0;

/// Minimum extent of the center-coordinate grid in units of the trap width.
pub const CENTER_EXTENT_WIDTHS: f64 = 6.0;

/// `Ψ(R, r) = ψ(R) φ(r − R)` with `ψ` the Gaussian trap ground state of width
/// `center_width`; `grid_a` carries the heavy particle `R`, `grid_b` the light one.
pub fn build_trapped_pair(
    center_width: f64,
    profile: RelativeProfile,
    grid_a: UniformGrid,
    grid_b: UniformGrid,
) -> Result<GridWavefunction> {
    if !(center_width > 0.0 && center_width.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "center_width",
            reason: format!("must be positive, got {center_width}"),
        });
    }
    let scale = profile.scale();
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidParameter { name: "profile", reason: format!("scale must be positive, got {scale}") });
    }
    grid_a.validate()?;
    grid_b.validate()?;
    let required = CENTER_EXTENT_WIDTHS * center_width;
    if grid_a.extent() < required {
        return Err(Error::GridTooSmall {
            detail: format!(
                "center grid spans {:.6}, needs at least {CENTER_EXTENT_WIDTHS}·b = {required:.6}",
                grid_a.extent()
            ),
        });
    }
    let max_spacing = scale / POINTS_PER_SCALE;
    for (label, grid) in [("h_A", &grid_a), ("h_B", &grid_b)] {
        if grid.spacing() > max_spacing {
            return Err(Error::UnderResolved {
                detail: format!(
                    "{label} = {:.6} exceeds profile scale/{POINTS_PER_SCALE} = {max_spacing:.6}; \
                     use at least {} points",
                    grid.spacing(),
                    (grid.extent() / max_spacing).ceil() as usize + 1
                ),
            });
        }
    }
    let inv = 1.0 / (2.0 * center_width * center_width);
    GridWavefunction::from_fn(grid_a, grid_b, |big_r, r| {
        Complex64::from((-big_r * big_r * inv).exp() * profile.eval(r - big_r))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AmplitudeLayout {
    /// Row-major over `(i_A, i_B)`, each amplitude as a `(re, im)` pair.
    #[default]
    RowMajorReIm,
}

/// JSON header of a grid wavefunction file. Exactly one of `amplitudes`
/// (inline) and `data_file` (little-endian `f64` sidecar, path relative to
/// the header) must be present.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridFile {
    pub grid_a: UniformGrid,
    pub grid_b: UniformGrid,
    #[serde(default)]
    pub layout: AmplitudeLayout,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data_file: Option<String>,
}

fn io_error(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io { path: path.display().to_string(), message: e.to_string() }
}

impl GridFile {
    pub fn inline(wf: &GridWavefunction) -> Self {
        Self {
            grid_a: wf.grid_a,
            grid_b: wf.grid_b,
            layout: AmplitudeLayout::RowMajorReIm,
            amplitudes: Some(interleave(wf)),
            data_file: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Reads a header and resolves its amplitudes into a wavefunction.
    pub fn read(path: &Path) -> Result<GridWavefunction> {
        let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
        let header = Self::parse(&text)?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        header.into_wavefunction(base)
    }

    pub fn into_wavefunction(self, base_dir: &Path) -> Result<GridWavefunction> {
        let raw = match (self.amplitudes, self.data_file) {
            (Some(values), None) => values,
            (None, Some(file)) => {
                let path = base_dir.join(file);
                let bytes = fs::read(&path).map_err(|e| io_error(&path, e))?;
                if bytes.len() % 8 != 0 {
                    return Err(Error::Parse(format!(
                        "{}: length {} is not a multiple of 8 bytes",
                        path.display(),
                        bytes.len()
                    )));
                }
                bytes
                    .chunks_exact(8)
                    .map(|c| f64::from_le_bytes(c.try_into().expect("8-byte chunk")))
                    .collect()
            }
            (None, None) => {
                return Err(Error::Parse("missing field `amplitudes` (or `data_file`)".into()))
            }
            (Some(_), Some(_)) => {
                return Err(Error::Parse("give either `amplitudes` or `data_file`, not both".into()))
            }
        };
        let expected = 2 * self.grid_a.points * self.grid_b.points;
        if raw.len() != expected {
            return Err(Error::Parse(format!(
                "expected {expected} floats ({} x {} complex amplitudes), got {}",
                self.grid_a.points,
                self.grid_b.points,
                raw.len()
            )));
        }
        let amplitudes = raw.chunks_exact(2).map(|p| Complex64::new(p[0], p[1])).collect();
        GridWavefunction::new(self.grid_a, self.grid_b, amplitudes)
    }

    /// Writes `wf` as a header at `path`, with amplitudes inline or in a
    /// binary sidecar named `sidecar` next to it.
    pub fn write(path: &Path, wf: &GridWavefunction, sidecar: Option<&str>) -> Result<()> {
        let mut header = Self::inline(wf);
        if let Some(name) = sidecar {
            let values = header.amplitudes.take().unwrap_or_default();
            let bytes: Vec<u8> = values.iter().flat_map(|v| v.to_le_bytes()).collect();
            let base = path.parent().unwrap_or_else(|| Path::new("."));
            let target = base.join(name);
            fs::write(&target, bytes).map_err(|e| io_error(&target, e))?;
            header.data_file = Some(name.to_string());
        }
        let text = serde_json::to_string(&header).map_err(|e| Error::Parse(e.to_string()))?;
        fs::write(path, text).map_err(|e| io_error(path, e))
    }
}

fn interleave(wf: &GridWavefunction) -> Vec<f64> {
    let (rows, cols) = wf.amplitudes.shape();
    let mut out = Vec::with_capacity(2 * rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let z = wf.amplitudes[(i, j)];
            out.push(z.re);
            out.push(z.im);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::DEFAULT_ZERO_THRESHOLD;

    fn gaussian(width: f64) -> impl Fn(f64) -> Complex64 {
        move |x| Complex64::from((-x * x / (2.0 * width * width)).exp())
    }

    #[test]
    fn grid_geometry() {
        let g = UniformGrid::new(-1.0, 1.0, 5).unwrap();
        assert_eq!(g.spacing(), 0.5);
        assert_eq!(g.coordinates().collect::<Vec<_>>(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(UniformGrid::new(1.0, 1.0, 5).is_err());
        assert!(UniformGrid::new(0.0, 1.0, 1).is_err());
    }

    #[test]
    fn construction_normalizes() {
        let g = UniformGrid::symmetric(5.0, 41).unwrap();
        let wf = GridWavefunction::product_state(g, g, gaussian(1.0), gaussian(2.0)).unwrap();
        assert!((wf.norm_squared() - 1.0).abs() < 1e-12);
        let zeros = vec![Complex64::from(0.0); 41 * 41];
        assert_eq!(GridWavefunction::new(g, g, zeros), Err(Error::NotNormalizable));
        assert!(GridWavefunction::new(g, g, vec![Complex64::from(1.0); 3]).is_err());
        let mut bad = vec![Complex64::from(1.0); 41 * 41];
        bad[7] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(GridWavefunction::new(g, g, bad), Err(Error::NonFinite { index: 7, .. })));
    }

    #[test]
    fn product_state_is_pure() {
        let ga = UniformGrid::symmetric(6.0, 60).unwrap();
        let gb = UniformGrid::new(-3.0, 9.0, 47).unwrap();
        let wf = GridWavefunction::product_state(ga, gb, gaussian(1.0), |y| {
            Complex64::from_polar((-(y - 3.0).abs()).exp(), 0.7 * y)
        })
        .unwrap();
        let s = schmidt_from_grid(&wf, DEFAULT_ZERO_THRESHOLD).unwrap();
        assert!((s.purity() - 1.0).abs() < 1e-10);
        assert_eq!(s.mode_count(), 1);
    }

    #[test]
    fn equal_width_double_gaussian_is_separable() {
        let g = UniformGrid::symmetric(6.0, 97).unwrap();
        let wf = GridWavefunction::double_gaussian(1.0, 1.0, g, g).unwrap();
        let s = schmidt_from_grid(&wf, DEFAULT_ZERO_THRESHOLD).unwrap();
        assert!((s.purity() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn trapped_pair_grid_checks() {
        let profile = RelativeProfile::Gaussian { width: 0.5 };
        let small = UniformGrid::symmetric(2.0, 200).unwrap();
        assert!(matches!(
            build_trapped_pair(1.0, profile, small, small),
            Err(Error::GridTooSmall { .. })
        ));
        let coarse = UniformGrid::symmetric(4.0, 40).unwrap();
        let err = build_trapped_pair(1.0, profile, coarse, coarse).unwrap_err();
        assert!(matches!(err, Error::UnderResolved { .. }));
        assert!(err.to_string().contains("h_A"), "{err}");
    }

    #[test]
    fn grid_file_inline_and_sidecar() {
        let g = UniformGrid::symmetric(4.0, 17).unwrap();
        let wf = GridWavefunction::double_gaussian(2.0, 0.5, g, g).unwrap();
        let dir = std::env::temp_dir().join(format!("coboson-grid-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let inline = dir.join("inline.json");
        GridFile::write(&inline, &wf, None).unwrap();
        let back = GridFile::read(&inline).unwrap();
        assert!((back.amplitudes() - wf.amplitudes()).norm() < 1e-14);

        let header = dir.join("header.json");
        GridFile::write(&header, &wf, Some("psi.bin")).unwrap();
        assert!(fs::read_to_string(&header).unwrap().contains("\"data_file\":\"psi.bin\""));
        let back = GridFile::read(&header).unwrap();
        assert!((back.amplitudes() - wf.amplitudes()).norm() < 1e-14);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn grid_file_errors_name_the_field() {
        let err = GridFile::parse(r#"{"grid_a": {"min": 0, "max": 1, "points": 2}, "amplitudes": []}"#)
            .unwrap_err();
        assert!(err.to_string().contains("grid_b"), "{err}");
        let header = GridFile::parse(
            r#"{"grid_a": {"min": 0, "max": 1, "points": 2}, "grid_b": {"min": 0, "max": 1, "points": 2}}"#,
        )
        .unwrap();
        let err = header.into_wavefunction(Path::new(".")).unwrap_err();
        assert!(err.to_string().contains("amplitudes"), "{err}");
        let err = GridFile::parse(
            r#"{"grid_a": {"min": 0, "max": 1, "points": 2}, "grid_b": {"min": 0, "max": 1, "points": 2},
                "layout": "column_major", "amplitudes": []}"#,
        )
        .unwrap_err();
        assert!(err.to_string().contains("column_major"), "{err}");
    }
}
