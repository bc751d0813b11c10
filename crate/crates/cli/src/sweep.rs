use std::process::ExitCode;

use anyhow::{bail, Result};
use rayon::prelude::*;
use serde::Serialize;

use coboson::{ChiTable, HydrogenTrapModel, SchmidtSpectrum};

use crate::output::{self, emit};
use crate::{SweepArgs, SweepParameter, EXIT_NO_ROWS};

#[derive(Debug, Serialize)]
struct SpectrumRow {
    index: usize,
    value: f64,
    mode_count: usize,
    purity: f64,
    #[serde(rename = "N")]
    n: usize,
    chi_ratio: f64,
    alpha: f64,
    epsilon_norm: f64,
    commutator: f64,
    lower_bound: f64,
    upper_bound: f64,
}

#[derive(Debug, Serialize)]
struct HydrogenRow {
    index: usize,
    b_over_a0: f64,
    purity_closed: f64,
    purity_quadrature: f64,
    relative_difference: f64,
    max_atoms: Option<u64>,
    valid: bool,
}

fn grid(from: f64, to: f64, points: usize) -> Vec<f64> {
    match points {
        1 => vec![from],
        _ => (0..points).map(|i| from + (to - from) * i as f64 / (points - 1) as f64).collect(),
    }
}

/// Rounded and deduplicated mode counts.
fn mode_counts(from: f64, to: f64, points: usize) -> Vec<f64> {
    let mut values: Vec<f64> = grid(from, to, points).into_iter().map(f64::round).collect();
    values.dedup();
    values
}

fn spectrum_row(args: &SweepArgs, index: usize, value: f64) -> Result<Option<SpectrumRow>> {
    let spectrum = match args.vary {
        SweepParameter::M => {
            if value.is_nan() || value < 1.0 {
                bail!("mode count must be at least 1, got {value}");
            }
            let modes = value as usize;
            match args.concentration {
                Some(c) => SchmidtSpectrum::random_dirichlet(modes, c, args.seed.wrapping_add(index as u64))?,
                None => SchmidtSpectrum::uniform(modes)?,
            }
        }
        _ => SchmidtSpectrum::geometric(value, args.tail_cutoff)?,
    };
    if args.n > spectrum.mode_count() {
        return Ok(None);
    }
    let metrics = ChiTable::new(&spectrum, args.n + 1)?.metrics(args.n)?;
    Ok(Some(SpectrumRow {
        index,
        value,
        mode_count: spectrum.mode_count(),
        purity: spectrum.purity(),
        n: metrics.n,
        chi_ratio: metrics.chi_ratio,
        alpha: metrics.alpha,
        epsilon_norm: metrics.epsilon_norm,
        commutator: metrics.commutator,
        lower_bound: metrics.lower_bound,
        upper_bound: metrics.upper_bound,
    }))
}

fn hydrogen_row(delta: f64, index: usize, b: f64) -> Result<HydrogenRow> {
    let report = HydrogenTrapModel::from_ratio(b)?.report(delta)?;
    Ok(HydrogenRow {
        index,
        b_over_a0: report.b_over_a0,
        purity_closed: report.purity_closed,
        purity_quadrature: report.purity_quadrature,
        relative_difference: report.relative_difference,
        max_atoms: report.max_atoms,
        valid: report.valid,
    })
}

/// Rows are computed in parallel; `collect` keeps them in input order.
pub fn run(args: SweepArgs) -> Result<ExitCode> {
    if args.points == 0 {
        bail!("--points must be at least 1");
    }
    if args.n == 0 {
        bail!("--n must be at least 1");
    }
    let text = match args.vary {
        SweepParameter::B => {
            let rows = grid(args.from, args.to, args.points)
                .into_par_iter()
                .enumerate()
                .map(|(i, b)| hydrogen_row(args.delta, i, b))
                .collect::<Result<Vec<_>>>()?;
            output::table(args.out.format, &rows, &rows)?
        }
        SweepParameter::M | SweepParameter::Z => {
            let values = match args.vary {
                SweepParameter::M => mode_counts(args.from, args.to, args.points),
                _ => grid(args.from, args.to, args.points),
            };
            let computed = values
                .into_par_iter()
                .enumerate()
                .map(|(i, v)| spectrum_row(&args, i, v).map(|row| (i, v, row)))
                .collect::<Result<Vec<_>>>()?;
            let mut rows = Vec::with_capacity(computed.len());
            for (i, v, row) in computed {
                match row {
                    Some(row) => rows.push(row),
                    None => eprintln!("warning: row {i} (value {v}) has fewer than N = {} modes; skipped", args.n),
                }
            }
            if rows.is_empty() {
                eprintln!("error: no value in the sweep supports N = {}", args.n);
                return Ok(ExitCode::from(EXIT_NO_ROWS));
            }
            output::table(args.out.format, &rows, &rows)?
        }
    };
    emit(&text, args.out.output.as_deref())?;
    Ok(ExitCode::SUCCESS)
}
