use std::fs;
use std::process::ExitCode;

use anyhow::{Context, Result};

use coboson::report::AnalysisReport;
use coboson::verify::{run_verification, VerifyConfig};
use coboson::wavefunction::GridFile;
use coboson::{analyze as analyze_spectrum, schmidt_from_grid, HydrogenTrapModel, InputDescriptor, SchmidtSpectrum};

use crate::output::{self, emit};
use crate::{AnalyzeArgs, HydrogenArgs, OutputArgs, VerifyArgs, WavefunctionArgs};
use crate::{EXIT_INPUT, EXIT_NO_ROWS, EXIT_VERIFY_FAILED};

fn load_spectrum(args: &AnalyzeArgs) -> Result<(SchmidtSpectrum, InputDescriptor)> {
    let source = &args.source;
    if let Some(modes) = source.uniform {
        return Ok((SchmidtSpectrum::uniform(modes)?, InputDescriptor::Uniform { modes }));
    }
    if let Some(z) = source.geometric {
        let spectrum = SchmidtSpectrum::geometric(z, args.tail_cutoff)?;
        return Ok((spectrum, InputDescriptor::Geometric { z, tail_cutoff: args.tail_cutoff }));
    }
    if let Some(modes) = source.dirichlet {
        let spectrum = SchmidtSpectrum::random_dirichlet(modes, args.concentration, args.seed)?;
        let input = InputDescriptor::Dirichlet { modes, concentration: args.concentration, seed: args.seed };
        return Ok((spectrum, input));
    }
    let path = source.spectrum.as_ref().expect("clap requires one source");
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spectrum = SchmidtSpectrum::parse(&text, args.zero_threshold)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok((spectrum, InputDescriptor::SpectrumFile { path: path.display().to_string() }))
}

fn emit_report(report: &AnalysisReport, out: &OutputArgs) -> Result<ExitCode> {
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    let text = output::table(out.format, report, &report.metrics)?;
    emit(&text, out.output.as_deref())?;
    Ok(if report.metrics.is_empty() { ExitCode::from(EXIT_NO_ROWS) } else { ExitCode::SUCCESS })
}

pub fn analyze(args: AnalyzeArgs) -> Result<ExitCode> {
    let (spectrum, input) = load_spectrum(&args)?;
    let report = analyze_spectrum(&spectrum, input, args.n_max)?;
    emit_report(&report, &args.out)
}

pub fn wavefunction(args: WavefunctionArgs) -> Result<ExitCode> {
    let wf = GridFile::read(&args.file).with_context(|| format!("reading {}", args.file.display()))?;
    let spectrum = schmidt_from_grid(&wf, args.zero_threshold)?;
    let input = InputDescriptor::GridFile {
        path: args.file.display().to_string(),
        zero_threshold: args.zero_threshold,
    };
    let report = analyze_spectrum(&spectrum, input, args.n_max)?;
    emit_report(&report, &args.out)
}

/// Purity at or above 1 still prints the report, flagged invalid, but exits 2.
pub fn hydrogen(args: HydrogenArgs) -> Result<ExitCode> {
    let model = HydrogenTrapModel::from_ratio(args.b)?;
    let report = model.report(args.delta)?;
    for warning in &report.warnings {
        eprintln!("warning: {warning}");
    }
    emit(&output::json(&report)?, args.output.as_deref())?;
    if !report.valid {
        eprintln!("error: purity {} >= 1, outside the regime where the estimate applies", report.purity_closed);
        return Ok(ExitCode::from(EXIT_INPUT));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let config = VerifyConfig {
        m_max: args.m_max,
        trials: args.trials,
        seed: args.seed,
        corrupt_chi: args.corrupt_chi,
    };
    let report = run_verification(&config)?;
    if args.json {
        print!("{}", output::json(&report)?);
    } else {
        println!("{:<24} {:>8} {:>8}", "check", "passed", "failed");
        for check in &report.checks {
            println!("{:<24} {:>8} {:>8}", check.name, check.passed, check.failed);
        }
    }
    match &report.first_failure {
        None => {
            if !args.json {
                println!("all checks passed ({} trials, seed {})", config.trials, config.seed);
            }
            Ok(ExitCode::SUCCESS)
        }
        Some(failure) => {
            eprintln!("FAILED {} in trial {}: {}", failure.check, failure.trial, failure.detail);
            eprintln!("spectrum: {}", serde_json::to_string(&failure.lambdas)?);
            Ok(ExitCode::from(EXIT_VERIFY_FAILED))
        }
    }
}
