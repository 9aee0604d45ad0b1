//! Command-line front end: build Bell operators and report their spectra,
//! run the verification oracles, search for maximal violations, and
//! evaluate correlation functions on state files.

mod formats;

use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use bellviol::{
    build_bellN, correlation_closed, correlation_direct, eq9_extremum_check, ghz_theorem_check,
    largest_eig_formula, lhv_max, optimize_violation, spectral_crosscheck, starred_cos_identity,
    verify::lhv_max_with_signs, verify::spectral_crosscheck_directions, BellSpec, CorrelationQuery,
    Direction, DirectionSettings, MeasurementSettings, PureState, SpectralReport,
    VerificationReport,
};
use formats::{
    CheckOutput, CorrelateOutput, OptimizeOutput, SettingsFile, SpectrumOutput, StateOutput,
};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input or bad arguments: exit 2.
    Usage(String),
    /// A check or threshold failed: exit 1.
    Check(String),
}

#[derive(Parser)]
#[command(
    name = "bellviol",
    about = "Four-term Bell operators for N spin-1/2 particles: spectra, violation search, and verification oracles",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonalize a Bell operator and report eigenvalues, violation
    /// flags, and degeneracy classes as JSON.
    Spectrum {
        /// Settings file (JSON); see the README for the schema.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Particle count for inline settings (phi_i = 0).
        #[arg(long)]
        n: Option<usize>,
        /// Inline included angles theta_i (defaults to pi/2 each).
        #[arg(value_name = "THETA", allow_negative_numbers = true)]
        angles: Vec<f64>,
        /// Interpret input angles as degrees.
        #[arg(long)]
        degrees: bool,
        /// Tolerance for the analytic cross-check.
        #[arg(long)]
        tol: Option<f64>,
        /// Accepted for symmetry with the other commands; the report is
        /// always JSON.
        #[arg(long)]
        json: bool,
    },
    /// Run the verification oracles and report pass/fail per check.
    Verify {
        /// Run only the named check (lhv, ghz, extremum, identity, spectral).
        #[arg(long)]
        only: Option<String>,
        /// Seed for randomized instances (falls back to BELLVIOL_SEED).
        #[arg(long)]
        seed: Option<u64>,
        /// Override the pass tolerance for every check.
        #[arg(long)]
        tol: Option<f64>,
        /// Emit the reports as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Search measurement angles maximizing the largest |eigenvalue|.
    Optimize {
        /// Particle count (3..=8).
        #[arg(long)]
        n: usize,
        /// Seed for the multi-start search (falls back to BELLVIOL_SEED).
        #[arg(long)]
        seed: Option<u64>,
        /// Total coordinate-sweep budget across starts.
        #[arg(long)]
        budget: Option<usize>,
        /// Accepted for symmetry with the other commands; the report is
        /// always JSON.
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the correlation function of a state file at given azimuths,
    /// closed form against the dense operator.
    Correlate {
        /// State file (JSON: {"n": ..., "amplitudes": [[re, im], ...]}).
        #[arg(long)]
        input: PathBuf,
        /// One azimuth per particle.
        #[arg(value_name = "PHI", allow_negative_numbers = true)]
        angles: Vec<f64>,
        /// Interpret angles as degrees.
        #[arg(long)]
        degrees: bool,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Spectrum {
            input,
            n,
            angles,
            degrees,
            tol,
            json: _,
        } => cmd_spectrum(input, n, angles, degrees, validate_tol(tol)?),
        Command::Verify {
            only,
            seed,
            tol,
            json,
        } => cmd_verify(only, resolve_seed(seed)?, validate_tol(tol)?, json),
        Command::Optimize {
            n,
            seed,
            budget,
            json: _,
        } => cmd_optimize(n, resolve_seed(seed)?, budget),
        Command::Correlate {
            input,
            angles,
            degrees,
            json,
        } => cmd_correlate(input, angles, degrees, json),
    }
}

fn validate_tol(tol: Option<f64>) -> Result<Option<f64>, CliError> {
    match tol {
        Some(t) if !(t > 0.0 && t.is_finite()) => Err(CliError::Usage(format!(
            "--tol must be a positive finite number, got {t}"
        ))),
        other => Ok(other),
    }
}

/// `--seed`, else `BELLVIOL_SEED`, else 0.
fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var("BELLVIOL_SEED") {
        Ok(text) => text
            .parse()
            .map_err(|_| CliError::Usage(format!("BELLVIOL_SEED is not an integer: {text}"))),
        Err(_) => Ok(0),
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn cmd_spectrum(
    input: Option<PathBuf>,
    n: Option<usize>,
    angles: Vec<f64>,
    degrees: bool,
    tol: Option<f64>,
) -> Result<(), CliError> {
    let (spec, standard3) = match (input, n) {
        (Some(path), None) => {
            if !angles.is_empty() {
                return Err(CliError::Usage(
                    "positional angles conflict with --input".into(),
                ));
            }
            let file = SettingsFile::parse(&read_file(&path)?)?;
            let standard3 = file.is_standard3();
            (file.to_spec(degrees)?, standard3)
        }
        (None, Some(n)) => {
            let thetas: Vec<f64> = if angles.is_empty() {
                vec![FRAC_PI_2; n]
            } else if angles.len() == n {
                if degrees {
                    angles.iter().map(|a| a.to_radians()).collect()
                } else {
                    angles
                }
            } else {
                return Err(CliError::Usage(format!(
                    "expected {n} angles, got {}",
                    angles.len()
                )));
            };
            let settings = MeasurementSettings::from_thetas(&thetas)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let spec = BellSpec::standard(settings).map_err(|e| CliError::Usage(e.to_string()))?;
            (spec, n == 3)
        }
        _ => {
            return Err(CliError::Usage(
                "provide exactly one of --input FILE or --n N".into(),
            ))
        }
    };

    let analytic = if standard3 {
        Some(largest_eig_formula(spec.settings()).map_err(|e| CliError::Check(e.to_string()))?)
    } else {
        None
    };
    let bell = build_bellN(&spec).map_err(|e| CliError::Check(e.to_string()))?;
    let report =
        SpectralReport::analyze(&bell, analytic).map_err(|e| CliError::Check(e.to_string()))?;

    if let Some(predicted) = report.analytic_max_abs {
        let residual = (report.max_abs_eigenvalue - predicted).abs();
        let tau = tol.unwrap_or(1e-8);
        if residual > tau {
            return Err(CliError::Check(format!(
                "numeric max |eigenvalue| {} deviates from the closed form {} by {residual:.3e}",
                report.max_abs_eigenvalue, predicted
            )));
        }
    }

    let out = SpectrumOutput::from_report(spec.n(), &report);
    println!("{}", serde_json::to_string(&out).expect("serializable"));
    Ok(())
}

fn cmd_verify(
    only: Option<String>,
    seed: u64,
    tol: Option<f64>,
    json: bool,
) -> Result<(), CliError> {
    let selected = |name: &str| only.as_deref().is_none_or(|o| o == name);
    if let Some(name) = only.as_deref() {
        if !["lhv", "ghz", "extremum", "identity", "spectral"].contains(&name) {
            return Err(CliError::Usage(format!(
                "unknown check '{name}' (expected lhv, ghz, extremum, identity, or spectral)"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut reports: Vec<VerificationReport> = Vec::new();

    if selected("lhv") {
        reports.push(check_lhv(&mut rng).map_err(|e| CliError::Check(e.to_string()))?);
        reports.push(check_lhv_sign_constraint().map_err(|e| CliError::Check(e.to_string()))?);
    }
    if selected("ghz") {
        let mut worst: Option<VerificationReport> = None;
        for _ in 0..20 {
            let phases = [
                rng.random_range(-3.1..3.1),
                rng.random_range(-3.1..3.1),
                rng.random_range(-3.1..3.1),
            ];
            let r = ghz_theorem_check(&phases).map_err(|e| CliError::Check(e.to_string()))?;
            if worst
                .as_ref()
                .is_none_or(|w| r.residual > w.residual || !r.pass)
            {
                worst = Some(r);
            }
        }
        reports.push(worst.expect("at least one sample"));
    }
    if selected("extremum") {
        reports.push(eq9_extremum_check());
    }
    if selected("identity") {
        let mut residual = 0.0f64;
        for _ in 0..50 {
            let n = rng.random_range(1..=8);
            let gammas: Vec<f64> = (0..n).map(|_| rng.random_range(-3.1..3.1)).collect();
            let (lhs, rhs) = starred_cos_identity(&gammas);
            residual = residual.max((lhs - rhs).abs());
        }
        reports.push(VerificationReport {
            name: "cosine_identity".into(),
            pass: residual <= 1e-12,
            residual,
            tolerance: 1e-12,
            witness: None,
        });
    }
    if selected("spectral") {
        let mut worst: Option<VerificationReport> = None;
        let mut push = |r: VerificationReport| {
            if worst
                .as_ref()
                .is_none_or(|w| r.residual > w.residual || !r.pass)
            {
                worst = Some(r);
            }
        };
        for _ in 0..20 {
            let phis: Vec<f64> = (0..3).map(|_| rng.random_range(-3.1..3.1)).collect();
            let phips: Vec<f64> = (0..3).map(|_| rng.random_range(-3.1..3.1)).collect();
            let settings = MeasurementSettings::new(&phis, &phips)
                .map_err(|e| CliError::Check(e.to_string()))?;
            push(spectral_crosscheck(&settings).map_err(|e| CliError::Check(e.to_string()))?);
        }
        for _ in 0..5 {
            let mut dir = || loop {
                let (x, y, z) = (
                    rng.random_range(-1.0..1.0f64),
                    rng.random_range(-1.0..1.0f64),
                    rng.random_range(-1.0..1.0f64),
                );
                if x * x + y * y + z * z > 1e-3 {
                    return Direction::normalized(x, y, z).expect("nonzero");
                }
            };
            let settings =
                DirectionSettings::new(vec![(dir(), dir()), (dir(), dir()), (dir(), dir())])
                    .map_err(|e| CliError::Check(e.to_string()))?;
            push(
                spectral_crosscheck_directions(&settings)
                    .map_err(|e| CliError::Check(e.to_string()))?,
            );
        }
        let mut report = worst.expect("at least one sample");
        report.name = "spectral_crosscheck".into();
        reports.push(report);
    }

    if let Some(tau) = tol {
        for r in &mut reports {
            r.tolerance = tau;
            r.pass = r.residual <= tau && r.witness.is_none();
        }
    }

    if json {
        let out: Vec<CheckOutput> = reports
            .iter()
            .map(|r| CheckOutput {
                name: r.name.clone(),
                pass: r.pass,
                residual: r.residual,
                tolerance: r.tolerance,
                witness: r.witness.clone(),
            })
            .collect();
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        for r in &reports {
            println!(
                "{:<22} {}  residual {:.3e}  tolerance {:.0e}",
                r.name,
                if r.pass { "PASS" } else { "FAIL" },
                r.residual,
                r.tolerance
            );
            if let Some(w) = &r.witness {
                println!("{:<22}   witness: {w}", "");
            }
        }
    }

    if reports.iter().all(|r| r.pass) {
        Ok(())
    } else {
        Err(CliError::Check("one or more checks failed".into()))
    }
}

/// Classical bound by exhaustive enumeration: the fixed right-angle
/// three-particle spec, plus seeded random specs for 3..=5 particles.
fn check_lhv(rng: &mut ChaCha8Rng) -> Result<VerificationReport, bellviol::Error> {
    let mut residual = 0.0f64;
    let mut witness = None;

    let spec = BellSpec::standard(MeasurementSettings::uniform(3, FRAC_PI_2)?)?;
    let (max, _) = lhv_max(&spec)?;
    residual = residual.max((max - 2.0).abs());

    for n in [3usize, 4, 5] {
        for _ in 0..10 {
            let phis: Vec<f64> = (0..n).map(|_| rng.random_range(-3.1..3.1)).collect();
            let phips: Vec<f64> = (0..n).map(|_| rng.random_range(-3.1..3.1)).collect();
            let spec = BellSpec::standard(MeasurementSettings::new(&phis, &phips)?)?;
            let (max, assignment) = lhv_max(&spec)?;
            residual = residual.max((max - 2.0).abs());
            if max != 2.0 && witness.is_none() {
                witness = Some(format!("n={n}: reached {max} at {assignment:?}"));
            }
        }
    }
    Ok(VerificationReport {
        name: "lhv_bound".into(),
        pass: residual <= 1e-12 && witness.is_none(),
        residual,
        tolerance: 1e-12,
        witness,
    })
}

/// Demonstrates why the sign constraint matters: forcing a product(+1)
/// sign vector lets deterministic models reach 4.
fn check_lhv_sign_constraint() -> Result<VerificationReport, bellviol::Error> {
    let spec = BellSpec::standard(MeasurementSettings::uniform(3, FRAC_PI_2)?)?;
    let (max, _) = lhv_max_with_signs(&spec, [1, 1, 1, 1])?;
    let residual = (max - 4.0).abs();
    Ok(VerificationReport {
        name: "lhv_sign_constraint".into(),
        pass: residual <= 1e-12,
        residual,
        tolerance: 1e-12,
        witness: if residual <= 1e-12 {
            None
        } else {
            Some(format!("product(+1) signs reached {max}, expected 4"))
        },
    })
}

fn cmd_optimize(n: usize, seed: u64, budget: Option<usize>) -> Result<(), CliError> {
    let budget = budget.unwrap_or(bellviol::verify::DEFAULT_OPTIMIZE_BUDGET);
    let outcome =
        optimize_violation(n, seed, budget).map_err(|e| CliError::Usage(e.to_string()))?;

    let out = OptimizeOutput {
        n,
        seed,
        budget,
        value: outcome.value,
        reached_target: outcome.reached_target,
        starts_used: outcome.starts_used,
        sweeps_used: outcome.sweeps_used,
        phi: outcome.spec.settings().phis(),
        phi_prime: outcome.spec.settings().phi_primes(),
        signs: outcome.spec.signs().map(|s| s.to_i8()),
        pairing: outcome
            .spec
            .pairing()
            .iter()
            .map(|p| p.name().to_string())
            .collect(),
        state: StateOutput {
            n,
            amplitudes: outcome
                .state
                .amplitudes()
                .entries()
                .iter()
                .map(|z| [z.re, z.im])
                .collect(),
        },
        max_magnitude_residual: outcome.form.max_magnitude_residual,
        max_phase_residual: outcome.form.max_phase_residual,
    };
    println!("{}", serde_json::to_string(&out).expect("serializable"));

    if outcome.reached_target {
        Ok(())
    } else {
        Err(CliError::Check(format!(
            "budget exhausted at value {} (target 4 - 1e-6)",
            outcome.value
        )))
    }
}

fn cmd_correlate(
    input: PathBuf,
    angles: Vec<f64>,
    degrees: bool,
    json: bool,
) -> Result<(), CliError> {
    let state =
        PureState::from_json(&read_file(&input)?).map_err(|e| CliError::Usage(e.to_string()))?;
    let angles: Vec<f64> = if degrees {
        angles.iter().map(|a| a.to_radians()).collect()
    } else {
        angles
    };
    let query = CorrelationQuery::new(state.clone(), angles.clone())
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let closed = correlation_closed(&query).map_err(|e| CliError::Check(e.to_string()))?;
    let direct = correlation_direct(&query).map_err(|e| CliError::Check(e.to_string()))?;
    let difference = (closed - direct).abs();

    if json {
        let out = CorrelateOutput {
            n: state.n(),
            angles,
            closed,
            direct,
            difference,
        };
        println!("{}", serde_json::to_string(&out).expect("serializable"));
    } else {
        println!("closed     = {closed:.15}");
        println!("direct     = {direct:.15}");
        println!("difference = {difference:.3e}");
    }

    if difference > 1e-8 {
        return Err(CliError::Check(format!(
            "closed form deviates from the dense operator by {difference:.3e}"
        )));
    }
    Ok(())
}
