//! Dispatch from a validated [`ExperimentConfig`] to a [`VerificationReport`].

use std::time::Instant;

use num_complex::Complex64;

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::experiments::{
    change_of_variable_check, constancy_check, default_exterior_points, default_interior_points, default_witness_grid,
    determinant_calculus_checks, mobius_invariance_checks, multiplicative_tripwire_checks, resolvent_probe_checks,
    shift_commutator_checks, t_lambda_trace_experiment, theorem_inequality_checks,
};
use crate::principal::{pincus_consistency, GridFunction, PincusTolerances};
use crate::report::{Check, VerificationReport};
use crate::shift::WeightSequence;
use crate::trace_formulas::{berger_shaw_putnam_check, helton_howe_check, BivariatePolynomial};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn default_pincus_pairs() -> Vec<(Complex64, Complex64)> {
    vec![(c(2.0, 0.0), c(2.0, 0.0)), (c(2.0, 0.0), c(3.0, 0.0)), (c(0.0, 2.0), c(0.0, 2.0))]
}

/// `(z̄, z)`, `(z̄, z^2)`, `(z̄^2, z^2)`.
pub fn default_polynomial_pairs() -> Vec<(BivariatePolynomial, BivariatePolynomial)> {
    vec![
        (BivariatePolynomial::zbar_pow(1), BivariatePolynomial::z_pow(1)),
        (BivariatePolynomial::zbar_pow(1), BivariatePolynomial::z_pow(2)),
        (BivariatePolynomial::zbar_pow(2), BivariatePolynomial::z_pow(2)),
    ]
}

pub const DEFAULT_C_VALUES: &[f64] = &[0.1, 0.3, 0.5, 0.7, 0.9, 0.99, 1.0];

/// Runs the experiment. Errors raised while computing become failed checks,
/// so the report is always complete.
pub fn run_experiment(config: &ExperimentConfig) -> VerificationReport {
    let start = Instant::now();
    let checks = match checks_for(config) {
        Ok(checks) if checks.is_empty() => vec![Check::failed(config.experiment.as_str(), "no checks produced")],
        Ok(checks) => checks,
        Err(e) => vec![Check::failed(config.experiment.as_str(), e)],
    };
    let parameters = serde_json::to_value(config).expect("config serializes");
    VerificationReport::new(config.experiment.clone(), parameters, checks, start.elapsed().as_millis() as u64)
}

fn checks_for(config: &ExperimentConfig) -> Result<Vec<Check>> {
    let model = config.shift_model()?;
    let n = config.truncation;
    let grid = config.grid;
    let tol = &config.tolerances;
    match config.experiment.as_str() {
        "pincus-check" => {
            let tolerances = PincusTolerances {
                quadrature: tol.quadrature.unwrap_or(PincusTolerances::default().quadrature),
                resolvent: tol.resolvent.unwrap_or(PincusTolerances::default().resolvent),
            };
            let pairs = config.point_pairs().unwrap_or_else(default_pincus_pairs);
            let mut out = Vec::new();
            for (z, w) in pairs {
                out.extend(pincus_consistency(&model, z, w, n, grid.n_r, grid.n_theta, tolerances)?);
            }
            Ok(out)
        }
        "helton-howe" => {
            let g = GridFunction::from_model(&model, grid.n_r, grid.n_theta)?;
            let pairs = match &config.polynomials {
                Some(list) => list.iter().map(|pq| (pq.p.clone(), pq.q.clone())).collect(),
                None => default_polynomial_pairs(),
            };
            pairs.iter().map(|(p, q)| helton_howe_check(p, q, &model, &g, n, tol.helton_howe)).collect()
        }
        "theorem-inequality" => {
            let cs = config.c_values.clone().unwrap_or_else(|| DEFAULT_C_VALUES.to_vec());
            let rs = config.r_grid.clone().unwrap_or_else(default_witness_grid);
            theorem_inequality_checks(&cs, &rs)
        }
        "t-lambda-trace" => {
            let WeightSequence::Rational { lambda } = config.model else { unreachable!("validated config") };
            t_lambda_trace_experiment(lambda, n)
        }
        "change-of-variable" => {
            let points = config
                .points
                .clone()
                .unwrap_or_else(|| default_interior_points().into_iter().chain(default_exterior_points()).collect());
            let mut out = Vec::new();
            for phi in config.mobius_maps()? {
                out.extend(change_of_variable_check(&model, &phi, &points)?);
            }
            Ok(out)
        }
        "constancy" => {
            let maps = config.mobius_maps()?;
            match &config.points {
                Some(points) => constancy_check(&model, &maps, points, config.expected),
                None => {
                    let mut out = constancy_check(&model, &maps, &default_interior_points(), config.expected)?;
                    out.extend(constancy_check(&model, &maps, &default_exterior_points(), Some(0))?);
                    Ok(out)
                }
            }
        }
        "resolvent-probe" => {
            let points = config.points.clone().unwrap_or_else(|| vec![c(2.0, 0.0), c(10.0, 0.0)]);
            let mut out = Vec::new();
            for w in points {
                out.extend(resolvent_probe_checks(&model, w, n, tol.norm.unwrap_or(2e-2))?);
            }
            Ok(out)
        }
        "shift-commutator" => shift_commutator_checks(&model, n),
        "multiplicative-tripwire" => {
            let pairs = config.point_pairs().unwrap_or_else(default_pincus_pairs);
            multiplicative_tripwire_checks(&model, &pairs, n)
        }
        "berger-shaw-putnam" => berger_shaw_putnam_check(&model, config.multiplicity.unwrap_or(1), config.area),
        "mobius-invariance" => mobius_invariance_checks(&model, &config.mobius_maps()?, n),
        "determinant-calculus" => determinant_calculus_checks(
            config.samples.unwrap_or(100),
            config.matrix_dim.unwrap_or(8),
            config.seed.unwrap_or(0),
        ),
        other => unreachable!("unregistered experiment {other} passed validation"),
    }
}
