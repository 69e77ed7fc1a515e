//! Error-vs-ε studies of the lattice algorithm against the RK4 reference.
//!
//! For each ε the lattice uses `θ = ε/4`, `dx = ε` on a square periodic box of
//! fixed physical side, is stepped to (nearly) a fixed time and compared to the
//! reference evolved to exactly the same time.

use num_complex::Complex64;
use thiserror::Error;

use crate::continuum::{reference_evolve, ContinuumError};
use crate::grid::{energy_and_norm, Geometry, GridError};
use crate::qla::{LatticeError, Scheme, StepParams, Stepper};
use crate::waves::{plane_wave_state, PlaneWaveSpec, Polarization, WaveError};

/// Reference time step as a fraction of dx. RK4 loses norm at `(ω dt)⁶/72` per
/// step, so this keeps the reference drift near 1e-11 for the default study.
pub const REFERENCE_COURANT: f64 = 0.05;

#[derive(Debug, Error)]
pub enum ConvergenceError {
    #[error("need at least 3 ε values, got {0}")]
    TooFewPoints(usize),
    #[error("ε values must halve successively; {prev} → {next}")]
    NotHalving { prev: f64, next: f64 },
    #[error("box side {length} is not an integer multiple of ε = {eps}")]
    Incommensurate { length: f64, eps: f64 },
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Wave(#[from] WaveError),
    #[error(transparent)]
    Continuum(#[from] ContinuumError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceStudy {
    /// Side of the square periodic box.
    pub length: f64,
    /// Target physical time; the actual time is the nearest whole number of steps.
    pub t_final: f64,
    /// Wavelengths across the box in x and y.
    pub modes: (i64, i64),
    pub amplitude: Complex64,
    pub polarization: Polarization,
    pub eps: Vec<f64>,
    pub scheme: Scheme,
}

impl Default for ConvergenceStudy {
    fn default() -> Self {
        ConvergenceStudy {
            length: 6.4,
            t_final: 1.0,
            modes: (1, 1),
            amplitude: Complex64::new(1.0, 0.0),
            polarization: Polarization::Ez,
            eps: vec![0.2, 0.1, 0.05],
            scheme: Scheme::Symmetrized,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub eps: f64,
    pub n: usize,
    pub steps: usize,
    pub time: f64,
    pub max_error: f64,
    /// Relative norm² change of the reference solution.
    pub reference_drift: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `ln error` against `ln ε`; `None` when errors
    /// do not decrease monotonically with ε.
    pub order: Option<f64>,
}

impl ConvergenceReport {
    pub fn is_monotone(&self) -> bool {
        self.order.is_some()
    }
}

/// Slope of the least-squares line through `(ln x, ln y)`.
pub fn fit_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    sxy / sxx
}

fn validate_eps(eps: &[f64]) -> Result<(), ConvergenceError> {
    if eps.len() < 3 {
        return Err(ConvergenceError::TooFewPoints(eps.len()));
    }
    for w in eps.windows(2) {
        if (w[1] / w[0] - 0.5).abs() > 1e-9 {
            return Err(ConvergenceError::NotHalving {
                prev: w[0],
                next: w[1],
            });
        }
    }
    Ok(())
}

/// Runs the lattice and the reference for one ε.
pub fn measure_one(study: &ConvergenceStudy, eps: f64) -> Result<ConvergenceRow, ConvergenceError> {
    let cells = study.length / eps;
    let n = cells.round() as usize;
    if (cells - n as f64).abs() > 1e-9 * cells.max(1.0) {
        return Err(ConvergenceError::Incommensurate {
            length: study.length,
            eps,
        });
    }
    let geom = Geometry::new(n, n, eps)?;
    let params = StepParams::from_epsilon(eps, study.scheme)?;
    let steps = (study.t_final / params.dt_eff()).round().max(1.0) as usize;
    let time = steps as f64 * params.dt_eff();

    let spec = PlaneWaveSpec::from_modes(
        study.modes.0,
        study.modes.1,
        &geom,
        study.amplitude,
        study.polarization,
    );
    let initial = plane_wave_state(&spec, 0.0, geom)?;

    let mut lattice = initial.clone();
    Stepper::new(params).advance(&mut lattice, steps);
    let reference = reference_evolve(&initial, time, REFERENCE_COURANT * eps)?;

    let (n0, _) = energy_and_norm(&initial);
    let (n1, _) = energy_and_norm(&reference);
    Ok(ConvergenceRow {
        eps,
        n,
        steps,
        time,
        max_error: lattice.max_abs_diff(&reference),
        reference_drift: (n1 - n0) / n0,
    })
}

pub fn measure_convergence(
    study: &ConvergenceStudy,
) -> Result<ConvergenceReport, ConvergenceError> {
    validate_eps(&study.eps)?;
    let rows = study
        .eps
        .iter()
        .map(|&e| measure_one(study, e))
        .collect::<Result<Vec<_>, _>>()?;
    let monotone = rows.windows(2).all(|w| w[1].max_error < w[0].max_error);
    let order = monotone.then(|| {
        let x: Vec<f64> = rows.iter().map(|r| r.eps).collect();
        let y: Vec<f64> = rows.iter().map(|r| r.max_error).collect();
        fit_log_slope(&x, &y)
    });
    Ok(ConvergenceReport { rows, order })
}
