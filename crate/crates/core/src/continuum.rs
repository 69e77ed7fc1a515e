//! Continuum generator `∂ψ/∂t = −γ¹∂xψ − γ²∂yψ` and a classical RK4 integrator for it.
//!
//! Spatial derivatives are 4th-order central differences with periodic wrap, and
//! time stepping is 4th-order Runge-Kutta. This path shares nothing with the
//! lattice algorithm except the grid type, so it serves as the reference
//! solution in convergence and consistency studies.
//!
//! In 2D `∂z ≡ 0`, so the γ³ term drops out.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::fields::QubitState4;
use crate::gamma::{build_gammas, GammaSet};
use crate::grid::{energy_and_norm, FieldGrid};
use crate::linalg::apply;

/// Minimum extent for the five-point stencil.
pub const MIN_STENCIL_EXTENT: usize = 8;

/// Largest accepted `dt / dx`.
pub const MAX_COURANT: f64 = 0.5;

/// Relative norm growth treated as a blow-up.
const INSTABILITY_GROWTH: f64 = 0.10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContinuumError {
    #[error("grid {nx}x{ny} too small for the 4th-order stencil (need ≥ {min} per axis)")]
    GridTooSmall { nx: usize, ny: usize, min: usize },
    #[error("time step {dt} must be positive and ≤ {max_ratio}·dx = {limit}")]
    TimeStep { dt: f64, max_ratio: f64, limit: f64 },
    #[error("final time must be finite and non-negative, got {0}")]
    BadFinalTime(f64),
    #[error(
        "integration unstable at t = {time:.6}: norm² grew from {initial:.6e} to {current:.6e}"
    )]
    Unstable {
        time: f64,
        initial: f64,
        current: f64,
    },
}

fn check_extent(g: &FieldGrid) -> Result<(), ContinuumError> {
    if g.nx() < MIN_STENCIL_EXTENT || g.ny() < MIN_STENCIL_EXTENT {
        return Err(ContinuumError::GridTooSmall {
            nx: g.nx(),
            ny: g.ny(),
            min: MIN_STENCIL_EXTENT,
        });
    }
    Ok(())
}

/// `(−f[+2] + 8f[+1] − 8f[−1] + f[−2]) / 12`, before division by dx.
#[inline]
fn stencil(
    m2: &QubitState4,
    m1: &QubitState4,
    p1: &QubitState4,
    p2: &QubitState4,
) -> [Complex64; 4] {
    let mut d = [Complex64::default(); 4];
    for k in 0..4 {
        d[k] = (-p2.0[k] + p1.0[k] * 8.0 - m1.0[k] * 8.0 + m2.0[k]) / 12.0;
    }
    d
}

fn rhs_with(g: &FieldGrid, gammas: &GammaSet) -> FieldGrid {
    let inv_dx = 1.0 / g.dx();
    let g1 = gammas.gamma1();
    let g2 = gammas.gamma2();
    FieldGrid::from_fn(g.geometry(), |i, j| {
        let (i, j) = (i as isize, j as isize);
        let dxq = stencil(
            g.at(i - 2, j),
            g.at(i - 1, j),
            g.at(i + 1, j),
            g.at(i + 2, j),
        );
        let dyq = stencil(
            g.at(i, j - 2),
            g.at(i, j - 1),
            g.at(i, j + 1),
            g.at(i, j + 2),
        );
        let a = apply(g1, &dxq);
        let b = apply(g2, &dyq);
        let mut out = [Complex64::default(); 4];
        for k in 0..4 {
            out[k] = -(a[k] + b[k]) * inv_dx;
        }
        QubitState4(out)
    })
}

/// Time derivative of every site under the continuum equation.
pub fn continuum_rhs(g: &FieldGrid) -> Result<FieldGrid, ContinuumError> {
    check_extent(g)?;
    Ok(rhs_with(g, &build_gammas()))
}

/// `Re Σ ⟨ψ, Lψ⟩` over all sites; zero up to roundoff for the skew-adjoint periodic stencil.
pub fn generator_real_part(g: &FieldGrid) -> Result<f64, ContinuumError> {
    let l = continuum_rhs(g)?;
    let per_site: Vec<f64> = g
        .sites()
        .par_iter()
        .zip(l.sites().par_iter())
        .map(|(a, b)| (0..4).map(|k| (a.0[k].conj() * b.0[k]).re).sum())
        .collect();
    Ok(crate::reduce::pairwise_sum(&per_site))
}

/// Advances `g` to `t_final` with RK4 steps no larger than `dt`.
///
/// The step count is `ceil(t_final / dt)` and the step is shrunk to land on
/// `t_final` exactly.
pub fn reference_evolve(g: &FieldGrid, t_final: f64, dt: f64) -> Result<FieldGrid, ContinuumError> {
    check_extent(g)?;
    if !(t_final >= 0.0 && t_final.is_finite()) {
        return Err(ContinuumError::BadFinalTime(t_final));
    }
    let limit = MAX_COURANT * g.dx();
    if !(dt > 0.0 && dt <= limit) {
        return Err(ContinuumError::TimeStep {
            dt,
            max_ratio: MAX_COURANT,
            limit,
        });
    }
    if t_final == 0.0 {
        return Ok(g.clone());
    }
    let steps = (t_final / dt - 1e-12).ceil().max(1.0) as usize;
    let h = t_final / steps as f64;
    let gammas = build_gammas();
    let (initial, _) = energy_and_norm(g);

    let mut psi = g.clone();
    for n in 0..steps {
        let k1 = rhs_with(&psi, &gammas);
        let k2 = rhs_with(&psi.axpy(0.5 * h, &k1), &gammas);
        let k3 = rhs_with(&psi.axpy(0.5 * h, &k2), &gammas);
        let k4 = rhs_with(&psi.axpy(h, &k3), &gammas);
        psi = rk4_combine(&psi, h, &k1, &k2, &k3, &k4);

        let (current, _) = energy_and_norm(&psi);
        if !current.is_finite() || current > initial * (1.0 + INSTABILITY_GROWTH) {
            return Err(ContinuumError::Unstable {
                time: (n + 1) as f64 * h,
                initial,
                current,
            });
        }
    }
    Ok(psi)
}

fn rk4_combine(
    psi: &FieldGrid,
    h: f64,
    k1: &FieldGrid,
    k2: &FieldGrid,
    k3: &FieldGrid,
    k4: &FieldGrid,
) -> FieldGrid {
    let w = h / 6.0;
    let sites = (0..psi.sites().len())
        .into_par_iter()
        .map(|s| {
            let mut q = psi.sites()[s].0;
            for k in 0..4 {
                q[k] += (k1.sites()[s].0[k]
                    + k2.sites()[s].0[k] * 2.0
                    + k3.sites()[s].0[k] * 2.0
                    + k4.sites()[s].0[k])
                    * w;
            }
            QubitState4(q)
        })
        .collect();
    FieldGrid::from_sites(psi.geometry(), sites).expect("same geometry")
}
