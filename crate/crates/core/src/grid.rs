//! Periodic 2D lattice of [`QubitState4`] and its conserved-quantity diagnostics.
//!
//! Sites are stored row-major: index `j * nx + i` for column `i` (x) and row `j` (y).

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::fields::QubitState4;
use crate::reduce::{max_abs, pairwise_sum};

/// Smallest supported extent along either axis.
pub const MIN_EXTENT: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("grid extent {nx}x{ny} below minimum {min}x{min}")]
    TooSmall { nx: usize, ny: usize, min: usize },
    #[error("lattice spacing must be positive and finite, got {0}")]
    BadSpacing(f64),
    #[error("site buffer has {got} entries, expected {expected}")]
    SiteCount { got: usize, expected: usize },
}

/// Extent and spacing of a lattice, without data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
}

impl Geometry {
    pub fn new(nx: usize, ny: usize, dx: f64) -> Result<Self, GridError> {
        if nx < MIN_EXTENT || ny < MIN_EXTENT {
            return Err(GridError::TooSmall {
                nx,
                ny,
                min: MIN_EXTENT,
            });
        }
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(GridError::BadSpacing(dx));
        }
        Ok(Geometry { nx, ny, dx })
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Coordinates `(x, y)` of site `(i, j)`.
    pub fn position(&self, i: usize, j: usize) -> [f64; 2] {
        [i as f64 * self.dx, j as f64 * self.dx]
    }

    pub fn extent(&self) -> [f64; 2] {
        [self.nx as f64 * self.dx, self.ny as f64 * self.dx]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid {
    geom: Geometry,
    sites: Vec<QubitState4>,
}

impl FieldGrid {
    pub fn zeros(geom: Geometry) -> Self {
        FieldGrid {
            geom,
            sites: vec![QubitState4::default(); geom.len()],
        }
    }

    pub fn from_sites(geom: Geometry, sites: Vec<QubitState4>) -> Result<Self, GridError> {
        if sites.len() != geom.len() {
            return Err(GridError::SiteCount {
                got: sites.len(),
                expected: geom.len(),
            });
        }
        Ok(FieldGrid { geom, sites })
    }

    /// Builds a grid by evaluating `f(i, j)` at every site (in parallel).
    pub fn from_fn<F>(geom: Geometry, f: F) -> Self
    where
        F: Fn(usize, usize) -> QubitState4 + Sync,
    {
        let nx = geom.nx;
        let sites = (0..geom.len())
            .into_par_iter()
            .map(|k| f(k % nx, k / nx))
            .collect();
        FieldGrid { geom, sites }
    }

    pub fn geometry(&self) -> Geometry {
        self.geom
    }
    pub fn nx(&self) -> usize {
        self.geom.nx
    }
    pub fn ny(&self) -> usize {
        self.geom.ny
    }
    pub fn dx(&self) -> f64 {
        self.geom.dx
    }
    pub fn sites(&self) -> &[QubitState4] {
        &self.sites
    }
    pub fn sites_mut(&mut self) -> &mut [QubitState4] {
        &mut self.sites
    }
    pub fn into_sites(self) -> Vec<QubitState4> {
        self.sites
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.geom.nx + i
    }

    /// Site at `(i, j)` with periodic wrap in both directions.
    #[inline]
    pub fn at(&self, i: isize, j: isize) -> &QubitState4 {
        let nx = self.geom.nx as isize;
        let ny = self.geom.ny as isize;
        let ii = i.rem_euclid(nx) as usize;
        let jj = j.rem_euclid(ny) as usize;
        &self.sites[jj * self.geom.nx + ii]
    }

    /// `self + a * other`, site by site. Panics if the geometries differ.
    pub fn axpy(&self, a: f64, other: &FieldGrid) -> FieldGrid {
        assert_eq!(self.geom, other.geom, "grid geometry mismatch");
        let sites = self
            .sites
            .par_iter()
            .zip(other.sites.par_iter())
            .map(|(s, o)| {
                let mut q = s.0;
                for k in 0..4 {
                    q[k] += o.0[k] * a;
                }
                QubitState4(q)
            })
            .collect();
        FieldGrid {
            geom: self.geom,
            sites,
        }
    }

    /// Largest component modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &FieldGrid) -> f64 {
        assert_eq!(self.geom, other.geom, "grid geometry mismatch");
        let per_site: Vec<f64> = self
            .sites
            .par_iter()
            .zip(other.sites.par_iter())
            .map(|(a, b)| (0..4).map(|k| (a.0[k] - b.0[k]).norm()).fold(0.0, f64::max))
            .collect();
        max_abs(&per_site)
    }

    /// Largest single-component modulus over the grid.
    pub fn max_abs(&self) -> f64 {
        let per_site: Vec<f64> = self
            .sites
            .par_iter()
            .map(|s| s.0.iter().map(|c| c.norm()).fold(0.0, f64::max))
            .collect();
        max_abs(&per_site)
    }

    /// Largest per-site 2-norm `‖ψ(i, j)‖`.
    pub fn max_site_norm(&self) -> f64 {
        let per_site: Vec<f64> = self.sites.par_iter().map(|s| s.norm()).collect();
        max_abs(&per_site)
    }

    /// Largest `|q1 − q2|` over the grid.
    pub fn max_constraint_mismatch(&self) -> f64 {
        let per_site: Vec<f64> = self
            .sites
            .par_iter()
            .map(|s| s.constraint_mismatch())
            .collect();
        max_abs(&per_site)
    }
}

/// Total `Σ‖ψ‖²` and total energy `Σ‖ψ‖²/2 · dx²`, summed in the fixed pairwise order.
pub fn energy_and_norm(g: &FieldGrid) -> (f64, f64) {
    let per_site: Vec<f64> = g.sites.par_iter().map(|s| s.norm_sqr()).collect();
    let norm_sq = pairwise_sum(&per_site);
    let dx = g.dx();
    (norm_sq, 0.5 * norm_sq * dx * dx)
}

/// `(algebraic, differential)` Gauss-law residuals.
///
/// `algebraic` is `max|q1 − q2| / max(1, max site norm)`. `differential` is the
/// largest modulus of the second-order central-difference divergence
/// `∂x Fx⁺ + ∂y Fy⁺` of the decoded field.
pub fn gauss_residual(g: &FieldGrid) -> (f64, f64) {
    let algebraic = g.max_constraint_mismatch() / g.max_site_norm().max(1.0);

    let decoded: Vec<[Complex64; 3]> = g.sites.par_iter().map(|s| s.decode_unchecked()).collect();
    let (nx, ny) = (g.nx(), g.ny());
    let inv2dx = 0.5 / g.dx();
    let div: Vec<f64> = (0..nx * ny)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % nx, k / nx);
            let ip = j * nx + (i + 1) % nx;
            let im = j * nx + (i + nx - 1) % nx;
            let jp = ((j + 1) % ny) * nx + i;
            let jm = ((j + ny - 1) % ny) * nx + i;
            let d = (decoded[ip][0] - decoded[im][0]) * inv2dx
                + (decoded[jp][1] - decoded[jm][1]) * inv2dx;
            d.norm()
        })
        .collect();
    (algebraic, max_abs(&div))
}
