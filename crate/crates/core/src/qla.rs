//! The quantum lattice algorithm.
//!
//! One time step is `Ũy Uy Ũx Ux`, each sweep being an 8-factor product of
//! per-site collisions `C`, `C†` and qubit-pair streaming operators `S`. Products
//! are read as operator composition: the rightmost factor acts first.
//!
//! ```text
//! Ux  = S01(−x) Cx S01(+x) Cx† · S23(+x) Cx S23(−x) Cx†
//! Ũx  = S01(+x) Cx† S01(−x) Cx · S23(−x) Cx† S23(+x) Cx
//! Uy  = S23(−y) Cy S23(+y) Cy† · S01(+y) Cy S01(−y) Cy†
//! Ũy  = S23(+y) Cy† S23(−y) Cy · S01(−y) Cy† S01(+y) Cy
//! ```
//!
//! Expanding the products for smooth data gives
//! `ŨU ≈ I − 4θ·dx·γ¹∂x` (and the analogous y form), so one symmetrized step
//! advances the continuum equation by `dt_eff = 4θ·dx`. A single unsymmetrized
//! sweep carries half that, `2θ·dx`.
//!
//! Every factor is unitary and site updates never read from other sites being
//! written, so results are bit-identical for any worker count.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::fields::QubitState4;
use crate::grid::FieldGrid;
use crate::linalg::{adjoint, apply, Mat4, I, ZERO};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("collision angle must be positive and finite, got {0}")]
    BadTheta(f64),
    #[error("lattice spacing must be positive and finite, got {0}")]
    BadSpacing(f64),
}

/// `(cos θ, sin θ)` with the smaller of the two nudged so that `c² + s²` is 1
/// to well below an ulp. Rounded `sin_cos` alone leaves `c² + s² − 1` around
/// 1e-16, and that bias is applied sixteen times per step. The nudge is
/// skipped if it would move either component by more than 1e-12.
pub fn unit_rotation(theta: f64) -> (f64, f64) {
    let (mut s, mut c) = theta.sin_cos();
    for _ in 0..2 {
        let cc = c * c;
        let ss = s * s;
        let tail = c.mul_add(c, -cc) + s.mul_add(s, -ss);
        let r = if cc >= ss {
            (cc - 1.0) + ss + tail
        } else {
            (ss - 1.0) + cc + tail
        };
        if r == 0.0 {
            break;
        }
        let small = if s.abs() <= c.abs() { &mut s } else { &mut c };
        let delta = r / (2.0 * *small);
        if !(delta.abs() <= 1e-12) {
            break;
        }
        *small -= delta;
    }
    (c, s)
}

/// `Cx(θ)`: real rotation coupling q0↔q2 and q1↔q3.
pub fn collision_x(theta: f64) -> Mat4 {
    let (c, s) = unit_rotation(theta);
    let (c, s) = (Complex64::new(c, 0.0), Complex64::new(s, 0.0));
    [
        [c, ZERO, s, ZERO],
        [ZERO, c, ZERO, s],
        [-s, ZERO, c, ZERO],
        [ZERO, -s, ZERO, c],
    ]
}

/// `Cy(θ)`: the same pairs coupled through `i·sin θ`.
pub fn collision_y(theta: f64) -> Mat4 {
    let (c, s) = unit_rotation(theta);
    let c = Complex64::new(c, 0.0);
    let is = I * s;
    [
        [c, ZERO, is, ZERO],
        [ZERO, c, ZERO, is],
        [is, ZERO, c, ZERO],
        [ZERO, is, ZERO, c],
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QubitPair {
    /// (q0, q1)
    P01,
    /// (q2, q3)
    P23,
}

impl QubitPair {
    fn components(self) -> [usize; 2] {
        match self {
            QubitPair::P01 => [0, 1],
            QubitPair::P23 => [2, 3],
        }
    }
}

/// `S^{pair}_{±axis}`: the selected pair at every site is replaced by the pair
/// found one lattice step away in direction `dir` (so `+1` reads from `x + dx`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QubitPairSelector {
    pub pair: QubitPair,
    pub axis: Axis,
    pub dir: i8,
}

impl QubitPairSelector {
    pub const fn new(pair: QubitPair, axis: Axis, dir: i8) -> Self {
        QubitPairSelector { pair, axis, dir }
    }

    pub fn reversed(self) -> Self {
        QubitPairSelector {
            dir: -self.dir,
            ..self
        }
    }

    /// Every selector, in a fixed order.
    pub fn all() -> [QubitPairSelector; 8] {
        use Axis::*;
        use QubitPair::*;
        [
            Self::new(P01, X, 1),
            Self::new(P01, X, -1),
            Self::new(P23, X, 1),
            Self::new(P23, X, -1),
            Self::new(P01, Y, 1),
            Self::new(P01, Y, -1),
            Self::new(P23, Y, 1),
            Self::new(P23, Y, -1),
        ]
    }
}

/// Streams in place. Pure permutation of stored values.
pub fn stream_in_place(g: &mut FieldGrid, sel: QubitPairSelector) {
    let (nx, ny) = (g.nx(), g.ny());
    let [a, b] = sel.pair.components();
    let d = sel.dir as isize;
    match sel.axis {
        Axis::X => {
            let shift = d.rem_euclid(nx as isize) as usize;
            g.sites_mut().par_chunks_mut(nx).for_each(|row| {
                let saved: Vec<[Complex64; 2]> = row.iter().map(|s| [s.0[a], s.0[b]]).collect();
                for (i, site) in row.iter_mut().enumerate() {
                    let src = saved[(i + shift) % nx];
                    site.0[a] = src[0];
                    site.0[b] = src[1];
                }
            });
        }
        Axis::Y => {
            let shift = d.rem_euclid(ny as isize) as usize;
            let saved: Vec<[Complex64; 2]> = g.sites().iter().map(|s| [s.0[a], s.0[b]]).collect();
            g.sites_mut()
                .par_chunks_mut(nx)
                .enumerate()
                .for_each(|(j, row)| {
                    let src_row = &saved[((j + shift) % ny) * nx..][..nx];
                    for (site, src) in row.iter_mut().zip(src_row) {
                        site.0[a] = src[0];
                        site.0[b] = src[1];
                    }
                });
        }
    }
}

pub fn stream(g: &FieldGrid, sel: QubitPairSelector) -> FieldGrid {
    let mut out = g.clone();
    stream_in_place(&mut out, sel);
    out
}

/// Applies the same 4×4 matrix at every site.
pub fn apply_collision(g: &mut FieldGrid, m: &Mat4) {
    g.sites_mut()
        .par_iter_mut()
        .for_each(|s| *s = QubitState4(apply(m, &s.0)));
}

/// One factor of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Collide { axis: Axis, adjoint: bool },
    Stream(QubitPairSelector),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sweep {
    Ux,
    UxTilde,
    Uy,
    UyTilde,
}

impl Sweep {
    /// Factors in written (left-to-right) order; the last entry acts first.
    pub fn factors(self) -> [Factor; 8] {
        use Axis::*;
        use QubitPair::*;
        let s = |pair, axis, dir| Factor::Stream(QubitPairSelector::new(pair, axis, dir));
        let c = |axis| Factor::Collide {
            axis,
            adjoint: false,
        };
        let cd = |axis| Factor::Collide {
            axis,
            adjoint: true,
        };
        match self {
            Sweep::Ux => [
                s(P01, X, -1),
                c(X),
                s(P01, X, 1),
                cd(X),
                s(P23, X, 1),
                c(X),
                s(P23, X, -1),
                cd(X),
            ],
            Sweep::UxTilde => [
                s(P01, X, 1),
                cd(X),
                s(P01, X, -1),
                c(X),
                s(P23, X, -1),
                cd(X),
                s(P23, X, 1),
                c(X),
            ],
            Sweep::Uy => [
                s(P23, Y, -1),
                c(Y),
                s(P23, Y, 1),
                cd(Y),
                s(P01, Y, 1),
                c(Y),
                s(P01, Y, -1),
                cd(Y),
            ],
            Sweep::UyTilde => [
                s(P23, Y, 1),
                cd(Y),
                s(P23, Y, -1),
                c(Y),
                s(P01, Y, -1),
                cd(Y),
                s(P01, Y, 1),
                c(Y),
            ],
        }
    }
}

/// Collision matrices for one angle, precomputed.
#[derive(Debug, Clone)]
pub struct CollisionSet {
    cx: Mat4,
    cx_dag: Mat4,
    cy: Mat4,
    cy_dag: Mat4,
}

impl CollisionSet {
    pub fn new(theta: f64) -> Self {
        let cx = collision_x(theta);
        let cy = collision_y(theta);
        CollisionSet {
            cx_dag: adjoint(&cx),
            cy_dag: adjoint(&cy),
            cx,
            cy,
        }
    }

    pub fn matrix(&self, axis: Axis, adjoint: bool) -> &Mat4 {
        match (axis, adjoint) {
            (Axis::X, false) => &self.cx,
            (Axis::X, true) => &self.cx_dag,
            (Axis::Y, false) => &self.cy,
            (Axis::Y, true) => &self.cy_dag,
        }
    }
}

pub fn apply_factor(g: &mut FieldGrid, f: Factor, coll: &CollisionSet) {
    match f {
        Factor::Collide { axis, adjoint } => apply_collision(g, coll.matrix(axis, adjoint)),
        Factor::Stream(sel) => stream_in_place(g, sel),
    }
}

pub fn apply_sweep(g: &mut FieldGrid, sweep: Sweep, coll: &CollisionSet) {
    for f in sweep.factors().iter().rev() {
        apply_factor(g, *f, coll);
    }
}

fn sweep_pure(g: &FieldGrid, theta: f64, sweep: Sweep) -> FieldGrid {
    let mut out = g.clone();
    apply_sweep(&mut out, sweep, &CollisionSet::new(theta));
    out
}

pub fn sweep_ux(g: &FieldGrid, p: &StepParams) -> FieldGrid {
    sweep_pure(g, p.theta, Sweep::Ux)
}
pub fn sweep_ux_tilde(g: &FieldGrid, p: &StepParams) -> FieldGrid {
    sweep_pure(g, p.theta, Sweep::UxTilde)
}
pub fn sweep_uy(g: &FieldGrid, p: &StepParams) -> FieldGrid {
    sweep_pure(g, p.theta, Sweep::Uy)
}
pub fn sweep_uy_tilde(g: &FieldGrid, p: &StepParams) -> FieldGrid {
    sweep_pure(g, p.theta, Sweep::UyTilde)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Scheme {
    /// `Ũy Uy Ũx Ux`.
    #[default]
    Symmetrized,
    /// `Uy Ux`, the Ũ sweeps dropped. Only first-order accurate.
    Unsymmetrized,
}

impl Scheme {
    pub fn sweeps(self) -> &'static [Sweep] {
        match self {
            Scheme::Symmetrized => &[Sweep::Ux, Sweep::UxTilde, Sweep::Uy, Sweep::UyTilde],
            Scheme::Unsymmetrized => &[Sweep::Ux, Sweep::Uy],
        }
    }

    /// Advection per step in units of `θ·dx`.
    pub fn advection_coefficient(self) -> f64 {
        match self {
            Scheme::Symmetrized => 4.0,
            Scheme::Unsymmetrized => 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepParams {
    pub theta: f64,
    pub dx: f64,
    pub scheme: Scheme,
}

impl StepParams {
    pub fn new(theta: f64, dx: f64) -> Result<Self, LatticeError> {
        Self::with_scheme(theta, dx, Scheme::Symmetrized)
    }

    pub fn with_scheme(theta: f64, dx: f64, scheme: Scheme) -> Result<Self, LatticeError> {
        if !(theta > 0.0 && theta.is_finite()) {
            return Err(LatticeError::BadTheta(theta));
        }
        if !(dx > 0.0 && dx.is_finite()) {
            return Err(LatticeError::BadSpacing(dx));
        }
        Ok(StepParams { theta, dx, scheme })
    }

    /// Order-parameter convention `θ = ε/4`, `dx = ε`, which gives `dt_eff = ε²`.
    pub fn from_epsilon(eps: f64, scheme: Scheme) -> Result<Self, LatticeError> {
        Self::with_scheme(eps / 4.0, eps, scheme)
    }

    /// Continuum time advanced by one step, in lattice units.
    pub fn dt_eff(&self) -> f64 {
        self.scheme.advection_coefficient() * self.theta * self.dx
    }
}

/// Reusable stepper holding the collision matrices for one parameter set.
#[derive(Debug, Clone)]
pub struct Stepper {
    params: StepParams,
    coll: CollisionSet,
}

impl Stepper {
    pub fn new(params: StepParams) -> Self {
        Stepper {
            coll: CollisionSet::new(params.theta),
            params,
        }
    }

    pub fn params(&self) -> &StepParams {
        &self.params
    }

    pub fn step_in_place(&self, g: &mut FieldGrid) {
        for sweep in self.params.scheme.sweeps() {
            apply_sweep(g, *sweep, &self.coll);
        }
    }

    pub fn advance(&self, g: &mut FieldGrid, steps: usize) {
        for _ in 0..steps {
            self.step_in_place(g);
        }
    }
}

/// One full time step.
pub fn step(g: &FieldGrid, p: &StepParams) -> FieldGrid {
    let mut out = g.clone();
    Stepper::new(*p).step_in_place(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{energy_and_norm, Geometry};
    use crate::linalg::{identity4, max_abs_diff, unitarity_residual};
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// `c² + s² − 1` with the squares split exactly.
    fn exact_residual(c: f64, s: f64) -> f64 {
        let (cc, ss) = (c * c, s * s);
        let tail = c.mul_add(c, -cc) + s.mul_add(s, -ss);
        if cc >= ss {
            (cc - 1.0) + ss + tail
        } else {
            (ss - 1.0) + cc + tail
        }
    }

    #[test]
    fn unit_rotation_is_normalized() {
        for k in -200..=200 {
            let theta = k as f64 * 0.0173;
            let (c, s) = unit_rotation(theta);
            let small = c.abs().min(s.abs());
            // one ulp of the smaller component moves c² + s² by 2·small·ulp
            let ulp = if small == 0.0 {
                0.0
            } else {
                f64::EPSILON * 2f64.powi(small.log2().floor() as i32)
            };
            let r = exact_residual(c, s).abs();
            let (s0, c0) = theta.sin_cos();
            assert!(r <= small * ulp * 1.01, "θ = {theta}: residual {r:e}");
            assert!(r <= exact_residual(c0, s0).abs(), "θ = {theta}");
            assert!(
                (c - theta.cos()).abs().max((s - theta.sin()).abs()) <= 1e-12,
                "θ = {theta}: {:e} {:e}",
                c - theta.cos(),
                s - theta.sin()
            );
        }
        let (s0, c0) = 0.05_f64.sin_cos();
        assert!(exact_residual(c0, s0).abs() > 1e-17);
        let (c, s) = unit_rotation(0.05);
        assert!(exact_residual(c, s).abs() < 1e-18);
        assert_eq!(unit_rotation(0.0), (1.0, 0.0));
    }

    fn random_grid(nx: usize, ny: usize, seed: u64) -> FieldGrid {
        // xorshift, enough for test data
        let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let geom = Geometry::new(nx, ny, 1.0).unwrap();
        let sites = (0..nx * ny)
            .map(|_| {
                QubitState4([
                    c(next(), next()),
                    c(next(), next()),
                    c(next(), next()),
                    c(next(), next()),
                ])
            })
            .collect();
        FieldGrid::from_sites(geom, sites).unwrap()
    }

    #[test]
    fn collisions_at_zero_are_identity() {
        assert_eq!(collision_x(0.0), identity4());
        assert_eq!(collision_y(0.0), identity4());
    }

    #[test]
    fn collisions_are_unitary() {
        for theta in [0.01, 0.1, 0.5, 1.3] {
            assert!(unitarity_residual(&collision_x(theta)) <= 1e-15);
            assert!(unitarity_residual(&collision_y(theta)) <= 1e-15);
        }
    }

    #[test]
    fn quarter_turn_actions() {
        let e0 = [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
        let vx = apply(&collision_x(FRAC_PI_2), &e0);
        let vy = apply(&collision_y(FRAC_PI_2), &e0);
        let want_x = [c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)];
        let want_y = [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0), c(0.0, 0.0)];
        for k in 0..4 {
            assert!((vx[k] - want_x[k]).norm() < 1e-16);
            assert!((vy[k] - want_y[k]).norm() < 1e-16);
        }
    }

    #[test]
    fn stream_shifts_cyclically() {
        // single row of four sites with q0 = (a, b, c, d)
        let geom = Geometry::new(4, 4, 1.0).unwrap();
        let g = FieldGrid::from_fn(geom, |i, j| {
            QubitState4([
                c(i as f64 + 1.0, 0.0),
                c(0.0, j as f64),
                c(-1.0, 0.0),
                c(7.0, 7.0),
            ])
        });
        let s = stream(&g, QubitPairSelector::new(QubitPair::P01, Axis::X, 1));
        let row: Vec<f64> = (0..4).map(|i| s.at(i, 0).0[0].re).collect();
        assert_eq!(row, vec![2.0, 3.0, 4.0, 1.0]);
        let s = stream(&g, QubitPairSelector::new(QubitPair::P01, Axis::Y, -1));
        let col: Vec<f64> = (0..4).map(|j| s.at(0, j).0[1].im).collect();
        assert_eq!(col, vec![3.0, 0.0, 1.0, 2.0]);
    }

    #[test]
    fn stream_leaves_other_pair_untouched_and_inverts() {
        let g = random_grid(7, 5, 3);
        for sel in QubitPairSelector::all() {
            let s = stream(&g, sel);
            let [a, b] = match sel.pair {
                QubitPair::P01 => [2, 3],
                QubitPair::P23 => [0, 1],
            };
            for (x, y) in s.sites().iter().zip(g.sites()) {
                assert_eq!(x.0[a], y.0[a]);
                assert_eq!(x.0[b], y.0[b]);
            }
            assert_eq!(stream(&s, sel.reversed()), g);
        }
    }

    #[test]
    fn zero_angle_sweeps_are_identity() {
        let g = random_grid(6, 6, 11);
        let p = StepParams {
            theta: 0.0,
            dx: 1.0,
            scheme: Scheme::Symmetrized,
        };
        for f in [sweep_ux, sweep_ux_tilde, sweep_uy, sweep_uy_tilde] {
            assert_eq!(f(&g, &p), g);
        }
    }

    #[test]
    fn sweeps_preserve_norm() {
        let g = random_grid(16, 12, 5);
        let p = StepParams::new(0.3, 1.0).unwrap();
        let (n0, _) = energy_and_norm(&g);
        for f in [sweep_ux, sweep_ux_tilde, sweep_uy, sweep_uy_tilde] {
            let (n1, _) = energy_and_norm(&f(&g, &p));
            assert!(((n1 - n0) / n0).abs() <= 1e-13);
        }
    }

    #[test]
    fn zero_grid_stays_zero() {
        let g = FieldGrid::zeros(Geometry::new(8, 8, 1.0).unwrap());
        assert_eq!(step(&g, &StepParams::new(0.05, 1.0).unwrap()), g);
    }

    #[test]
    fn step_params_validation() {
        assert!(StepParams::new(0.0, 1.0).is_err());
        assert!(StepParams::new(0.1, -1.0).is_err());
        let p = StepParams::from_epsilon(0.1, Scheme::Symmetrized).unwrap();
        assert!((p.dt_eff() - 0.01).abs() < 1e-17);
        let p = StepParams::from_epsilon(0.1, Scheme::Unsymmetrized).unwrap();
        assert!((p.dt_eff() - 0.005).abs() < 1e-17);
    }

    #[test]
    fn collision_set_adjoints() {
        let cs = CollisionSet::new(0.2);
        let prod = crate::linalg::mat_mul(cs.matrix(Axis::Y, false), cs.matrix(Axis::Y, true));
        assert!(max_abs_diff(&prod, &identity4()) < 1e-16);
        assert_eq!(*cs.matrix(Axis::X, false), collision_x(0.2));
    }
}
