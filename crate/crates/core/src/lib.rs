//! Quantum lattice algorithm (QLA) for electromagnetic waves in the x-y plane.
//!
//! Maxwell's equations are written for the complex field `F⁺ = (√ε₀E + iB/√μ₀)/√2`,
//! packed into a four-component state per lattice site and advanced by an
//! interleaved sequence of per-site unitary collisions and qubit-pair streaming.
//! The crate also carries everything needed to check that scheme:
//!
//! * [`fields`]: conversions between `(E, B)`, `F⁺` and the four-qubit state.
//! * [`grid`]: the periodic lattice and its diagnostics (norm, energy, Gauss residuals).
//! * [`gamma`]: the γ-matrix algebra and the continuum Schrödinger-form generator.
//! * [`continuum`]: a 4th-order reference integrator used as an oracle.
//! * [`waves`]: analytic plane waves and a Gaussian pulse as initial data.
//! * [`qla`]: collision and streaming operators, sweeps and the full time step.
//! * [`convergence`]: error-vs-ε studies against the oracle.
//! * [`relativity`]: Minkowski metric, boosts and the covariant field tensor.
//! * [`plasma`]: cold magnetized plasma permittivity and plasma length scales.
//! * [`gates`]: a two-qubit state-vector toy with CNOT, Hadamard and Bell states.
//! * [`snapshot`] and [`runner`]: file formats and the batch driver behind the `qla` binary.
//!
//! Lattice quantities use units with ε₀ = μ₀ = c = 1 and the lattice spacing
//! measured in the same length unit as time.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod constants;
pub mod continuum;
pub mod convergence;
pub mod fields;
pub mod gamma;
pub mod gates;
pub mod grid;
pub mod linalg;
pub mod plasma;
pub mod qla;
pub mod reduce;
pub mod relativity;
pub mod runner;
pub mod snapshot;
pub mod waves;

pub use num_complex::Complex64;

pub use fields::{EmField, QubitState4, RswVector, Units};
pub use grid::{FieldGrid, Geometry};
pub use qla::{Scheme, StepParams};
