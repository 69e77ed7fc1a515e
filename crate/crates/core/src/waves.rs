//! Analytic initial data in lattice units (ε₀ = μ₀ = c = 1).
//!
//! [`plane_wave_state`] samples an exact source-free Maxwell solution, so it doubles
//! as an analytic reference. [`gaussian_pulse_state`] is a localized wave packet
//! whose magnetic field is derived from a stream function, which keeps it exactly
//! divergence-free in the continuum.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::fields::{em_to_rsw, encode_state, EmField, Units};
use crate::grid::{FieldGrid, Geometry};

/// Relative slack when testing `k · L / 2π` for integrality.
const COMMENSURATE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WaveError {
    #[error("wavevector component k{axis} = {k} is not a multiple of 2π/{length}")]
    NotCommensurate { axis: char, k: f64, length: f64 },
    #[error("wavevector must be nonzero")]
    ZeroWavevector,
    #[error("non-finite parameter: {0}")]
    NonFinite(&'static str),
    #[error("pulse width must be positive, got {0}")]
    BadWidth(f64),
}

/// Which transverse mode of a 2D plane wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Polarization {
    /// E along ẑ, B in the plane.
    Ez,
    /// B along ẑ, E in the plane.
    Bz,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveSpec {
    /// Wavevector (kx, ky), radians per lattice length unit.
    pub k: [f64; 2],
    /// Complex amplitude of the polarized field component.
    pub amplitude: Complex64,
    pub polarization: Polarization,
}

impl PlaneWaveSpec {
    /// Wave with `mx` wavelengths across x and `my` across y of the periodic box.
    pub fn from_modes(
        mx: i64,
        my: i64,
        geom: &Geometry,
        amplitude: Complex64,
        polarization: Polarization,
    ) -> Self {
        let [lx, ly] = geom.extent();
        PlaneWaveSpec {
            k: [2.0 * PI * mx as f64 / lx, 2.0 * PI * my as f64 / ly],
            amplitude,
            polarization,
        }
    }

    pub fn wavenumber(&self) -> f64 {
        self.k[0].hypot(self.k[1])
    }

    /// Angular frequency, `|k|` with c = 1.
    pub fn omega(&self) -> f64 {
        self.wavenumber()
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega()
    }

    fn validate(&self, geom: &Geometry) -> Result<(), WaveError> {
        if !(self.k[0].is_finite() && self.k[1].is_finite()) {
            return Err(WaveError::NonFinite("wavevector"));
        }
        if !(self.amplitude.re.is_finite() && self.amplitude.im.is_finite()) {
            return Err(WaveError::NonFinite("amplitude"));
        }
        if self.k == [0.0, 0.0] {
            return Err(WaveError::ZeroWavevector);
        }
        let [lx, ly] = geom.extent();
        for (axis, k, length) in [('x', self.k[0], lx), ('y', self.k[1], ly)] {
            let m = k * length / (2.0 * PI);
            if (m - m.round()).abs() > COMMENSURATE_TOL * m.abs().max(1.0) {
                return Err(WaveError::NotCommensurate { axis, k, length });
            }
        }
        Ok(())
    }

    /// Real `(E, B)` at position `(x, y)` and time `t`.
    pub fn field(&self, x: f64, y: f64, t: f64) -> EmField {
        let kn = self.wavenumber();
        let (kx, ky) = (self.k[0] / kn, self.k[1] / kn);
        let phase = self.k[0] * x + self.k[1] * y - kn * t;
        let a = (self.amplitude * Complex64::from_polar(1.0, phase)).re;
        // B = k̂ × E for E ∥ ẑ; E = B × k̂ for B ∥ ẑ
        match self.polarization {
            Polarization::Ez => EmField {
                e: [0.0, 0.0, a],
                b: [ky * a, -kx * a, 0.0],
            },
            Polarization::Bz => EmField {
                e: [-ky * a, kx * a, 0.0],
                b: [0.0, 0.0, a],
            },
        }
    }
}

/// Samples the plane wave at time `t` and encodes it on the lattice.
pub fn plane_wave_state(
    spec: &PlaneWaveSpec,
    t: f64,
    geom: Geometry,
) -> Result<FieldGrid, WaveError> {
    spec.validate(&geom)?;
    if !t.is_finite() {
        return Err(WaveError::NonFinite("time"));
    }
    Ok(FieldGrid::from_fn(geom, |i, j| {
        let [x, y] = geom.position(i, j);
        encode_field(&spec.field(x, y, t))
    }))
}

fn encode_field(f: &EmField) -> crate::fields::QubitState4 {
    encode_state(&em_to_rsw(f, Units::LATTICE).expect("finite analytic field"))
}

/// Gaussian-enveloped Ez wave packet travelling along `k`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPulse {
    pub center: [f64; 2],
    pub width: f64,
    pub k: [f64; 2],
    pub amplitude: f64,
}

impl GaussianPulse {
    /// `Ez = A g cos φ` and `B = ∇ × (Φ ẑ)` with `Φ = A g sin φ / |k|`,
    /// where `g` is the Gaussian envelope and `φ = k · (r − r₀)`.
    pub fn field_at(&self, rx: f64, ry: f64) -> EmField {
        let kn = self.k[0].hypot(self.k[1]);
        let w2 = self.width * self.width;
        let env = (-(rx * rx + ry * ry) / (2.0 * w2)).exp();
        let phase = self.k[0] * rx + self.k[1] * ry;
        let (s, c) = phase.sin_cos();
        let a = self.amplitude;
        let ez = a * env * c;
        let dphi_dx = a / kn * env * (-(rx / w2) * s + self.k[0] * c);
        let dphi_dy = a / kn * env * (-(ry / w2) * s + self.k[1] * c);
        EmField {
            e: [0.0, 0.0, ez],
            b: [dphi_dy, -dphi_dx, 0.0],
        }
    }
}

/// Encodes the pulse using minimum-image displacements from its center.
pub fn gaussian_pulse_state(p: &GaussianPulse, geom: Geometry) -> Result<FieldGrid, WaveError> {
    if !(p.center.iter().chain(p.k.iter()).all(|v| v.is_finite()) && p.amplitude.is_finite()) {
        return Err(WaveError::NonFinite("pulse parameter"));
    }
    if !(p.width > 0.0 && p.width.is_finite()) {
        return Err(WaveError::BadWidth(p.width));
    }
    if p.k == [0.0, 0.0] {
        return Err(WaveError::ZeroWavevector);
    }
    let [lx, ly] = geom.extent();
    let wrap = |d: f64, l: f64| d - l * (d / l).round();
    Ok(FieldGrid::from_fn(geom, |i, j| {
        let [x, y] = geom.position(i, j);
        let f = p.field_at(wrap(x - p.center[0], lx), wrap(y - p.center[1], ly));
        encode_field(&f)
    }))
}
