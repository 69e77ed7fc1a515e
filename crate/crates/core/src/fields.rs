//! Electromagnetic fields, Riemann-Silberstein-Weber (RSW) vectors and the
//! four-component qubit state.
//!
//! `F± = (√ε₀·E ± i·B/√μ₀)/√2`. Only `F⁺` is evolved; for real fields `F⁻` is its
//! complex conjugate. The lattice state packs `F⁺` as
//! `ψ = (−Fx + iFy, Fz, Fz, Fx + iFy)`.

use num_complex::Complex64;
use thiserror::Error;

use crate::constants::{EPSILON_0, MU_0};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FieldError {
    #[error("non-finite field component: {0}")]
    NonFinite(String),
    #[error(
        "q1/q2 mismatch {mismatch:.3e} exceeds tolerance {limit:.3e}; Gauss constraint violated"
    )]
    ConstraintViolation { mismatch: f64, limit: f64 },
}

/// Permittivity and permeability of the medium the conversions are carried out in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Units {
    pub eps0: f64,
    pub mu0: f64,
}

impl Units {
    /// SI vacuum.
    pub const SI: Units = Units {
        eps0: EPSILON_0,
        mu0: MU_0,
    };
    /// Lattice units, ε₀ = μ₀ = c = 1.
    pub const LATTICE: Units = Units {
        eps0: 1.0,
        mu0: 1.0,
    };

    pub fn speed_of_light(&self) -> f64 {
        1.0 / (self.eps0 * self.mu0).sqrt()
    }
}

/// Real electric (V/m) and magnetic (T) field at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EmField {
    pub e: [f64; 3],
    pub b: [f64; 3],
}

impl EmField {
    pub fn new(e: [f64; 3], b: [f64; 3]) -> Result<Self, FieldError> {
        let f = EmField { e, b };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), FieldError> {
        for (name, v) in [("E", &self.e), ("B", &self.b)] {
            for (axis, c) in ["x", "y", "z"].iter().zip(v) {
                if !c.is_finite() {
                    return Err(FieldError::NonFinite(format!("{name}{axis} = {c}")));
                }
            }
        }
        Ok(())
    }

    /// `(ε₀|E|² + |B|²/μ₀)/2`.
    pub fn energy_density(&self, units: Units) -> f64 {
        let e2: f64 = self.e.iter().map(|v| v * v).sum();
        let b2: f64 = self.b.iter().map(|v| v * v).sum();
        0.5 * (units.eps0 * e2 + b2 / units.mu0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RswVector {
    pub plus: [Complex64; 3],
    pub minus: Option<[Complex64; 3]>,
}

impl RswVector {
    pub fn from_plus(plus: [Complex64; 3]) -> Self {
        RswVector { plus, minus: None }
    }

    /// `|Fx⁺|² + |Fy⁺|² + |Fz⁺|²`, the energy density for real fields.
    pub fn norm_sqr(&self) -> f64 {
        self.plus.iter().map(|c| c.norm_sqr()).sum()
    }
}

pub fn em_to_rsw(f: &EmField, units: Units) -> Result<RswVector, FieldError> {
    f.validate()?;
    let se = units.eps0.sqrt();
    let sm = units.mu0.sqrt();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let mut plus = [Complex64::default(); 3];
    let mut minus = [Complex64::default(); 3];
    for k in 0..3 {
        let re = se * f.e[k] * inv_sqrt2;
        let im = f.b[k] / sm * inv_sqrt2;
        plus[k] = Complex64::new(re, im);
        minus[k] = Complex64::new(re, -im);
    }
    Ok(RswVector {
        plus,
        minus: Some(minus),
    })
}

/// Recovers real `(E, B)` from `F⁺`: `E = √(2/ε₀)·Re F⁺`, `B = √(2μ₀)·Im F⁺`.
pub fn rsw_to_em(r: &RswVector, units: Units) -> EmField {
    let ke = (2.0 / units.eps0).sqrt();
    let kb = (2.0 * units.mu0).sqrt();
    let mut f = EmField::default();
    for k in 0..3 {
        f.e[k] = ke * r.plus[k].re;
        f.b[k] = kb * r.plus[k].im;
    }
    f
}

/// Amplitudes `(q0, q1, q2, q3)` at one lattice site.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QubitState4(pub [Complex64; 4]);

impl QubitState4 {
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `|q1 − q2|`, zero for any encoded field.
    pub fn constraint_mismatch(&self) -> f64 {
        (self.0[1] - self.0[2]).norm()
    }

    /// `F⁺` read back without checking the q1 = q2 constraint; `Fz` is the mean of q1 and q2.
    pub fn decode_unchecked(&self) -> [Complex64; 3] {
        let [q0, q1, q2, q3] = self.0;
        let fx = (q3 - q0) * 0.5;
        // (q3 + q0) / (2i) = -i (q3 + q0) / 2
        let s = (q3 + q0) * 0.5;
        let fy = Complex64::new(s.im, -s.re);
        let fz = (q1 + q2) * 0.5;
        [fx, fy, fz]
    }
}

pub fn encode_state(r: &RswVector) -> QubitState4 {
    let [fx, fy, fz] = r.plus;
    let ify = Complex64::new(-fy.im, fy.re);
    QubitState4([-fx + ify, fz, fz, fx + ify])
}

/// Inverse of [`encode_state`]. Rejects states whose q1 and q2 differ by more than
/// `tol · max(1, ‖s‖)`.
pub fn decode_state(s: &QubitState4, tol: f64) -> Result<RswVector, FieldError> {
    let mismatch = s.constraint_mismatch();
    let limit = tol * s.norm().max(1.0);
    if !(mismatch <= limit) {
        return Err(FieldError::ConstraintViolation { mismatch, limit });
    }
    Ok(RswVector::from_plus(s.decode_unchecked()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::SPEED_OF_LIGHT;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn unit_ex_field() {
        let f = EmField::new([1.0, 0.0, 0.0], [0.0; 3]).unwrap();
        let r = em_to_rsw(&f, Units::SI).unwrap();
        let expected = (EPSILON_0 / 2.0).sqrt();
        assert!((r.plus[0].re - expected).abs() <= 1e-15 * expected);
        assert_eq!(r.plus[0].im, 0.0);
        assert_eq!(r.plus[1], c(0.0, 0.0));
        assert_eq!(r.plus[2], c(0.0, 0.0));
    }

    #[test]
    fn zero_field_maps_to_zero() {
        let r = em_to_rsw(&EmField::default(), Units::SI).unwrap();
        assert!(r.plus.iter().all(|v| *v == c(0.0, 0.0)));
        let back = rsw_to_em(&RswVector::from_plus([c(0.0, 0.0); 3]), Units::SI);
        assert_eq!(back, EmField::default());
    }

    #[test]
    fn crossed_fields_with_light_speed_ratio() {
        let e0 = 3.0;
        // CODATA c differs from 1/sqrt(ε₀μ₀) in the 10th digit.
        let f = EmField::new([0.0, 0.0, e0], [0.0, e0 / SPEED_OF_LIGHT, 0.0]).unwrap();
        let r = em_to_rsw(&f, Units::SI).unwrap();
        let a = e0 * (EPSILON_0 / 2.0).sqrt();
        assert_eq!(r.plus[0], c(0.0, 0.0));
        assert!(close(r.plus[1], c(0.0, a), 1e-9));
        assert!(close(r.plus[2], c(a, 0.0), 1e-15));
    }

    #[test]
    fn non_finite_input_rejected() {
        assert!(matches!(
            EmField::new([f64::NAN, 0.0, 0.0], [0.0; 3]),
            Err(FieldError::NonFinite(_))
        ));
        let f = EmField {
            e: [0.0; 3],
            b: [0.0, f64::INFINITY, 0.0],
        };
        assert!(em_to_rsw(&f, Units::SI).is_err());
    }

    #[test]
    fn inverse_of_unit_ex() {
        let r = RswVector::from_plus([c((EPSILON_0 / 2.0).sqrt(), 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let f = rsw_to_em(&r, Units::SI);
        assert!((f.e[0] - 1.0).abs() < 1e-15);
        assert_eq!(f.b, [0.0; 3]);
    }

    #[test]
    fn encode_examples() {
        let r = RswVector::from_plus([c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        assert_eq!(
            encode_state(&r).0,
            [c(-1.0, 2.0), c(3.0, 0.0), c(3.0, 0.0), c(1.0, 2.0)]
        );
        let r = RswVector::from_plus([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert_eq!(
            encode_state(&r).0,
            [c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]
        );
        let zero = RswVector::from_plus([c(0.0, 0.0); 3]);
        assert_eq!(encode_state(&zero), QubitState4::default());
    }

    #[test]
    fn decode_examples() {
        let s = QubitState4([c(-1.0, 2.0), c(3.0, 0.0), c(3.0, 0.0), c(1.0, 2.0)]);
        let r = decode_state(&s, 1e-12).unwrap();
        assert_eq!(r.plus, [c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        assert_eq!(
            decode_state(&QubitState4::default(), 0.0).unwrap().plus,
            [c(0.0, 0.0); 3]
        );
    }

    #[test]
    fn decode_rejects_constraint_violation() {
        let tol = 1e-6;
        let s = QubitState4([
            c(0.0, 0.0),
            c(1.0, 0.0),
            c(1.0 + 2.0 * tol, 0.0),
            c(0.0, 0.0),
        ]);
        assert!(matches!(
            decode_state(&s, tol),
            Err(FieldError::ConstraintViolation { .. })
        ));
    }

    fn cplx() -> impl Strategy<Value = Complex64> {
        (-1e3..1e3f64, -1e3..1e3f64).prop_map(|(a, b)| Complex64::new(a, b))
    }

    proptest! {
        #[test]
        fn em_round_trip(e in prop::array::uniform3(-1e6..1e6f64), b in prop::array::uniform3(-1e-2..1e-2f64)) {
            let f = EmField::new(e, b).unwrap();
            let r = em_to_rsw(&f, Units::SI).unwrap();
            let minus = r.minus.unwrap();
            for k in 0..3 {
                prop_assert_eq!(minus[k], r.plus[k].conj());
            }
            let g = rsw_to_em(&r, Units::SI);
            for k in 0..3 {
                prop_assert!((g.e[k] - e[k]).abs() <= 1e-14 * e[k].abs().max(1e-300) + 1e-300);
                prop_assert!((g.b[k] - b[k]).abs() <= 1e-14 * b[k].abs().max(1e-300) + 1e-300);
            }
        }

        #[test]
        fn encode_decode_identity(f in prop::array::uniform3(cplx())) {
            let r = RswVector::from_plus(f);
            let s = encode_state(&r);
            prop_assert_eq!(s.0[1].re.to_bits(), s.0[2].re.to_bits());
            prop_assert_eq!(s.0[1].im.to_bits(), s.0[2].im.to_bits());
            let back = decode_state(&s, 0.0).unwrap();
            let scale = r.norm_sqr().sqrt().max(1.0);
            for k in 0..3 {
                prop_assert!((back.plus[k] - f[k]).norm() <= 1e-15 * scale);
            }
            prop_assert!((s.norm_sqr() - 2.0 * r.norm_sqr()).abs() <= 1e-12 * r.norm_sqr().max(1.0));
        }

        #[test]
        fn encode_is_linear(f in prop::array::uniform3(cplx()), g in prop::array::uniform3(cplx()), a in cplx(), b in cplx()) {
            let mix: Vec<Complex64> = (0..3).map(|k| a * f[k] + b * g[k]).collect();
            let lhs = encode_state(&RswVector::from_plus([mix[0], mix[1], mix[2]]));
            let sf = encode_state(&RswVector::from_plus(f));
            let sg = encode_state(&RswVector::from_plus(g));
            let fmax = f.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let gmax = g.iter().map(|v| v.norm()).fold(0.0, f64::max);
            let scale = a.norm() * fmax + b.norm() * gmax + 1.0;
            for k in 0..4 {
                let rhs = a * sf.0[k] + b * sg.0[k];
                prop_assert!((lhs.0[k] - rhs).norm() <= 1e-14 * scale);
            }
        }
    }
}
