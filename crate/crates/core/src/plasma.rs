//! Cold, collisionless, magnetized plasma: susceptibilities and the Hermitian
//! permittivity tensor for `B₀ = B₀ẑ`, plus the basic plasma length scales.
//!
//! ```text
//! χ11 = −ωpe²/(ω² − ωce²) − Σᵢ ωpi²/(ω² − ωci²)
//! χ12 = −(ωce/ω)·ωpe²/(ω² − ωce²) + Σᵢ (ωci/ω)·ωpi²/(ω² − ωci²)
//! χ33 = −ωpe²/ω² − Σᵢ ωpi²/ω²
//! ε   = ε₀ [[1+χ11, −iχ12, 0], [iχ12, 1+χ11, 0], [0, 0, 1+χ33]]
//! ```

use num_complex::Complex64;
use thiserror::Error;

use crate::constants::{BOLTZMANN, ELECTRON_MASS, ELEMENTARY_CHARGE, EPSILON_0, MU_0, PLANCK};

/// Relative distance from a cyclotron resonance inside which χ11/χ12 are refused.
pub const RESONANCE_GUARD: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlasmaError {
    #[error("angular frequency must be positive and finite, got {0}")]
    BadFrequency(f64),
    #[error("ω = {omega:e} rad/s lies within the guard band of the {species} cyclotron resonance at {resonance:e} rad/s")]
    Resonance {
        omega: f64,
        resonance: f64,
        species: String,
    },
    #[error("invalid plasma parameter: {0}")]
    BadParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IonSpecies {
    /// Charge number Z (charge is Z·|e|).
    pub charge_number: f64,
    /// Mass in kg.
    pub mass: f64,
    /// Number density in m⁻³.
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlasmaState {
    /// Ambient field magnitude along ẑ, tesla.
    pub b0: f64,
    /// Electron density, m⁻³.
    pub electron_density: f64,
    pub ions: Vec<IonSpecies>,
}

/// Angular plasma and cyclotron frequencies (rad/s).
#[derive(Debug, Clone, PartialEq)]
pub struct PlasmaFrequencies {
    pub omega_pe: f64,
    pub omega_ce: f64,
    /// `(ωpi, ωci)` per ion species.
    pub ions: Vec<(f64, f64)>,
}

impl PlasmaState {
    pub fn validate(&self) -> Result<(), PlasmaError> {
        if !(self.b0 >= 0.0 && self.b0.is_finite()) {
            return Err(PlasmaError::BadParameter(format!("B0 = {}", self.b0)));
        }
        if !(self.electron_density >= 0.0 && self.electron_density.is_finite()) {
            return Err(PlasmaError::BadParameter(format!(
                "electron density = {}",
                self.electron_density
            )));
        }
        for (k, ion) in self.ions.iter().enumerate() {
            if !(ion.mass > 0.0 && ion.mass.is_finite()) {
                return Err(PlasmaError::BadParameter(format!(
                    "ion {k} mass = {}",
                    ion.mass
                )));
            }
            if !(ion.density >= 0.0 && ion.density.is_finite()) {
                return Err(PlasmaError::BadParameter(format!(
                    "ion {k} density = {}",
                    ion.density
                )));
            }
            if !ion.charge_number.is_finite() {
                return Err(PlasmaError::BadParameter(format!("ion {k} charge number")));
            }
        }
        Ok(())
    }

    pub fn frequencies(&self) -> Result<PlasmaFrequencies, PlasmaError> {
        self.validate()?;
        let e = ELEMENTARY_CHARGE;
        let omega_pe = (e * e * self.electron_density / (EPSILON_0 * ELECTRON_MASS)).sqrt();
        let omega_ce = e * self.b0 / ELECTRON_MASS;
        let ions = self
            .ions
            .iter()
            .map(|ion| {
                let z = ion.charge_number;
                let wp = (z * z * e * e * ion.density / (EPSILON_0 * ion.mass)).sqrt();
                let wc = z.abs() * e * self.b0 / ion.mass;
                (wp, wc)
            })
            .collect();
        Ok(PlasmaFrequencies {
            omega_pe,
            omega_ce,
            ions,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Susceptibilities {
    pub chi11: f64,
    pub chi12: f64,
    pub chi33: f64,
}

/// The three susceptibilities with no frequency checks. Accepts negative ω.
pub fn susceptibilities_formal(omega: f64, f: &PlasmaFrequencies) -> Susceptibilities {
    let w2 = omega * omega;
    let resp_e = f.omega_pe * f.omega_pe / (w2 - f.omega_ce * f.omega_ce);
    let mut chi11 = -resp_e;
    let mut chi12 = -(f.omega_ce / omega) * resp_e;
    let mut chi33 = -f.omega_pe * f.omega_pe / w2;
    for &(wp, wc) in &f.ions {
        let resp_i = wp * wp / (w2 - wc * wc);
        chi11 -= resp_i;
        chi12 += (wc / omega) * resp_i;
        chi33 -= wp * wp / w2;
    }
    Susceptibilities {
        chi11,
        chi12,
        chi33,
    }
}

fn guard(omega: f64, resonance: f64, species: &str) -> Result<(), PlasmaError> {
    if resonance > 0.0 && ((omega - resonance) / resonance).abs() < RESONANCE_GUARD {
        return Err(PlasmaError::Resonance {
            omega,
            resonance,
            species: species.to_string(),
        });
    }
    Ok(())
}

pub fn susceptibilities(
    omega: f64,
    f: &PlasmaFrequencies,
) -> Result<Susceptibilities, PlasmaError> {
    if !(omega > 0.0 && omega.is_finite()) {
        return Err(PlasmaError::BadFrequency(omega));
    }
    guard(omega, f.omega_ce, "electron")?;
    for (k, &(_, wc)) in f.ions.iter().enumerate() {
        guard(omega, wc, &format!("ion {k}"))?;
    }
    Ok(susceptibilities_formal(omega, f))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PermittivityTensor {
    /// Absolute permittivity, F/m.
    pub matrix: [[Complex64; 3]; 3],
}

impl PermittivityTensor {
    /// Relative (dimensionless) tensor `ε/ε₀`.
    pub fn relative(&self) -> [[Complex64; 3]; 3] {
        self.matrix.map(|row| row.map(|v| v / EPSILON_0))
    }

    /// `max |M − M†| / max |M|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        let mut scale = 0.0_f64;
        for r in 0..3 {
            for c in 0..3 {
                worst = worst.max((self.matrix[r][c] - self.matrix[c][r].conj()).norm());
                scale = scale.max(self.matrix[r][c].norm());
            }
        }
        if scale == 0.0 {
            0.0
        } else {
            worst / scale
        }
    }
}

pub fn permittivity_from_chi(chi: &Susceptibilities) -> PermittivityTensor {
    let z = Complex64::new(0.0, 0.0);
    let d = Complex64::new(EPSILON_0 * (1.0 + chi.chi11), 0.0);
    let off = Complex64::new(0.0, EPSILON_0 * chi.chi12);
    let zz = Complex64::new(EPSILON_0 * (1.0 + chi.chi33), 0.0);
    PermittivityTensor {
        matrix: [[d, -off, z], [off, d, z], [z, z, zz]],
    }
}

pub fn permittivity_tensor(
    omega: f64,
    st: &PlasmaState,
) -> Result<PermittivityTensor, PlasmaError> {
    let f = st.frequencies()?;
    Ok(permittivity_from_chi(&susceptibilities(omega, &f)?))
}

/// Phase speed `1/√(εμ₀)` in a uniform isotropic dielectric.
pub fn dielectric_speed(eps: f64) -> Result<f64, PlasmaError> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(PlasmaError::BadParameter(format!(
            "permittivity {eps} must be positive"
        )));
    }
    Ok(1.0 / (eps * MU_0).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlasmaScales {
    /// Mean interparticle distance `(6/(πn))^{1/3}`, m.
    pub interparticle: f64,
    /// Electron de Broglie wavelength `h/√(2 k_B T m_e)`, m.
    pub de_broglie: f64,
    /// Electron Debye length `√(ε₀ k_B T/(e² n))`, m.
    pub debye: f64,
}

pub fn plasma_scales(density: f64, temperature: f64) -> Result<PlasmaScales, PlasmaError> {
    if !(density > 0.0 && density.is_finite()) {
        return Err(PlasmaError::BadParameter(format!(
            "density {density} must be positive"
        )));
    }
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(PlasmaError::BadParameter(format!(
            "temperature {temperature} must be positive"
        )));
    }
    let kt = BOLTZMANN * temperature;
    Ok(PlasmaScales {
        interparticle: (6.0 / (std::f64::consts::PI * density)).cbrt(),
        de_broglie: PLANCK / (2.0 * kt * ELECTRON_MASS).sqrt(),
        debye: (EPSILON_0 * kt / (ELEMENTARY_CHARGE * ELEMENTARY_CHARGE * density)).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants::{ATOMIC_MASS_UNIT, SPEED_OF_LIGHT};

    fn electrons_only(wpe: f64, wce: f64) -> PlasmaFrequencies {
        PlasmaFrequencies {
            omega_pe: wpe,
            omega_ce: wce,
            ions: vec![],
        }
    }

    fn hydrogen_plasma() -> PlasmaState {
        PlasmaState {
            b0: 2.5,
            electron_density: 1e19,
            ions: vec![IonSpecies {
                charge_number: 1.0,
                mass: 1.007_276 * ATOMIC_MASS_UNIT,
                density: 1e19,
            }],
        }
    }

    #[test]
    fn desk_case() {
        let wce = 1.7e11;
        let chi = susceptibilities(2.0 * wce, &electrons_only(wce, wce)).unwrap();
        assert!((chi.chi11 + 1.0 / 3.0).abs() < 1e-15);
        assert!((chi.chi12 + 1.0 / 6.0).abs() < 1e-15);
        assert!((chi.chi33 + 0.25).abs() < 1e-15);
    }

    #[test]
    fn high_frequency_limit() {
        let f = hydrogen_plasma().frequencies().unwrap();
        let w = 1e6 * f.omega_pe.max(f.omega_ce);
        let chi = susceptibilities(w, &f).unwrap();
        assert!(chi.chi11.abs() < 1e-10);
        assert!(chi.chi12.abs() < 1e-10);
        assert!(chi.chi33.abs() < 1e-10);
    }

    #[test]
    fn resonance_guard() {
        let f = electrons_only(1e10, 3e10);
        let err = susceptibilities(3e10 * (1.0 - 1e-12), &f).unwrap_err();
        assert!(matches!(err, PlasmaError::Resonance { ref species, .. } if species == "electron"));
        assert!(err.to_string().contains("3e10"));
        assert!(susceptibilities(3e10 * (1.0 - 1e-6), &f).is_ok());
        assert!(susceptibilities(0.0, &f).is_err());

        let st = hydrogen_plasma();
        let wci = st.frequencies().unwrap().ions[0].1;
        assert!(matches!(
            permittivity_tensor(wci, &st),
            Err(PlasmaError::Resonance { .. })
        ));
    }

    #[test]
    fn parity_under_frequency_reversal() {
        let f = hydrogen_plasma().frequencies().unwrap();
        let w = 3.3 * f.omega_ce;
        let a = susceptibilities_formal(w, &f);
        let b = susceptibilities_formal(-w, &f);
        assert_eq!(a.chi11, b.chi11);
        assert_eq!(a.chi33, b.chi33);
        assert_eq!(a.chi12, -b.chi12);
    }

    #[test]
    fn vacuum_tensor() {
        let st = PlasmaState {
            b0: 1.0,
            electron_density: 0.0,
            ions: vec![],
        };
        let eps = permittivity_tensor(1e9, &st).unwrap();
        for r in 0..3 {
            for c in 0..3 {
                let want = if r == c { EPSILON_0 } else { 0.0 };
                assert_eq!(eps.matrix[r][c], Complex64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn tensor_structure() {
        let st = hydrogen_plasma();
        let w = 5.0e10;
        let chi = susceptibilities(w, &st.frequencies().unwrap()).unwrap();
        let eps = permittivity_tensor(w, &st).unwrap();
        let m = eps.matrix;
        assert_eq!(m[0][1], Complex64::new(0.0, -EPSILON_0 * chi.chi12));
        assert_eq!(m[1][0], Complex64::new(0.0, EPSILON_0 * chi.chi12));
        assert_eq!(m[0][0], m[1][1]);
        for (r, c) in [(0, 2), (1, 2), (2, 0), (2, 1)] {
            assert_eq!(m[r][c], Complex64::new(0.0, 0.0));
        }
        assert_eq!(eps.hermiticity_residual(), 0.0);
        assert!((eps.relative()[2][2].re - (1.0 + chi.chi33)).abs() < 1e-15);
    }

    #[test]
    fn invalid_state_rejected() {
        let mut st = hydrogen_plasma();
        st.ions[0].mass = 0.0;
        assert!(st.frequencies().is_err());
        st = hydrogen_plasma();
        st.b0 = -1.0;
        assert!(permittivity_tensor(1e9, &st).is_err());
    }

    #[test]
    fn dielectric_speed_cases() {
        let v = dielectric_speed(EPSILON_0).unwrap();
        assert!((v - SPEED_OF_LIGHT).abs() / SPEED_OF_LIGHT < 1e-9);
        let v4 = dielectric_speed(4.0 * EPSILON_0).unwrap();
        assert!((v4 - v / 2.0).abs() <= 1e-15 * v);
        assert!(dielectric_speed(9.0 * EPSILON_0).unwrap() < v4);
        assert!(dielectric_speed(0.0).is_err());
        assert!(dielectric_speed(-1.0).is_err());
    }

    #[test]
    fn scale_formulas() {
        let s = plasma_scales(1e21, 1e4).unwrap();
        assert!(s.interparticle > 3e-8 && s.interparticle < 3e-7);
        assert!(s.de_broglie > 3e-10 && s.de_broglie < 3e-9);
        let s4 = plasma_scales(4e21, 1e4).unwrap();
        assert!((s4.debye - s.debye / 2.0).abs() <= 1e-15 * s.debye);
        assert!(s4.interparticle < s.interparticle);
        let hot = plasma_scales(1e21, 1e6).unwrap();
        assert!(hot.de_broglie < s.de_broglie);
        assert!(hot.debye > s.debye);
        assert!(plasma_scales(0.0, 1.0).is_err());
        assert!(plasma_scales(1.0, -1.0).is_err());
    }
}
