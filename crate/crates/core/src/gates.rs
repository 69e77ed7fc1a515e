//! Dense one- and two-qubit state vectors with CNOT, Hadamard and the Bell basis.
//!
//! Two-qubit amplitudes are ordered `|00⟩, |01⟩, |10⟩, |11⟩` with the first
//! qubit as the high bit. Measurement is reported as probabilities only.

use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GateError {
    #[error("expected a {expected}-amplitude ket, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("ket dimension {0} is not 2 or 4")]
    BadLength(usize),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ket {
    amps: Vec<Complex64>,
}

impl Ket {
    pub fn new(amps: Vec<Complex64>) -> Result<Self, GateError> {
        match amps.len() {
            2 | 4 => Ok(Ket { amps }),
            n => Err(GateError::BadLength(n)),
        }
    }

    pub fn from_real(amps: &[f64]) -> Result<Self, GateError> {
        Ket::new(amps.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Ket) -> Result<Complex64, GateError> {
        self.expect_dim(other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn distance(&self, other: &Ket) -> Result<f64, GateError> {
        self.expect_dim(other.dim())?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    fn expect_dim(&self, expected: usize) -> Result<(), GateError> {
        if self.dim() != expected {
            return Err(GateError::Dimension {
                expected,
                got: self.dim(),
            });
        }
        Ok(())
    }
}

pub fn ket0() -> Ket {
    Ket::from_real(&[1.0, 0.0]).unwrap()
}

pub fn ket1() -> Ket {
    Ket::from_real(&[0.0, 1.0]).unwrap()
}

/// Two-qubit computational basis state `|b₁b₀⟩` for index `b₁·2 + b₀`.
pub fn basis2(index: usize) -> Result<Ket, GateError> {
    if index >= 4 {
        return Err(GateError::IndexOutOfRange { index, dim: 4 });
    }
    let mut a = vec![Complex64::new(0.0, 0.0); 4];
    a[index] = Complex64::new(1.0, 0.0);
    Ket::new(a)
}

/// `(a₁, b₁) ⊗ (a₂, b₂) = (a₁a₂, a₁b₂, b₁a₂, b₁b₂)`.
pub fn tensor_product(a: &Ket, b: &Ket) -> Result<Ket, GateError> {
    a.expect_dim(2)?;
    b.expect_dim(2)?;
    let (x, y) = (&a.amps, &b.amps);
    Ket::new(vec![x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]])
}

pub type Gate4 = [[Complex64; 4]; 4];
pub type Gate2 = [[Complex64; 2]; 2];

pub fn cnot_matrix() -> Gate4 {
    let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
    for (r, c) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[r][c] = Complex64::new(1.0, 0.0);
    }
    m
}

pub fn hadamard_matrix() -> Gate2 {
    let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
    [[h, h], [h, -h]]
}

/// `H ⊗ I`.
pub fn hadamard_first_matrix() -> Gate4 {
    let h = hadamard_matrix();
    let mut m = [[Complex64::new(0.0, 0.0); 4]; 4];
    for r in 0..2 {
        for c in 0..2 {
            m[2 * r][2 * c] = h[r][c];
            m[2 * r + 1][2 * c + 1] = h[r][c];
        }
    }
    m
}

fn apply4(m: &Gate4, s: &Ket) -> Result<Ket, GateError> {
    s.expect_dim(4)?;
    let out = (0..4)
        .map(|r| (0..4).map(|c| m[r][c] * s.amps[c]).sum())
        .collect();
    Ket::new(out)
}

pub fn apply_cnot(s: &Ket) -> Result<Ket, GateError> {
    apply4(&cnot_matrix(), s)
}

pub fn apply_hadamard_first(s: &Ket) -> Result<Ket, GateError> {
    apply4(&hadamard_first_matrix(), s)
}

pub fn apply_hadamard(s: &Ket) -> Result<Ket, GateError> {
    s.expect_dim(2)?;
    let h = hadamard_matrix();
    Ket::new(vec![
        h[0][0] * s.amps[0] + h[0][1] * s.amps[1],
        h[1][0] * s.amps[0] + h[1][1] * s.amps[1],
    ])
}

/// `max |M†M − I|` for a square gate given as rows.
pub fn unitarity_residual<const N: usize>(m: &[[Complex64; N]; N]) -> f64 {
    let mut worst = 0.0_f64;
    for r in 0..N {
        for c in 0..N {
            let v: Complex64 = (0..N).map(|k| m[k][r].conj() * m[k][c]).sum();
            let want = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((v - want).norm());
        }
    }
    worst
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BellLabel {
    PsiPlus,
    PsiMinus,
    PhiPlus,
    PhiMinus,
}

impl BellLabel {
    pub const ALL: [BellLabel; 4] = [
        BellLabel::PsiPlus,
        BellLabel::PsiMinus,
        BellLabel::PhiPlus,
        BellLabel::PhiMinus,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BellLabel::PsiPlus => "Ψ+",
            BellLabel::PsiMinus => "Ψ−",
            BellLabel::PhiPlus => "Φ+",
            BellLabel::PhiMinus => "Φ−",
        }
    }

    /// Basis index the decode circuit maps this state to.
    pub fn decoded_index(self) -> usize {
        match self {
            BellLabel::PsiPlus => 0,
            BellLabel::PhiPlus => 1,
            BellLabel::PsiMinus => 2,
            BellLabel::PhiMinus => 3,
        }
    }

    pub fn state(self) -> Ket {
        let r = FRAC_1_SQRT_2;
        let a = match self {
            BellLabel::PsiPlus => [r, 0.0, 0.0, r],
            BellLabel::PsiMinus => [r, 0.0, 0.0, -r],
            BellLabel::PhiPlus => [0.0, r, r, 0.0],
            BellLabel::PhiMinus => [0.0, r, -r, 0.0],
        };
        Ket::from_real(&a).unwrap()
    }
}

/// `[Ψ+, Ψ−, Φ+, Φ−]` with `Ψ± = (|00⟩ ± |11⟩)/√2`, `Φ± = (|01⟩ ± |10⟩)/√2`.
pub fn bell_states() -> [Ket; 4] {
    BellLabel::ALL.map(BellLabel::state)
}

/// CNOT followed by `H ⊗ I`.
pub fn bell_decode(s: &Ket) -> Result<Ket, GateError> {
    apply_hadamard_first(&apply_cnot(s)?)
}

/// `H ⊗ I` followed by CNOT, the inverse of [`bell_decode`].
pub fn bell_encode(s: &Ket) -> Result<Ket, GateError> {
    apply_cnot(&apply_hadamard_first(s)?)
}

pub fn probability(s: &Ket, index: usize) -> Result<f64, GateError> {
    s.amps
        .get(index)
        .map(|a| a.norm_sqr())
        .ok_or(GateError::IndexOutOfRange {
            index,
            dim: s.dim(),
        })
}

/// Probability that the second qubit reads `second` given the first read `first`.
/// `None` when the first outcome has zero probability.
pub fn conditional_second(s: &Ket, first: usize, second: usize) -> Result<Option<f64>, GateError> {
    s.expect_dim(4)?;
    if first > 1 || second > 1 {
        return Err(GateError::IndexOutOfRange {
            index: first.max(second),
            dim: 2,
        });
    }
    let p_first = probability(s, 2 * first)? + probability(s, 2 * first + 1)?;
    if p_first == 0.0 {
        return Ok(None);
    }
    Ok(Some(probability(s, 2 * first + second)? / p_first))
}
