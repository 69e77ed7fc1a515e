//! Flat Minkowski space: metric, intervals, boosts and the electromagnetic field tensor.
//!
//! Signature `(+, −, −, −)` with `x⁰ = ct`. Index 0 is time, 1..3 are x, y, z.

use thiserror::Error;

use crate::fields::EmField;

pub type Mat4r = [[f64; 4]; 4];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RelativityError {
    #[error("boost speed |β| = {0} must be below 1")]
    Superluminal(f64),
    #[error("spatial axis index must be 1, 2 or 3, got {0}")]
    BadAxis(usize),
}

/// `η = diag(1, −1, −1, −1)`.
pub const ETA: Mat4r = [
    [1.0, 0.0, 0.0, 0.0],
    [0.0, -1.0, 0.0, 0.0],
    [0.0, 0.0, -1.0, 0.0],
    [0.0, 0.0, 0.0, -1.0],
];

fn mul(a: &Mat4r, b: &Mat4r) -> Mat4r {
    let mut out = [[0.0; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            out[r][c] = (0..4).map(|k| a[r][k] * b[k][c]).sum();
        }
    }
    out
}

fn transpose(a: &Mat4r) -> Mat4r {
    let mut out = [[0.0; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            out[c][r] = a[r][c];
        }
    }
    out
}

pub fn max_abs_diff(a: &Mat4r, b: &Mat4r) -> f64 {
    let mut worst = 0.0_f64;
    for r in 0..4 {
        for c in 0..4 {
            worst = worst.max((a[r][c] - b[r][c]).abs());
        }
    }
    worst
}

/// Determinant by cofactor expansion along the first row.
pub fn det4(m: &Mat4r) -> f64 {
    fn det3(m: [[f64; 3]; 3]) -> f64 {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
    let mut total = 0.0;
    for col in 0..4 {
        let mut minor = [[0.0; 3]; 3];
        for r in 1..4 {
            let mut cc = 0;
            for c in 0..4 {
                if c != col {
                    minor[r - 1][cc] = m[r][c];
                    cc += 1;
                }
            }
        }
        let sign = if col % 2 == 0 { 1.0 } else { -1.0 };
        total += sign * m[0][col] * det3(minor);
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    /// Event at time `t` and position `r`, with `x⁰ = c·t`.
    pub fn from_event(t: f64, r: [f64; 3], c: f64) -> Self {
        FourVector([c * t, r[0], r[1], r[2]])
    }

    /// `xᵀ η x`.
    pub fn minkowski_square(&self) -> f64 {
        let x = &self.0;
        x[0] * x[0] - x[1] * x[1] - x[2] * x[2] - x[3] * x[3]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntervalKind {
    Timelike,
    Lightlike,
    Spacelike,
}

/// `(Δx)ᵀ η (Δx)` for `Δx = b − a`.
pub fn interval(a: &FourVector, b: &FourVector) -> f64 {
    let mut d = [0.0; 4];
    for k in 0..4 {
        d[k] = b.0[k] - a.0[k];
    }
    FourVector(d).minkowski_square()
}

/// Exact sign classification; pass a tolerance-rounded value if needed.
pub fn classify(s2: f64) -> IntervalKind {
    if s2 > 0.0 {
        IntervalKind::Timelike
    } else if s2 < 0.0 {
        IntervalKind::Spacelike
    } else {
        IntervalKind::Lightlike
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzBoost {
    pub matrix: Mat4r,
    pub beta: f64,
    pub gamma: f64,
}

/// Boost into a frame moving with speed `β·c` along +x.
pub fn boost_x(beta: f64) -> Result<LorentzBoost, RelativityError> {
    if !(beta.abs() < 1.0) {
        return Err(RelativityError::Superluminal(beta.abs()));
    }
    let gamma = 1.0 / (1.0 - beta * beta).sqrt();
    let gb = gamma * beta;
    Ok(LorentzBoost {
        matrix: [
            [gamma, -gb, 0.0, 0.0],
            [-gb, gamma, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
        ],
        beta,
        gamma,
    })
}

/// Boost along spatial axis 1, 2 or 3, built as `P Λx Pᵀ` with `P` swapping x and the axis.
pub fn boost_along(axis: usize, beta: f64) -> Result<LorentzBoost, RelativityError> {
    if !(1..=3).contains(&axis) {
        return Err(RelativityError::BadAxis(axis));
    }
    let bx = boost_x(beta)?;
    let mut p = [[0.0; 4]; 4];
    let mut perm = [0, 1, 2, 3];
    perm.swap(1, axis);
    for (r, &c) in perm.iter().enumerate() {
        p[r][c] = 1.0;
    }
    Ok(LorentzBoost {
        matrix: mul(&mul(&p, &bx.matrix), &transpose(&p)),
        ..bx
    })
}

impl LorentzBoost {
    pub fn apply(&self, x: &FourVector) -> FourVector {
        let mut out = [0.0; 4];
        for (r, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|k| self.matrix[r][k] * x.0[k]).sum();
        }
        FourVector(out)
    }

    /// `self ∘ other` (other acts first). `beta`/`gamma` are recovered from `Λ⁰₀`
    /// and are meaningful for collinear boosts.
    pub fn compose(&self, other: &LorentzBoost) -> LorentzBoost {
        let matrix = mul(&self.matrix, &other.matrix);
        let gamma = matrix[0][0];
        let beta = -matrix[0][1] / gamma;
        LorentzBoost {
            matrix,
            beta,
            gamma,
        }
    }

    /// `max |ΛᵀηΛ − η|`.
    pub fn metric_residual(&self) -> f64 {
        let m = mul(&mul(&transpose(&self.matrix), &ETA), &self.matrix);
        max_abs_diff(&m, &ETA)
    }

    pub fn determinant(&self) -> f64 {
        det4(&self.matrix)
    }
}

/// Contravariant `F^{μν}` (or covariant `F_{μν}` after [`lower_field_tensor`]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldTensor4(pub Mat4r);

impl FieldTensor4 {
    /// `max |F + Fᵀ|`.
    pub fn antisymmetry_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for r in 0..4 {
            for c in 0..4 {
                worst = worst.max((self.0[r][c] + self.0[c][r]).abs());
            }
        }
        worst
    }

    /// Reads `(E, B)` back from a contravariant tensor.
    pub fn to_field(&self, c: f64) -> EmField {
        let f = &self.0;
        EmField {
            e: [f[1][0] * c, f[2][0] * c, f[3][0] * c],
            b: [f[3][2], f[1][3], f[2][1]],
        }
    }
}

pub fn build_field_tensor(f: &EmField, c: f64) -> FieldTensor4 {
    let [ex, ey, ez] = f.e.map(|v| v / c);
    let [bx, by, bz] = f.b;
    FieldTensor4([
        [0.0, -ex, -ey, -ez],
        [ex, 0.0, -bz, by],
        [ey, bz, 0.0, -bx],
        [ez, -by, bx, 0.0],
    ])
}

/// `F_{αβ} = η_{αμ} F^{μν} η_{νβ}`.
pub fn lower_field_tensor(f: &FieldTensor4) -> FieldTensor4 {
    FieldTensor4(mul(&mul(&ETA, &f.0), &ETA))
}

/// `F′ = Λ F Λᵀ`.
pub fn boost_field_tensor(f: &FieldTensor4, l: &LorentzBoost) -> FieldTensor4 {
    FieldTensor4(mul(&mul(&l.matrix, &f.0), &transpose(&l.matrix)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MaxwellResiduals {
    /// `∂_μ F^{μν}` for ν = 0..3 (source-free, so ideally zero).
    pub inhomogeneous: [f64; 4],
    /// Cyclic sums `∂_μF_{νρ} + ∂_νF_{ρμ} + ∂_ρF_{μν}` for the index triples
    /// (1,2,3), (0,2,3), (0,1,3), (0,1,2). The first is `−∇·B`.
    pub homogeneous: [f64; 4],
}

impl MaxwellResiduals {
    pub fn max_abs(&self) -> f64 {
        self.inhomogeneous
            .iter()
            .chain(self.homogeneous.iter())
            .fold(0.0_f64, |a, v| a.max(v.abs()))
    }
}

pub const HOMOGENEOUS_TRIPLES: [(usize, usize, usize); 4] =
    [(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)];

/// Second-order central-difference residuals of the covariant Maxwell equations
/// at `point`, with step `h` in every coordinate `x^μ` (so `Δt = h/c`).
pub fn maxwell_residuals<F>(sampler: F, point: &FourVector, h: f64, c: f64) -> MaxwellResiduals
where
    F: Fn(f64, [f64; 3]) -> EmField,
{
    // dF[μ] = ∂_μ F^{αβ}
    let mut d_upper = [[[0.0; 4]; 4]; 4];
    for mu in 0..4 {
        let mut plus = point.0;
        let mut minus = point.0;
        plus[mu] += h;
        minus[mu] -= h;
        let eval = |x: [f64; 4]| build_field_tensor(&sampler(x[0] / c, [x[1], x[2], x[3]]), c);
        let fp = eval(plus);
        let fm = eval(minus);
        for a in 0..4 {
            for b in 0..4 {
                d_upper[mu][a][b] = (fp.0[a][b] - fm.0[a][b]) / (2.0 * h);
            }
        }
    }

    let mut inhomogeneous = [0.0; 4];
    for (nu, out) in inhomogeneous.iter_mut().enumerate() {
        *out = (0..4).map(|mu| d_upper[mu][mu][nu]).sum();
    }

    let d_lower: Vec<Mat4r> = d_upper
        .iter()
        .map(|m| lower_field_tensor(&FieldTensor4(*m)).0)
        .collect();
    let mut homogeneous = [0.0; 4];
    for (out, &(m, n, r)) in homogeneous.iter_mut().zip(HOMOGENEOUS_TRIPLES.iter()) {
        *out = d_lower[m][n][r] + d_lower[n][r][m] + d_lower[r][m][n];
    }

    MaxwellResiduals {
        inhomogeneous,
        homogeneous,
    }
}
