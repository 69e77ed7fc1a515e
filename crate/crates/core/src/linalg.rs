//! Small dense complex matrices used by the γ algebra and the collision operators.

use num_complex::Complex64;

pub type Mat4 = [[Complex64; 4]; 4];

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity4() -> Mat4 {
    let mut m = [[ZERO; 4]; 4];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = ONE;
    }
    m
}

pub fn mat_mul(a: &Mat4, b: &Mat4) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            let mut acc = ZERO;
            for k in 0..4 {
                acc += a[r][k] * b[k][c];
            }
            out[r][c] = acc;
        }
    }
    out
}

/// Conjugate transpose.
pub fn adjoint(a: &Mat4) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for r in 0..4 {
        for c in 0..4 {
            out[c][r] = a[r][c].conj();
        }
    }
    out
}

pub fn scale(a: &Mat4, s: Complex64) -> Mat4 {
    let mut out = *a;
    for row in out.iter_mut() {
        for v in row.iter_mut() {
            *v *= s;
        }
    }
    out
}

#[inline]
pub fn apply(a: &Mat4, v: &[Complex64; 4]) -> [Complex64; 4] {
    let mut out = [ZERO; 4];
    for (r, o) in out.iter_mut().enumerate() {
        *o = a[r][0] * v[0] + a[r][1] * v[1] + a[r][2] * v[2] + a[r][3] * v[3];
    }
    out
}

/// Largest entrywise modulus of `a - b`.
pub fn max_abs_diff(a: &Mat4, b: &Mat4) -> f64 {
    let mut worst = 0.0_f64;
    for r in 0..4 {
        for c in 0..4 {
            worst = worst.max((a[r][c] - b[r][c]).norm());
        }
    }
    worst
}

/// `max |A A† - I|`, zero for an exactly unitary matrix.
pub fn unitarity_residual(a: &Mat4) -> f64 {
    max_abs_diff(&mat_mul(a, &adjoint(a)), &identity4())
}
