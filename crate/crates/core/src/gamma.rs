//! The four γ matrices of the Schrödinger-form Maxwell equation
//! `∂ψ/∂t = −γⁱ ∂ᵢψ` (lattice units, c = 1).

use crate::linalg::{
    adjoint, identity4, mat_mul, max_abs_diff, scale, unitarity_residual, Mat4, I, ONE, ZERO,
};

#[derive(Debug, Clone, PartialEq)]
pub struct GammaSet {
    pub gamma: [Mat4; 4],
}

impl GammaSet {
    pub fn gamma0(&self) -> &Mat4 {
        &self.gamma[0]
    }
    pub fn gamma1(&self) -> &Mat4 {
        &self.gamma[1]
    }
    pub fn gamma2(&self) -> &Mat4 {
        &self.gamma[2]
    }
    pub fn gamma3(&self) -> &Mat4 {
        &self.gamma[3]
    }
}

pub fn build_gammas() -> GammaSet {
    let g0 = identity4();

    // swaps the (q0, q1) and (q2, q3) blocks
    let mut g1 = [[ZERO; 4]; 4];
    g1[0][2] = ONE;
    g1[1][3] = ONE;
    g1[2][0] = ONE;
    g1[3][1] = ONE;

    let mut g2 = [[ZERO; 4]; 4];
    g2[0][2] = -I;
    g2[1][3] = -I;
    g2[2][0] = I;
    g2[3][1] = I;

    let mut g3 = [[ZERO; 4]; 4];
    g3[0][0] = ONE;
    g3[1][1] = ONE;
    g3[2][2] = -ONE;
    g3[3][3] = -ONE;

    GammaSet {
        gamma: [g0, g1, g2, g3],
    }
}

/// One named identity of the γ algebra and its residual.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraCheck {
    pub name: String,
    pub residual: f64,
}

/// Residual of every identity: squares, Hermiticity, unitarity and the three
/// cyclic products `γ¹γ² = −γ²γ¹ = iγ³` (and permutations).
pub fn gamma_algebra_table(g: &GammaSet) -> Vec<AlgebraCheck> {
    let id = identity4();
    let mut out = Vec::new();
    for mu in 0..4 {
        let m = &g.gamma[mu];
        out.push(AlgebraCheck {
            name: format!("(γ{mu})² = I"),
            residual: max_abs_diff(&mat_mul(m, m), &id),
        });
        out.push(AlgebraCheck {
            name: format!("γ{mu} Hermitian"),
            residual: max_abs_diff(m, &adjoint(m)),
        });
        out.push(AlgebraCheck {
            name: format!("γ{mu} unitary"),
            residual: unitarity_residual(m),
        });
    }
    for (a, b, c) in [(1, 2, 3), (2, 3, 1), (3, 1, 2)] {
        let ab = mat_mul(&g.gamma[a], &g.gamma[b]);
        let ba = mat_mul(&g.gamma[b], &g.gamma[a]);
        let ic = scale(&g.gamma[c], I);
        out.push(AlgebraCheck {
            name: format!("γ{a} γ{b} = i γ{c}"),
            residual: max_abs_diff(&ab, &ic),
        });
        out.push(AlgebraCheck {
            name: format!("γ{b} γ{a} = −i γ{c}"),
            residual: max_abs_diff(&ba, &scale(&ic, -ONE)),
        });
    }
    out
}

/// Largest residual over [`gamma_algebra_table`].
pub fn check_gamma_algebra(g: &GammaSet) -> f64 {
    gamma_algebra_table(g)
        .iter()
        .map(|c| c.residual)
        .fold(0.0, f64::max)
}
