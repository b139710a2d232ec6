use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::spectral::{bordered_psd_equivalent, is_psd, symmetrized, PsdCheck};

/// Unit-diagonal tolerance on the input to [`lift_pseudoexpectation`].
pub const DIAGONAL_TOL: f64 = 1e-12;

/// Degree-two pseudoexpectation for `k`-coloring, as the bordered moment
/// matrix
///
/// ```text
/// [ 1   ℓᵀ ]
/// [ ℓ   ℰ  ]      ℓ = (1/k)·𝟏,
/// ℰ = (P - J_n/k) ⊗ (I_k - J_k/k) / (k-1) + J_{nk}/k²
/// ```
///
/// Row `1 + i·k + c` belongs to the monomial `x_{i,c}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Pseudoexpectation {
    pub k: usize,
    pub n: usize,
    pub ell: DVector<f64>,
    pub moment_matrix: DMatrix<f64>,
}

impl Pseudoexpectation {
    /// The `k×k` block `ℰ_ij`.
    pub fn block(&self, i: usize, j: usize) -> DMatrix<f64> {
        let k = self.k;
        self.moment_matrix
            .view((1 + i * k, 1 + j * k), (k, k))
            .into_owned()
    }

    /// The `nk×nk` second-moment part `ℰ`.
    pub fn second_moments(&self) -> DMatrix<f64> {
        let nk = self.n * self.k;
        self.moment_matrix.view((1, 1), (nk, nk)).into_owned()
    }

    /// Direct eigenvalue check of the full `(nk+1)×(nk+1)` matrix.
    pub fn psd_check(&self, tol: f64) -> Result<PsdCheck> {
        is_psd(&self.moment_matrix, tol)
    }

    /// PSD test through the Schur complement `ℰ - ℓℓᵀ`.
    pub fn psd_by_schur(&self) -> Result<bool> {
        bordered_psd_equivalent(1.0, &self.ell, &self.second_moments())
    }
}

/// Assembles the pseudoexpectation for integer `k >= 2` from a symmetric
/// unit-diagonal `P`.
pub fn lift_pseudoexpectation(p: &DMatrix<f64>, k: usize) -> Result<Pseudoexpectation> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("need k >= 2 colors, got {k}")));
    }
    let p = symmetrized(p)?;
    let n = p.nrows();
    if let Some(i) = (0..n).find(|&i| (p[(i, i)] - 1.0).abs() > DIAGONAL_TOL) {
        return Err(Error::DiagonalViolation {
            index: i,
            value: p[(i, i)],
        });
    }
    let kf = k as f64;
    let dim = n * k + 1;
    let mut m = DMatrix::zeros(dim, dim);
    m[(0, 0)] = 1.0;
    for r in 1..dim {
        m[(0, r)] = 1.0 / kf;
        m[(r, 0)] = 1.0 / kf;
    }
    for i in 0..n {
        for j in 0..n {
            let scale = (p[(i, j)] - 1.0 / kf) / (kf - 1.0);
            for c in 0..k {
                for c2 in 0..k {
                    let projector = f64::from(u8::from(c == c2)) - 1.0 / kf;
                    m[(1 + i * k + c, 1 + j * k + c2)] = scale * projector + 1.0 / (kf * kf);
                }
            }
        }
    }
    Ok(Pseudoexpectation {
        k,
        n,
        ell: DVector::from_element(n * k, 1.0 / kf),
        moment_matrix: m,
    })
}

/// Converts a feasible point of the shifted program (edges `-1/(κ-1)`) into
/// the coloring form `J/κ + (1 - 1/κ)·P`, which has zeros on edges and
/// satisfies `P_col - J/k ⪰ 0` for every `k >= κ`. This is the matrix to
/// lift for a coloring pseudoexpectation.
pub fn coloring_matrix(p_shift: &DMatrix<f64>, kappa: f64) -> Result<DMatrix<f64>> {
    if !(kappa > 1.0) {
        return Err(Error::InvalidParameter(format!("need kappa > 1, got {kappa}")));
    }
    let n = p_shift.nrows();
    let mut out = p_shift * (1.0 - 1.0 / kappa) + DMatrix::from_element(n, n, 1.0 / kappa);
    for i in 0..n {
        out[(i, i)] = 1.0;
    }
    Ok(out)
}

/// `P - J/k ⪰ 0` (within `tol`), the reduced form of the lift's PSD
/// condition. Accepts real `k > 1`, e.g. `k = κ` at the boundary.
pub fn reduced_lift_criterion(p: &DMatrix<f64>, k: f64, tol: f64) -> Result<PsdCheck> {
    if !(k > 1.0) {
        return Err(Error::InvalidParameter(format!("need k > 1, got {k}")));
    }
    let n = p.nrows();
    let shifted = p - DMatrix::from_element(n, n, 1.0 / k);
    is_psd(&shifted, tol)
}
