//! Dense symmetric eigenvalues and positive-semidefiniteness checks.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Largest tolerated `|M_ij - M_ji|` before a matrix is rejected as asymmetric.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Relative PSD tolerance: `λ_min >= -PSD_REL_TOL * max(1, |λ|_max)`.
pub const PSD_REL_TOL: f64 = 1e-8;

/// Tolerance used by [`bordered_psd_equivalent`].
pub const BORDERED_TOL: f64 = 1e-9;

/// Eigenvalues of a symmetric matrix, sorted in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSummary {
    pub eigenvalues: Vec<f64>,
    pub lambda_min: f64,
    /// Second-largest eigenvalue; `None` for 1×1 matrices.
    pub lambda_2: Option<f64>,
}

impl SpectrumSummary {
    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn spectral_radius(&self) -> f64 {
        self.lambda_max().abs().max(self.lambda_min.abs())
    }

    /// Default PSD tolerance for this spectrum.
    pub fn psd_tolerance(&self) -> f64 {
        PSD_REL_TOL * self.spectral_radius().max(1.0)
    }
}

/// Returns `(M + Mᵀ)/2` after checking that `M` is square and symmetric
/// within [`SYMMETRY_TOL`].
pub fn symmetrized(m: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    let max_asymmetry = max_asymmetry(m);
    if max_asymmetry > SYMMETRY_TOL || max_asymmetry.is_nan() {
        return Err(Error::Asymmetric { max_asymmetry });
    }
    Ok((m + m.transpose()) * 0.5)
}

fn max_asymmetry(m: &DMatrix<f64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for j in 0..n {
        for i in j + 1..n {
            let gap = (m[(i, j)] - m[(j, i)]).abs();
            if gap.is_nan() {
                return f64::NAN;
            }
            worst = worst.max(gap);
        }
    }
    worst
}

pub fn symmetric_eigenvalues(m: &DMatrix<f64>) -> Result<SpectrumSummary> {
    if m.is_empty() {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    let sym = symmetrized(m)?;
    let mut eigenvalues: Vec<f64> = sym.symmetric_eigenvalues().iter().copied().collect();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    Ok(SpectrumSummary {
        lambda_min: *eigenvalues.last().unwrap(),
        lambda_2: eigenvalues.get(1).copied(),
        eigenvalues,
    })
}

/// Outcome of a PSD test: always reports the smallest eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdCheck {
    pub psd: bool,
    pub lambda_min: f64,
}

/// `true` iff `λ_min(M) >= -tol`.
pub fn is_psd(m: &DMatrix<f64>, tol: f64) -> Result<PsdCheck> {
    let spec = symmetric_eigenvalues(m)?;
    Ok(PsdCheck {
        psd: spec.lambda_min >= -tol,
        lambda_min: spec.lambda_min,
    })
}

/// PSD test with the default relative tolerance.
pub fn is_psd_default(m: &DMatrix<f64>) -> Result<PsdCheck> {
    let spec = symmetric_eigenvalues(m)?;
    Ok(PsdCheck {
        psd: spec.lambda_min >= -spec.psd_tolerance(),
        lambda_min: spec.lambda_min,
    })
}

/// The bordered matrix `[[b, vᵀ], [v, X]]`.
pub fn bordered(b: f64, v: &DVector<f64>, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_border_dims(v, x)?;
    let n = x.nrows();
    let mut out = DMatrix::zeros(n + 1, n + 1);
    out[(0, 0)] = b;
    for i in 0..n {
        out[(0, i + 1)] = v[i];
        out[(i + 1, 0)] = v[i];
    }
    out.view_mut((1, 1), (n, n)).copy_from(x);
    Ok(out)
}

fn check_border_dims(v: &DVector<f64>, x: &DMatrix<f64>) -> Result<()> {
    if x.nrows() != x.ncols() {
        return Err(Error::DimensionMismatch {
            expected: x.nrows(),
            found: x.ncols(),
        });
    }
    if v.len() != x.nrows() {
        return Err(Error::DimensionMismatch {
            expected: x.nrows(),
            found: v.len(),
        });
    }
    Ok(())
}

/// Decides whether `[[b, vᵀ], [v, X]] ⪰ 0` through the Schur complement:
/// for `b > 0` this holds iff `X - vvᵀ/b ⪰ 0` (within [`BORDERED_TOL`]).
pub fn bordered_psd_equivalent(b: f64, v: &DVector<f64>, x: &DMatrix<f64>) -> Result<bool> {
    if !(b > 0.0) {
        return Err(Error::InvalidParameter(format!("border scalar must be positive, got {b}")));
    }
    check_border_dims(v, x)?;
    let schur = x - (v * v.transpose()) / b;
    Ok(is_psd(&schur, BORDERED_TOL)?.psd)
}
