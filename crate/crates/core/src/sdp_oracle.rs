//! Reference value of `ϑ(Ḡ)` for small graphs.
//!
//! Bisection on `κ` over the feasibility problem
//! `P ⪰ 0, P_ii = 1, P_ij = -1/(κ-1)` on edges. Each feasibility test runs
//! Dykstra's alternating projections between the affine set and the PSD
//! cone. A feasible verdict is turned into an explicit certificate at a
//! slightly larger `κ` and re-checked by an eigenvalue computation, so the
//! upper end of the interval is rigorous. Infeasibility is inferred from a
//! residual that stalls above a floor, which is a heuristic.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::error::{Error, Result};
use crate::graph::RegularGraph;
use crate::spectral::is_psd;

/// Sweeps between direct PSD checks of the affine iterate.
const CHECK_EVERY: usize = 50;

#[derive(Debug, Clone)]
pub struct OracleOptions {
    /// Target width of the returned interval.
    pub precision: f64,
    /// Bisection steps allowed.
    pub max_iter: usize,
    /// Projection sweeps allowed per feasibility test.
    pub max_sweeps: usize,
    /// Sweeps between stall checks.
    pub stall_window: usize,
    /// A residual whose extrapolated limit stays above this is infeasible.
    pub stall_floor: f64,
    /// Feasible when the affine iterate has `λ_min >= -feasibility_tol`.
    pub feasibility_tol: f64,
    pub size_limit: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            precision: 1e-4,
            max_iter: 60,
            max_sweeps: 50_000,
            stall_window: 500,
            stall_floor: 1e-5,
            feasibility_tol: 1e-7,
            size_limit: 32,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub lo: f64,
    pub hi: f64,
    /// Bisection steps taken.
    pub iterations: usize,
    pub converged: bool,
    /// `(κ, P)` certifying `hi`: `P` is PSD with unit diagonal and
    /// `-1/(κ-1)` on every edge.
    pub certificate: (f64, DMatrix<f64>),
    /// Projection sweeps summed over all feasibility tests.
    pub sweeps: usize,
}

impl OracleResult {
    pub fn contains(&self, value: f64) -> bool {
        self.lo <= value && value <= self.hi
    }
}

/// Verdict of a single feasibility test.
#[derive(Debug, Clone)]
pub enum Feasibility {
    /// Affine-feasible `P` with `λ_min(P) >= -feasibility_tol`.
    Feasible(DMatrix<f64>),
    Infeasible,
    /// Neither test fired within the sweep budget.
    Undecided,
}

pub fn exact_theta(g: &RegularGraph, precision: f64, max_iter: usize) -> Result<OracleResult> {
    exact_theta_with(
        g,
        &OracleOptions {
            precision,
            max_iter,
            ..OracleOptions::default()
        },
    )
}

pub fn exact_theta_with(g: &RegularGraph, opts: &OracleOptions) -> Result<OracleResult> {
    if g.n() > opts.size_limit {
        return Err(Error::SizeLimit {
            n: g.n(),
            limit: opts.size_limit,
        });
    }
    if !(opts.precision >= 1e-4) {
        return Err(Error::InvalidParameter(format!(
            "precision must be >= 1e-4, got {}",
            opts.precision
        )));
    }
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let step = opts.precision / 8.0;
    let mut sweeps = 0;

    // I + xA with x = -1/(n-1) is PSD because λ_min(A) >= -(n-1).
    let start = g.n() as f64;
    let (verdict, used) = feasibility(g, start, opts, None);
    sweeps += used;
    let Feasibility::Feasible(p) = verdict else {
        return Err(Error::InvariantViolation(format!(
            "starting point kappa = {start} was not recognised as feasible"
        )));
    };
    let mut certificate = certify(g, start, &p, start + step)?;
    let mut hi = start + step;
    let mut lo = 1.0;
    let mut warm = p;

    let mut iterations = 0;
    while hi - lo > opts.precision {
        if iterations == opts.max_iter {
            return Err(Error::NonConvergence { iterations });
        }
        iterations += 1;
        let mid = 0.5 * (lo + hi - step);
        let (verdict, used) = feasibility(g, mid, opts, Some(&warm));
        sweeps += used;
        match verdict {
            Feasibility::Feasible(p) => {
                certificate = certify(g, mid, &p, mid + step)?;
                hi = mid + step;
                warm = p;
            }
            Feasibility::Infeasible => lo = mid,
            Feasibility::Undecided => {
                // The boundary is within reach of neither test: probe on
                // both sides, a quarter of the precision away.
                let (above, used_a) = feasibility(g, mid + opts.precision / 4.0, opts, Some(&warm));
                sweeps += used_a;
                let (below, used_b) = feasibility(g, mid - opts.precision / 4.0, opts, Some(&warm));
                sweeps += used_b;
                let mut moved = false;
                if let Feasibility::Feasible(p) = above {
                    let k = mid + opts.precision / 4.0;
                    certificate = certify(g, k, &p, k + step)?;
                    hi = hi.min(k + step);
                    warm = p;
                    moved = true;
                }
                if let Feasibility::Infeasible = below {
                    lo = lo.max(mid - opts.precision / 4.0);
                    moved = true;
                }
                if !moved {
                    return Err(Error::NonConvergence { iterations });
                }
            }
        }
    }
    Ok(OracleResult {
        lo,
        hi,
        iterations,
        converged: true,
        certificate: (hi, certificate),
        sweeps,
    })
}

fn edge_value(kappa: f64) -> f64 {
    -1.0 / (kappa - 1.0)
}

/// Shrinks an almost-PSD affine iterate at `kappa` toward the identity so
/// that its edge value becomes `-1/(target-1)`, then checks `P ⪰ 0`
/// directly.
fn certify(g: &RegularGraph, kappa: f64, p: &DMatrix<f64>, target: f64) -> Result<DMatrix<f64>> {
    let shrink = 1.0 - edge_value(target) / edge_value(kappa);
    let n = g.n();
    let mut cert = p * (1.0 - shrink) + DMatrix::identity(n, n) * shrink;
    project_affine(g, &mut cert, edge_value(target));
    let check = is_psd(&cert, 0.0)?;
    if !check.psd {
        return Err(Error::VerificationFailed(format!(
            "oracle certificate at kappa = {target} has lambda_min = {:e}",
            check.lambda_min
        )));
    }
    Ok(cert)
}

/// Sets the diagonal to 1 and every edge entry to `x`; other entries are
/// free and left as they are.
fn project_affine(g: &RegularGraph, p: &mut DMatrix<f64>, x: f64) {
    for i in 0..g.n() {
        p[(i, i)] = 1.0;
        for &j in g.neighbors(i) {
            p[(i, j)] = x;
        }
    }
}

/// Projection onto the PSD cone.
fn project_psd(m: &DMatrix<f64>) -> DMatrix<f64> {
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let clipped = eig.eigenvalues.map(|v| v.max(0.0));
    let q = &eig.eigenvectors;
    q * DMatrix::from_diagonal(&clipped) * q.transpose()
}

/// Dykstra's alternating projections between the affine set at `kappa` and
/// the PSD cone.
pub fn feasibility(
    g: &RegularGraph,
    kappa: f64,
    opts: &OracleOptions,
    warm: Option<&DMatrix<f64>>,
) -> (Feasibility, usize) {
    let n = g.n();
    let x = edge_value(kappa);
    let mut iterate = match warm {
        Some(p) => p.clone(),
        None => DMatrix::identity(n, n),
    };
    let mut correction = DMatrix::<f64>::zeros(n, n);
    let mut history: Vec<f64> = Vec::new();

    for sweep in 1..=opts.max_sweeps {
        let mut affine = iterate.clone();
        project_affine(g, &mut affine, x);
        let shifted = &affine + &correction;
        let psd = project_psd(&shifted);
        correction = shifted - &psd;
        let residual = (&affine - &psd).norm();
        iterate = psd;

        // The affine iterate is the candidate; it can only be PSD once it
        // is close to the cone.
        if residual < opts.feasibility_tol || sweep % CHECK_EVERY == 0 {
            if let Ok(check) = is_psd(&affine, opts.feasibility_tol) {
                if check.psd {
                    return (Feasibility::Feasible(affine), sweep);
                }
            }
        }

        if sweep % opts.stall_window == 0 {
            history.push(residual);
            if stalled(&history, opts.stall_floor) {
                return (Feasibility::Infeasible, sweep);
            }
        }
    }
    (Feasibility::Undecided, opts.max_sweeps)
}

/// Aitken extrapolation over the last three window samples: a residual
/// converging geometrically to a limit above `floor` means the two sets do
/// not meet.
fn stalled(history: &[f64], floor: f64) -> bool {
    let [.., r0, r1, r2] = history else {
        return false;
    };
    let (d0, d1) = (r0 - r1, r1 - r2);
    if *r2 <= floor {
        return false;
    }
    if d1 <= 0.0 {
        return true;
    }
    if d0 <= 0.0 {
        return false;
    }
    let ratio = d1 / d0;
    if ratio >= 1.0 {
        return false;
    }
    let limit = r2 - d1 * ratio / (1.0 - ratio);
    limit > floor
}
