use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::RegularGraph;
use crate::spectral::{is_psd, symmetric_eigenvalues};

/// Absolute tolerance on `tr D = 1` and on the claimed objective.
pub const TRACE_TOL: f64 = 1e-12;

/// Feasible point `D = ηA + diag(b)` of the relaxed dual program. A verified
/// witness proves `ϑ(Ḡ) >= ϑ̂(Ḡ) >= ⟨D, J⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualWitness {
    pub eta: f64,
    pub b: Vec<f64>,
    /// Claimed `⟨D, J⟩`.
    pub objective: f64,
    /// Smallest adjacency eigenvalue the witness was built from.
    pub lambda_min_a: f64,
}

impl DualWitness {
    pub fn matrix(&self, g: &RegularGraph) -> DMatrix<f64> {
        let mut d = g.adjacency_matrix() * self.eta;
        for (i, &bi) in self.b.iter().enumerate() {
            d[(i, i)] += bi;
        }
        d
    }
}

/// `D = (I + A/|λ_min|)/n`, objective `1 + d/|λ_min|` (using `⟨A, J⟩ = dn`).
pub fn build_dual_witness(g: &RegularGraph) -> Result<DualWitness> {
    if g.edge_count() == 0 {
        return Err(Error::EdgelessGraph);
    }
    let lambda_min = symmetric_eigenvalues(g.adjacency_matrix())?.lambda_min;
    let n = g.n() as f64;
    let magnitude = lambda_min.abs();
    Ok(DualWitness {
        eta: 1.0 / (n * magnitude),
        b: vec![1.0 / n; g.n()],
        objective: 1.0 + g.d() as f64 / magnitude,
        lambda_min_a: lambda_min,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualReport {
    pub trace_ok: bool,
    pub nonnegative_ok: bool,
    pub psd_ok: bool,
    pub objective_ok: bool,
    pub lambda_min: f64,
    /// `⟨D, J⟩` recomputed from `η`, `b` and the graph.
    pub objective: f64,
    pub pass: bool,
}

/// Rebuilds `D` from the graph and checks `tr D = 1`, `b >= 0`,
/// `λ_min(D) >= -tol` and the claimed objective. `D` is supported on the
/// diagonal and the edges by construction, so it is also feasible for the
/// unrelaxed dual.
pub fn verify_dual(g: &RegularGraph, w: &DualWitness, tol: f64) -> Result<DualReport> {
    if w.b.len() != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            found: w.b.len(),
        });
    }
    let trace: f64 = w.b.iter().sum();
    let trace_ok = (trace - 1.0).abs() <= TRACE_TOL;
    let nonnegative_ok = w.b.iter().all(|&b| b >= 0.0);
    let psd = is_psd(&w.matrix(g), tol)?;
    let objective = w.eta * (2 * g.edge_count()) as f64 + trace;
    let objective_ok = (objective - w.objective).abs() <= 1e-9 * objective.abs().max(1.0);
    Ok(DualReport {
        trace_ok,
        nonnegative_ok,
        psd_ok: psd.psd,
        objective_ok,
        lambda_min: psd.lambda_min,
        objective,
        pass: trace_ok && nonnegative_ok && psd.psd && objective_ok,
    })
}
