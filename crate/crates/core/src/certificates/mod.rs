//! Upper and lower certificates for `ϑ(Ḡ)` on regular graphs.
//!
//! * [`build_primal_certificate`]: a feasible `P = Σ a_t A⁽ᵗ⁾` built from
//!   non-backtracking walk matrices and the optimal nonnegative polynomial
//!   for the graph's girth, proving `ϑ(Ḡ) <= κ`.
//! * [`build_dual_witness`]: the spectral witness `D = (I + A/|λ_min|)/n`,
//!   proving `ϑ(Ḡ) >= 1 + d/|λ_min|`.
//! * [`lift_pseudoexpectation`]: turns a unit-diagonal `P` into a degree-two
//!   pseudoexpectation for `k`-coloring, PSD exactly when `P - J/k ⪰ 0`.
//!   A primal certificate is first mapped to zero-on-edges form by
//!   [`coloring_matrix`].
//!
//! Verifiers recompute everything they check from the graph.

mod bounds;
mod dual;
mod json;
mod nb_powers;
mod primal;
mod pseudo;

pub use bounds::{theta_bounds, ThetaBounds, SANDWICH_SLACK};
pub use dual::{build_dual_witness, verify_dual, DualReport, DualWitness, TRACE_TOL};
pub use json::{CertificateDocument, EMBED_P_LIMIT};
pub use nb_powers::{nonbacktracking_powers, NbPowerIter, NonBacktrackingPowers};
pub use primal::{
    build_primal_certificate, effective_gamma, kappa_from_epsilon, optimal_polynomial,
    verify_primal, OptimalPolynomial, PrimalCertificate, PrimalReport, EDGE_TOL,
};
pub use pseudo::{coloring_matrix, lift_pseudoexpectation, reduced_lift_criterion, Pseudoexpectation, DIAGONAL_TOL};
