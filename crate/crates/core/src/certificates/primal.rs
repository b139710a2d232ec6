use nalgebra::DMatrix;

use super::nb_powers::NbPowerIter;
use crate::error::{Error, Result};
use crate::graph::RegularGraph;
use crate::ortho_poly::{q_values, quadrature_rule};
use crate::spectral::is_psd;

/// Edge entries must match `-1/(κ-1)` to this absolute tolerance.
pub const EDGE_TOL: f64 = 1e-12;

/// Feasible point of the shifted theta program: `P ⪰ 0`, `P_ii = 1`,
/// `P_ij = -1/(κ-1)` on edges. A verified certificate proves `ϑ(Ḡ) <= κ`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimalCertificate {
    pub n: usize,
    pub d: usize,
    pub kappa: f64,
    /// Even girth budget `γ`; the polynomial has degree `γ - 2`.
    pub gamma_used: usize,
    /// `q`-basis coefficients `c_0 … c_{γ-2}` of `f`, with `c_0 = 1`.
    pub c: Vec<f64>,
    /// Walk-matrix coefficients `a_0 … a_{γ-2}` with `P = Σ a_t A⁽ᵗ⁾`;
    /// `a_0 = 1` and `a_1 = -1/(κ-1)`.
    pub a: Vec<f64>,
    pub p: DMatrix<f64>,
    /// Left-most root of `q_m`, `m = γ/2`.
    pub r_m: f64,
    /// `r_m + 1`.
    pub epsilon_gamma: f64,
}

impl PrimalCertificate {
    /// `a_t / [t (2(1-κ))^{-t}]` for `t = 1 … γ-2`, comparing the coefficients
    /// with the large-degree, large-girth decay profile. Diagnostic only.
    pub fn decay_ratios(&self) -> Vec<(usize, f64)> {
        (1..self.a.len())
            .map(|t| {
                let profile = t as f64 * (2.0 * (1.0 - self.kappa)).powi(-(t as i32));
                (t, self.a[t] / profile)
            })
            .collect()
    }

    /// `1 + d / (2(1-ε_γ)√(d-1))`.
    pub fn kappa_formula(&self) -> f64 {
        kappa_from_epsilon(self.d, self.epsilon_gamma)
    }
}

pub fn kappa_from_epsilon(d: usize, epsilon_gamma: f64) -> f64 {
    let d = d as f64;
    1.0 + d / (2.0 * (1.0 - epsilon_gamma) * (d - 1.0).sqrt())
}

/// Largest even budget `γ <= min(girth, override)`; at least 4.
pub fn effective_gamma(girth: Option<usize>, gamma_override: Option<usize>) -> Result<usize> {
    let bound = match (girth, gamma_override) {
        (Some(g), Some(o)) => g.min(o),
        (Some(g), None) => g,
        (None, Some(o)) => o,
        (None, None) => {
            return Err(Error::InvalidParameter(
                "acyclic graph: supply an explicit girth budget".into(),
            ))
        }
    };
    let even = bound - bound % 2;
    if even < 4 {
        return Err(Error::GirthTooSmall { girth: bound });
    }
    Ok(even)
}

/// The optimal polynomial for budget `γ` and degree `d`, independent of any
/// particular graph.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalPolynomial {
    pub d: usize,
    pub gamma: usize,
    /// Roots `r_1 > … > r_m` of `q_m`.
    pub roots: Vec<f64>,
    pub kappa: f64,
    /// `q`-basis coefficients `c_0 … c_{γ-2}`.
    pub c: Vec<f64>,
    /// Normalizer `ζ = ⟨q_0, Π_{j<m} (z - r_j)²⟩`.
    pub zeta: f64,
}

impl OptimalPolynomial {
    pub fn r_m(&self) -> f64 {
        *self.roots.last().unwrap()
    }

    /// `s(z) = Π_{j<m} (z - r_j)² / ζ`, nonnegative on all of ℝ.
    pub fn s(&self, z: f64) -> f64 {
        let m = self.roots.len();
        self.roots[..m - 1].iter().map(|r| (z - r).powi(2)).product::<f64>() / self.zeta
    }

    /// `a_t = c_t / √(d(d-1)^{t-1})` for `t >= 1`, `a_0 = c_0`.
    pub fn walk_coefficients(&self) -> Vec<f64> {
        let d = self.d as f64;
        self.c
            .iter()
            .enumerate()
            .map(|(t, &c)| {
                if t == 0 {
                    c
                } else {
                    c / (d * (d - 1.0).powi(t as i32 - 1)).sqrt()
                }
            })
            .collect()
    }
}

/// Minimizes `⟨q_1, f⟩` subject to `⟨q_0, f⟩ = 1` and `f >= 0` on `[-1, 1]`
/// over polynomials of degree `γ - 2`. The optimum squares out every root of
/// `q_m` except the left-most one, giving `κ = 1 + d / (2(-r_m)√(d-1))`.
pub fn optimal_polynomial(gamma: usize, d: usize) -> Result<OptimalPolynomial> {
    if gamma < 4 || !gamma.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "budget must be even and >= 4, got {gamma}"
        )));
    }
    let m = gamma / 2;
    let roots = quadrature_rule(m, d)?.nodes;
    let r_m = roots[m - 1];
    let df = d as f64;
    let kappa = 1.0 + df / (2.0 * (-r_m) * (df - 1.0).sqrt());

    // Degree of q_t · s is at most 2γ - 4, so γ - 1 nodes integrate it exactly.
    let rule = quadrature_rule(gamma - 1, d)?;
    let square = |z: f64| roots[..m - 1].iter().map(|r| (z - r).powi(2)).product::<f64>();
    let zeta = rule.integrate(square);
    let max_t = gamma - 2;
    let mut c = vec![0.0; max_t + 1];
    for (&z, &w) in rule.nodes.iter().zip(&rule.weights) {
        let s = square(z) / zeta;
        for (ct, qt) in c.iter_mut().zip(q_values(max_t, z, d)) {
            *ct += w * qt * s;
        }
    }
    // The two constrained coefficients are pinned to their exact values.
    c[0] = 1.0;
    c[1] = -df.sqrt() / (kappa - 1.0);
    Ok(OptimalPolynomial {
        d,
        gamma,
        roots,
        kappa,
        c,
        zeta,
    })
}

/// Builds `P = Σ_{t <= γ-2} a_t A⁽ᵗ⁾` from the optimal polynomial for the
/// graph's even girth budget (optionally capped by `gamma_override`).
pub fn build_primal_certificate(
    g: &RegularGraph,
    gamma_override: Option<usize>,
) -> Result<PrimalCertificate> {
    if g.d() < 2 {
        return Err(Error::InvalidParameter(format!(
            "primal certificate needs degree >= 2, got {}",
            g.d()
        )));
    }
    let gamma = effective_gamma(g.girth().girth, gamma_override)?;
    let poly = optimal_polynomial(gamma, g.d())?;
    let a = poly.walk_coefficients();
    let n = g.n();
    let mut p = DMatrix::<f64>::zeros(n, n);
    for (coeff, walks) in a.iter().zip(NbPowerIter::new(g)) {
        p.zip_apply(&walks, |x, w| *x += coeff * w as f64);
    }
    let r_m = poly.r_m();
    Ok(PrimalCertificate {
        n,
        d: g.d(),
        kappa: poly.kappa,
        gamma_used: gamma,
        c: poly.c,
        a,
        p,
        r_m,
        epsilon_gamma: r_m + 1.0,
    })
}

/// Result of re-checking a primal certificate against the graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrimalReport {
    pub diagonal_ok: bool,
    pub edges_ok: bool,
    pub psd_ok: bool,
    pub lambda_min: f64,
    pub pass: bool,
}

/// Checks `P_ii = 1` exactly, `P_ij = -1/(κ-1)` on every edge (within
/// [`EDGE_TOL`]), and `λ_min(P) >= -tol`. Nothing from the builder is
/// trusted beyond `κ` and `P`.
pub fn verify_primal(g: &RegularGraph, cert: &PrimalCertificate, tol: f64) -> Result<PrimalReport> {
    let n = g.n();
    if cert.p.nrows() != n || cert.p.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: cert.p.nrows(),
        });
    }
    let p = &cert.p;
    let diagonal_ok = (0..n).all(|i| p[(i, i)] == 1.0);
    let target = -1.0 / (cert.kappa - 1.0);
    let edges_ok = g
        .edges()
        .all(|(u, v)| (p[(u, v)] - target).abs() <= EDGE_TOL && (p[(v, u)] - target).abs() <= EDGE_TOL);
    let psd = is_psd(p, tol)?;
    Ok(PrimalReport {
        diagonal_ok,
        edges_ok,
        psd_ok: psd.psd,
        lambda_min: psd.lambda_min,
        pass: diagonal_ok && edges_ok && psd.psd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{named_graph, NamedGraph};

    #[test]
    fn effective_gamma_rounds_down_to_even() {
        assert_eq!(effective_gamma(Some(5), None).unwrap(), 4);
        assert_eq!(effective_gamma(Some(8), None).unwrap(), 8);
        assert_eq!(effective_gamma(Some(8), Some(7)).unwrap(), 6);
        assert_eq!(effective_gamma(Some(4), Some(100)).unwrap(), 4);
        assert!(matches!(
            effective_gamma(Some(3), None),
            Err(Error::GirthTooSmall { girth: 3 })
        ));
        assert!(matches!(
            effective_gamma(Some(10), Some(2)),
            Err(Error::GirthTooSmall { .. })
        ));
    }

    #[test]
    fn petersen_certificate() {
        let g = named_graph(NamedGraph::Petersen).unwrap();
        let cert = build_primal_certificate(&g, None).unwrap();
        assert_eq!(cert.gamma_used, 4);
        assert!((cert.kappa - (1.0 + 3f64.sqrt())).abs() < 1e-12);
        assert!((cert.a[1] + 1.0 / 3f64.sqrt()).abs() < 1e-12);
        let report = verify_primal(&g, &cert, 1e-8).unwrap();
        assert!(report.pass, "{report:?}");
        assert!(report.lambda_min >= -1e-9);
    }

    #[test]
    fn complete_graph_has_no_certificate() {
        let g = named_graph(NamedGraph::Complete(4)).unwrap();
        assert!(matches!(
            build_primal_certificate(&g, None),
            Err(Error::GirthTooSmall { girth: 3 })
        ));
    }

    #[test]
    fn perturbed_kappa_fails_edge_check() {
        let g = named_graph(NamedGraph::Petersen).unwrap();
        let mut cert = build_primal_certificate(&g, None).unwrap();
        cert.kappa -= 0.2;
        let report = verify_primal(&g, &cert, 1e-8).unwrap();
        assert!(!report.edges_ok);
        assert!(report.diagonal_ok && report.psd_ok);
        assert!(!report.pass);
    }

    #[test]
    fn identity_passes_on_edgeless_graph() {
        let g = RegularGraph::empty(6).unwrap();
        let cert = PrimalCertificate {
            n: 6,
            d: 0,
            kappa: f64::INFINITY,
            gamma_used: 0,
            c: vec![1.0],
            a: vec![1.0],
            p: DMatrix::identity(6, 6),
            r_m: -1.0,
            epsilon_gamma: 0.0,
        };
        assert!(verify_primal(&g, &cert, 0.0).unwrap().pass);
    }

    #[test]
    fn dimension_mismatch() {
        let g = named_graph(NamedGraph::Petersen).unwrap();
        let mut cert = build_primal_certificate(&g, None).unwrap();
        cert.p = DMatrix::identity(9, 9);
        assert!(matches!(
            verify_primal(&g, &cert, 1e-8),
            Err(Error::DimensionMismatch { expected: 10, found: 9 })
        ));
    }

    #[test]
    fn c1_matches_leftmost_root() {
        for d in [3usize, 4, 7] {
            for gamma in [4, 6, 8, 10, 12] {
                let poly = optimal_polynomial(gamma, d).unwrap();
                let df = d as f64;
                let c1 = 2.0 * ((df - 1.0) / df).sqrt() * poly.r_m();
                assert!((poly.c[1] - c1).abs() < 1e-10);
                // Recompute <q_0, s> and <q_1, s> on a different exact rule.
                let rule = quadrature_rule(gamma, d).unwrap();
                let c0_check = rule.integrate(|z| poly.s(z));
                let c1_check = rule.integrate(|z| q_values(1, z, d)[1] * poly.s(z));
                assert!((c0_check - 1.0).abs() < 1e-10);
                assert!((c1_check - c1).abs() < 1e-10, "d={d} gamma={gamma}");
            }
        }
    }
}
