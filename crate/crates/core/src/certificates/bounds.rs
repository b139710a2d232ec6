use super::dual::{build_dual_witness, verify_dual, DualReport, DualWitness};
use super::primal::{build_primal_certificate, verify_primal, PrimalCertificate, PrimalReport};
use crate::error::{Error, Result};
use crate::graph::RegularGraph;

/// Slack allowed between the verified lower and upper bounds.
pub const SANDWICH_SLACK: f64 = 1e-8;

/// Verified interval `[lower, upper]` around `ϑ(Ḡ)`.
#[derive(Debug, Clone)]
pub struct ThetaBounds {
    pub lower: f64,
    /// `None` when the girth is below 4 and no primal certificate exists.
    pub upper: Option<f64>,
    pub dual: DualWitness,
    pub dual_report: DualReport,
    pub primal: Option<(PrimalCertificate, PrimalReport)>,
    /// Why the upper bound is missing, if it is.
    pub upper_unavailable: Option<String>,
}

/// Builds and verifies both certificates. A girth below 4 leaves only the
/// lower bound; any failed verification is an error.
pub fn theta_bounds(g: &RegularGraph, gamma_override: Option<usize>, tol: f64) -> Result<ThetaBounds> {
    let dual = build_dual_witness(g)?;
    let dual_report = verify_dual(g, &dual, tol)?;
    if !dual_report.pass {
        return Err(Error::VerificationFailed(format!("dual witness: {dual_report:?}")));
    }
    let (primal, upper_unavailable) = match build_primal_certificate(g, gamma_override) {
        Ok(cert) => {
            let report = verify_primal(g, &cert, tol)?;
            if !report.pass {
                return Err(Error::VerificationFailed(format!("primal certificate: {report:?}")));
            }
            (Some((cert, report)), None)
        }
        Err(e @ Error::GirthTooSmall { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    let lower = dual_report.objective;
    let upper = primal.as_ref().map(|(c, _)| c.kappa);
    if let Some(up) = upper {
        if lower > up + SANDWICH_SLACK {
            return Err(Error::InvariantViolation(format!(
                "lower bound {lower} exceeds upper bound {up}"
            )));
        }
    }
    Ok(ThetaBounds {
        lower,
        upper,
        dual,
        dual_report,
        primal,
        upper_unavailable,
    })
}
