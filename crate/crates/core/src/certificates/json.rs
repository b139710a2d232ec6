use serde::{Deserialize, Serialize};

use super::bounds::ThetaBounds;
use crate::graph::RegularGraph;

/// `P` is embedded row-major only up to this many vertices.
pub const EMBED_P_LIMIT: usize = 64;

/// Machine-readable certificate. Primal fields are `null` when the girth
/// admits no primal certificate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertificateDocument {
    pub n: usize,
    pub d: usize,
    pub girth: Option<usize>,
    pub gamma_used: Option<usize>,
    pub kappa: Option<f64>,
    pub r_m: Option<f64>,
    pub epsilon_gamma: Option<f64>,
    pub c: Option<Vec<f64>>,
    pub a: Option<Vec<f64>>,
    #[serde(rename = "lambda_min_P")]
    pub lambda_min_p: Option<f64>,
    pub primal_verified: Option<bool>,
    #[serde(rename = "P", skip_serializing_if = "Option::is_none", default)]
    pub p: Option<Vec<Vec<f64>>>,
    pub lower_bound: f64,
    pub eta: f64,
    #[serde(rename = "lambda_min_A")]
    pub lambda_min_a: f64,
    #[serde(rename = "lambda_min_D")]
    pub lambda_min_d: f64,
    pub dual_verified: bool,
    /// Every certificate present passed verification.
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub warning: Option<String>,
}

impl CertificateDocument {
    pub fn from_bounds(g: &RegularGraph, bounds: &ThetaBounds) -> Self {
        let primal = bounds.primal.as_ref();
        let embed = g.n() <= EMBED_P_LIMIT;
        let primal_verified = primal.map(|(_, r)| r.pass);
        Self {
            n: g.n(),
            d: g.d(),
            girth: g.girth().girth,
            gamma_used: primal.map(|(c, _)| c.gamma_used),
            kappa: primal.map(|(c, _)| c.kappa),
            r_m: primal.map(|(c, _)| c.r_m),
            epsilon_gamma: primal.map(|(c, _)| c.epsilon_gamma),
            c: primal.map(|(c, _)| c.c.clone()),
            a: primal.map(|(c, _)| c.a.clone()),
            lambda_min_p: primal.map(|(_, r)| r.lambda_min),
            primal_verified,
            p: primal.filter(|_| embed).map(|(c, _)| {
                c.p.row_iter().map(|row| row.iter().copied().collect()).collect()
            }),
            lower_bound: bounds.lower,
            eta: bounds.dual.eta,
            lambda_min_a: bounds.dual.lambda_min_a,
            lambda_min_d: bounds.dual_report.lambda_min,
            dual_verified: bounds.dual_report.pass,
            verified: bounds.dual_report.pass && primal_verified.unwrap_or(true),
            warning: bounds.upper_unavailable.clone(),
        }
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}
