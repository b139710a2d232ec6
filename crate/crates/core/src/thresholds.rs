//! Closed-form thresholds relating `ϑ` bounds to coloring and partition
//! refutation in random regular graphs and the block model.
//!
//! `possible`/`impossible` here mean "with high probability as n → ∞" for
//! random `d`-regular graphs; the functions are plain arithmetic and make no
//! probabilistic claims of their own.

use crate::error::{Error, Result};

/// Group count, in-group affinity and degree of a block model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub k: f64,
    pub tau: f64,
    pub d: f64,
}

impl ModelParams {
    pub fn new(k: f64, tau: f64, d: f64) -> Result<Self> {
        if !(k >= 2.0) {
            return Err(Error::InvalidParameter(format!("need k >= 2, got {k}")));
        }
        Ok(Self { k, tau, d })
    }

    /// Checks `τ < 1` and `d >= 2`, needed by the refutation tests.
    pub fn require_disassortative(&self) -> Result<()> {
        disassortative(self.tau)?;
        check_degree(self.d)
    }

    pub fn effective_k(&self) -> Result<f64> {
        effective_k(self.k, self.tau)
    }
}

fn disassortative(tau: f64) -> Result<()> {
    if !(tau < 1.0) {
        return Err(Error::InvalidParameter(format!("need tau < 1, got {tau}")));
    }
    Ok(())
}

fn check_degree(d: f64) -> Result<()> {
    if !(d >= 2.0) {
        return Err(Error::InvalidParameter(format!("need d >= 2, got {d}")));
    }
    Ok(())
}

fn not_one(tau: f64) -> Result<()> {
    if tau == 1.0 {
        return Err(Error::InvalidParameter("tau = 1 leaves the threshold undefined".into()));
    }
    Ok(())
}

/// Kesten–Stigum threshold of the `d`-regular block model:
/// `((k-1)/(τ-1))² + 1`.
pub fn kesten_stigum_regular(k: f64, tau: f64) -> Result<f64> {
    Ok(kesten_stigum_poisson(k, tau)? + 1.0)
}

/// Kesten–Stigum threshold of the Poisson (Erdős–Rényi) block model:
/// `((k-1)/(τ-1))²`.
pub fn kesten_stigum_poisson(k: f64, tau: f64) -> Result<f64> {
    not_one(tau)?;
    Ok(((k - 1.0) / (tau - 1.0)).powi(2))
}

/// First-moment bound on `k`-colorability: `2k ln k - ln k`.
pub fn first_moment_coloring(k: f64) -> Result<f64> {
    if !(k >= 2.0) {
        return Err(Error::InvalidParameter(format!("need k >= 2, got {k}")));
    }
    Ok(2.0 * k * k.ln() - k.ln())
}

/// Order-of-magnitude information-theoretic threshold `k ln k / (τ-1)²`,
/// with the unknown multiplicative constant set to one. Display only.
pub fn information_threshold_order(k: f64, tau: f64) -> Result<f64> {
    not_one(tau)?;
    Ok(k * k.ln() / (tau - 1.0).powi(2))
}

/// `(k-τ)/(1-τ)`: the color count a partition problem behaves like.
pub fn effective_k(k: f64, tau: f64) -> Result<f64> {
    disassortative(tau)?;
    Ok((k - tau) / (1.0 - tau))
}

/// `1 + d/(2√(d-1))`: where the spectral lower bound on `ϑ` concentrates.
pub fn spectral_lower_threshold(d: f64) -> f64 {
    1.0 + d / (2.0 * (d - 1.0).sqrt())
}

/// `2 + d/(2√(d-1))`: above this effective `k` no refutation exists whp.
pub fn spectral_upper_threshold(d: f64) -> f64 {
    spectral_lower_threshold(d) + 1.0
}

/// Degree-two SOS refutation exists whp: `(k-τ)/(1-τ) < 1 + d/(2√(d-1))`.
pub fn sos2_refutation_possible(d: f64, k: f64, tau: f64) -> Result<bool> {
    check_degree(d)?;
    Ok(effective_k(k, tau)? < spectral_lower_threshold(d))
}

/// No degree-two SOS refutation whp: `(k-τ)/(1-τ) > 2 + d/(2√(d-1))`.
pub fn sos2_refutation_impossible(d: f64, k: f64, tau: f64) -> Result<bool> {
    check_degree(d)?;
    Ok(effective_k(k, tau)? > spectral_upper_threshold(d))
}

/// Largest degree below which no refutation of `k`-colorability exists:
/// `2(k-2)((k-2) + √((k-2)² - 1))`.
pub fn rearranged_nonrefutable_degree(k: f64) -> Result<f64> {
    if !(k >= 3.0) {
        return Err(Error::InvalidParameter(format!("need k >= 3, got {k}")));
    }
    let j = k - 2.0;
    Ok(2.0 * j * (j + (j * j - 1.0).sqrt()))
}

/// `ϑ̂_τ = (1-τ)·ϑ̂ + τ`.
pub fn tau_transform(theta_hat: f64, tau: f64) -> Result<f64> {
    disassortative(tau)?;
    Ok((1.0 - tau) * theta_hat + tau)
}

/// `ϑ̂ = (ϑ̂_τ - τ)/(1-τ)`.
pub fn tau_transform_inverse(theta_hat_tau: f64, tau: f64) -> Result<f64> {
    disassortative(tau)?;
    Ok((theta_hat_tau - tau) / (1.0 - tau))
}
