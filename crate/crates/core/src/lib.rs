//! Certified bounds on the Lovász theta function of the complement of a
//! regular graph.
//!
//! The lower bound comes from the spectral witness `D = (I + A/|λ_min|)/n`.
//! The upper bound comes from a feasible solution built out of
//! non-backtracking walk matrices, weighted by the optimal nonnegative
//! polynomial for the graph's girth. Both sides are checked by independent
//! verifiers before they are reported.

// `!(x > 0.0)` style checks are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod certificates;
pub mod cli;
pub mod error;
pub mod graph;
pub mod ortho_poly;
pub mod sdp_oracle;
pub mod spectral;
pub mod thresholds;

pub use error::{Error, Result};
