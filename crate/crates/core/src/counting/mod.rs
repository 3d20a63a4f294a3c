//! Exact enumeration oracles and the sampling-based approximate counter.

mod approx;
mod brute;

pub use approx::{approx_count_indsets, approx_count_sat, sat_condition, ApproxCountResult, FastIndsetSampler};
pub use brute::{
    brute_count_colourings, brute_count_indsets, brute_count_sat, CountResult, MAX_BRUTE_COLOURINGS, MAX_BRUTE_VERTICES,
};

use thiserror::Error;

use crate::analysis::AnalysisError;
use crate::instances::InstanceError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CountingError {
    #[error("instance too large for enumeration: {0}")]
    TooLarge(String),
    #[error("f({m}) = {f} does not exceed Δ = {max_degree}; the sampler is not certified to mix rapidly")]
    BelowThreshold { m: usize, max_degree: usize, f: String },
    #[error("Δ = 3 with edges of size {m} lies outside the certified regime")]
    UncertifiedCase { m: usize },
    #[error("clause size {m} and occurrence bound {max_degree} violate m ≥ Δ + 2 (or Δ = 3)")]
    SatCondition { m: usize, max_degree: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}
