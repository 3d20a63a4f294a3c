//! Metric weights, contraction thresholds and mixing-time bounds.

mod bipartite;
mod bounds;
mod indset;
mod lemma;
mod real;
mod tricol;

pub use bipartite::{
    bip_bounds, min_q_for_contraction, solve_beta, AlphaPrimeV, BipartiteBounds, MinQ, DEFAULT_PRECISION,
};
pub use bounds::{
    indset_mixing_bound, mixing_bound_general, mixing_bound_thm21, mixing_bound_thm22, tricol_mixing_bound,
    tricol_mixing_prefactor, MixingBoundInputs,
};
pub use indset::{f_threshold, indset_weights, verify_indset_recurrence, IndSetWeights};
pub use lemma::{lemma_oracle, LemmaExpectations, LEMMA_TUPLE_LIMIT};
pub use real::Real;
pub use tricol::{tricol_weights, verify_tricol_system, TriColWeights};

use thiserror::Error;

use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnalysisError {
    #[error("edge size m={0} must be at least 2")]
    EdgeSizeTooSmall(usize),
    #[error("f({m}) = {f} < Δ = {max_degree}: no nonnegative γ exists")]
    BelowThreshold { m: usize, max_degree: usize, f: String },
    #[error("need q > Δ + 1, got q={q} Δ={max_degree}")]
    TooFewColours { q: u64, max_degree: u64 },
    #[error("γ = {0} is not positive, no contraction")]
    NoContraction(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("enumeration of {0} tuples exceeds the limit")]
    TooManyTuples(u128),
}

/// Outcome of an exact identity check: one residual per relation, plus any
/// failed side conditions in words.
#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub residuals: Vec<Rational>,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}
