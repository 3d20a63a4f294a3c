//! Couplings, metrics, drift oracles and stopping-time experiments.

mod drift;
mod metric;
mod step;
mod stopping;

pub use drift::{
    exact_onestep_drift_indset, exact_onestep_drift_tricol, mc_drift_multicolour, tricol_profile_bound, DriftReport,
    ExactDrift,
};
pub use metric::{
    bipartite_adjacent_terms, bipartite_metric, bipartite_metric_exact, bipartite_path_metric, edge_profile,
    indset_adjacent, indset_metric, indset_path_metric, tricol_adjacent, tricol_classify, tricol_metric,
    tricol_path_metric, EdgeProfile, MAX_PATH_STATES,
};
pub use step::{
    coupled_choice, coupled_indset_step, coupled_multicolour_general, coupled_multicolour_step, coupled_scan_step,
    coupled_tricol_step,
};
pub use stopping::{
    coalescence_time, estimate_alpha_p, replay_contraction_check, stopping_time_run, tail_bound_check,
    CoalescenceStats, CoupledSystem, IndsetSystem, MulticolourSystem, PairStopping, ReplayReport, ScanSystem,
    StopMetric, StopOutcome, StoppingStats, TailPoint, TailReport, TricolSystem,
};

use thiserror::Error;

use crate::analysis::AnalysisError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CouplingError {
    #[error("states differ at {0} vertices; an adjacent pair is required")]
    NotAdjacent(usize),
    #[error("states are identical")]
    Identical,
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("no valid canonical path between the colourings")]
    PathStuck,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("search discovered more than {0} states")]
    TooManyStates(usize),
    #[error("every run was censored")]
    AllCensored,
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
}

/// Two states differing at exactly the change vertex `w`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdjacentPair<S> {
    pub x: S,
    pub y: S,
    pub w: usize,
}

impl AdjacentPair<crate::instances::OccupancyState> {
    /// `(σ, σ ∪ {w})`.
    pub fn insertion(sigma: crate::instances::OccupancyState, w: usize) -> Self {
        let mut y = sigma.clone();
        y.set(w, true);
        Self { x: sigma, y, w }
    }
}

impl AdjacentPair<crate::instances::ColouringState> {
    pub fn recolouring(x: crate::instances::ColouringState, w: usize, colour: u32) -> Self {
        let mut y = x.clone();
        y.set(w, colour);
        Self { x, y, w }
    }
}

/// The single vertex where two equal-length sequences differ.
pub(crate) fn change_vertex<T: PartialEq>(a: &[T], b: &[T]) -> Result<usize, CouplingError> {
    let diff: Vec<usize> = (0..a.len()).filter(|&i| a[i] != b[i]).collect();
    match diff.len() {
        0 => Err(CouplingError::Identical),
        1 => Ok(diff[0]),
        k => Err(CouplingError::NotAdjacent(k)),
    }
}
