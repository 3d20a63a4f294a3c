//! The four Markov chains.
//!
//! Every step function is pure: it takes a state, a [`RandomSource`] and a
//! step index and returns the next state together with the randomness it
//! consumed. Draws are addressed as `(step, slot)` so a coupled copy can ask
//! for exactly the same bits.

mod bipartite;
mod exact;
mod glauber;

pub use bipartite::{
    available_colours, multicolour_step, multicolour_update, recolour_side, scan_step, side_for_step, uniform_pick,
    MULTICOLOUR_SIDE_SLOT,
};
pub use exact::{exact_transition_matrix, ExactError, StateSpace, TransitionMatrix};
pub use glauber::{apply_indset, apply_tricol, glauber_indset_step, glauber_tricol_step, indset_draw, tricol_draw};

use crate::instances::Side;
#[cfg(doc)]
use crate::rng::RandomSource;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    Indset,
    Tricol,
    Multicolour,
    Scan,
}

impl ChainKind {
    pub fn name(self) -> &'static str {
        match self {
            ChainKind::Indset => "indset",
            ChainKind::Tricol => "tricol",
            ChainKind::Multicolour => "multicolour",
            ChainKind::Scan => "scan",
        }
    }
}

impl std::str::FromStr for ChainKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "indset" => Ok(Self::Indset),
            "tricol" => Ok(Self::Tricol),
            "multicolour" | "multicolor" => Ok(Self::Multicolour),
            "scan" => Ok(Self::Scan),
            _ => Err(format!("unknown chain `{s}`")),
        }
    }
}

/// Randomness consumed by one step.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Draw {
    /// Glauber on independent sets: a vertex and whether to try inserting it.
    Site { vertex: usize, insert: bool },
    /// Glauber on colourings: a vertex and a proposed colour.
    Recolour { vertex: usize, colour: u32 },
    /// Multicolour or Scan: the side recoloured first and the colour given
    /// to each vertex, in processing order.
    Sweep { first: Side, colours: Vec<(usize, u32)> },
}

/// One step of a recorded trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct StepRecord<S> {
    pub chain: ChainKind,
    pub step: u64,
    pub draw: Draw,
    pub state: S,
}
