//! Path coupling toolkit: Markov chains on hypergraph independent sets and
//! colourings, their couplings and non-Hamming metrics, exact metric-weight
//! solvers, contraction thresholds, mixing-time bounds, and counting.
//!
//! Module map:
//!
//! - [`instances`]: hypergraphs, bipartite graphs, monotone CNF, chain states,
//!   parsers and seeded generators.
//! - [`analysis`]: exact rational weight systems, high-precision bipartite
//!   bounds, threshold searches and mixing-time calculators.
//! - [`chains`]: the four chains and exact transition matrices.
//! - [`coupling`]: metrics, coupled steps, drift oracles and stopping-time
//!   experiments.
//! - [`counting`]: brute-force enumeration and the MCMC approximate counter.

pub mod analysis;
pub mod chains;
pub mod counting;
pub mod coupling;
pub mod instances;
pub mod rng;
pub mod stats;

mod rational;

pub use rational::{format_rational, parse_rational, to_f64 as rational_to_f64, Rational};
pub use rng::RandomSource;
