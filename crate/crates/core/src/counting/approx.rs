//! Approximate counting of independent sets by telescoping over edges.
//!
//! With `H_j` the first `j` edges in input order,
//! `|Ω(H)| = 2^n ∏_j |Ω(H_j)| / |Ω(H_{j-1})|`, and each ratio is the chance
//! that a uniform independent set of `H_{j-1}` does not fill edge `j`. Each
//! ratio is estimated from `N` Glauber samples spaced by the analytic mixing
//! bound at accuracy `ε / 8L`. `N = ⌈16L / (ε² (2^m - 1))⌉` keeps the
//! relative variance of the product near `ε²/16`; the median of
//! `K = 2⌈1.5 ln(1/δ)⌉ + 1` such products gives the confidence.

use num_traits::Signed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::CountingError;
use crate::analysis::{f_threshold, indset_mixing_bound};
use crate::instances::{from_monotone_cnf, Hypergraph, MonotoneCnf, OccupancyState};
use crate::rational::int;
use crate::rng::RandomSource;

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct ApproxCountResult {
    pub estimate: f64,
    pub epsilon: f64,
    pub delta: f64,
    /// Ratio estimates of the median group, one per edge; their product
    /// times `2^n` is `estimate`.
    pub levels: Vec<f64>,
    /// Product estimate of every group.
    pub group_estimates: Vec<f64>,
    pub samples_per_level: u64,
    pub steps_per_sample: u64,
    pub total_samples: u64,
}

/// Glauber dynamics on independent sets, in place, with per-edge occupancy
/// counts so each move costs `O(deg)`.
pub struct FastIndsetSampler {
    incident: Vec<Vec<u32>>,
    sizes: Vec<u32>,
    filled: Vec<u32>,
    occupied: Vec<bool>,
}

impl FastIndsetSampler {
    pub fn new(h: &Hypergraph) -> Self {
        let n = h.vertex_count();
        Self {
            incident: (0..n).map(|v| h.incident(v).iter().map(|&e| e as u32).collect()).collect(),
            sizes: h.edges().iter().map(|e| e.len() as u32).collect(),
            filled: vec![0; h.edge_count()],
            occupied: vec![false; n],
        }
    }

    pub fn state(&self) -> OccupancyState {
        OccupancyState::from_indicator(self.occupied.clone())
    }

    pub fn contains(&self, v: usize) -> bool {
        self.occupied[v]
    }

    pub fn step(&mut self, rng: &mut ChaCha8Rng) {
        let v = rng.gen_range(0..self.occupied.len());
        let insert = rng.gen_bool(0.5);
        let inc = &self.incident[v];
        if !insert {
            if self.occupied[v] {
                self.occupied[v] = false;
                inc.iter().for_each(|&e| self.filled[e as usize] -= 1);
            }
        } else if !self.occupied[v] && inc.iter().all(|&e| self.filled[e as usize] + 1 < self.sizes[e as usize]) {
            self.occupied[v] = true;
            inc.iter().for_each(|&e| self.filled[e as usize] += 1);
        }
    }

    pub fn run(&mut self, steps: u64, rng: &mut ChaCha8Rng) {
        for _ in 0..steps {
            self.step(rng);
        }
    }
}

fn group_count(delta: f64) -> usize {
    2 * (1.5 * (1.0 / delta).ln()).ceil().max(0.0) as usize + 1
}

/// Estimates the number of independent sets of `h` to within a factor
/// `1 ± ε` with probability at least `1 - δ`.
pub fn approx_count_indsets(
    h: &Hypergraph,
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<ApproxCountResult, CountingError> {
    if !(epsilon > 0.0 && epsilon < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(CountingError::InvalidParameter(format!("need 0 < ε < 1 and 0 < δ < 1 (got {epsilon}, {delta})")));
    }
    let n = h.vertex_count();
    let full = 2f64.powi(n as i32);
    let levels = h.edge_count();
    let Some(m) = h.min_edge_size() else {
        return Ok(ApproxCountResult {
            estimate: full,
            epsilon,
            delta,
            levels: Vec::new(),
            group_estimates: Vec::new(),
            samples_per_level: 0,
            steps_per_sample: 0,
            total_samples: 0,
        });
    };
    let max_degree = h.max_degree();
    if max_degree == 3 && m <= 3 {
        return Err(CountingError::UncertifiedCase { m });
    }
    let f = f_threshold(m)?;
    if f <= int(max_degree as i64) || !f.is_positive() {
        return Err(CountingError::BelowThreshold { m, max_degree, f: crate::format_rational(&f) });
    }
    let eps_level = epsilon / (8.0 * levels as f64);
    let steps_per_sample = indset_mixing_bound(m, max_degree, n, eps_level)?.ceil() as u64;
    let per_level = (16.0 * levels as f64 / (epsilon * epsilon * (2f64.powi(m as i32) - 1.0))).ceil() as u64;
    let groups = group_count(delta);
    let root = RandomSource::new(seed);

    let ratios: Vec<Vec<f64>> = (0..groups as u64)
        .into_par_iter()
        .map(|g| {
            let stream = root.child(g);
            (0..levels)
                .map(|j| {
                    let mut rng = stream.child(j as u64).sequential();
                    let mut s = FastIndsetSampler::new(&h.prefix(j));
                    let edge = h.edge(j);
                    let mut hits = 0u64;
                    for _ in 0..per_level {
                        s.run(steps_per_sample, &mut rng);
                        if !edge.iter().all(|&v| s.contains(v)) {
                            hits += 1;
                        }
                    }
                    hits as f64 / per_level as f64
                })
                .collect()
        })
        .collect();
    let mut estimates: Vec<(f64, usize)> =
        ratios.iter().enumerate().map(|(g, r)| (full * r.iter().product::<f64>(), g)).collect();
    let group_estimates = estimates.iter().map(|e| e.0).collect();
    estimates.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (estimate, median) = estimates[groups / 2];
    Ok(ApproxCountResult {
        estimate,
        epsilon,
        delta,
        levels: ratios[median].clone(),
        group_estimates,
        samples_per_level: per_level,
        steps_per_sample,
        total_samples: per_level * levels as u64 * groups as u64,
    })
}

/// Checks that clause size `m` and occurrence bound `Δ` satisfy
/// `m ≥ Δ + 2`, or `Δ = 3`.
pub fn sat_condition(m: usize, max_degree: usize) -> Result<(), CountingError> {
    if m >= max_degree + 2 || max_degree == 3 {
        Ok(())
    } else {
        Err(CountingError::SatCondition { m, max_degree })
    }
}

/// Approximate number of satisfying assignments of a monotone CNF, through
/// the independent sets of its clause hypergraph.
pub fn approx_count_sat(
    f: &MonotoneCnf,
    epsilon: f64,
    delta: f64,
    seed: u64,
) -> Result<ApproxCountResult, CountingError> {
    let h = from_monotone_cnf(f)?;
    if let Some(m) = h.min_edge_size() {
        sat_condition(m, h.max_degree())?;
    }
    approx_count_indsets(&h, epsilon, delta, seed)
}
