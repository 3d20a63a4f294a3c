//! One-step drift: exact enumeration for the Glauber chains, Monte Carlo for
//! Multicolour.

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::metric::{bipartite_metric, indset_adjacent, indset_metric, tricol_adjacent, tricol_metric};
use super::step::coupled_multicolour_step;
use super::{change_vertex, CouplingError};
use crate::analysis::{bip_bounds, AlphaPrimeV, IndSetWeights, TriColWeights, DEFAULT_PRECISION};
use crate::chains::apply_indset;
use crate::instances::{BipartiteGraph, ColouringState, Hypergraph, OccupancyState};
use crate::rational::{int, to_f64};
use crate::rng::RandomSource;
use crate::stats::Summary;
use crate::Rational;

/// Exact parts of an enumerated drift.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactDrift {
    pub d0: Rational,
    /// `E[d1]`.
    pub d1: Rational,
    /// Largest `E[d1]` the analytic bound allows.
    pub bound: Rational,
    /// `bound - d1`; nonnegative on a pass.
    pub slack: Rational,
    /// Colouring only: `E[d1]` allowed by the per-class inequality before the
    /// weights are substituted.
    pub profile_bound: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DriftReport {
    pub d0: f64,
    /// Expected (or mean) distance after one coupled step.
    pub d1: f64,
    /// Standard error of `d1`; zero when exact.
    pub uncertainty: f64,
    pub bound: f64,
    pub pass: bool,
    /// The input states were equal.
    pub merged: bool,
    pub samples: u64,
    pub exact: Option<ExactDrift>,
}

impl DriftReport {
    fn from_exact(e: ExactDrift, samples: u64) -> Self {
        let pass = e.slack >= Rational::zero();
        Self {
            d0: to_f64(&e.d0),
            d1: to_f64(&e.d1),
            uncertainty: 0.0,
            bound: to_f64(&e.bound),
            pass,
            merged: e.d0.is_zero(),
            samples,
            exact: Some(e),
        }
    }

    fn merged_exact() -> Self {
        Self::from_exact(
            ExactDrift {
                d0: Rational::zero(),
                d1: Rational::zero(),
                bound: Rational::zero(),
                slack: Rational::zero(),
                profile_bound: None,
            },
            0,
        )
    }
}

/// Exact `E[d1]` for the identity coupling of the independent-set chain,
/// with pass flag `E[d1 - d0] ≤ -γ deg(w) / 2n`.
pub fn exact_onestep_drift_indset(
    h: &Hypergraph,
    x: &OccupancyState,
    y: &OccupancyState,
    weights: &IndSetWeights,
) -> Result<DriftReport, CouplingError> {
    let w = match change_vertex(x.indicator(), y.indicator()) {
        Err(CouplingError::Identical) => return Ok(DriftReport::merged_exact()),
        r => r?,
    };
    let sigma = if x.contains(w) { y } else { x };
    let d0 = indset_adjacent(h, sigma, w, weights)?;
    let n = h.vertex_count();
    let mut total = Rational::zero();
    for v in 0..n {
        for insert in [false, true] {
            let (mut a, mut b) = (x.clone(), y.clone());
            apply_indset(h, &mut a, v, insert);
            apply_indset(h, &mut b, v, insert);
            total += indset_metric(h, &a, &b, weights)?;
        }
    }
    let two_n = int(2 * n as i64);
    let d1 = total / &two_n;
    let bound = &d0 - &weights.gamma * int(h.degree(w) as i64) / two_n;
    let slack = &bound - &d1;
    Ok(DriftReport::from_exact(ExactDrift { d0, d1, bound, slack, profile_bound: None }, 2 * n as u64))
}

/// Right-hand side of the per-class inequality for `nq E[d1 - d0]`, with
/// `counts[k]` edges in class `E_{k+1}`.
pub fn tricol_profile_bound(weights: &TriColWeights, counts: &[usize; 4]) -> Rational {
    let c = &weights.c;
    let q = int(weights.q as i64);
    let dd = int(weights.max_degree as i64);
    let e: Vec<Rational> = counts.iter().map(|&k| int(k as i64)).collect();
    let one = Rational::one();
    let two = int(2);
    let d0: Rational = (0..4).map(|k| &c[k + 1] * &e[k]).sum();
    let mut rhs = -((&q - &e[2]) * d0);
    rhs += &e[0] * (-(&two * (&q - &dd - &one) * (&c[1] - &c[2])) + &two * (&c[0] - &c[1]));
    rhs += &e[1] * (-((&q - &dd - &two) * (&c[2] - &c[4])) - (&c[2] - &c[3]) + (&c[0] - &c[2]) + (&c[1] - &c[2]));
    rhs += &e[2] * (-(&two * (&q - &dd - &two) * (&c[3] - &c[4])) + int(4) * (&c[2] - &c[3]));
    rhs += &e[3] * (&two * (&c[3] - &c[4]) + int(4) * (&c[2] - &c[4]));
    rhs
}

/// Exact `E[d1]` for the identity coupling of the colouring chain, with pass
/// flag `E[d1] ≤ (1 - γ/nq) d0`.
pub fn exact_onestep_drift_tricol(
    h: &Hypergraph,
    x: &ColouringState,
    y: &ColouringState,
    weights: &TriColWeights,
) -> Result<DriftReport, CouplingError> {
    let w = match change_vertex(x.colours(), y.colours()) {
        Err(CouplingError::Identical) => return Ok(DriftReport::merged_exact()),
        r => r?,
    };
    let q = x.palette();
    if u64::from(q) != weights.q {
        return Err(CouplingError::InvalidParameter(format!(
            "palette {q} does not match weights for q = {}",
            weights.q
        )));
    }
    for s in [x, y] {
        if !s.is_proper_hypergraph(h) {
            return Err(CouplingError::InvalidState("colouring is not proper".into()));
        }
    }
    let d0 = tricol_adjacent(h, x, w, y.colour(w), weights)?;
    let n = h.vertex_count();
    let mut total = Rational::zero();
    for v in 0..n {
        for c in 0..q {
            let (mut a, mut b) = (x.clone(), y.clone());
            crate::chains::apply_tricol(h, &mut a, v, c);
            crate::chains::apply_tricol(h, &mut b, v, c);
            total += tricol_metric(h, &a, &b, weights)?;
        }
    }
    let nq = int(n as i64 * i64::from(q));
    let d1 = total / &nq;
    let bound = (Rational::one() - &weights.gamma / &nq) * &d0;
    let slack = &bound - &d1;
    let counts = match super::metric::tricol_classify(h, x, y)? {
        super::EdgeProfile::Tricol(c) => c,
        _ => unreachable!(),
    };
    let profile_bound = Some(&d0 + tricol_profile_bound(weights, &counts) / &nq);
    Ok(DriftReport::from_exact(ExactDrift { d0, d1, bound, slack, profile_bound }, n as u64 * u64::from(q)))
}

/// Monte Carlo mean of `d(X″,Y″)/d(X,Y)` over `reps` independent coupled
/// Multicolour steps; passes when the mean is within three standard errors
/// of `B(B+1)/2`.
pub fn mc_drift_multicolour(
    g: &BipartiteGraph,
    x: &ColouringState,
    y: &ColouringState,
    reps: u64,
    seed: u64,
) -> Result<DriftReport, CouplingError> {
    if reps < 100 {
        return Err(CouplingError::InvalidParameter(format!("reps = {reps}; at least 100 required")));
    }
    let q = x.palette();
    let bounds = bip_bounds(u64::from(q), g.max_degree() as u64, DEFAULT_PRECISION, AlphaPrimeV::Printed)?;
    let factor = bounds.contraction_factor.to_f64();
    if x == y {
        return Ok(DriftReport {
            d0: 0.0,
            d1: 0.0,
            uncertainty: 0.0,
            bound: factor,
            pass: true,
            merged: true,
            samples: 0,
            exact: None,
        });
    }
    coupled_multicolour_step(g, x, y, &RandomSource::new(seed), 0)?;
    let d0 = bipartite_metric(g, x, y);
    let root = RandomSource::new(seed);
    let ratios: Vec<f64> = (0..reps)
        .into_par_iter()
        .map(|i| {
            let r = root.child(i);
            let (a, b) = super::step::coupled_multicolour_general(g, x, y, &r, 0);
            bipartite_metric(g, &a, &b) / d0
        })
        .collect();
    let s = Summary::from_iter(ratios);
    let se = s.std_error();
    Ok(DriftReport {
        d0,
        d1: s.mean * d0,
        uncertainty: se * d0,
        bound: factor * d0,
        pass: s.mean <= factor + 3.0 * se,
        merged: false,
        samples: reps,
        exact: None,
    })
}
