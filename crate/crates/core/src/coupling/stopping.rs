//! Stopping-time experiments: `T` is the first step at which the coupled
//! distance changes, and `d′ = (1 - α) d + E[d(X_T, Y_T)]`.

use std::collections::HashMap;
use std::hash::Hash;

use rayon::prelude::*;

use super::metric::{bipartite_metric, indset_metric};
use super::step::{coupled_indset_step, coupled_multicolour_general, coupled_scan_step, coupled_tricol_step};
use super::CouplingError;
use crate::analysis::{indset_weights, IndSetWeights};
use crate::instances::{BipartiteGraph, ColouringState, Hypergraph, OccupancyState, Side};
use crate::rational::to_f64;
use crate::rng::RandomSource;
use crate::stats::{wilson_lower, Summary};

/// One-sided 99% normal quantile.
const Z99: f64 = 2.326;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StopMetric {
    #[default]
    Hamming,
    Weighted,
}

impl std::str::FromStr for StopMetric {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hamming" => Ok(Self::Hamming),
            "weighted" => Ok(Self::Weighted),
            _ => Err(format!("unknown metric `{s}` (hamming|weighted)")),
        }
    }
}

/// A chain together with its coupling and a distance.
pub trait CoupledSystem: Sync {
    type State: Clone + PartialEq + Eq + Hash + Send + Sync;

    fn vertex_count(&self) -> usize;
    fn step(&self, x: &Self::State, y: &Self::State, r: &RandomSource, t: u64) -> (Self::State, Self::State);
    fn distance(&self, x: &Self::State, y: &Self::State) -> f64;
    /// Adjacent pairs joining `x` to `y`, or `None` when no valid path is
    /// found.
    fn adjacent_path(&self, x: &Self::State, y: &Self::State) -> Option<Vec<(Self::State, Self::State)>>;
    /// Two states as far apart as the system easily allows.
    fn extreme_pair(&self) -> (Self::State, Self::State);
}

pub struct IndsetSystem<'a> {
    pub h: &'a Hypergraph,
    pub metric: StopMetric,
    weights: Option<IndSetWeights>,
}

impl<'a> IndsetSystem<'a> {
    /// The weighted metric uses the weights for the minimum edge size and the
    /// maximum degree of `h`.
    pub fn new(h: &'a Hypergraph, metric: StopMetric) -> Result<Self, CouplingError> {
        let weights = match metric {
            StopMetric::Hamming => None,
            StopMetric::Weighted => {
                let m = h
                    .min_edge_size()
                    .ok_or_else(|| CouplingError::InvalidParameter("hypergraph has no edges".into()))?;
                Some(indset_weights(m, h.max_degree())?)
            }
        };
        Ok(Self { h, metric, weights })
    }
}

impl CoupledSystem for IndsetSystem<'_> {
    type State = OccupancyState;

    fn vertex_count(&self) -> usize {
        self.h.vertex_count()
    }

    fn step(
        &self,
        x: &OccupancyState,
        y: &OccupancyState,
        r: &RandomSource,
        t: u64,
    ) -> (OccupancyState, OccupancyState) {
        coupled_indset_step(self.h, x, y, r, t)
    }

    fn distance(&self, x: &OccupancyState, y: &OccupancyState) -> f64 {
        match &self.weights {
            None => x.hamming(y) as f64,
            Some(w) => to_f64(&indset_metric(self.h, x, y, w).expect("independent states")),
        }
    }

    fn adjacent_path(&self, x: &OccupancyState, y: &OccupancyState) -> Option<Vec<(OccupancyState, OccupancyState)>> {
        let mut path = Vec::new();
        let mut cur = x.clone();
        for v in x.differences(y).filter(|&v| x.contains(v)).collect::<Vec<_>>() {
            let mut next = cur.clone();
            next.set(v, false);
            path.push((cur, next.clone()));
            cur = next;
        }
        for v in x.differences(y).filter(|&v| y.contains(v)).collect::<Vec<_>>() {
            let mut next = cur.clone();
            next.set(v, true);
            path.push((cur, next.clone()));
            cur = next;
        }
        Some(path)
    }

    fn extreme_pair(&self) -> (OccupancyState, OccupancyState) {
        let n = self.h.vertex_count();
        let mut full = OccupancyState::empty(n);
        for v in 0..n {
            if full.can_insert(self.h, v) {
                full.set(v, true);
            }
        }
        (OccupancyState::empty(n), full)
    }
}

pub struct TricolSystem<'a> {
    pub h: &'a Hypergraph,
    pub palette: u32,
    pub metric: StopMetric,
    weights: Option<crate::analysis::TriColWeights>,
}

impl<'a> TricolSystem<'a> {
    pub fn new(h: &'a Hypergraph, palette: u32, metric: StopMetric) -> Result<Self, CouplingError> {
        let weights = match metric {
            StopMetric::Hamming => None,
            StopMetric::Weighted => Some(crate::analysis::tricol_weights(u64::from(palette), h.max_degree() as u64)?),
        };
        Ok(Self { h, palette, metric, weights })
    }
}

impl CoupledSystem for TricolSystem<'_> {
    type State = ColouringState;

    fn vertex_count(&self) -> usize {
        self.h.vertex_count()
    }

    fn step(
        &self,
        x: &ColouringState,
        y: &ColouringState,
        r: &RandomSource,
        t: u64,
    ) -> (ColouringState, ColouringState) {
        coupled_tricol_step(self.h, x, y, r, t)
    }

    fn distance(&self, x: &ColouringState, y: &ColouringState) -> f64 {
        match &self.weights {
            None => x.hamming(y) as f64,
            Some(w) => to_f64(&super::metric::tricol_metric(self.h, x, y, w).expect("canonical path")),
        }
    }

    fn adjacent_path(&self, x: &ColouringState, y: &ColouringState) -> Option<Vec<(ColouringState, ColouringState)>> {
        let mut cur = x.clone();
        let mut diff: Vec<usize> = x.differences(y).collect();
        let mut path = Vec::new();
        while !diff.is_empty() {
            let pos = diff.iter().position(|&v| cur.hypergraph_allows(self.h, v, y.colour(v)))?;
            let v = diff.remove(pos);
            let mut next = cur.clone();
            next.set(v, y.colour(v));
            path.push((cur, next.clone()));
            cur = next;
        }
        Some(path)
    }

    fn extreme_pair(&self) -> (ColouringState, ColouringState) {
        let x = ColouringState::greedy_hypergraph(self.h, self.palette).expect("palette admits a greedy colouring");
        let shifted = x.colours().iter().map(|&c| (c + 1) % self.palette).collect();
        let y = ColouringState::new(shifted, self.palette).expect("valid colours");
        (x, y)
    }
}

fn bipartite_distance(g: &BipartiteGraph, metric: StopMetric, x: &ColouringState, y: &ColouringState) -> f64 {
    match metric {
        StopMetric::Hamming => x.hamming(y) as f64,
        StopMetric::Weighted => bipartite_metric(g, x, y),
    }
}

fn ascending_path(x: &ColouringState, y: &ColouringState) -> Vec<(ColouringState, ColouringState)> {
    let mut cur = x.clone();
    let mut path = Vec::new();
    for v in x.differences(y).collect::<Vec<_>>() {
        let mut next = cur.clone();
        next.set(v, y.colour(v));
        path.push((cur, next.clone()));
        cur = next;
    }
    path
}

fn two_constant(g: &BipartiteGraph, palette: u32) -> (ColouringState, ColouringState) {
    let n = g.vertex_count();
    (
        ColouringState::new(vec![0; n], palette).expect("palette ≥ 2"),
        ColouringState::new(vec![1; n], palette).expect("palette ≥ 2"),
    )
}

pub struct MulticolourSystem<'a> {
    pub g: &'a BipartiteGraph,
    pub palette: u32,
    pub metric: StopMetric,
}

impl CoupledSystem for MulticolourSystem<'_> {
    type State = ColouringState;

    fn vertex_count(&self) -> usize {
        self.g.vertex_count()
    }

    fn step(
        &self,
        x: &ColouringState,
        y: &ColouringState,
        r: &RandomSource,
        t: u64,
    ) -> (ColouringState, ColouringState) {
        coupled_multicolour_general(self.g, x, y, r, t)
    }

    fn distance(&self, x: &ColouringState, y: &ColouringState) -> f64 {
        bipartite_distance(self.g, self.metric, x, y)
    }

    fn adjacent_path(&self, x: &ColouringState, y: &ColouringState) -> Option<Vec<(ColouringState, ColouringState)>> {
        Some(ascending_path(x, y))
    }

    fn extreme_pair(&self) -> (ColouringState, ColouringState) {
        two_constant(self.g, self.palette)
    }
}

/// Scan: every step recolours the first side, then the second.
pub struct ScanSystem<'a> {
    pub g: &'a BipartiteGraph,
    pub palette: u32,
    pub metric: StopMetric,
}

impl CoupledSystem for ScanSystem<'_> {
    type State = ColouringState;

    fn vertex_count(&self) -> usize {
        self.g.vertex_count()
    }

    fn step(
        &self,
        x: &ColouringState,
        y: &ColouringState,
        r: &RandomSource,
        t: u64,
    ) -> (ColouringState, ColouringState) {
        coupled_scan_step(self.g, x, y, r, t, Side::First)
    }

    fn distance(&self, x: &ColouringState, y: &ColouringState) -> f64 {
        bipartite_distance(self.g, self.metric, x, y)
    }

    fn adjacent_path(&self, x: &ColouringState, y: &ColouringState) -> Option<Vec<(ColouringState, ColouringState)>> {
        Some(ascending_path(x, y))
    }

    fn extreme_pair(&self) -> (ColouringState, ColouringState) {
        two_constant(self.g, self.palette)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StopOutcome {
    /// Steps until the distance first changed, or the cap.
    pub t: u64,
    pub d0: f64,
    pub d_t: f64,
    pub censored: bool,
}

fn differs(a: f64, b: f64) -> bool {
    (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0)
}

/// Runs the coupled chain from `(x, y)` until the distance changes or `cap`
/// steps have been made.
pub fn stopping_time_run<C: CoupledSystem>(
    sys: &C,
    x: &C::State,
    y: &C::State,
    cap: u64,
    r: &RandomSource,
) -> Result<StopOutcome, CouplingError> {
    if x == y {
        return Err(CouplingError::Identical);
    }
    if cap == 0 {
        return Err(CouplingError::InvalidParameter("cap must be at least 1".into()));
    }
    let d0 = sys.distance(x, y);
    let (mut a, mut b) = (x.clone(), y.clone());
    for t in 0..cap {
        (a, b) = sys.step(&a, &b, r, t);
        let d = sys.distance(&a, &b);
        if differs(d, d0) {
            return Ok(StopOutcome { t: t + 1, d0, d_t: d, censored: false });
        }
    }
    Ok(StopOutcome { t: cap, d0, d_t: d0, censored: true })
}

fn default_cap(n: usize, k: u64) -> u64 {
    100 * n as u64 * k.max(1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PairStopping {
    pub d0: f64,
    /// Mean of `d_T / d0`.
    pub alpha: f64,
    pub alpha_stderr: f64,
    /// Fraction of runs with `T ≤ k`.
    pub p: f64,
    pub mean_d_t: f64,
    pub d_prime: f64,
    pub censored: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TailPoint {
    pub t: u64,
    /// Fraction of runs with `T > t`.
    pub empirical: f64,
    pub stderr: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StoppingStats {
    pub samples: u64,
    pub k: u64,
    pub cap: u64,
    pub alpha_hat: f64,
    pub alpha_stderr: f64,
    /// One-sided 99% upper confidence bound on α.
    pub alpha_upper: f64,
    /// Largest per-pair 99% upper bound on `E[d_T / d0]`.
    pub alpha_max: f64,
    pub p_hat: f64,
    /// One-sided 99% Wilson lower bound on the pooled `p`.
    pub p_lower: f64,
    /// Smallest per-pair `p`.
    pub p_min: f64,
    pub censored: u64,
    /// Pooled `(1 - α̂) d0 + E[d_T]` averaged over the family.
    pub d_prime: f64,
    pub per_pair: Vec<PairStopping>,
    /// Pooled empirical `Pr[T > jk]` for `j = 0..=10` (bound field unused).
    pub tail: Vec<TailPoint>,
}

fn run_family<C: CoupledSystem>(
    sys: &C,
    pairs: &[(C::State, C::State)],
    cap: u64,
    reps: u64,
    seed: u64,
) -> Result<Vec<Vec<StopOutcome>>, CouplingError> {
    let root = RandomSource::new(seed);
    pairs
        .iter()
        .enumerate()
        .map(|(i, (x, y))| {
            let pr = root.child(i as u64);
            (0..reps).into_par_iter().map(|j| stopping_time_run(sys, x, y, cap, &pr.child(j))).collect()
        })
        .collect()
}

fn tail_points(all: &[&StopOutcome], ts: impl Iterator<Item = u64>, bound: impl Fn(u64) -> f64) -> Vec<TailPoint> {
    let n = all.len() as f64;
    ts.map(|t| {
        let over = all.iter().filter(|o| o.t > t).count() as f64;
        let f = over / n;
        let stderr = (f * (1.0 - f) / n).sqrt();
        let b = bound(t);
        TailPoint { t, empirical: f, stderr, bound: b, pass: f <= b + 3.0 * stderr }
    })
    .collect()
}

/// Estimates `α` and `p = Pr[T ≤ k]` over a family of adjacent pairs,
/// `reps` runs per pair. Censored runs count with `d_T = d0`.
pub fn estimate_alpha_p<C: CoupledSystem>(
    sys: &C,
    pairs: &[(C::State, C::State)],
    k: u64,
    reps: u64,
    seed: u64,
    cap: Option<u64>,
) -> Result<StoppingStats, CouplingError> {
    if reps < 1000 {
        return Err(CouplingError::InvalidParameter(format!("reps = {reps}; at least 1000 required")));
    }
    if pairs.is_empty() || k == 0 {
        return Err(CouplingError::InvalidParameter("need a nonempty pair family and k ≥ 1".into()));
    }
    let cap = cap.unwrap_or_else(|| default_cap(sys.vertex_count(), k));
    let runs = run_family(sys, pairs, cap, reps, seed)?;
    let all: Vec<&StopOutcome> = runs.iter().flatten().collect();
    let censored = all.iter().filter(|o| o.censored).count() as u64;
    if censored == all.len() as u64 {
        return Err(CouplingError::AllCensored);
    }
    let pooled = Summary::from_iter(all.iter().map(|o| o.d_t / o.d0));
    let alpha_hat = pooled.mean;
    let alpha_stderr = pooled.std_error();
    let hits = all.iter().filter(|o| o.t <= k && !o.censored).count() as u64;
    let total = all.len() as u64;
    let per_pair: Vec<PairStopping> = runs
        .iter()
        .map(|rs| {
            let s = Summary::from_iter(rs.iter().map(|o| o.d_t / o.d0));
            let d0 = rs[0].d0;
            let mean_d_t = rs.iter().map(|o| o.d_t).sum::<f64>() / rs.len() as f64;
            PairStopping {
                d0,
                alpha: s.mean,
                alpha_stderr: s.std_error(),
                p: rs.iter().filter(|o| o.t <= k && !o.censored).count() as f64 / rs.len() as f64,
                mean_d_t,
                d_prime: (1.0 - alpha_hat) * d0 + mean_d_t,
                censored: rs.iter().filter(|o| o.censored).count() as u64,
            }
        })
        .collect();
    let p_min = per_pair.iter().map(|p| p.p).fold(1.0, f64::min);
    let alpha_max = per_pair.iter().map(|p| p.alpha + Z99 * p.alpha_stderr).fold(0.0, f64::max);
    let d_prime = per_pair.iter().map(|p| p.d_prime).sum::<f64>() / per_pair.len() as f64;
    Ok(StoppingStats {
        samples: total,
        k,
        cap,
        alpha_hat,
        alpha_stderr,
        alpha_upper: alpha_hat + Z99 * alpha_stderr,
        alpha_max,
        p_hat: hits as f64 / total as f64,
        p_lower: wilson_lower(hits, total, Z99),
        p_min,
        censored,
        d_prime,
        per_pair,
        tail: tail_points(&all, (0..=10).map(|j| j * k), |_| 1.0),
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TailReport {
    pub k: u64,
    pub p: f64,
    pub samples: u64,
    pub points: Vec<TailPoint>,
    pub pass: bool,
}

/// Compares the pooled empirical tail `Pr[T > t]` at `t = k, 2k, …, horizon`
/// with `(1 - p)^⌊t/k⌋`.
pub fn tail_bound_check<C: CoupledSystem>(
    sys: &C,
    pairs: &[(C::State, C::State)],
    k: u64,
    p: f64,
    horizon: u64,
    reps: u64,
    seed: u64,
) -> Result<TailReport, CouplingError> {
    if k == 0 || !(0.0..=1.0).contains(&p) || pairs.is_empty() || reps == 0 {
        return Err(CouplingError::InvalidParameter("need k ≥ 1, p in [0, 1], pairs and reps".into()));
    }
    let runs = run_family(sys, pairs, horizon + 1, reps, seed)?;
    let all: Vec<&StopOutcome> = runs.iter().flatten().collect();
    let ts = (1..=horizon / k).map(|j| j * k);
    let points = tail_points(&all, ts, |t| (1.0 - p).powi((t / k) as i32));
    let pass = points.iter().all(|pt| pt.pass);
    Ok(TailReport { k, p, samples: all.len() as u64, points, pass })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReplayReport {
    pub alpha: f64,
    pub k: u64,
    pub d_prime0: f64,
    pub d_prime0_stderr: f64,
    /// Pr[T_0 ≤ k] from the outer runs.
    pub p_hat: f64,
    /// Mean of `d′(X_k, Y_k)`.
    pub lhs: f64,
    pub lhs_stderr: f64,
    /// `(1 - (1 - α) p̂) d′(X_0, Y_0)`.
    pub rhs: f64,
    pub pass: bool,
}

/// Replays the coupled chain for `k` steps from `(x, y)` and compares the
/// mean of `d′(X_k, Y_k)` with `(1 - (1 - α) Pr[T_0 ≤ k]) d′(X_0, Y_0)`.
///
/// `d′` of an adjacent pair is estimated from `inner` stopping-time runs;
/// other pairs are summed along the system's adjacent path.
#[allow(clippy::too_many_arguments)]
pub fn replay_contraction_check<C: CoupledSystem>(
    sys: &C,
    x: &C::State,
    y: &C::State,
    alpha: f64,
    k: u64,
    outer: u64,
    inner: u64,
    seed: u64,
) -> Result<ReplayReport, CouplingError> {
    if outer < 2 || inner < 2 || k == 0 {
        return Err(CouplingError::InvalidParameter("need outer, inner ≥ 2 and k ≥ 1".into()));
    }
    let root = RandomSource::new(seed);
    let cap = default_cap(sys.vertex_count(), k);
    let d_prime_adjacent = |a: &C::State, b: &C::State, label: u64| -> Result<(f64, f64), CouplingError> {
        let rs = root.child(label);
        let outs: Vec<f64> = (0..inner)
            .into_par_iter()
            .map(|j| stopping_time_run(sys, a, b, cap, &rs.child(j)).map(|o| o.d_t))
            .collect::<Result<_, _>>()?;
        let s = Summary::from_iter(outs);
        Ok(((1.0 - alpha) * sys.distance(a, b) + s.mean, s.std_error()))
    };
    let (d_prime0, d_prime0_stderr) = d_prime_adjacent(x, y, u64::MAX)?;

    let replay = root.child(u64::MAX - 1);
    let ends: Vec<(bool, C::State, C::State)> = (0..outer)
        .into_par_iter()
        .map(|j| {
            let r = replay.child(j);
            let d0 = sys.distance(x, y);
            let (mut a, mut b) = (x.clone(), y.clone());
            let mut stopped = false;
            for t in 0..k {
                (a, b) = sys.step(&a, &b, &r, t);
                stopped |= differs(sys.distance(&a, &b), d0);
            }
            (stopped, a, b)
        })
        .collect();
    let p_hat = ends.iter().filter(|e| e.0).count() as f64 / outer as f64;

    let mut cache: HashMap<(C::State, C::State), f64> = HashMap::new();
    let mut values = Vec::with_capacity(ends.len());
    for (_, a, b) in &ends {
        if a == b {
            values.push(0.0);
            continue;
        }
        let path = sys.adjacent_path(a, b).or_else(|| sys.adjacent_path(b, a)).ok_or(CouplingError::PathStuck)?;
        let mut total = 0.0;
        for pair in path {
            let next_label = cache.len() as u64;
            total += match cache.get(&pair) {
                Some(v) => *v,
                None => {
                    let v = d_prime_adjacent(&pair.0, &pair.1, next_label)?.0;
                    cache.insert(pair, v);
                    v
                }
            };
        }
        values.push(total);
    }
    let s = Summary::from_iter(values);
    let rhs = (1.0 - (1.0 - alpha) * p_hat) * d_prime0;
    let se = (s.std_error().powi(2) + d_prime0_stderr.powi(2)).sqrt();
    Ok(ReplayReport {
        alpha,
        k,
        d_prime0,
        d_prime0_stderr,
        p_hat,
        lhs: s.mean,
        lhs_stderr: s.std_error(),
        rhs,
        pass: s.mean <= rhs + 3.0 * se,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoalescenceStats {
    /// Steps to coalescence for each finished replica.
    pub steps: Vec<u64>,
    pub censored: u64,
    pub cap: u64,
    pub mean: f64,
    pub median: f64,
    pub max: u64,
}

/// Runs `reps` coupled copies from `(x, y)` until they agree or `cap` steps.
pub fn coalescence_time<C: CoupledSystem>(
    sys: &C,
    x: &C::State,
    y: &C::State,
    reps: u64,
    cap: u64,
    seed: u64,
) -> CoalescenceStats {
    let root = RandomSource::new(seed);
    let outs: Vec<Option<u64>> = (0..reps)
        .into_par_iter()
        .map(|j| {
            let r = root.child(j);
            let (mut a, mut b) = (x.clone(), y.clone());
            for t in 0..cap {
                if a == b {
                    return Some(t);
                }
                (a, b) = sys.step(&a, &b, &r, t);
            }
            (a == b).then_some(cap)
        })
        .collect();
    let mut steps: Vec<u64> = outs.iter().flatten().copied().collect();
    let censored = reps - steps.len() as u64;
    let mean = if steps.is_empty() { f64::NAN } else { steps.iter().sum::<u64>() as f64 / steps.len() as f64 };
    let mut sorted = steps.clone();
    sorted.sort_unstable();
    let median = match sorted.len() {
        0 => f64::NAN,
        l if l % 2 == 1 => sorted[l / 2] as f64,
        l => (sorted[l / 2 - 1] + sorted[l / 2]) as f64 / 2.0,
    };
    let max = sorted.last().copied().unwrap_or(0);
    steps.shrink_to_fit();
    CoalescenceStats { steps, censored, cap, mean, median, max }
}
