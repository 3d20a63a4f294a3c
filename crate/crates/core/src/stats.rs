//! Small statistics helpers for the Monte Carlo oracles.

use statrs::distribution::{ChiSquared, ContinuousCDF};

/// Running mean and variance (Welford).
#[derive(Clone, Copy, Debug, Default, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Summary {
    pub count: u64,
    pub mean: f64,
    m2: f64,
}

impl FromIterator<f64> for Summary {
    fn from_iter<I: IntoIterator<Item = f64>>(xs: I) -> Self {
        let mut s = Self::default();
        for x in xs {
            s.push(x);
        }
        s
    }
}

impl Summary {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    /// Unbiased sample variance; 0 with fewer than two samples.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        if self.count == 0 {
            return f64::INFINITY;
        }
        (self.variance() / self.count as f64).sqrt()
    }

    /// Merges two summaries (Chan et al. pairwise update).
    pub fn merge(&self, other: &Self) -> Self {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let n = self.count + other.count;
        let delta = other.mean - self.mean;
        let mean = self.mean + delta * other.count as f64 / n as f64;
        let m2 = self.m2 + other.m2 + delta * delta * (self.count as f64 * other.count as f64) / n as f64;
        Self { count: n, mean, m2 }
    }
}

/// Pearson goodness-of-fit statistic and its upper-tail p-value. Cells with
/// zero expectation must have zero observations and are dropped.
pub fn chi_square(observed: &[u64], expected: &[f64]) -> (f64, f64) {
    assert_eq!(observed.len(), expected.len());
    let mut stat = 0.0;
    let mut cells = 0usize;
    for (&o, &e) in observed.iter().zip(expected) {
        if e <= 0.0 {
            if o > 0 {
                return (f64::INFINITY, 0.0);
            }
            continue;
        }
        cells += 1;
        let d = o as f64 - e;
        stat += d * d / e;
    }
    if cells < 2 {
        return (stat, 1.0);
    }
    let dist = ChiSquared::new((cells - 1) as f64).expect("positive degrees of freedom");
    (stat, 1.0 - dist.cdf(stat))
}

/// One-sided Wilson upper bound for a binomial proportion at `z` sigmas.
pub fn wilson_upper(successes: u64, trials: u64, z: f64) -> f64 {
    if trials == 0 {
        return 1.0;
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let centre = p + z2 / (2.0 * n);
    let spread = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    ((centre + spread) / (1.0 + z2 / n)).min(1.0)
}

/// One-sided Wilson lower bound.
pub fn wilson_lower(successes: u64, trials: u64, z: f64) -> f64 {
    1.0 - wilson_upper(trials - successes.min(trials), trials, z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn welford_matches_direct() {
        let xs = [1.0, 4.0, 2.0, 8.0, 5.0];
        let s = Summary::from_iter(xs);
        assert!((s.mean - 4.0).abs() < 1e-12);
        assert!((s.variance() - 7.5).abs() < 1e-12);
        let a = Summary::from_iter(xs[..2].iter().copied());
        let b = Summary::from_iter(xs[2..].iter().copied());
        let m = a.merge(&b);
        assert!((m.variance() - 7.5).abs() < 1e-12);
    }

    #[test]
    fn chi_square_extremes() {
        let (s, p) = chi_square(&[25, 25, 25, 25], &[25.0; 4]);
        assert_eq!(s, 0.0);
        assert!((p - 1.0).abs() < 1e-12);
        let (_, p) = chi_square(&[100, 0, 0, 0], &[25.0; 4]);
        assert!(p < 1e-10);
        assert_eq!(chi_square(&[1, 3], &[0.0, 4.0]).1, 0.0);
    }

    #[test]
    fn wilson_brackets_estimate() {
        let up = wilson_upper(10, 100, 3.0);
        let lo = wilson_lower(10, 100, 3.0);
        assert!(lo < 0.1 && 0.1 < up);
        assert_eq!(wilson_upper(0, 0, 3.0), 1.0);
    }
}
