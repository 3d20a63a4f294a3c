use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use super::{AnalysisError, VerifyReport};
use crate::rational::{int, to_f64};
use crate::{format_rational, Rational};

/// Weights `c_0..c_{m-2}` of the independent-set metric and the drift margin γ.
#[derive(Clone, Debug, PartialEq)]
pub struct IndSetWeights {
    pub m: usize,
    pub max_degree: usize,
    pub c: Vec<Rational>,
    pub gamma: Rational,
    /// False when γ = 0, i.e. f(m) = Δ.
    pub contracts: bool,
}

impl IndSetWeights {
    /// `c_i` for `i` in `-1..=m-1`, with `c_{-1} = c_0` and `c_{m-1} = Δ+1`.
    pub fn weight(&self, i: isize) -> Rational {
        if i < 0 {
            self.c[0].clone()
        } else if i as usize >= self.c.len() {
            int(self.max_degree as i64 + 1)
        } else {
            self.c[i as usize].clone()
        }
    }

    pub fn c0(&self) -> &Rational {
        &self.c[0]
    }
}

fn big(v: usize) -> BigInt {
    BigInt::from(v)
}

/// `f(m) = m - 2 + m(m-1)/(2^m - 1 - m)`.
pub fn f_threshold(m: usize) -> Result<Rational, AnalysisError> {
    if m < 2 {
        return Err(AnalysisError::EdgeSizeTooSmall(m));
    }
    let pow = BigInt::one() << m;
    let den = pow - big(1) - big(m);
    Ok(Rational::from_integer(big(m) - big(2)) + Rational::new(big(m * (m - 1)), den))
}

/// Closed-form weights at the largest admissible γ.
pub fn indset_weights(m: usize, max_degree: usize) -> Result<IndSetWeights, AnalysisError> {
    let f = f_threshold(m)?;
    if max_degree == 0 {
        return Err(AnalysisError::InvalidInput("Δ must be at least 1".into()));
    }
    let delta = Rational::from_integer(big(max_degree));
    if f < delta {
        return Err(AnalysisError::BelowThreshold { m, max_degree, f: format_rational(&f) });
    }
    let s = (BigInt::one() << m) - big(1) - big(m);
    let mut lead = (BigInt::one() << (m - 1)) * (big(m) - big(2));
    lead += 1;
    // m - Δ - 2 + m(m-1)/s
    let tail = Rational::from_integer(big(m)) - &delta - int(2) + Rational::new(big(m * (m - 1)), s.clone());
    let gamma = Rational::new(s, lead) * tail;
    let shift = (Rational::from_integer(big(m)) - &delta - int(2) + &gamma) / Rational::from_integer(big(m));

    let mut c = Vec::with_capacity(m - 1);
    let mut sum_small = BigInt::zero();
    let mut sum_big = BigInt::zero();
    for i in 0..=m - 2 {
        sum_small += binomial(big(m - 1), big(i));
        sum_big += binomial(big(m), big(i));
        let num = &gamma * Rational::from_integer(sum_small.clone()) - &shift * Rational::from_integer(sum_big.clone());
        c.push(num / Rational::from_integer(binomial(big(m - 1), big(i))));
    }
    Ok(IndSetWeights { m, max_degree, contracts: gamma.is_positive(), c, gamma })
}

/// Exact check of every recurrence relation
/// `i c_{i-1} - (m+1) c_i + (m-i-1) c_{i+1} = -γ` together with positivity,
/// monotonicity and `c_{m-2} = 1`.
pub fn verify_indset_recurrence(w: &IndSetWeights) -> VerifyReport {
    let m = w.m;
    let mut residuals = Vec::new();
    let mut failures = Vec::new();
    if w.c.len() + 1 != m {
        failures.push(format!("expected {} weights, found {}", m - 1, w.c.len()));
        return VerifyReport { residuals, failures };
    }
    for i in 0..=m - 2 {
        let ii = i as isize;
        let lhs = int(i as i64) * w.weight(ii - 1) - int(m as i64 + 1) * w.weight(ii)
            + int((m - i - 1) as i64) * w.weight(ii + 1);
        let r = lhs + &w.gamma;
        if !r.is_zero() {
            failures.push(format!("relation {i} has residual {}", format_rational(&r)));
        }
        residuals.push(r);
    }
    if !w.c[m - 2].is_one() {
        failures.push(format!("c_{} = {} is not 1", m - 2, format_rational(&w.c[m - 2])));
    }
    if !w.c[0].is_positive() {
        failures.push(format!("c_0 = {} is not positive", format_rational(&w.c[0])));
    }
    for i in 1..w.c.len() {
        let ok = if m >= 3 { w.c[i - 1] < w.c[i] } else { w.c[i - 1] <= w.c[i] };
        if !ok {
            failures.push(format!("c_{} >= c_{i}", i - 1));
        }
    }
    if w.gamma.is_negative() {
        failures.push(format!("γ = {} is negative", format_rational(&w.gamma)));
    }
    VerifyReport { residuals, failures }
}

impl IndSetWeights {
    pub fn gamma_f64(&self) -> f64 {
        to_f64(&self.gamma)
    }
}
