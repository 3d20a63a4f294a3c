use num_traits::Signed;

use super::{f_threshold, indset_weights, AnalysisError};
use crate::rational::{rat, to_f64};
use crate::Rational;

/// Parameters shared by the generic mixing-time bounds.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MixingBoundInputs {
    /// Steps per stopping-time round.
    pub k: u64,
    /// Lower bound on the probability that a round ends.
    pub p: f64,
    /// Contraction coefficient of the metric.
    pub alpha: f64,
    pub diameter: f64,
    pub epsilon: f64,
    /// Only used by the general bound.
    pub gamma_general: Option<f64>,
}

impl MixingBoundInputs {
    pub fn new(k: u64, p: f64, alpha: f64, diameter: f64, epsilon: f64) -> Self {
        Self { k, p, alpha, diameter, epsilon, gamma_general: None }
    }

    pub fn with_gamma(mut self, gamma: f64) -> Self {
        self.gamma_general = Some(gamma);
        self
    }

    fn check(&self) -> Result<(), AnalysisError> {
        let bad = |what: &str| Err(AnalysisError::InvalidInput(what.to_string()));
        if self.k == 0 {
            return bad("k must be positive");
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return bad("p must lie in (0, 1]");
        }
        if !(0.0..1.0).contains(&self.alpha) {
            return bad("alpha must lie in [0, 1)");
        }
        if !(self.diameter > 0.0 && self.diameter.is_finite()) {
            return bad("diameter must be positive");
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad("epsilon must lie in (0, 1)");
        }
        if let Some(g) = self.gamma_general {
            if !(g >= 0.0 && g.is_finite()) {
                return bad("gamma must be nonnegative");
            }
        }
        Ok(())
    }

    fn rate(&self) -> f64 {
        self.k as f64 / (self.p * (1.0 - self.alpha))
    }
}

/// `(k / (p(1-α))) ln(e D / (ε(1-α)))`.
pub fn mixing_bound_thm21(inp: &MixingBoundInputs) -> Result<f64, AnalysisError> {
    inp.check()?;
    Ok(inp.rate() * (1.0 + (inp.diameter / (inp.epsilon * (1.0 - inp.alpha))).ln()))
}

/// `(k(2-α) / (p(1-α))) ln(2 e D / ε)`.
pub fn mixing_bound_thm22(inp: &MixingBoundInputs) -> Result<f64, AnalysisError> {
    inp.check()?;
    Ok(inp.rate() * (2.0 - inp.alpha) * (1.0 + (2.0 * inp.diameter / inp.epsilon).ln()))
}

/// `(k(1-α+γ) / (p(1-α))) ln(D/ε)`, reported with leading constant 1; the
/// true bound holds only up to an unspecified constant factor.
pub fn mixing_bound_general(inp: &MixingBoundInputs) -> Result<f64, AnalysisError> {
    inp.check()?;
    let g = inp.gamma_general.ok_or_else(|| AnalysisError::InvalidInput("gamma is required".into()))?;
    Ok(inp.rate() * (1.0 - inp.alpha + g) * (inp.diameter / inp.epsilon).ln())
}

/// `(2q² - qΔ + q) / (2q² - q(3Δ-1) - 4Δ)`, which equals `q/γ`.
pub fn tricol_mixing_prefactor(q: u64, max_degree: u64) -> Result<Rational, AnalysisError> {
    if q <= max_degree + 1 {
        return Err(AnalysisError::TooFewColours { q, max_degree });
    }
    let (q, d) = (q as i64, max_degree as i64);
    let den = 2 * q * q - q * (3 * d - 1) - 4 * d;
    if den <= 0 {
        return Err(AnalysisError::NoContraction(format!("{den}/{}", 2 * q - d + 1)));
    }
    Ok(rat(2 * q * q - q * d + q, den))
}

/// Prefactor times `n ln(Δn/ε)`.
pub fn tricol_mixing_bound(q: u64, max_degree: u64, n: usize, epsilon: f64) -> Result<f64, AnalysisError> {
    check_n_eps(n, epsilon)?;
    let pre = to_f64(&tricol_mixing_prefactor(q, max_degree)?);
    Ok(pre * n as f64 * (max_degree as f64 * n as f64 / epsilon).ln())
}

/// `(2n/γ) ln(Δn / (c_0 ε))` with the weights at `(m, Δ)`.
pub fn indset_mixing_bound(m: usize, max_degree: usize, n: usize, epsilon: f64) -> Result<f64, AnalysisError> {
    check_n_eps(n, epsilon)?;
    let w = indset_weights(m, max_degree)?;
    if !w.gamma.is_positive() {
        return Err(AnalysisError::NoContraction(crate::format_rational(&f_threshold(m)?)));
    }
    let gamma = to_f64(&w.gamma);
    let c0 = to_f64(w.c0());
    let n = n as f64;
    Ok(2.0 * n / gamma * (max_degree as f64 * n / (c0 * epsilon)).ln())
}

fn check_n_eps(n: usize, epsilon: f64) -> Result<(), AnalysisError> {
    if n == 0 {
        return Err(AnalysisError::InvalidInput("n must be positive".into()));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(AnalysisError::InvalidInput("epsilon must lie in (0, 1)".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn units_collapse() {
        let inp = MixingBoundInputs::new(1, 1.0, 0.0, 1.0, (-2.0f64).exp());
        assert!(close(mixing_bound_thm21(&inp).unwrap(), 3.0, 1e-12));
    }

    #[test]
    fn linear_in_k() {
        let a = MixingBoundInputs::new(1, 0.3, 0.4, 50.0, 0.05);
        let b = MixingBoundInputs { k: 2, ..a };
        for f in [mixing_bound_thm21, mixing_bound_thm22] {
            assert!(close(f(&b).unwrap(), 2.0 * f(&a).unwrap(), 1e-9));
        }
    }

    #[test]
    fn tricol_prefactor() {
        assert_eq!(tricol_mixing_prefactor(7, 4).unwrap(), rat(77, 5));
        assert_eq!(tricol_mixing_prefactor(4, 2).unwrap(), rat(7, 1));
        assert!(tricol_mixing_prefactor(6, 4).is_err());
    }

    #[test]
    fn indset_prefactor() {
        let b = indset_mixing_bound(4, 2, 17, 0.1).unwrap();
        let expected = 34.0 * 17.0 / 12.0 * (2.0 * 17.0 / (9.0 / 17.0 * 0.1f64)).ln();
        assert!(close(b, expected, 1e-9));
        assert!(indset_mixing_bound(2, 2, 10, 0.1).is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(mixing_bound_thm21(&MixingBoundInputs::new(1, 0.0, 0.0, 1.0, 0.1)).is_err());
        assert!(mixing_bound_thm21(&MixingBoundInputs::new(1, 1.0, 1.0, 1.0, 0.1)).is_err());
        assert!(mixing_bound_general(&MixingBoundInputs::new(1, 1.0, 0.5, 1.0, 0.1)).is_err());
    }
}
