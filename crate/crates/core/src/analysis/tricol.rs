use num_traits::{One, Signed, Zero};

use super::{AnalysisError, VerifyReport};
use crate::rational::{int, rat};
use crate::{format_rational, Rational};

/// Weights of the 3-uniform colouring metric, indexed by edge class.
#[derive(Clone, Debug, PartialEq)]
pub struct TriColWeights {
    pub q: u64,
    pub max_degree: u64,
    /// `c[0]` is the sentinel `Δ+1`; `c[1..=4]` weight classes E1..E4.
    pub c: [Rational; 5],
    pub gamma: Rational,
    /// False when γ ≤ 0.
    pub contracts: bool,
}

impl TriColWeights {
    pub fn class_weight(&self, class: usize) -> &Rational {
        &self.c[class]
    }
}

pub fn tricol_weights(q: u64, max_degree: u64) -> Result<TriColWeights, AnalysisError> {
    if q <= max_degree + 1 {
        return Err(AnalysisError::TooFewColours { q, max_degree });
    }
    let (q, d) = (q as i64, max_degree as i64);
    let den = 2 * q - d + 1;
    let c2 = rat(2 * q - 2 * d + 1, den);
    let c3 = rat(2 * q - 3 * d + 1, den);
    let gamma = rat(2 * q * q - q * (3 * d - 1) - 4 * d, den);
    Ok(TriColWeights {
        q: q as u64,
        max_degree,
        c: [int(d + 1), int(1), c2, c3.clone(), c3],
        contracts: gamma.is_positive(),
        gamma,
    })
}

/// Residuals of the four class equations with no `{i,i}` edges, each of the
/// form `lhs - γ`.
pub fn verify_tricol_system(w: &TriColWeights) -> VerifyReport {
    let q = int(w.q as i64);
    let d = int(w.max_degree as i64);
    let [c0, c1, c2, c3, c4] = &w.c;
    let two = int(2);
    let four = int(4);
    let lhs = [
        &two * (&q - &d - int(1)) * (c1 - c2) - &two * (c0 - c1) + c1 * &q,
        (&q - &d - int(2)) * (c2 - c4) + (c2 - c3) - (c0 - c2) - (c1 - c2) + c2 * &q,
        &two * (&q - &d - int(2)) * (c3 - c4) - &four * (c2 - c3) + c3 * &q,
        -(&two * (c3 - c4)) - &four * (c2 - c4) + c4 * &q,
    ];
    let residuals: Vec<Rational> = lhs.into_iter().map(|l| l - &w.gamma).collect();
    let mut failures: Vec<String> = residuals
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.is_zero())
        .map(|(i, r)| format!("equation {} has residual {}", i + 1, format_rational(r)))
        .collect();
    if *c0 != &d + int(1) {
        failures.push("c_0 is not Δ+1".into());
    }
    if !c1.is_one() {
        failures.push("c_1 is not 1".into());
    }
    VerifyReport { residuals, failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        let w = tricol_weights(7, 4).unwrap();
        assert_eq!(w.c[2], rat(7, 11));
        assert_eq!(w.c[3], rat(3, 11));
        assert_eq!(w.c[4], rat(3, 11));
        assert_eq!(w.gamma, rat(5, 11));
        assert!(verify_tricol_system(&w).passed());

        let w = tricol_weights(4, 2).unwrap();
        assert_eq!((w.c[2].clone(), w.c[3].clone()), (rat(5, 7), rat(3, 7)));
        assert_eq!(w.gamma, rat(4, 7));
        assert!(verify_tricol_system(&w).passed());

        let w = tricol_weights(6, 4).unwrap();
        assert!(w.gamma.is_negative());
        assert!(!w.contracts);
    }

    #[test]
    fn perturbation_fails() {
        let mut w = tricol_weights(7, 4).unwrap();
        w.c[2] += rat(1, 100);
        assert!(!verify_tricol_system(&w).passed());
    }

    #[test]
    fn too_few_colours() {
        assert!(tricol_weights(5, 4).is_err());
    }
}
