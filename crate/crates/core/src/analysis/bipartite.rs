use std::cmp::Ordering;

use astro_float::{BigFloat, Consts};

use super::real::{bits_for_digits, consts, Real, RM};
use super::AnalysisError;

/// Default decimal precision for the bipartite quantities.
pub const DEFAULT_PRECISION: usize = 50;

/// Which form of `α′_v` to use. `Printed` follows the displayed formula with
/// `(q - α_v) α_v` in the numerator; `Symmetric` mirrors `α′` with
/// `(q - α_v - 1)(α_v - 1)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum AlphaPrimeV {
    #[default]
    Printed,
    Symmetric,
}

impl std::str::FromStr for AlphaPrimeV {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "printed" => Ok(Self::Printed),
            "symmetric" => Ok(Self::Symmetric),
            _ => Err(format!("unknown variant `{s}` (printed|symmetric)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BipartiteBounds {
    pub q: u64,
    pub max_degree: u64,
    pub digits: usize,
    pub variant: AlphaPrimeV,
    pub alpha: Real,
    pub alpha_prime: Real,
    pub alpha_v: Real,
    pub alpha_prime_v: Real,
    /// `(Δ-1) α′ + α′_v`; contraction iff below 1.
    pub b: Real,
    /// `B (B + 1) / 2`.
    pub contraction_factor: Real,
    /// Bound on the absolute error of `b`.
    pub error_bound: f64,
}

impl BipartiteBounds {
    pub fn contracts(&self) -> bool {
        self.b.cmp_int(1) == Ordering::Less
    }
}

struct Ctx {
    p: usize,
    cc: Consts,
}

impl Ctx {
    fn n(&self, v: u64) -> BigFloat {
        BigFloat::from_u64(v, self.p)
    }
    fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.p, RM)
    }
    fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.p, RM)
    }
    fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }
    fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }
    fn pow(&mut self, a: &BigFloat, e: &BigFloat) -> BigFloat {
        a.pow(e, self.p, RM, &mut self.cc)
    }
}

/// `(1 - 1/(q-Δ))^((Δ-1)(q-Δ)/r)` with `r` the denominator of the exponent.
fn damping(cx: &mut Ctx, q: u64, d: u64, r: u64) -> BigFloat {
    let one = cx.n(1);
    let base = cx.sub(&one, &cx.div(&one, &cx.n(q - d)));
    let e = cx.div(&cx.n((d - 1) * (q - d)), &cx.n(r));
    cx.pow(&base, &e)
}

fn compute(q: u64, d: u64, bits: usize, variant: AlphaPrimeV) -> [BigFloat; 5] {
    let mut cx = Ctx { p: bits, cc: consts() };
    let one = cx.n(1);
    let qf = cx.n(q);
    let qd = cx.n(q - d);

    let damp = damping(&mut cx, q, d, q - 2);
    let alpha = cx.add(&one, &cx.mul(&cx.n(q - 2), &damp));
    // (1/α)(1 + (q-α-1)(α-1) / ((q-Δ)(q-2)α))
    let num = cx.mul(&cx.sub(&cx.sub(&qf, &alpha), &one), &cx.sub(&alpha, &one));
    let den = cx.mul(&cx.mul(&qd, &cx.n(q - 2)), &alpha);
    let alpha_prime = cx.div(&cx.add(&one, &cx.div(&num, &den)), &alpha);

    let damp_v = damping(&mut cx, q, d, q - 1);
    let alpha_v = cx.mul(&cx.n(q - 1), &damp_v);
    let num_v = match variant {
        AlphaPrimeV::Printed => cx.mul(&cx.sub(&qf, &alpha_v), &alpha_v),
        AlphaPrimeV::Symmetric => cx.mul(&cx.sub(&cx.sub(&qf, &alpha_v), &one), &cx.sub(&alpha_v, &one)),
    };
    let den_v = cx.mul(&cx.mul(&qd, &cx.n(q - 1)), &alpha_v);
    let alpha_prime_v = cx.div(&cx.add(&one, &cx.div(&num_v, &den_v)), &alpha_v);

    let b = cx.add(&cx.mul(&cx.n(d - 1), &alpha_prime), &alpha_prime_v);
    [alpha, alpha_prime, alpha_v, alpha_prime_v, b]
}

/// The bipartite colouring quantities at `digits` significant decimal digits.
pub fn bip_bounds(
    q: u64,
    max_degree: u64,
    digits: usize,
    variant: AlphaPrimeV,
) -> Result<BipartiteBounds, AnalysisError> {
    if max_degree == 0 {
        return Err(AnalysisError::InvalidInput("Δ must be at least 1".into()));
    }
    if q < max_degree + 2 {
        return Err(AnalysisError::TooFewColours { q, max_degree });
    }
    if digits < DEFAULT_PRECISION {
        return Err(AnalysisError::InvalidInput(format!(
            "precision {digits} below the minimum of {DEFAULT_PRECISION} digits"
        )));
    }
    let bits = bits_for_digits(digits);
    let [alpha, alpha_prime, alpha_v, alpha_prime_v, b] = compute(q, max_degree, bits, variant);
    let cx = Ctx { p: bits, cc: consts() };
    let factor = cx.div(&cx.mul(&b, &cx.add(&b, &cx.n(1))), &cx.n(2));
    let wrap = |x: BigFloat| Real::new(x, bits);
    let b = wrap(b);
    // a few dozen correctly rounded operations, the power amplifying its
    // argument's relative error by at most the size of the exponent
    let error_bound = (b.to_f64().abs() + 1.0) * (max_degree as f64 + 1.0) * 2f64.powi(-(bits as i32 - 64));
    Ok(BipartiteBounds {
        q,
        max_degree,
        digits,
        variant,
        alpha: wrap(alpha),
        alpha_prime: wrap(alpha_prime),
        alpha_v: wrap(alpha_v),
        alpha_prime_v: wrap(alpha_prime_v),
        b,
        contraction_factor: wrap(factor),
        error_bound,
    })
}

/// Whether `B(q, Δ) < 1`, raising precision while the value sits inside its
/// error bound.
fn contracts_certified(q: u64, d: u64, digits: usize, variant: AlphaPrimeV) -> Result<bool, AnalysisError> {
    let mut digits = digits;
    for _ in 0..6 {
        let bb = bip_bounds(q, d, digits, variant)?;
        if bb.b.distance_to(1) > bb.error_bound {
            return Ok(bb.contracts());
        }
        digits *= 2;
    }
    Err(AnalysisError::InvalidInput(format!("B({q}, {d}) indistinguishable from 1 at {digits} digits")))
}

/// Outcome of the threshold search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinQ {
    pub max_degree: u64,
    /// Smallest contracting q in `[Δ+2, 3Δ+2]`, if any.
    pub q: Option<u64>,
}

/// Binary search for the least `q` in `[Δ+2, 3Δ+2]` with `B(q, Δ) < 1`,
/// confirmed by evaluating both `q` and `q-1`.
pub fn min_q_for_contraction(max_degree: u64, digits: usize, variant: AlphaPrimeV) -> Result<MinQ, AnalysisError> {
    if max_degree < 2 {
        return Err(AnalysisError::InvalidInput("Δ must be at least 2".into()));
    }
    let d = max_degree;
    let (mut lo, mut hi) = (d + 2, 3 * d + 2);
    if !contracts_certified(hi, d, digits, variant)? {
        return Ok(MinQ { max_degree: d, q: None });
    }
    // invariant: hi contracts; everything below lo is known not to
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if contracts_certified(mid, d, digits, variant)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if hi > d + 2 && contracts_certified(hi - 1, d, digits, variant)? {
        return Err(AnalysisError::InvalidInput(format!("B(q, {d}) is not monotone near q = {hi}")));
    }
    Ok(MinQ { max_degree: d, q: Some(hi) })
}

/// Root of `(1/β) e^(1/β) = 1` on `[1.5, 2]` by bisection to `digits` digits.
pub fn solve_beta(digits: usize) -> Real {
    let digits = digits.max(10);
    let bits = bits_for_digits(digits);
    let mut cx = Ctx { p: bits, cc: consts() };
    let one = cx.n(1);
    let two = cx.n(2);
    let mut lo = cx.div(&cx.n(3), &two);
    let mut hi = two.clone();
    // g decreases in β: g(1.5) > 0 > g(2)
    let steps = digits * 333 / 100 + 8;
    for _ in 0..steps {
        let mid = cx.div(&cx.add(&lo, &hi), &two);
        let x = cx.div(&one, &mid);
        let ex = x.exp(bits, RM, &mut cx.cc);
        let g = cx.sub(&cx.mul(&x, &ex), &one);
        if g.is_negative() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Real::new(cx.div(&cx.add(&lo, &hi), &two), bits)
}
