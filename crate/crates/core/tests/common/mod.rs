//! Shared oracles and fixtures for the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use pathcoupling::chains::{glauber_indset_step, glauber_tricol_step};
use pathcoupling::instances::{gen_hypergraph, ColouringState, Hypergraph, OccupancyState};
use pathcoupling::RandomSource;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Solves `a x = b` exactly by Gauss-Jordan elimination; `None` if singular.
pub fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col].clone();
        for j in col..n {
            a[col][j] = &a[col][j] / &p;
        }
        b[col] = &b[col] / &p;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in col..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= t;
                }
                let t = &f * &b[col];
                b[r] -= t;
            }
        }
    }
    Some(b)
}

/// Weights `c_0..c_{m-2}` and γ from the recurrence held with equality,
/// `c_{-1} = c_0`, `c_{m-1} = Δ+1`, `c_{m-2} = 1`.
pub fn indset_oracle(m: usize, delta: usize) -> (Vec<BigRational>, BigRational) {
    let k = m - 1; // unknowns c_0..c_{m-2}, then γ
    let mut a = vec![vec![BigRational::zero(); k + 1]; k + 1];
    let mut b = vec![BigRational::zero(); k + 1];
    for i in 0..k {
        let fi = q(i as i64, 1);
        // c_{i-1}
        if i == 0 {
            a[i][0] += &fi;
        } else {
            a[i][i - 1] += &fi;
        }
        a[i][i] -= q(m as i64 + 1, 1);
        let right = q((m - i - 1) as i64, 1);
        if i + 1 < k {
            a[i][i + 1] += right;
        } else {
            b[i] -= right * q(delta as i64 + 1, 1);
        }
        a[i][k] = BigRational::one();
    }
    a[k][k - 1] = BigRational::one();
    b[k] = BigRational::one();
    let x = solve(a, b).expect("nonsingular recurrence");
    (x[..k].to_vec(), x[k].clone())
}

/// `(c_2, c_3 = c_4, γ)` from the colouring system with `|E_3| = 0`,
/// `c_0 = Δ+1`, `c_1 = 1`.
pub fn tricol_oracle(qq: i64, delta: i64) -> (BigRational, BigRational, BigRational) {
    let z = BigRational::zero;
    let c0 = q(delta + 1, 1);
    let c1 = BigRational::one();
    let qr = q(qq, 1);
    let s1 = q(qq - delta - 1, 1);
    let s2 = q(qq - delta - 2, 1);
    // unknowns (c2, c3, γ)
    // 2 s1 (c1 - c2) - 2 (c0 - c1) + q c1 = γ
    let r1 = vec![-q(2, 1) * &s1, z(), -BigRational::one()];
    let b1 = -(q(2, 1) * &s1 * &c1 - q(2, 1) * (&c0 - &c1) + &qr * &c1);
    // s2 (c2 - c3) + (c2 - c3) - (c0 - c2) - (c1 - c2) + q c2 = γ
    let r2 = vec![&s2 + q(3, 1) + &qr, -(&s2 + BigRational::one()), -BigRational::one()];
    let b2 = &c0 + &c1;
    // -4 (c2 - c3) + q c3 = γ
    let r3 = vec![q(-4, 1), q(4, 1) + &qr, -BigRational::one()];
    let x = solve(vec![r1, r2, r3], vec![b1, b2, z()]).expect("nonsingular colouring system");
    (x[0].clone(), x[1].clone(), x[2].clone())
}

/// Small generated hypergraphs with `n ≤ max_n`, in a fixed order.
pub fn corpus(max_n: usize) -> Vec<Hypergraph> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for m in 2..=5.min(n) {
            for d in 1..=4 {
                for seed in 0..2 {
                    if let Ok(h) = gen_hypergraph(n, m, d, seed) {
                        out.push(h);
                    }
                }
            }
        }
    }
    out
}

/// A random independent set from a burnt-in Glauber run.
pub fn random_indset(h: &Hypergraph, r: &RandomSource, steps: u64) -> OccupancyState {
    let mut s = OccupancyState::empty(h.vertex_count());
    for t in 0..steps {
        s = glauber_indset_step(h, &s, r, t).0;
    }
    s
}

/// `(σ, σ ∪ {w})` with `deg(w) ≥ 1`, or `None` if no such `w` exists.
pub fn random_indset_pair(h: &Hypergraph, seed: u64) -> Option<(OccupancyState, OccupancyState)> {
    let r = RandomSource::new(seed);
    let sigma = random_indset(h, &r, 20 * h.vertex_count() as u64);
    let mut cands: Vec<usize> =
        (0..h.vertex_count()).filter(|&v| !sigma.contains(v) && h.degree(v) > 0 && sigma.can_insert(h, v)).collect();
    cands.shuffle(&mut r.child(1).sequential());
    let w = *cands.first()?;
    let mut y = sigma.clone();
    y.set(w, true);
    Some((sigma, y))
}

/// Two proper colourings differing at one vertex of positive degree.
pub fn random_tricol_pair(h: &Hypergraph, palette: u32, seed: u64) -> Option<(ColouringState, ColouringState)> {
    let r = RandomSource::new(seed);
    let mut x = ColouringState::greedy_hypergraph(h, palette)?;
    for t in 0..20 * h.vertex_count() as u64 * palette as u64 {
        x = glauber_tricol_step(h, &x, &r, t).0;
    }
    let mut g = r.child(1).sequential();
    for _ in 0..100 {
        let w = g.gen_range(0..h.vertex_count());
        let c = g.gen_range(0..palette);
        if h.degree(w) > 0 && c != x.colour(w) && x.hypergraph_allows(h, w, c) {
            let mut y = x.clone();
            y.set(w, c);
            return Some((x, y));
        }
    }
    None
}
