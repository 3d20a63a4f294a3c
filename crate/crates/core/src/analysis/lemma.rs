use num_bigint::BigInt;

use super::AnalysisError;
use crate::Rational;

/// Largest tuple space the oracle will enumerate.
pub const LEMMA_TUPLE_LIMIT: u128 = 10_000_000;

/// Exact conditional expectations over uniformly chosen colour tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaExpectations {
    /// `E[q - c | s_1 = q_1]`.
    pub free: Rational,
    /// `E[1/(q - c) | s_1 = q_1]`.
    pub inverse_free: Rational,
    pub tuples: u128,
}

/// Enumerates every tuple `(q_1, s_2, .., s_Δ)` with `s_i` uniform in `S_i`
/// and `c` the number of distinct colours in the tuple. Colours are `1..=q`;
/// some colour must be missing from every set.
pub fn lemma_oracle(q: u32, max_degree: usize, sets: &[Vec<u32>], q1: u32) -> Result<LemmaExpectations, AnalysisError> {
    let bad = |s: String| Err(AnalysisError::InvalidInput(s));
    if !(2..=64).contains(&q) {
        return bad(format!("q = {q} outside 2..=64"));
    }
    if sets.len() != max_degree || max_degree == 0 {
        return bad(format!("expected {max_degree} sets, got {}", sets.len()));
    }
    let mut union = 0u64;
    let mut masks = Vec::with_capacity(sets.len());
    for (i, s) in sets.iter().enumerate() {
        let mut mask = 0u64;
        for &c in s {
            if c == 0 || c > q {
                return bad(format!("colour {c} in set {} outside 1..={q}", i + 1));
            }
            mask |= 1 << (c - 1);
        }
        if (mask.count_ones() as usize) + max_degree < q as usize {
            return bad(format!("set {} has fewer than q - Δ colours", i + 1));
        }
        union |= mask;
        masks.push(mask);
    }
    if union.count_ones() == q {
        return bad("every colour appears in some set; no q0 is excluded".into());
    }
    if q1 == 0 || masks[0] >> (q1 - 1) & 1 == 0 {
        return bad(format!("q1 = {q1} not in the first set"));
    }

    let choices: Vec<Vec<u64>> =
        masks[1..].iter().map(|&m| (0..64).filter(|b| m >> b & 1 == 1).map(|b| 1u64 << b).collect()).collect();
    let tuples: u128 = choices.iter().map(|c| c.len() as u128).product();
    if tuples > LEMMA_TUPLE_LIMIT {
        return Err(AnalysisError::TooManyTuples(tuples));
    }

    // histogram of c
    let mut hist = vec![0u64; max_degree + 1];
    let mut idx = vec![0usize; choices.len()];
    let first = 1u64 << (q1 - 1);
    loop {
        let seen = idx.iter().zip(&choices).fold(first, |acc, (&i, c)| acc | c[i]);
        hist[seen.count_ones() as usize] += 1;
        // mixed-radix increment
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            break;
        }
    }

    let total = BigInt::from(tuples);
    let mut free = Rational::from_integer(BigInt::from(0));
    let mut inverse = free.clone();
    for (c, &count) in hist.iter().enumerate() {
        if count == 0 {
            continue;
        }
        let k = q as i64 - c as i64;
        free += Rational::new(BigInt::from(count) * k, total.clone());
        inverse += Rational::new(BigInt::from(count), total.clone() * k);
    }
    Ok(LemmaExpectations { free, inverse_free: inverse, tuples })
}
