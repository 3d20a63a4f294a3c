//! Thin wrapper over `astro_float` for the few operations the bipartite
//! bounds need.

use std::cmp::Ordering;
use std::fmt;

use astro_float::{BigFloat, Consts, RoundingMode};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Binary digits carried for a decimal precision, with guard bits.
pub(crate) fn bits_for_digits(digits: usize) -> usize {
    // log2(10) < 3.33
    let bits = digits * 333 / 100 + 64;
    bits.div_ceil(64) * 64
}

/// A high-precision real together with the precision it was computed at.
#[derive(Clone, Debug)]
pub struct Real {
    value: BigFloat,
    bits: usize,
}

impl Real {
    pub(crate) fn new(value: BigFloat, bits: usize) -> Self {
        Self { value, bits }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_string().parse().unwrap_or(f64::NAN)
    }

    /// Comparison against a small integer.
    pub fn cmp_int(&self, v: u64) -> Ordering {
        let other = BigFloat::from_u64(v, self.bits);
        self.value.cmp(&other).map_or(Ordering::Equal, |c| c.cmp(&0))
    }

    /// `|self - v|`, as f64.
    pub fn distance_to(&self, v: u64) -> f64 {
        let other = BigFloat::from_u64(v, self.bits);
        let d = self.value.sub(&other, self.bits, RM).abs();
        Real::new(d, self.bits).to_f64()
    }

    /// Scientific notation rounded to `digits` significant decimal digits.
    pub fn to_decimal(&self, digits: usize) -> String {
        let s = self.value.to_string();
        round_scientific(&s, digits.max(1))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal(50))
    }
}

fn round_scientific(s: &str, digits: usize) -> String {
    let (mantissa, exp) = match s.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (s, 0),
    };
    let (sign, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => ("-", rest),
        None => ("", mantissa),
    };
    let mut ds: Vec<u8> = mantissa.bytes().filter(u8::is_ascii_digit).map(|b| b - b'0').collect();
    if ds.iter().all(|&d| d == 0) {
        return "0".into();
    }
    let mut exp = exp;
    while ds.first() == Some(&0) {
        ds.remove(0);
        exp -= 1;
    }
    let round_up = ds.get(digits).is_some_and(|&d| d >= 5);
    ds.truncate(digits);
    ds.resize(digits, 0);
    if round_up {
        let mut i = digits;
        loop {
            if i == 0 {
                ds.insert(0, 1);
                ds.truncate(digits);
                exp += 1;
                break;
            }
            i -= 1;
            if ds[i] == 9 {
                ds[i] = 0;
            } else {
                ds[i] += 1;
                break;
            }
        }
    }
    let body: String = ds.iter().map(|d| char::from(b'0' + d)).collect();
    let (head, tail) = body.split_at(1);
    if tail.is_empty() {
        format!("{sign}{head}e{exp}")
    } else {
        format!("{sign}{head}.{tail}e{exp}")
    }
}

pub(crate) fn consts() -> Consts {
    Consts::new().expect("astro-float constants cache")
}
