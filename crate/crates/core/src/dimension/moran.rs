use std::collections::BTreeMap;

use num_traits::{One, Signed};

use super::series::kahan_sum;
use crate::block::rational_to_f64;
use crate::{Base, Error, Rational, Result};

fn grouped(lengths: &[usize]) -> Vec<(usize, f64)> {
    let mut by_len: BTreeMap<usize, f64> = BTreeMap::new();
    for &l in lengths {
        *by_len.entry(l).or_default() += 1.0;
    }
    by_len.into_iter().collect()
}

/// The similarity dimension `s` solving `Σ β^(−Lᵢ·s) = 1`.
///
/// Bisection to an absolute width below `1e-13`. A single map gives 0.
pub fn moran_root(lengths: &[usize], base: &Base) -> Result<f64> {
    if lengths.is_empty() {
        return Err(Error::Empty("map length list"));
    }
    if lengths.contains(&0) {
        return Err(Error::ZeroExponent);
    }
    if lengths.len() == 1 {
        return Ok(0.0);
    }
    let terms = grouped(lengths);
    let ln_beta = base.ln();
    let f = |s: f64| {
        kahan_sum(
            terms
                .iter()
                .map(|&(l, c)| c * (-(l as f64) * s * ln_beta).exp()),
        ) - 1.0
    };
    let min_len = terms[0].0 as f64;
    let mut lo = 0.0;
    let mut hi = (lengths.len() as f64).ln() / (min_len * ln_beta) + 1.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `|Σ x^Lᵢ − 1|` evaluated exactly in rationals at `x = β^(−s)` rounded to
/// binary64.
pub fn moran_residual(lengths: &[usize], base: &Base, s: f64) -> f64 {
    let x = Rational::from_float((-s * base.ln()).exp()).expect("finite");
    let mut total = Rational::from_integer(0.into());
    for (l, c) in grouped(lengths) {
        let term = num_traits::pow(x.clone(), l) * Rational::from_integer((c as i64).into());
        total += term;
    }
    rational_to_f64(&(total - Rational::one()).abs())
}
