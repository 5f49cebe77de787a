use super::series::power_series;
use super::tail::{Tail, TailModel};
use super::DimensionOptions;
use crate::matching::{matching_counts, MatchingEnumerator, MatchingSet};
use crate::{Base, DigitalSet, Error, Result};

// Margins on the series comparisons, far above the summation error.
const SERIES_MARGIN: f64 = 1e-13;
// Final outward widening of published bounds.
const WIDEN: f64 = 1e-12;

/// Certified bracket for the dimension of an infinite Matching system.
#[derive(Debug, Clone)]
pub struct IifsBounds {
    pub lo: f64,
    pub hi: f64,
    /// Largest fully enumerated Matching length.
    pub lmax: usize,
    /// Tail bound evaluated at `hi`.
    pub tail_at_hi: f64,
    /// `hi − lo ≤ tol` was reached.
    pub converged: bool,
    /// Enumeration stopped at the candidate cap before the requested length.
    pub cap_truncated: bool,
    pub matchings: MatchingSet,
}

impl IifsBounds {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}

/// `lo` and `hi` from the counts `c_L` for `L ≤ lmax` and a tail model.
///
/// `lo` solves the truncated equation `Σ c_L β^(−Lt) = 1`; `hi` is the
/// smallest `t ≤ 1` at which the truncated sum plus the tail bound is at most
/// 1 (a sumset in the line never exceeds dimension 1). Returns
/// `(lo, hi, tail at hi)`.
pub fn truncated_bounds(
    counts: &[(usize, usize)],
    lmax: usize,
    first_lengths: &[usize],
    second_lengths: &[usize],
    base: &Base,
    model: TailModel,
) -> (f64, f64, f64) {
    let terms: Vec<(usize, f64)> = counts.iter().map(|&(l, c)| (l, c as f64)).collect();
    let ln_beta = base.ln();
    let x_of = |t: f64| (-t * ln_beta).exp();
    let series = |t: f64| power_series(&terms, x_of(t));

    // lower bound: keep series(lo) ≥ 1
    let total: f64 = terms.iter().map(|&(_, c)| c).sum();
    let mut lo = 0.0;
    if total >= 1.0 + SERIES_MARGIN {
        let mut top = total.ln() / ln_beta + 1.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + top);
            if mid <= lo || mid >= top {
                break;
            }
            if series(mid) >= 1.0 + SERIES_MARGIN {
                lo = mid;
            } else {
                top = mid;
            }
        }
    }

    let tail = Tail::new(model, first_lengths, second_lengths, lmax);
    let total_at = |t: f64| -> Option<(f64, f64)> {
        let tb = tail.bound(x_of(t))?;
        Some((series(t) + tb, tb))
    };
    let fits = |t: f64| total_at(t).filter(|&(v, _)| v <= 1.0 - SERIES_MARGIN);

    // a lone map with nothing beyond the cutoff: the exact boundary case t = 0
    if total <= 1.0 && tail.bound(1.0) == Some(0.0) {
        return (0.0, 0.0, 0.0);
    }
    if let Some((_, tb)) = fits(0.0) {
        return (0.0, 0.0, tb);
    }
    let Some((_, mut tail_hi)) = fits(1.0) else {
        let tb = total_at(1.0).map_or(f64::INFINITY, |(_, tb)| tb);
        return ((lo - WIDEN).max(0.0), 1.0, tb);
    };
    let (mut a, mut b) = (lo.min(1.0), 1.0);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        match fits(mid) {
            Some((_, tb)) => {
                b = mid;
                tail_hi = tb;
            }
            None => a = mid,
        }
    }
    let lo = (lo - WIDEN).max(0.0);
    let hi = (b + WIDEN).min(1.0).max(lo);
    (lo, hi, tail_hi)
}

/// Bracket the dimension of the IIFS generated by the primitive Matchings of
/// `d1` and `d2`, raising the enumeration length until the width is at most
/// `opts.tol`, the length ceiling is reached, or the candidate cap stops
/// enumeration.
///
/// The bracket is valid when the full Matching system satisfies the open set
/// condition.
pub fn iifs_dimension_bounds(
    d1: &DigitalSet,
    d2: &DigitalSet,
    base: &Base,
    opts: &DimensionOptions,
) -> Result<IifsBounds> {
    let mut en = MatchingEnumerator::new(d1, d2, opts.cap);
    let ceiling = opts.max_lmax().max(opts.lmax);
    let mut target = opts.lmax.max(1);
    loop {
        let cap_truncated = match en.extend_to(target) {
            Ok(()) => false,
            Err(Error::CapExceeded { .. }) => true,
            Err(e) => return Err(e),
        };
        let lmax = en.cutoff();
        let counts = matching_counts(en.matching_set());
        let (lo, hi, tail_at_hi) = truncated_bounds(
            &counts,
            lmax,
            en.first_lengths(),
            en.second_lengths(),
            base,
            opts.tail,
        );
        let converged = hi - lo <= opts.tol;
        if converged || cap_truncated || target >= ceiling {
            return Ok(IifsBounds {
                lo,
                hi,
                lmax,
                tail_at_hi,
                converged,
                cap_truncated,
                matchings: en.matching_set().clone(),
            });
        }
        target = (target + (target / 2).max(8)).min(ceiling);
    }
}
