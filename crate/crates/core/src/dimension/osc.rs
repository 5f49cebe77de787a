//! Open set condition checks for Matching systems.

use std::fmt;

use num_traits::{One, Signed};

use crate::matching::MatchingSet;
use crate::{Base, DigitalSet, Interval, Rational, Similitude};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscVerdict {
    Satisfied,
    Failed,
    Inconclusive,
}

/// How the open set condition was established for a dimension result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OscMethod {
    /// `A + B + B₁ + B₂ < c·(β − 1)` on a complete Matching set.
    SufficientInequality,
    /// Disjoint open hull images for a complete, finite system.
    PairwiseInterval,
    /// Disjoint open hull images for every enumerated Matching of an infinite
    /// system; unseen Matchings are not checked.
    PairwiseOnTruncation,
    Unverified,
}

impl fmt::Display for OscMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OscMethod::SufficientInequality => "sufficient-inequality",
            OscMethod::PairwiseInterval => "pairwise-interval",
            OscMethod::PairwiseOnTruncation => "pairwise-interval on truncation",
            OscMethod::Unverified => "unverified",
        })
    }
}

/// Constants of the sufficient inequality and its exact verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct OscReport {
    /// Largest digit over the first digital set.
    pub a: Rational,
    /// Largest digit over the second digital set.
    pub b: Rational,
    /// Hull widths of the two factors.
    pub b1: Rational,
    pub b2: Rational,
    /// Minimum distance between digits of two distinct Matchings; `None`
    /// with fewer than two Matchings.
    pub c: Option<Rational>,
    /// `A + B + B₁ + B₂`.
    pub lhs: Rational,
    /// `c·(β − 1)`, when `c` is defined.
    pub rhs: Option<Rational>,
    /// Whether the supplied Matching set is known to be complete.
    pub complete: bool,
    pub verdict: OscVerdict,
}

impl OscReport {
    pub fn satisfied(&self) -> bool {
        self.verdict == OscVerdict::Satisfied
    }
}

/// Minimum `|x − y|` over digits `x`, `y` of two distinct Matchings.
fn digit_separation(matchings: &MatchingSet) -> Option<Rational> {
    let mut tagged: Vec<(&Rational, usize)> = matchings
        .iter()
        .enumerate()
        .flat_map(|(owner, m)| m.digits().iter().map(move |d| (d, owner)))
        .collect();
    if matchings.len() < 2 {
        return None;
    }
    tagged.sort();
    tagged.dedup();
    let mut best: Option<Rational> = None;
    for w in tagged.windows(2) {
        let ((x, i), (y, j)) = (w[0], w[1]);
        if i == j {
            continue;
        }
        let gap = y - x;
        if best.as_ref().is_none_or(|b| gap < *b) {
            best = Some(gap);
        }
    }
    best
}

/// Evaluate the sufficient inequality `A + B + B₁ + B₂ < c·(β − 1)` exactly.
///
/// The verdict is `Inconclusive` when `c` is zero or undefined, or when the
/// Matching set is not complete (unseen Matchings could shrink `c`).
pub fn osc_sufficient_check(
    d1: &DigitalSet,
    d2: &DigitalSet,
    hull1: &Interval,
    hull2: &Interval,
    matchings: &MatchingSet,
    base: &Base,
) -> OscReport {
    let a = d1.max_digit();
    let b = d2.max_digit();
    let b1 = hull1.width();
    let b2 = hull2.width();
    let lhs = &a + &b + &b1 + &b2;
    let c = digit_separation(matchings);
    let rhs = c.as_ref().map(|c| c * (base.beta() - Rational::one()));
    let complete = matchings.is_complete();
    let verdict = match (&c, &rhs) {
        (Some(c), Some(rhs)) if c.is_positive() && complete => {
            if lhs < *rhs {
                OscVerdict::Satisfied
            } else {
                OscVerdict::Failed
            }
        }
        _ => OscVerdict::Inconclusive,
    };
    OscReport {
        a,
        b,
        b1,
        b2,
        c,
        lhs,
        rhs,
        complete,
        verdict,
    }
}

/// True iff the open images of the interior of `hull` under `maps` are
/// pairwise disjoint and contained in `hull`. Touching endpoints are allowed.
///
/// A degenerate hull has an empty interior, so only a single map passes.
pub fn osc_interval_check(maps: &[Similitude], hull: &Interval, base: &Base) -> bool {
    if maps.is_empty() {
        return false;
    }
    if hull.is_degenerate() {
        return maps.len() == 1;
    }
    let mut images: Vec<Interval> = maps.iter().map(|m| hull.image(m, base)).collect();
    if !images.iter().all(|im| hull.contains(im)) {
        return false;
    }
    images.sort_by(|x, y| x.lo().cmp(y.lo()).then_with(|| x.hi().cmp(y.hi())));
    images.windows(2).all(|w| w[0].hi() <= w[1].lo())
}
