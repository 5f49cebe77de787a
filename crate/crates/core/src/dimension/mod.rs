//! Hausdorff dimension of the sumset.
//!
//! * Ratios without a common base: the sum of the factor dimensions, capped
//!   at 1, provided each factor passes the interval separation check.
//! * Finite Matching set: the similarity dimension of the Matching system,
//!   exact when the open set condition is verified.
//! * Infinite Matching set: a certified bracket from the truncated series and
//!   a tail bound.

mod bounds;
mod moran;
mod osc;
mod series;
mod tail;

pub use bounds::{iifs_dimension_bounds, truncated_bounds, IifsBounds};
pub use moran::{moran_residual, moran_root};
pub use osc::{osc_interval_check, osc_sufficient_check, OscMethod, OscReport, OscVerdict};
pub use tail::{concat_counts, concat_growth_rate, TailModel};

use std::fmt;

use crate::block::Side;
use crate::classify::{
    c_countable_sufficient, classify_structure, irrational_assumption, Countability,
    IrrationalAssumption, LengthMultiset, StructureClass,
};
use num_traits::One;

use crate::{Base, Ifs, Interval, Rational, Result, DEFAULT_CANDIDATE_CAP};

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionOptions {
    /// Initial Matching length for the infinite case.
    pub lmax: usize,
    /// Target width of the bracket in the infinite case.
    pub tol: f64,
    /// Limit on cut-free concatenation pairs per length.
    pub cap: u64,
    /// Largest length the infinite case may raise `lmax` to; defaults to
    /// `4·lmax`.
    pub max_lmax: Option<usize>,
    pub tail: TailModel,
}

impl DimensionOptions {
    pub fn max_lmax(&self) -> usize {
        self.max_lmax.unwrap_or(4 * self.lmax)
    }
}

impl Default for DimensionOptions {
    fn default() -> Self {
        Self {
            lmax: 40,
            tol: 1e-3,
            cap: DEFAULT_CANDIDATE_CAP,
            max_lmax: None,
            tail: TailModel::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DimensionKind {
    /// Similarity dimension of a finite system with verified separation.
    Exact,
    /// Certified `[lo, hi]` for an infinite system.
    Interval,
    /// Only an upper bound is justified; separation was not verified.
    UpperBoundOnly,
    /// `min{1, s₁ + s₂}` for factors without a common base.
    PeresShmerkin,
}

impl fmt::Display for DimensionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DimensionKind::Exact => "Exact",
            DimensionKind::Interval => "Interval",
            DimensionKind::UpperBoundOnly => "UpperBoundOnly",
            DimensionKind::PeresShmerkin => "PeresShmerkin",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DimensionResult {
    pub kind: DimensionKind,
    /// The dimension (`Exact`, `PeresShmerkin`) or the upper bound
    /// (`UpperBoundOnly`).
    pub value: Option<f64>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub osc_method: OscMethod,
    /// Sufficient-inequality constants, when a Matching system was built.
    pub osc: Option<OscReport>,
    /// Largest Matching length enumerated.
    pub lmax: Option<usize>,
    /// Tail bound at `hi` in the infinite case.
    pub tail_bound: Option<f64>,
    /// False when the bracket is wider than the requested tolerance.
    pub converged: bool,
    /// Enumeration stopped at the candidate cap.
    pub cap_truncated: bool,
    pub notes: Vec<String>,
}

impl DimensionResult {
    fn new(kind: DimensionKind, osc_method: OscMethod) -> Self {
        Self {
            kind,
            value: None,
            lo: None,
            hi: None,
            osc_method,
            osc: None,
            lmax: None,
            tail_bound: None,
            converged: true,
            cap_truncated: false,
            notes: Vec::new(),
        }
    }
}

pub const NOTE_DIMENSION_OF_E: &str =
    "dimension of E; equals dim(K1+K2) if the closure adds only countably many points";

/// Dimension of `K₁ + K₂` for the attractors of `ifs1` and `ifs2`.
pub fn dimension(ifs1: &Ifs, ifs2: &Ifs, opts: &DimensionOptions) -> Result<DimensionResult> {
    match align_bases(ifs1, ifs2)? {
        None => peres_shmerkin(ifs1, ifs2),
        Some((r1, r2)) => common_base(&r1, &r2, opts),
    }
}

/// Both systems rewritten over the largest common root of their bases, or
/// `None` when the ratios have no common base.
pub fn align_bases(ifs1: &Ifs, ifs2: &Ifs) -> Result<Option<(Ifs, Ifs)>> {
    match irrational_assumption(&ifs1.ratios(), &ifs2.ratios())? {
        IrrationalAssumption::Holds => Ok(None),
        IrrationalAssumption::Fails { .. } => {
            let (base, p1, p2) = common_root(ifs1.base(), ifs2.base())?;
            Ok(Some((ifs1.rebase(&base, p1)?, ifs2.rebase(&base, p2)?)))
        }
    }
}

/// Largest `γ` with `β₁ = γ^p₁` and `β₂ = γ^p₂`. Working over a root of the
/// input bases (rather than of the ratios) keeps literal blocks intact.
fn common_root(b1: &Base, b2: &Base) -> Result<(Base, u32, u32)> {
    let inv = |b: &Base| Rational::one() / b.beta();
    match irrational_assumption(&[inv(b1)], &[inv(b2)])? {
        IrrationalAssumption::Fails {
            base,
            exponents1,
            exponents2,
        } => Ok((base, exponents1[0], exponents2[0])),
        IrrationalAssumption::Holds => Err(crate::Error::BaseMismatch(
            Box::new(b1.beta().clone()),
            Box::new(b2.beta().clone()),
        )),
    }
}

fn peres_shmerkin(ifs1: &Ifs, ifs2: &Ifs) -> Result<DimensionResult> {
    let s1 = moran_root(&lengths_of(ifs1), ifs1.base())?;
    let s2 = moran_root(&lengths_of(ifs2), ifs2.base())?;
    let separated = |ifs: &Ifs| osc_interval_check(&ifs.similitudes(), &ifs.hull(), ifs.base());
    let value = (s1 + s2).min(1.0);
    let mut r = if separated(ifs1) && separated(ifs2) {
        DimensionResult::new(DimensionKind::PeresShmerkin, OscMethod::PairwiseInterval)
    } else {
        let mut r = DimensionResult::new(DimensionKind::UpperBoundOnly, OscMethod::Unverified);
        r.notes
            .push("a factor failed the interval separation check".to_string());
        r
    };
    r.value = Some(value);
    Ok(r)
}

fn lengths_of(ifs: &Ifs) -> Vec<usize> {
    ifs.exponents().into_iter().map(|e| e as usize).collect()
}

fn common_base(ifs1: &Ifs, ifs2: &Ifs, opts: &DimensionOptions) -> Result<DimensionResult> {
    let base = ifs1.base();
    let d1 = ifs1.digital_set(Side::First).reduced();
    let d2 = ifs2.digital_set(Side::Second).reduced();
    let (h1, h2) = (ifs1.hull(), ifs2.hull());
    let hull: Interval = h1.sum(&h2);

    match classify_structure(ifs1, ifs2, opts.cap)? {
        StructureClass::SelfSimilar { matchings, bound } => {
            let lengths: Vec<usize> = matchings.iter().map(|m| m.len()).collect();
            let s = moran_root(&lengths, base)?;
            let report = osc_sufficient_check(&d1, &d2, &h1, &h2, &matchings, base);
            let method = if report.satisfied() {
                OscMethod::SufficientInequality
            } else if osc_interval_check(&matchings.similitudes(base), &hull, base) {
                OscMethod::PairwiseInterval
            } else {
                OscMethod::Unverified
            };
            let kind = if method == OscMethod::Unverified {
                DimensionKind::UpperBoundOnly
            } else {
                DimensionKind::Exact
            };
            let mut r = DimensionResult::new(kind, method);
            r.value = Some(s);
            r.osc = Some(report);
            r.lmax = Some(bound);
            Ok(r)
        }
        StructureClass::IifsAttractor { .. } => {
            let b = iifs_dimension_bounds(&d1, &d2, base, opts)?;
            let report = osc_sufficient_check(&d1, &d2, &h1, &h2, &b.matchings, base);
            let separated = osc_interval_check(&b.matchings.similitudes(base), &hull, base);
            let mut r = if separated {
                let mut r =
                    DimensionResult::new(DimensionKind::Interval, OscMethod::PairwiseOnTruncation);
                r.lo = Some(b.lo);
                r.hi = Some(b.hi);
                r
            } else {
                let mut r =
                    DimensionResult::new(DimensionKind::UpperBoundOnly, OscMethod::Unverified);
                r.value = Some(b.hi);
                r
            };
            r.osc = Some(report);
            r.lmax = Some(b.lmax);
            r.tail_bound = Some(b.tail_at_hi);
            r.converged = b.converged;
            r.cap_truncated = b.cap_truncated;
            let (l1, l2) = (LengthMultiset::of(&d1), LengthMultiset::of(&d2));
            if c_countable_sufficient(&l1, &l2) == Countability::Unknown {
                r.notes.push(NOTE_DIMENSION_OF_E.to_string());
            }
            Ok(r)
        }
    }
}
