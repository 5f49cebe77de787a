//! Structure and Hausdorff dimension of arithmetic sums `K₁ + K₂` of two
//! self-similar sets whose contraction ratios are integer powers of a common
//! rational base `β > 1`.
//!
//! Every map `x ↦ β^(−n)·x + a` is identified with a digit block
//! `(0, …, 0, βⁿ·a)` of length `n`. Sums of equal-length concatenations of
//! blocks from the two digital sets are *Matchings*; the primitive Matchings
//! form the (finite or countably infinite) similitude system whose attractor
//! is the sumset.
//!
//! Module map:
//!
//! * [`block`]: exact rational arithmetic over the base and the block algebra.
//! * [`matching`]: enumeration of primitive Matchings by increasing length.
//! * [`classify`]: finite/infinite decision on the Matching set, common-base
//!   detection and the countability test for non-Matching codings.
//! * [`dimension`]: Moran roots, open-set-condition checks, certified
//!   dimension intervals for the infinite case and the end-to-end pipeline.
//! * [`oracle`]: independent brute-force and box-counting cross-checks.
//!
//! All equality decisions run in exact rational arithmetic. Floating point is
//! used only for dimension values, and published intervals are widened to
//! survive rounding.

pub mod block;
pub mod classify;
pub mod dimension;
mod error;
pub mod matching;
pub mod oracle;

pub use error::{Error, Result};

/// Exact rational number used for bases, translations and digits.
pub type Rational = num_rational::BigRational;

pub use block::{
    block_of_similitude, concat_blocks, convex_hull, similitude_of_block, sum_blocks,
    value_of_block, Base, Block, DigitalSet, Ifs, IfsEntry, Interval, Side, Similitude,
};
pub use classify::{
    c_countable_sufficient, classify_structure, finiteness, irrational_assumption, is_homogeneous,
    is_multiplier_set, primitive_length_bound, reduced_lengths, Countability, Finiteness,
    IrrationalAssumption, LengthMultiset, StructureClass,
};
pub use dimension::{
    align_bases, concat_growth_rate, dimension, iifs_dimension_bounds, moran_root,
    osc_interval_check, osc_sufficient_check, DimensionKind, DimensionOptions, DimensionResult,
    OscMethod, OscReport, OscVerdict,
};
pub use matching::{
    enumerate_concat_sums, is_decomposable, matching_counts, matchings_up_to, Matching,
    MatchingEnumerator, MatchingSet, DEFAULT_CANDIDATE_CAP,
};
