use thiserror::Error;

use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("base must exceed 1, got {0}")]
    InvalidBase(Rational),
    #[error("similitude exponent must be at least 1")]
    ZeroExponent,
    #[error("a block needs at least one digit")]
    EmptyBlock,
    #[error("{0} must not be empty")]
    Empty(&'static str),
    #[error("cannot sum blocks of lengths {left} and {right}; align lengths first")]
    LengthMismatch { left: usize, right: usize },
    #[error("interval endpoints out of order: {lo} > {hi}")]
    InvalidInterval {
        lo: Box<Rational>,
        hi: Box<Rational>,
    },
    #[error("contraction ratio {0} is outside (0, 1)")]
    RatioOutOfRange(Rational),
    #[error("both systems must use the same base, got {0} and {1}")]
    BaseMismatch(Box<Rational>, Box<Rational>),
    #[error("length bound requires a finite Matching set (homogeneous side plus multiplier set)")]
    NotFinite,
    #[error("{what} cap exceeded at length {length}: more than {cap}")]
    CapExceeded {
        what: &'static str,
        length: usize,
        cap: u64,
    },
    #[error("point cloud cap exceeded: {count} points > {cap}")]
    PointCapExceeded { count: u64, cap: u64 },
    #[error("box counting needs at least {needed} grid scales in range, found {found}")]
    TooFewScales { found: usize, needed: usize },
    #[error("box scale {scale:e} is too fine for cloud resolution {resolution:e}")]
    ScaleBelowResolution { scale: f64, resolution: f64 },
    #[error("upper dimension bound did not converge (tail bound diverges up to t = {t})")]
    NonConvergence { t: f64 },
}
