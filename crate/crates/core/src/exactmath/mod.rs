//! Exact rational arithmetic and continuous piecewise Möbius functions of the
//! cone-angle parameter β on `(0, 1]`.

mod fraction;
mod piecewise;
mod rational;

pub use fraction::{BetaFraction, Crossing};
pub use piecewise::{min_envelope, piecewise_equal, InitialSegment, Piece, PiecewiseBetaFunction};
pub use rational::{q, Rational};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as an exact value")]
    Parse(String),
    #[error("beta = {0} is outside (0,1]")]
    OutOfDomain(Rational),
    #[error("denominator of {0} is not positive on (0,1]")]
    NonPositiveDenominator(String),
    #[error("min-envelope of an empty list")]
    EmptyEnvelope,
    #[error("irrational crossing point: {0}")]
    IrrationalCrossing(String),
    #[error("more than one crossing point on (0,1]: {0}")]
    AmbiguousCrossing(String),
    #[error("invalid piecewise function: {0}")]
    InvalidPiecewise(String),
    #[error("function is not nonincreasing")]
    NotMonotone,
}
