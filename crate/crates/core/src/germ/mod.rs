//! Curve germs on a smooth surface, their resolution trees, and log
//! canonical thresholds with β-dependent coefficients.

mod file;
mod lct;
mod standard;
mod tree;

pub use file::{germ_to_json, parse_germ_json, GermFileError};
pub use lct::{
    is_log_canonical, lct_constraints, lct_in_t, lct_in_t_at, lct_plain, FixedBranch,
    LinearCoefficient, ScalableBranch, WeightedGermConfig,
};
pub use standard::{cusp_tree_with_exit, standard_germ, GermParams, StandardGerm};
pub use tree::{
    discrepancies, intersection_multiplicity, total_multiplicities, BranchTrace,
    InfinitelyNearTree, PointSpec, PointValues,
};

use crate::exactmath::{ExactError, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GermError {
    #[error("tree has no points")]
    EmptyTree,
    #[error("point {0} listed twice")]
    DuplicatePoint(String),
    #[error("point {point} refers to {reference}, which does not precede it")]
    BadOrder { point: String, reference: String },
    #[error("point {0} has no parent but is not the first point")]
    SecondRoot(String),
    #[error("point {point} cannot be a satellite: {reason}")]
    BadSatellite { point: String, reason: String },
    #[error("unknown point {0}")]
    UnknownPoint(String),
    #[error("trace has {got} entries, tree has {expected} points")]
    TraceLength { expected: usize, got: usize },
    #[error("trace passes {0} but not its parent")]
    NotAncestorClosed(String),
    #[error("proximity inequality fails at {point}: multiplicity {mult} < {required}")]
    Proximity { point: String, mult: u32, required: u32 },
    #[error("coefficient of {branch} is {value} at beta = {beta}, outside [0, 1]")]
    CoefficientRange { branch: String, beta: Rational, value: Box<Rational> },
    #[error("scalable part is empty")]
    NoScalable,
    #[error("scalable branch {0} has weight 0")]
    ZeroWeight(String),
    #[error("label conflict: {0}")]
    LabelConflict(String),
    #[error("fixed part not lc: exceeds the log discrepancy at {point} for beta = {beta}")]
    FixedNotLc { point: String, beta: Rational },
    #[error("threshold unbounded: scalable part has order 0 at every point")]
    Unbounded,
    #[error("zero branch has no log canonical threshold")]
    ZeroBranch,
    #[error("unknown germ kind {0}")]
    UnknownKind(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
