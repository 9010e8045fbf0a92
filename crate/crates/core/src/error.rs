use thiserror::Error;

use crate::set::ItemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value of the empty set must be 0, got {0}")]
    NonZeroEmpty(String),
    #[error("not monotone: v({smaller:?}) > v({larger:?})")]
    NonMonotone { smaller: ItemSet, larger: ItemSet },
    #[error("negative value at {0:?}")]
    Negative(ItemSet),
    #[error("missing value for subset {0:?}")]
    MissingValue(ItemSet),
    #[error("subset {set:?} is not contained in ground set {ground:?}")]
    SubsetOutOfGround { set: ItemSet, ground: ItemSet },
    #[error("element {element} is not in ground set {ground:?}")]
    ElementOutOfGround { element: usize, ground: ItemSet },
    #[error("element {element} already belongs to ground set {ground:?}")]
    ElementCollision { element: usize, ground: ItemSet },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ground set of size {size} exceeds the limit {limit} for this operation")]
    GroundTooLarge { size: usize, limit: usize },
    #[error("valuation is not gross substitutes")]
    NotGrossSubstitutes,
    #[error("parameter constraint violated: {0}")]
    ParameterConstraintViolated(String),
    #[error("independent family is not downward closed: {missing:?} ⊂ {member:?} is missing")]
    NotDownwardClosed { member: ItemSet, missing: ItemSet },
    #[error("independence exchange axiom fails for {smaller:?}, {larger:?}")]
    ExchangeAxiomFails { smaller: ItemSet, larger: ItemSet },
    #[error("rank axioms fail at {0:?}")]
    RankAxiom(ItemSet),
    #[error("weight vector is a constant multiple of the all-one vector")]
    ConstantWeight,
    #[error("matroid has a loop at element {0}")]
    HasLoop(usize),
    #[error("matroid rank {0} is below 2")]
    RankTooLow(usize),
    #[error("face is not an M-natural polytope")]
    NotMnat,
    #[error("no bipartite decomposition found")]
    NoDecompositionFound,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
