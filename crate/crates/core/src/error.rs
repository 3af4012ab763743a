use thiserror::Error;

use crate::hyperreal::{HyperrealError, Rational};

/// Domain errors raised by the decision-theoretic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("mixture weight {0} is outside [0, 1]")]
    WeightOutOfRange(Rational),
    #[error("acts are defined over different state sets")]
    StateMismatch,
    #[error("state set is empty")]
    EmptyStateSet,
    #[error("invalid lottery: {0}")]
    InvalidLottery(String),
    #[error("invalid probability measure: {0}")]
    InvalidMeasure(String),
    #[error("lottery space has no generators")]
    EmptyGenerators,
    #[error("unknown outcome '{0}'")]
    UnknownOutcome(String),
    #[error("unknown state '{0}'")]
    UnknownState(String),
    #[error("outcome '{0}' declared twice")]
    DuplicateOutcome(String),
    #[error("state '{0}' declared twice")]
    DuplicateState(String),
    #[error("utility of '{0}' is not strictly positive")]
    NonPositiveModel(String),
    #[error("lottery support has {0} outcomes; at most 2 are supported")]
    UnsupportedSupport(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("p overrides r; no indifference point exists")]
    OverridesViolation,
    #[error("preference relation is trivial: best and worst lotteries are indifferent")]
    TrivialRelation,
    #[error("extraction failed: {0}")]
    ExtractionFailure(String),
    #[error("symbolic and grid verdicts disagree: {0}")]
    MethodDisagreement(String),
    #[error(transparent)]
    Hyperreal(#[from] HyperrealError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
