use thiserror::Error;

use crate::diagram::CrossingId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at token {token:?}: {reason}")]
    Parse { token: String, reason: String },

    #[error("invalid diagram: {0}")]
    Validation(String),

    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),

    #[error("crossing {0} is virtual, a real crossing is required")]
    NotReal(CrossingId),

    #[error("crossing {0} joins two components and has no specified path")]
    MixedCrossing(CrossingId),

    #[error("expected a knot diagram, got {0} components")]
    NotAKnot(usize),

    #[error("multiplicity r = {0} is out of range")]
    BadR(i64),

    #[error("component index {0} is out of range")]
    BadComponent(usize),

    #[error("modulus n = {0} must be at least 1")]
    BadModulus(u64),

    #[error("constrained colorings need the provenance of a 2-multiplexing")]
    MissingProvenance,

    #[error("search space {0} exceeds the enumeration limit {1}")]
    TooLarge(u128, u128),

    #[error("invalid coloring: {0}")]
    InvalidColoring(String),

    #[error("move site no longer matches the diagram")]
    StaleSite,

    #[error("unknown catalog entry {0:?}")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;
