use thiserror::Error;

/// Errors raised by the constructions and checks in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {0} is not a generator of the presentation")]
    UnknownGenerator(u32),
    #[error("presentation is not confluent ({0} unresolved critical pairs)")]
    NotConfluent(usize),
    #[error("generator map does not preserve the relation {0}")]
    IllDefinedMap(String),
    #[error("not a subcomplex: {0}")]
    NotASubcomplex(String),
    #[error("truncation {trunc} too low: {needed} required")]
    TruncationTooLow { trunc: usize, needed: usize },
    #[error("homology degree {degree} out of range (top degree {top})")]
    DegreeOutOfRange { degree: usize, top: usize },
    #[error("category has no basepoint")]
    NoBasepoint,
    #[error("category is not connected or not equivalent to a one-object category")]
    NotConnectedOrNotEquivalent,
    #[error("bad isomorphism family: {0}")]
    BadIsoFamily(String),
    #[error("assignment is not a functor: {0}")]
    NotAFunctor(String),
    #[error("functor sends endomorphism {0} of the basepoint to a non-identity")]
    DoesNotKillEndos(usize),
    #[error("hypothesis check and equivalence check disagree: {0}")]
    EquivalenceViolated(String),
    #[error("hypothesis fails at level {level}: {x}·{m} = {x}·k has no invertible k")]
    HypothesisFails { level: usize, x: String, m: String },
    #[error("monoid is not a group: element {0} has no inverse")]
    GNotAGroup(usize),
    #[error("simplex budget of {budget} exceeded ({needed} simplices)")]
    CutoffOverflow { budget: usize, needed: usize },
    #[error("invalid data: {0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
