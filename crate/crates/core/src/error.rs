use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("empty simplex")]
    EmptySimplex,
    #[error("simplex mentions unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertices `{0}` and `{1}` are not adjacent")]
    NotAdjacent(String, String),
    #[error("not a simplicial map: {0}")]
    NotSimplicial(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("labelling is not antisymmetric on edge ({0}, {1})")]
    NotAntisymmetric(String, String),
    #[error("cover is disconnected: labels generate a proper subgroup of order {generated} in a deck group of order {order}")]
    DisconnectedCover { generated: usize, order: usize },
    #[error("not a closed edge path: {0}")]
    NotALoop(String),
    #[error("elements belong to different groups")]
    MixedParents,
    #[error("permutation is odd")]
    OddPermutation,
    #[error("commutator search exhausted for degree {0}")]
    SearchExhausted(usize),
    #[error("group enumeration exceeded the bound of {0} elements")]
    BoundExceeded(usize),
    #[error("set window insufficient: need membership data up to {needed}, have {available}")]
    WindowInsufficient { needed: i64, available: i64 },
    #[error("window agreement unachievable on [-{0}, {0}] from the provided sets")]
    ApproximationUnachievable(i64),
    #[error("homomorphism check failed: {0}")]
    NotAHomomorphism(String),
    #[error("quotient verification failed: {0}")]
    VerificationFailed(String),
    #[error("R-set mismatch: expected {expected}, found {found}")]
    RSetMismatch { expected: String, found: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("no stabilization within {0} doublings")]
    NoStabilization(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
