use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("order relation has a cycle through `{0}` and `{1}`")]
    Cycle(String, String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("{what}: size {size} exceeds cap {cap}")]
    TooLarge {
        what: String,
        size: u128,
        cap: u128,
    },
    #[error("map is not monotone: {0}")]
    NotMonotone(String),
    #[error("map does not preserve joins: {0}")]
    NotJoinPreserving(String),
    #[error("map does not preserve meets: {0}")]
    NotMeetPreserving(String),
    #[error("structure not preserved: {0}")]
    StructureNotPreserved(String),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("side condition violated: {0}")]
    SideConditionViolated(String),
    #[error("lens pair violated: first component must contain the second ({0})")]
    LensViolation(String),
    #[error("components are not comparable: {0}")]
    Incomparable(String),
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("monad mismatch: {0}")]
    MonadMismatch(String),
    #[error("invalid monad element: {0}")]
    InvalidElement(String),
    #[error("scalar {0} outside [0,1]")]
    ScalarOutOfRange(String),
    #[error("weights sum to {0}, not 1")]
    NotNormalized(String),
    #[error("negative weight {0}")]
    NegativeWeight(String),
    #[error("value {0} outside [0,1]")]
    OutOfUnitInterval(String),
    #[error("parse error at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("range error: {0}")]
    Range(String),
    #[error("mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn too_large(what: impl Into<String>, size: u128, cap: u128) -> Self {
        Error::TooLarge {
            what: what.into(),
            size,
            cap,
        }
    }
}
