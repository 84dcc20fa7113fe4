use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain mismatch: expected `{expected}`, found `{found}`")]
    DomainMismatch { expected: String, found: String },
    #[error("no solution")]
    NoSolution,
    #[error("position {position} out of range for arity {arity}")]
    PositionOutOfRange { position: usize, arity: usize },
    #[error("uncovered legs {legs:?}: at most one coproduct leg may be left uncovered")]
    UncoveredLeg { legs: Vec<usize> },
    #[error("not found: {0}")]
    NotFound(String),
    #[error("infinite-dimensional instance `{0}` has no oracle for this operation")]
    InfiniteDimensionalNoOracle(String),
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error("singular: {0}")]
    Singular(String),
    #[error("infinite-dimensional: {0}")]
    InfiniteDimensional(String),
    #[error("not a unital homomorphism: {0}")]
    NotUnitalHomomorphism(String),
    #[error("not a Hopf algebra (no identity): {0}")]
    NotHopf(String),
    #[error("action failed verification: {0}")]
    UnverifiedAction(String),
    #[error("commutation hypothesis fails at {witness}")]
    CommutationFailed { witness: String },
    #[error("action is not inner for the given map: {0}")]
    NotInner(String),
    #[error("cocycle conditions fail: {0}")]
    CocycleInvalid(String),
    #[error("not finite-dimensional: {0}")]
    NotFiniteDimensional(String),
    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),
    #[error("invalid coaction: {0}")]
    CoactionInvalid(String),
    #[error("unknown instance `{0}`")]
    UnknownInstance(String),
    #[error("malformed spec at {location}: {message}")]
    MalformedSpec { location: String, message: String },
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub fn malformed(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::MalformedSpec { location: location.into(), message: message.into() }
    }

    /// Stable short name, used in reports and as the FFI error discriminant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DomainMismatch { .. } => "DomainMismatch",
            Error::NoSolution => "NoSolution",
            Error::PositionOutOfRange { .. } => "PositionOutOfRange",
            Error::UncoveredLeg { .. } => "UncoveredLeg",
            Error::NotFound(_) => "NotFound",
            Error::InfiniteDimensionalNoOracle(_) => "InfiniteDimensionalNoOracle",
            Error::Undecidable(_) => "Undecidable",
            Error::Singular(_) => "Singular",
            Error::InfiniteDimensional(_) => "InfiniteDimensional",
            Error::NotUnitalHomomorphism(_) => "NotUnitalHomomorphism",
            Error::NotHopf(_) => "NotHopf",
            Error::UnverifiedAction(_) => "UnverifiedAction",
            Error::CommutationFailed { .. } => "CommutationFailed",
            Error::NotInner(_) => "NotInner",
            Error::CocycleInvalid(_) => "CocycleInvalid",
            Error::NotFiniteDimensional(_) => "NotFiniteDimensional",
            Error::AlgebraMismatch(_) => "AlgebraMismatch",
            Error::CoactionInvalid(_) => "CoactionInvalid",
            Error::UnknownInstance(_) => "UnknownInstance",
            Error::MalformedSpec { .. } => "MalformedSpec",
            Error::Io(_) => "Io",
        }
    }
}
