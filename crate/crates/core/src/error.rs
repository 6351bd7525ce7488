use thiserror::Error;

/// Every failure the workbench can report. Variant names are surfaced verbatim
/// by the CLI and the HTTP service.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("arrow multiplicity overflow while mutating at vertex {0}")]
    MultiplicityOverflow(usize),

    #[error("quiver is not connected")]
    Disconnected,

    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("division by zero")]
    ZeroDivisor,

    #[error("remainder is nonzero")]
    NotDivisible,

    #[error("invalid seed: {0}")]
    InvalidSeed(String),

    #[error("cluster variable with a negative coefficient: {0}")]
    NotPositive(String),

    #[error("zero Laurent polynomial has no denominator vector")]
    ZeroPolynomial,

    #[error("substitution at zero for x{0}")]
    SubstitutionAtZero(usize),

    #[error("cannot parse Laurent polynomial: {0}")]
    LaurentParse(String),

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("quiver is not of Dynkin type")]
    NotDynkin,

    #[error("quiver is not of type A")]
    NotTypeA,

    #[error("quiver has an oriented cycle")]
    NotAcyclic,

    #[error("invalid Dynkin type: {0}")]
    InvalidDynkinType(String),

    #[error("invalid interval [{0}, {1}]")]
    BadInterval(usize, usize),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("representations live on different quivers")]
    QuiverMismatch,

    #[error("vector length {got} does not match {n} vertices")]
    LengthMismatch { got: usize, n: usize },

    #[error("negative Ext dimension {0}")]
    NegativeExt(i64),

    #[error("subrepresentation profile out of range")]
    ProfileOutOfRange,

    #[error("prime {0} divides a denominator of the representation")]
    PrimeCollision(u64),

    #[error("point counts are not polynomial in q: {0}")]
    InterpolationInconsistent(String),

    #[error("expected {expected} objects, got {got}")]
    WrongSetSize { expected: usize, got: usize },

    #[error("objects are not pairwise non-isomorphic")]
    DuplicateObject,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("exploration was truncated")]
    Truncated,
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::InvalidQuiver(_) => "InvalidQuiver",
            Error::MultiplicityOverflow(_) => "MultiplicityOverflow",
            Error::Disconnected => "Disconnected",
            Error::VariableMismatch(..) => "VariableMismatch",
            Error::InvalidSeed(_) => "InvalidSeed",
            Error::NotPositive(_) => "NotPositive",
            Error::ZeroDivisor => "ZeroDivisor",
            Error::NotDivisible => "NotDivisible",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::SubstitutionAtZero(_) => "SubstitutionAtZero",
            Error::LaurentParse(_) => "LaurentParse",
            Error::Json(_) => "MalformedJson",
            Error::NotDynkin => "NotDynkin",
            Error::NotTypeA => "NotTypeA",
            Error::NotAcyclic => "NotAcyclic",
            Error::InvalidDynkinType(_) => "InvalidDynkinType",
            Error::BadInterval(..) => "BadInterval",
            Error::InvalidRepresentation(_) => "InvalidRepresentation",
            Error::QuiverMismatch => "QuiverMismatch",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NegativeExt(_) => "NegativeExt",
            Error::ProfileOutOfRange => "ProfileOutOfRange",
            Error::PrimeCollision(_) => "PrimeCollision",
            Error::InterpolationInconsistent(_) => "InterpolationInconsistent",
            Error::WrongSetSize { .. } => "WrongSetSize",
            Error::DuplicateObject => "DuplicateObject",
            Error::Precondition(_) => "Precondition",
            Error::Truncated => "Truncated",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
