use thiserror::Error;

/// Everything that can go wrong across the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown character '{ch}' at position {pos}")]
    UnknownCharacter { ch: char, pos: usize },
    #[error("generator index '{token}' outside {{1, -1, 2, -2}}")]
    GeneratorOutOfRange { token: String },
    #[error("mixed compact and numeric syntax at '{token}'")]
    MixedSyntax { token: String },
    #[error("malformed tuple '{text}': {reason}")]
    MalformedTuple { text: String, reason: String },
    #[error("malformed matrix '{text}': {reason}")]
    MalformedMatrix { text: String, reason: String },
    #[error("malformed LU-word '{text}': {reason}")]
    MalformedLuWord { text: String, reason: String },
    #[error("cycling is undefined on the Delta power D^{0}")]
    CyclingDeltaPower(i64),
    #[error("tuple {0} is not rigid")]
    NotRigid(String),
    #[error("cycling did not reach a rigid conjugate within {0} iterations")]
    CyclingCap(usize),
    #[error("super summit set needs a rigid tuple of canonical length >= 2, got {0}")]
    ShortTuple(String),
    #[error("determinant of {0} is not 1")]
    Determinant(String),
    #[error("matrix {0} has a negative entry")]
    NegativeEntry(String),
    #[error("rows of {0} are not comparable")]
    IncomparableRows(String),
    #[error("trace {0} is below 3, no pseudo-Anosov dilatation")]
    TraceTooSmall(String),
    #[error("matrix {0} is reducible")]
    ReducibleMatrix(String),
    #[error("degenerate measure with x = y")]
    DegenerateMeasure,
    #[error("canonical length {0} is below 2")]
    EllTooSmall(u64),
    #[error("graph mismatch: G{0} vs G{1}")]
    GraphMismatch(u8, u8),
    #[error("{name} = {value} exceeds the cap {cap}")]
    CapExceeded { name: &'static str, value: u64, cap: u64 },
    #[error("braid {0} is periodic and has no LU-word")]
    Periodic(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
