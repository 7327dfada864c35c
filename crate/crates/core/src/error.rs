use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{what}: size {size} exceeds cap {cap}")]
    SizeCapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("contract and delete sets overlap")]
    OverlappingSets,
    #[error("bad rank {rank}: {reason}")]
    BadRank { rank: usize, reason: String },
    #[error("set {0} is not a flat")]
    NotAFlat(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("basepoint {0} is a loop or a coloop")]
    BadBasepoint(usize),
    #[error("lemma violated (implementation fault): {0}")]
    LemmaViolation(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("not a single-element extension of a projective geometry: {0}")]
    NotAnExtension(String),
    #[error("input extension is representable over the field")]
    RepresentableInput,
    #[error("no prime power avoids every excluded minor")]
    NoBase,
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("schema error at {location}: {kind}")]
    Schema {
        location: String,
        kind: SchemaErrorKind,
    },
}

/// What went wrong while reading a matroid or field file.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaErrorKind {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus is not a monic irreducible polynomial")]
    BadModulus,
    #[error("bases violate the exchange axiom")]
    ExchangeAxiom,
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub(crate) fn schema(location: impl Into<String>, kind: SchemaErrorKind) -> Self {
        Error::Schema {
            location: location.into(),
            kind,
        }
    }

    pub(crate) fn cap(what: &'static str, size: usize, cap: usize) -> Self {
        Error::SizeCapExceeded { what, size, cap }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
