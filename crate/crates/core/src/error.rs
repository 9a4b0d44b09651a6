use thiserror::Error;

/// Axioms checked when a semiring is assembled from raw tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Law {
    AdditiveAssociativity,
    AdditiveCommutativity,
    MultiplicativeAssociativity,
    AdditiveIdentity,
    MultiplicativeIdentity,
    ZeroAnnihilates,
    LeftDistributivity,
    RightDistributivity,
}

impl std::fmt::Display for Law {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Law::AdditiveAssociativity => "additive associativity",
            Law::AdditiveCommutativity => "additive commutativity",
            Law::MultiplicativeAssociativity => "associativity",
            Law::AdditiveIdentity => "additive identity",
            Law::MultiplicativeIdentity => "multiplicative identity",
            Law::ZeroAnnihilates => "zero annihilation",
            Law::LeftDistributivity => "left distributivity",
            Law::RightDistributivity => "right distributivity",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{value} exceeds the configured bound {bound}")]
    BoundExceeded { value: u64, bound: u64 },
    #[error("malformed semiring tables: {0}")]
    MalformedTables(String),
    #[error("{law} fails on ({}, {}, {})", .witness.0, .witness.1, .witness.2)]
    AxiomViolation { law: Law, witness: (usize, usize, usize) },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("operands live over different semirings")]
    RingMismatch,
    #[error("entry ({0}, {1}) below the diagonal is nonzero")]
    NotTriangular(usize, usize),
    #[error("entry {0} is not an element of the semiring")]
    EntryOutOfRange(usize),
    #[error("illegal operation direction: {0}")]
    IllegalDirection(String),
    #[error("dimension {0} is too small")]
    DimensionTooSmall(usize),

    #[error("size limit {limit} exceeded")]
    SizeLimitExceeded { limit: u64 },
    #[error("element {0} is not idempotent")]
    NotIdempotent(usize),
    #[error("unknown element key {0}")]
    UnknownElement(String),
    #[error("malformed element key: {0}")]
    MalformedKey(String),
    #[error("invalid monoid: {0}")]
    InvalidMonoid(String),
    #[error("subgroup is not central: elements {0} and {1} do not commute")]
    NotCentral(usize, usize),
    #[error("subset is not closed under multiplication: {0}")]
    NotClosed(String),
    #[error("operation requires a field")]
    FieldRequired,
    #[error("action is not faithful: elements {0} and {1} act identically")]
    ActionNotFaithful(usize, usize),

    #[error("not functional: target {target} maps to both {first} and {second}")]
    NotFunctional { target: String, first: String, second: String },
    #[error("not surjective: {missing} source elements uncovered (first: {first})")]
    NotSurjective { missing: usize, first: String },
    #[error("witness has not been verified")]
    Unverified,
    #[error("target element {0} has no preimage in the closure")]
    PreimageMissing(String),
    #[error("witness is not injective: closure {closure} vs source {source_size}")]
    NotInjective { closure: usize, source_size: usize },
    #[error("carrier mismatch: {0}")]
    ContextMismatch(String),
    #[error("census mismatch: {0}")]
    CensusMismatch(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("unsupported format {0}")]
    UnsupportedFormat(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Hex(#[from] hex::FromHexError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
