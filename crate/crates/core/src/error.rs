use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a Latin square: {0}")]
    NotLatin(String),
    #[error("no two-sided neutral element")]
    NoNeutral,
    #[error("element {element} out of range for order {order}")]
    InvalidElement { element: usize, order: usize },
    #[error("loop is not power-associative")]
    NotPowerAssociative,
    #[error("loop is not commutative")]
    NotCommutative,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("element set is not a subloop")]
    NotSubloop,
    #[error("subloop is not normal")]
    NotNormal,
    #[error("squaring is not a bijection")]
    SquaringNotBijective,
    #[error("the result fails the left Bol identity")]
    NotBol,
    #[error("loop is not an A-loop")]
    NotALoop,
    #[error("not an abelian group")]
    NotAbelianGroup,
    #[error("map is not a bijection")]
    NotBijection,
    #[error("map is not an automorphism")]
    NotAutomorphism,
    #[error("dimension {0} is too small (need at least 3)")]
    DimensionTooSmall(usize),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("not a symmetric group cocycle")]
    NotGroupCocycle,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("both loops must be nonassociative")]
    IsGroup,
    #[error("no element z with g(z) = z^-1 t1^-1 t2")]
    NoWitness,
    #[error("C must be invertible")]
    CNotInvertible,
    #[error("orbit space of size {0} exceeds the enumeration limit")]
    OrbitSpaceTooLarge(u128),
    #[error("unsupported order {0}")]
    UnsupportedOrder(usize),
    #[error("unsupported prime {0}")]
    UnsupportedPrime(usize),
    #[error("parse error: {0}")]
    ParseError(String),
    #[error("certificate check failed: {0}")]
    Certification(String),
    #[error("required catalog is missing: {0}")]
    MissingCatalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
