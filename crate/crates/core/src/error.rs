use thiserror::Error;

/// Errors raised by constructors and checks in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field of order {p}^{r} is larger than the supported 2^16 elements")]
    FieldTooLarge { p: u64, r: u32 },

    #[error("modulus must be monic of degree {degree} with coefficients below {p}")]
    MalformedModulus { degree: u32, p: u32 },

    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),

    #[error("{d} does not divide {order}")]
    NotADivisor { d: u64, order: u64 },

    #[error("invalid Dynkin datum {0}")]
    InvalidDynkin(String),

    #[error("{0:?} is not a root of this system")]
    NotARoot(Vec<i64>),

    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("torus parameters must be nonzero")]
    ZeroParameter,

    #[error("SL torus parameters must multiply to 1")]
    DeterminantNotOne,

    #[error("expected {expected} torus parameters, got {got}")]
    ParameterCount { expected: usize, got: usize },

    #[error("matrix does not lie in U")]
    NotInU,

    #[error("matrix is singular")]
    Singular,

    #[error("{what} needs {needed} items, over the enumeration bound {bound}")]
    BoundExceeded {
        what: &'static str,
        needed: u128,
        bound: u64,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal verification failed: {0}")]
    Verification(String),

    #[error("not constructed: {0}")]
    NotConstructed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
