use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("n_max must be at least 1")]
    EmptyTable,

    #[error("n_max {0} exceeds the sieve cap of 1000000")]
    SieveCapExceeded(usize),

    #[error("user function requires a value for prime {0}")]
    MissingPrimeValue(u64),

    #[error("user prime map key {0} is not prime")]
    NonPrimeKey(u64),

    #[error("prime values are only accepted for the user kind, got `{0}`")]
    UnexpectedPrimeValues(String),

    #[error("the user kind requires a prime-value map")]
    MissingPrimeValues,

    #[error("unknown function kind `{0}`")]
    UnknownKind(String),

    #[error("malformed user function spec `{0}`")]
    BadUserSpec(String),

    #[error("malformed rational `{0}`")]
    BadRational(String),

    #[error("matrix order must be at least 1")]
    EmptyMatrix,

    #[error("matrix order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("{kind} table reaches {have} but index {need} is required")]
    TableTooShort {
        kind: String,
        have: usize,
        need: usize,
    },

    #[error("{kind} does not claim total multiplicativity")]
    NotTotallyMultiplicative { kind: String },

    #[error("no closed determinant form for family `{family}` with g = {kind}")]
    NoClosedForm { family: String, kind: String },

    #[error(
        "closed-form lcm determinants disagree at n = {n}: \
         factorial form {factorial} vs totient-product form {product}"
    )]
    LcmFormsDisagree {
        n: usize,
        factorial: String,
        product: String,
    },

    #[error("factorization factors must share one order")]
    FactorOrderMismatch,

    #[error("factorization middle factor must be diagonal")]
    MiddleNotDiagonal,

    #[error("unknown claim `{0}`")]
    UnknownClaim(String),

    #[error("invalid suite config: {0}")]
    InvalidSuiteConfig(&'static str),

    #[error("malformed csv matrix: {0}")]
    BadCsv(String),

    #[error("malformed json matrix: {0}")]
    BadJson(String),

    #[error("unknown output format `{0}`, expected csv, json or latex")]
    UnknownFormat(String),
}

pub type Result<T> = std::result::Result<T, Error>;
