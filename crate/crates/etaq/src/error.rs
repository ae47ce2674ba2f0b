//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by exact arithmetic, formula evaluation, and parsing.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arguments h = {h}, k = {k} are not coprime")]
    NotCoprime { h: i64, k: u64 },

    #[error("modulus {0} must be odd and positive")]
    BadJacobiModulus(i64),

    #[error("{0}")]
    InvalidArgument(String),

    #[error("{h}/{k} is not a proper Farey fraction of order {n}")]
    NotInFarey { h: u64, k: u64, n: u64 },

    #[error("eta-quotient spec is empty")]
    EmptySpec,

    #[error("invalid spec factor: {0}")]
    BadFactor(String),

    #[error("series has non-unit constant term; reciprocal requires coefficient 1 or -1 at q^0")]
    NonUnitConstantTerm,

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("unbound variable {0} in expression")]
    UnboundVariable(char),

    #[error("square root of negative value in expression")]
    NegativeRadicand,

    #[error("division by zero in expression")]
    DivisionByZero,

    #[error("expression is not in product form; cannot extract an exact constant")]
    NotProductForm,

    #[error("bessel order nu = {0}/2 is below the supported minimum nu = 1")]
    BesselOrderTooSmall(u32),

    #[error("bessel argument must be nonnegative, got {0}")]
    NegativeBesselArgument(String),

    #[error("sinh kernel requires n > shift (radicand must be positive), got radicand {0}")]
    SinhKernelDomain(String),

    #[error("kernel evaluation failed for formula `{formula}`, case d = {d}, k = {k}: {source}")]
    Kernel {
        formula: String,
        d: u64,
        k: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("no contributing case: every case has nonpositive z^-1 coefficient")]
    NoContributingCase,

    #[error("net eta exponent r = {0} is negative; orders nu = 1 + r/2 < 1 are unsupported")]
    NegativeNetExponent(i64),

    #[error("precision must be at least 15 significant digits, got {0}")]
    PrecisionTooLow(u32),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
