use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A decomposition step produced a negative multiplicity.
    #[error("inconsistent decomposition: {0}")]
    Inconsistent(String),

    #[error("invalid product: {0}")]
    InvalidSpec(String),

    #[error("codimension r={r} outside 1..={dim}")]
    CodimensionOutOfRange { r: u32, dim: u32 },

    #[error("degree {degree} outside 0..={max}")]
    DegreeOutOfRange { degree: u32, max: u32 },

    #[error("exact integer overflow: {0}")]
    Overflow(String),

    #[error("unsupported Galois type: {0}")]
    UnsupportedGaloisType(String),

    #[error("bad reduction at p={p}")]
    BadReduction { p: u64 },

    #[error("prime p={p} is not supported by native point counting")]
    UnsupportedPrime { p: u64 },

    #[error("singular Weierstrass model (discriminant 0)")]
    SingularCurve,

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("bound violation at p={p}: {msg}")]
    BoundViolation { p: u64, msg: String },

    #[error("Hasse bound violated: |{a}| > 2*sqrt({p})")]
    HasseViolation { a: i64, p: u64 },

    #[error("factor `{factor}` has no Euler data at p={p}")]
    MissingPrime { factor: String, p: u64 },

    #[error("need at least {needed} primes, got {got}")]
    TooFewPrimes { needed: usize, got: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("insufficient Euler data for `{factor}`: {missing} of {expected} primes missing")]
    InsufficientData {
        factor: String,
        missing: usize,
        expected: usize,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
