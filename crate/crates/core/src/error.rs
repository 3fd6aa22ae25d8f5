use thiserror::Error;

/// Errors produced anywhere in the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: only d = 1 and d = 2 are supported")]
    InvalidDimension(usize),
    #[error("points per axis must be a power of two >= 8, got {0}")]
    InvalidPointCount(usize),
    #[error("box side must be positive and finite, got {0}")]
    NonPositiveLength(f64),
    #[error("field length {got} does not match grid size {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("field is on the {got} side, operation expects the {expected} side")]
    SideMismatch {
        expected: &'static str,
        got: &'static str,
    },
    #[error("grids differ: {0}")]
    GridMismatch(String),
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error("negative homogeneous order {order} applied to a field with nonzero mean")]
    NonzeroZeroMode { order: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("non-finite field after t = {last_good_time}")]
    NonFinite { last_good_time: f64 },
    #[error("blow-up guard tripped at t = {time}: max|u| = {max_modulus} exceeds {limit}")]
    BlowUp {
        time: f64,
        max_modulus: f64,
        limit: f64,
    },
    #[error("boundary mass fraction {fraction:e} exceeds {limit:e}")]
    BoundaryMass { fraction: f64, limit: f64 },
    #[error("rescaled support overflows the box: boundary mass fraction {fraction:e} > {limit:e}")]
    SupportOverflow { fraction: f64, limit: f64 },
    #[error("wrap-around revival detected at t = {time}: boundary mass fraction {fraction:e} > {limit:e}")]
    RevivalContamination { time: f64, fraction: f64, limit: f64 },
    #[error("sample at t = {time} alone has norm {value} above threshold {eta}")]
    IndivisibleSample { time: f64, value: f64, eta: f64 },
    #[error("time series is empty")]
    EmptySeries,
    #[error("time series carries no field snapshots")]
    MissingSnapshots,
    #[error("need at least {needed} usable dyadic shells, found {found}")]
    TooFewShells { needed: usize, found: usize },
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("config line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors signalling a numerical abort rather than bad input.
    pub fn is_numerical_abort(&self) -> bool {
        matches!(
            self,
            Error::NonFinite { .. } | Error::BlowUp { .. } | Error::RevivalContamination { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
