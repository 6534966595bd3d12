use thiserror::Error;

/// Errors raised by the engine, the structure detectors and the harness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid byte {byte:#04x} at offset {offset} (expected '0' or '1')")]
    MalformedSequence { offset: usize, byte: u8 },

    #[error("prefix length {requested} exceeds sequence length {available}")]
    InputBounds { requested: usize, available: usize },

    #[error("step bound must be at least 1")]
    ZeroStep,

    #[error("composition index {index} outside the outer path of length {len}")]
    CompositionDomain { index: usize, len: usize },

    #[error("oracle size guard: |X| = {x_len} (max 20), L = {rows} (max 10)")]
    OracleSize { x_len: usize, rows: usize },

    #[error("structure precondition failed on the {side} side: {reason}")]
    Structure { side: Side, reason: String },

    #[error("base path precondition failed: {0}")]
    BasePath(BasePathClause),

    #[error("exponent tuple rejected: {0}")]
    Exponents(String),

    #[error("estimator underpowered: {trials} trials (minimum {minimum})")]
    Underpowered { trials: u64, minimum: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// The clause of the hop/slope precondition that a base-path request violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasePathClause {
    NotIncreasing,
    WallPresent { left: i64, right: i64 },
    Slope,
    CornerMismatch,
    OutOfRange,
}

impl std::fmt::Display for BasePathClause {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasePathClause::NotIncreasing => f.write_str("endpoints are not strictly increasing"),
            BasePathClause::WallPresent { left, right } => {
                write!(f, "vertical wall ]{left},{right}] inside the rectangle")
            }
            BasePathClause::Slope => f.write_str("slope conditions do not hold"),
            BasePathClause::CornerMismatch => f.write_str("X(v0) != Y(v1) at the upper right corner"),
            BasePathClause::OutOfRange => f.write_str("rectangle exceeds the sequences"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
