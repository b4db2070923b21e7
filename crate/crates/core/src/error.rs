use thiserror::Error;

use crate::diagram::Side;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("window must be non-empty")]
    EmptyDiagramWindow,
    #[error("border sequence increases at j={j}: M_{{j}}={prev} < M_{{j+1}}={next}")]
    MonotonicityViolation { j: i64, prev: i64, next: i64 },
    #[error("{kind} tail is not allowed on the {side} side")]
    TailMismatch { side: Side, kind: &'static str },
    #[error("geometric tail with all slopes equal must be written as a periodic tail")]
    DegenerateAllEqualSlopes,
    #[error("invalid tail: {0}")]
    InvalidTail(String),
    #[error("diagram is simple (a translate of Z_+^2, Z_+ x Z or Z x Z_+); spectral parameters are not used for it")]
    SimpleDiagram,
    #[error("transpose not supported: {0}")]
    UnsupportedTranspose(String),
    #[error("border sequence is infinite at j={j} inside the scan range")]
    ScanOverflow { j: i64 },
    #[error("{name}={value} lies outside [0, 1]")]
    OutOfUnitInterval { name: &'static str, value: f64 },
    #[error("band exponents are inverted: p={p} > q={q}")]
    InvertedBand { p: String, q: String },
    #[error("|mu|={0} must lie in the open interval (0, 1)")]
    MuOutOfRange(f64),
    #[error("numeric regime not covered: {0}")]
    ParameterRegime(String),
    #[error("degenerate shift: both ends of the index range are finite (use the rule lambda = 0)")]
    DegenerateSpec,
    #[error("window does not meet the diagram")]
    EmptyWindow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
