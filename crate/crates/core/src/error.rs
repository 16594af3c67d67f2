use thiserror::Error;

/// Errors raised by the symbolic pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation undefined for the zero element")]
    ZeroElement,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid operator spec `{0}`")]
    InvalidOperator(String),
    #[error("gauge matrix is singular (det = 0)")]
    SingularGauge,
    #[error("Mobius transform has a pole: c*y + d = 0")]
    PoleOfTransform,
    #[error("matrix of class {found} cannot be reduced by a single step")]
    WrongForm { found: String },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("derivation of Y is not set on this extension")]
    MissingDY,
    #[error("r must be nonzero")]
    ZeroR,
    #[error("no tau-stable place certifies v_P(tau^i r) > 0 for all i")]
    HypothesisNotCertified,
    #[error("operation requires the q-dilation operator")]
    NotQDilation,
    #[error("degenerate operator: {0}")]
    DegenerateOperator(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors produced while reading textual expressions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("exponent at {pos} is not an integer literal")]
    NonRationalExponent { pos: usize },
    #[error("cannot evaluate expression at {pos}: {msg}")]
    Eval { pos: usize, msg: String },
    #[error("matrix must be 2x2, found {rows} row(s) with lengths {lengths:?}")]
    Shape { rows: usize, lengths: Vec<usize> },
}
