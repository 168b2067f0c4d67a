use thiserror::Error;

/// Errors produced by the exact-arithmetic and decision layers.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("cannot parse {0:?} as an exact rational")]
    ParseRational(String),

    #[error("cannot parse {0:?} as a complex rational")]
    ParseComplex(String),

    #[error("division by the zero polynomial")]
    ZeroPolyDivision,

    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,

    #[error("operation requires a nonzero polynomial")]
    ZeroPolynomial,

    #[error("defect polynomial is constant; it has no roots")]
    ConstantDefect,

    #[error("matrix needs {rows}x{cols} = {expected} entries, got {got}")]
    MatrixData {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("minor order {order} exceeds min({rows}, {cols})")]
    OrderOutOfRange {
        order: usize,
        rows: usize,
        cols: usize,
    },

    #[error("matrix too large for the minor/determinant oracle: min dimension {0} > {1}")]
    OracleTooLarge(usize, usize),

    #[error("determinant oracle needs a square pencil (k = m); got k = {k}, m = {m}")]
    NonSquarePencil { k: usize, m: usize },

    #[error("pencil has full column rank at lambda = {0}; no witness exists there")]
    NoDefectAtLambda(String),

    #[error("the zero signal is not admissible here")]
    ZeroSignal,

    #[error("no witness exists: the pair is distinguishable")]
    NoDefect,

    #[error("witness synthesis failed: {0}")]
    WitnessSynthesis(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
