use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed rational `{0}`")]
    Rational(String),
    #[error("malformed polynomial `{input}`: {reason}")]
    Poly { input: String, reason: String },
    #[error("malformed vector field `{input}`: {reason}")]
    Field { input: String, reason: String },
    #[error("malformed matrix: {0}")]
    Matrix(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("inner series has nonzero constant term")]
    NonzeroConstantTerm,
    #[error("series orders differ ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("division by a series or polynomial that vanishes at the origin")]
    DivisionByZero,
    #[error("matrix size mismatch ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("invalid block composition {blocks:?} for n = {n}")]
    InvalidBlocks { n: usize, blocks: Vec<usize> },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix does not lie in the nilradical (strictly lower block-triangular)")]
    NotInNilradical,
    #[error("X = 0 generates a constant curve; distinguished curves are non-constant")]
    ConstantCurve,
    #[error("matrix is not invertible within the supported unipotent/block-diagonal structure")]
    NotInvertible,
    #[error("no binding for unknown `{0}`")]
    MissingBinding(String),
    #[error("operation requires the SL(3) Borel context")]
    NotSl3Borel,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
