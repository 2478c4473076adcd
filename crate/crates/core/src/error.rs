use thiserror::Error;

/// Errors raised by the library. Mathematical precondition failures are
/// reported here; nothing in the crate returns approximate answers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("mismatched quadratic extensions: s^2 = {0} vs s^2 = {1}")]
    MismatchedExtension(String, String),

    #[error("invalid quadratic extension: s^2 = {0} must be a positive rational that is not a square")]
    InvalidExtension(String),

    #[error("square root of negative rational {0}")]
    NegativeSquare(String),

    #[error("cannot parse {0:?} as a rational")]
    ParseRational(String),

    #[error("zero polynomial passed to {0}")]
    ZeroPolynomial(&'static str),

    #[error("polynomial {0} is not squarefree")]
    NotSquarefree(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("Jacobi identity fails on (e{0}, e{1}, e{2})")]
    Jacobi(usize, usize, usize),

    #[error("generators do not commute: {0}")]
    NonAbelian(String),

    #[error("span is not closed under the commutator: {0}")]
    NotClosed(String),

    #[error("matrix is derogatory (minimal polynomial differs from characteristic polynomial)")]
    Derogatory,

    #[error("not nilpotent: {0}")]
    NotNilpotent(String),

    #[error("irreducible factor of degree > 2 unsupported: {0}")]
    UnsupportedFactor(String),

    #[error("eigenvalues need more than one square root: s^2 in {0}")]
    MultipleExtensions(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("unknown catalog entry {0:?}")]
    UnknownEntry(String),

    #[error("bracket table of {name} disagrees with its matrix construction\nfrom matrices:\n{from_matrices}\nfrom table:\n{from_table}")]
    TableMismatch {
        name: String,
        from_matrices: String,
        from_table: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
