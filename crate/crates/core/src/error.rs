use thiserror::Error;

/// Errors raised by the library. Parser and catalog errors always carry a
/// position (line/column) or a JSON path.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid generalized Cartan matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,

    #[error("edge ({0}, {1}) has a_ij*a_ji = {2}, outside the supported angle set")]
    UnsupportedEdge(usize, usize, i64),

    #[error("reflection coefficient 2(v|b)/(b|b) = {num}/{den} is not an integer")]
    NonIntegralReflection { num: i128, den: i128 },

    #[error("vector {0:?} is not a real root")]
    NotRealRoot(Vec<i64>),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("matrix does not have full row rank")]
    RankDeficient,

    #[error("lattice is not contained in the ambient lattice")]
    NotSublattice,

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("induced Cartan entry 2(b{i}|b{j})/(b{i}|b{i}) is not an integer")]
    NotCrystallographic { i: usize, j: usize },

    #[error("roots {i} and {j} form an acute angle")]
    AcutePair { i: usize, j: usize },

    #[error("roots are linearly dependent")]
    DependentRoots,

    #[error("node {i} is not a leaf joined to node {j} by a doubling edge: {reason}")]
    NotDoublingFacet { i: usize, j: usize, reason: String },

    #[error("induced Cartan matrix is not of hyperbolic type")]
    NotHyperbolicSubtype,

    #[error("height bound {bound} is below the largest sub-root height {needed}")]
    HeightBoundTooSmall { bound: u64, needed: u64 },

    #[error("inner embedding ambient does not match the outer induced matrix")]
    MismatchedChain,

    #[error("coset enumeration exceeded {0} cosets")]
    Exceeded(usize),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("duplicate edge at line {line}")]
    DuplicateEdge { line: usize },

    #[error("bad label `{label}` at line {line}")]
    BadLabel { line: usize, label: String },

    #[error("self loop at line {line}")]
    SelfLoop { line: usize },

    #[error("node index {index} out of range at line {line}")]
    IndexOutOfRange { line: usize, index: usize },

    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },

    #[error("record {0} has not been verified")]
    UnverifiedRecord(usize),

    #[error("{0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
