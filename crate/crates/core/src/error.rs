use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("variable names differ: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },
    #[error("variable index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("elements belong to different rings")]
    RingMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix of size {0} exceeds the cofactor-expansion limit of 6")]
    TooLarge(usize),
    #[error("point is not on the hypersurface: f(point) = {0}")]
    PointOffSurface(String),
    #[error("images do not define a derivation of the quotient: delta(f) = {0}")]
    NotTangent(String),
    #[error("matrix is not idempotent: entry ({row},{col}) of Phi^2 - Phi is {witness}")]
    NotIdempotent {
        row: usize,
        col: usize,
        witness: String,
    },
    #[error("kernel generator not annihilated: component {index} is {witness}")]
    KernelNotAnnihilated { index: usize, witness: String },
    #[error("curvature does not annihilate the kernel generator: component {index} is {witness}")]
    CurvatureOnKernel { index: usize, witness: String },
    #[error("kernel generator is zero")]
    ZeroKernelGenerator,
    #[error("potential `{0}` does not preserve the module")]
    PotentialNotPreserving(String),
    #[error("supplied bracket differs from [delta, eta] in component {0}")]
    BracketMismatch(usize),
    #[error("modified curvature routes differ at ({row},{col}) by {witness}")]
    RouteMismatch {
        row: usize,
        col: usize,
        witness: String,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("unknown check `{check}` for example `{example}`")]
    UnknownCheck { example: String, check: String },
}
