use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid rational: {0}")]
    InvalidRational(String),
    #[error("invalid interval: lo = {lo}, hi = {hi} (need 0 <= lo < hi <= 1)")]
    InvalidInterval { lo: String, hi: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("cubes {a} and {b} have overlapping interiors")]
    OverlappingCubes { a: usize, b: usize },
    #[error("not a permutation of 1..={size}")]
    InvalidPermutation { size: usize },
    #[error("configuration has no cubes")]
    EmptyConfiguration,
    #[error("invalid axis blocks: {0}")]
    InvalidBlocks(String),
    #[error("block index {block} out of range 1..={count}")]
    BlockOutOfRange { block: usize, count: usize },
    #[error("invalid tensor word: {0}")]
    InvalidWord(String),
    #[error("rewrite move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("word arity {0} is below 2")]
    ArityTooSmall(usize),
    #[error("cube count {got} exceeds the brute-force bound {bound}")]
    BruteForceBound { got: usize, bound: usize },
    #[error("block-{block} projection of cube {cube} is not interior to exactly one cube of {side}")]
    RefinementContainment { cube: usize, block: usize, side: &'static str },
    #[error("contraction parameter {0} outside [0, 1)")]
    InvalidContraction(String),
    #[error("no grid point 0..{grid}/{grid} is decomposable; increase grid")]
    NoThreshold { grid: u64 },
    #[error("pinwheel preset requires dim 2 and arity 4, got dim {dim}, arity {arity}")]
    PinwheelShape { dim: usize, arity: usize },
    #[error("SVG rendering requires dim 2, got {0}")]
    RenderDimension(usize),
    #[error("unknown suite name: {0}")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
