use thiserror::Error;

/// Errors produced by diagram construction, moves, and the search layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("marker rows must form a permutation of 0..n-1")]
    InvalidPermutation,

    #[error("column {col} places its X and O in the same square")]
    SharedSquare { col: usize },

    #[error("grid size {n} out of range (need 2..={max})", max = crate::grid::MAX_SIZE)]
    SizeOutOfRange { n: usize },

    #[error("X and O row lists have different lengths")]
    LengthMismatch,

    #[error("diagram traces {components} components where a knot is required")]
    MultiComponent { components: usize },

    #[error("rows/columns {index} and {next} cannot commute: marker intervals share structure", next = index + 1)]
    IllegalCommutation { index: usize },

    #[error("index {index} out of range for size-{n} diagram")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("no destabilizable 2x2 block anchored at column {col}, row {row}")]
    IllegalDestabilization { col: usize, row: usize },

    #[error("diagram has {count} crossings, above the state-sum ceiling {ceiling}")]
    TooManyCrossings { count: usize, ceiling: usize },

    #[error("braid letter {letter} invalid on {strands} strands")]
    InvalidBraidLetter { letter: i32, strands: usize },

    #[error("endpoints carry different invariants: {detail}")]
    InvariantMismatch { detail: String },

    #[error("zero-graded rulings require rotation number 0, found {r}")]
    NonZeroRotation { r: i64 },

    #[error("Jones substitution t = A^-4 produced a fractional exponent (even-component link)")]
    HalfIntegerExponent,

    #[error("Maslov potential constraints are inconsistent")]
    InconsistentPotential,

    #[error("front splits into disconnected pieces")]
    Disconnected,

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown knot name {name:?}")]
    UnknownKnot { name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
