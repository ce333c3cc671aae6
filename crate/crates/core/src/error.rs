use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("invalid GF(4) code {0} (expected 0..=3)")]
    InvalidCode(u8),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("form has {found} singular points, expected {expected} (not an elliptic quadric?)")]
    WrongPointCount { found: usize, expected: usize },
    #[error("polar form disagrees with line singularity for points {p} and {q}")]
    PolarityMismatch { p: usize, q: usize },
    #[error("line {line} has {size} points")]
    LineTooShort { line: usize, size: usize },
    #[error("line {line} references point {point}, but there are only {points} points")]
    PointOutOfRange { line: usize, point: usize, points: usize },
    #[error("line {line} lists point {point} twice")]
    RepeatedPoint { line: usize, point: usize },
    #[error("line {line} has {size} points, expected {expected}")]
    WrongLineSize { line: usize, size: usize, expected: usize },
    #[error("point index {point} out of range (have {points} points)")]
    PointIndex { point: usize, points: usize },
    #[error("line_through needs two distinct points, got {0} twice")]
    SamePoint(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based record number; 0 for whole-file structural errors.
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertices must be distinct, got {0} twice")]
    NotDistinct(usize),
    #[error("vertices {0} and {1} are adjacent")]
    Adjacent(usize, usize),
    #[error("A is not a coclique: {0} ~ {1}")]
    NotCoclique(usize, usize),
    #[error("vertex {vertex} is not in {set}")]
    NotInSet { vertex: usize, set: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("block {block} has size {size}, expected {expected}")]
    BlockSize { block: usize, size: usize, expected: usize },
    #[error("block {block} references point {point} outside 0..{v}")]
    PointOutOfRange { block: usize, point: usize, v: usize },
    #[error("block {block} repeats point {point}")]
    RepeatedPoint { block: usize, point: usize },
    #[error("point {point} is not a point of the design (v = {v})")]
    NotAPoint { point: usize, v: usize },
    #[error("designs are limited to 64 points, got {v}")]
    TooManyPoints { v: usize },
    #[error("strength {t} exceeds block size {k}")]
    StrengthTooLarge { t: usize, k: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("free unknown {0} is out of range")]
    UnknownIndex(usize),
    #[error("unknown {0} is both free and fixed")]
    FreeAndFixed(usize),
    #[error("{equations} equations but {bound} bound unknowns; the reduced system must be square")]
    NotSquare { equations: usize, bound: usize },
    #[error("the chosen free unknowns leave a singular system")]
    Singular,
    #[error("box has {got} ranges but the family has {expected} free unknowns")]
    BoxArity { got: usize, expected: usize },
    #[error("unknown lemma id {0:?} (known: L3.4, L3.12, L3.13, L3.14, L3.15, R3.5)")]
    UnknownLemma(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("malformed report: {0}")]
    Json(String),
}
