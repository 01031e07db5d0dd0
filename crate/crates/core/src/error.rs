use thiserror::Error;

/// Every failure the library reports.
///
/// Variants are grouped by the layer that raises them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // exact arithmetic
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("det(M + xJ) is not affine in x")]
    NonLinearInX,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("denominator vanishes at the evaluation point")]
    DenominatorVanishes,
    #[error("variable `{0}` has no value at the evaluation point")]
    UnboundVariable(String),
    #[error("value is not a rational constant: {0}")]
    NotConstant(String),
    #[error("parse error: {0}")]
    Parse(String),

    // block structure
    #[error("blocks {0} and {1} share more than one vertex")]
    OverlapTooLarge(usize, usize),
    #[error("block-cut incidence graph contains a cycle")]
    CyclicBlockStructure,
    #[error("block structure is disconnected or leaves a vertex uncovered")]
    Disconnected,
    #[error("block {0} has fewer than two vertices")]
    EmptyBlock(usize),
    #[error("vertex {0} is out of range or repeated")]
    BadVertex(usize),
    #[error("block on {0:?} is not complete in the edge list")]
    IncompleteBlockMatrix(Vec<usize>),
    #[error("edges of block {0:?} carry different additive weights")]
    InconsistentAdditiveWeight(Vec<usize>),
    #[error("vertex {0} does not lie in block {1}")]
    VertexNotInBlock(usize, usize),
    #[error("restriction is not a valid block structure: {0}")]
    InvalidRestriction(String),

    // datum construction
    #[error("block {0}: D* must have unit diagonal")]
    DiagonalNotOne(usize),
    #[error("tree datum: {0}")]
    NotATree(String),
    #[error("q-exponent must be non-negative, got {0}")]
    NegativeExponent(i64),

    // invariants and minors
    #[error("vertex {0} is not a vertex of the datum")]
    VertexMissing(usize),
    #[error("datum does not have the requested specialization: {0}")]
    WrongSpecialization(String),
    #[error("row/column removal does not satisfy the minor conditions: {0}")]
    InadmissibleMinor(String),
    #[error("vertex {0} lies in a removed set")]
    VertexInRemovedSet(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    // inverse
    #[error("block {0} has singular D*")]
    SingularBlock(usize),
    #[error("distance matrix is singular")]
    SingularDistanceMatrix,
    #[error("additive weight of block {0} is not invertible")]
    NonInvertibleWeight(usize),
    #[error("additive weights are not all equal")]
    SpecialCaseViolated,
    #[error("1 - e^T (D*)^-1 e vanishes")]
    SingularUpdate,

    // hypertrees
    #[error("not a hypertree datum: {0}")]
    InvalidHypertree(String),
    #[error("core block {0} does not have constant row sums")]
    RowSumNotConstant(usize),

    // verification
    #[error("shape cannot be realized: {0}")]
    ShapeInfeasible(String),
    #[error("symbolic datum needs {0} variables, cap is {1}")]
    TooManyVariables(usize, usize),
    #[error("too many degenerate draws ({0})")]
    TooManyRejections(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
