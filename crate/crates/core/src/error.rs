use thiserror::Error;

/// Errors raised by library operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("zero vector has no coprime normalization")]
    ZeroVector,
    #[error("point is not in the polyhedron")]
    NotInPolyhedron,
    #[error("point is not a vertex")]
    NotAVertex,
    #[error("not a circuit: {0}")]
    NotACircuit(String),
    #[error("instance too large for enumeration ({0})")]
    TooLarge(String),
    #[error("matrix is not totally unimodular")]
    NotTotallyUnimodular,
    #[error("condition stated for simple polytopes")]
    NotSimple,
    #[error("instance lacks Hamiltonian path witness")]
    NoHamiltonianWitness,
    #[error("infeasible flow: {0}")]
    InfeasibleFlow(String),
    #[error("start and target coincide")]
    SamePoint,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("generation failed: {0}")]
    GenerationFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
