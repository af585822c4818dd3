use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("line {0}: expected two whitespace-separated vertex labels")]
    MalformedLine(usize),
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("invalid edge probabilities p_in={p_in}, p_out={p_out} (need 0 <= p_out <= p_in <= 1)")]
    InvalidProbability { p_in: f64, p_out: f64 },
    #[error("planted partition needs an even vertex count, got {0}")]
    OddN(usize),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("spin values must be -1 or +1, found {0}")]
    InvalidSpin(i8),
    #[error("subset vertex {0} out of range")]
    SubsetOutOfRange(usize),
    #[error("subset is empty")]
    EmptySubset,
    #[error("vertex {0} appears more than once in the subset")]
    DuplicateVertex(usize),
    #[error("invalid coupling ({0}, {1}): indices must satisfy p < q < n_vars")]
    InvalidCoupling(usize, usize),
    #[error("exact solver supports at most {limit} variables, got {found}")]
    TooManyVariables { found: usize, limit: usize },
    #[error("invalid anneal schedule: {0}")]
    InvalidSchedule(String),
    #[error("ansatz expects {expected} parameters, got {found}")]
    ParamLengthMismatch { expected: usize, found: usize },
    #[error("statevector supports at most {limit} qubits, got {found}")]
    TooManyQubits { found: usize, limit: usize },
    #[error("state has {qubits} qubits but model has {vars} variables")]
    SizeMismatch { qubits: usize, vars: usize },
    #[error("optimizer budget {budget} is below the {required} evaluations needed for the initial simplex")]
    BudgetTooSmall { budget: usize, required: usize },
    #[error("unknown solver `{0}` (valid: exact, anneal, variational)")]
    UnknownSolver(String),
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
}

impl Error {
    /// Errors raised by a subproblem backend rather than by input data.
    pub fn is_solver_error(&self) -> bool {
        matches!(
            self,
            Error::TooManyVariables { .. }
                | Error::InvalidSchedule(_)
                | Error::ParamLengthMismatch { .. }
                | Error::TooManyQubits { .. }
                | Error::SizeMismatch { .. }
                | Error::BudgetTooSmall { .. }
        )
    }
}
