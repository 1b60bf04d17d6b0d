use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph order {n} exceeds the limit of {max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}-{1} is not an edge of the graph")]
    NotAnEdge(usize, usize),
    #[error("parity undefined for odd cycles")]
    OddCycle,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("oriented graphs have different underlying graphs")]
    DifferentUnderlyingGraphs,
    #[error("bounds require no isolated vertices")]
    IsolatedVertex,
    #[error("formula stated for n > 6")]
    ChemicalUpperDomain,
    #[error("order must be at least {min}, got {n}")]
    OrderTooSmall { n: usize, min: usize },
    #[error("graph does not belong to the family {0}")]
    FamilyMismatch(String),
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("eigen-solver did not converge on matrix {0}")]
    NoConvergence(String),
    #[error("exponent {0} is neither an integer nor a half-integer")]
    BadExponent(f64),
    #[error("{0}")]
    Unsupported(String),
}
