use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("graph needs at least two vertices, got {0}")]
    TooFewVertices(usize),

    #[error("edge {{{0}, {1}}} references a vertex outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("graph is disconnected: vertex {0} is unreachable from vertex 0")]
    Disconnected(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("entry ({0}, {1}) is nonzero but {0} and {1} are not adjacent")]
    OffSupport(usize, usize),

    #[error("entry ({0}, {1}) is zero but {0} and {1} are adjacent")]
    MissingEntry(usize, usize),

    #[error("weight matrix is not normalized at vertex {vertex}: squared row sum {sum}")]
    NotNormalized { vertex: usize, sum: f64 },

    #[error("row {vertex} of H has absolute sum {sum}, expected 1")]
    RowSum { vertex: usize, sum: f64 },

    #[error("phase on edge {{{0}, {1}}} is not unimodular")]
    NonUnitPhase(usize, usize),

    #[error("matrix is not Hermitian at ({0}, {1})")]
    NotHermitian(usize, usize),

    #[error("expected a {expected}x{expected} matrix, got {rows}x{cols}")]
    Dimension {
        expected: usize,
        rows: usize,
        cols: usize,
    },

    #[error("cos({theta}) = {cosine} is not an eigenvalue of H")]
    NotAnEigenvalue { theta: f64, cosine: f64 },

    #[error("cosine {0} lies outside [-1, 1]")]
    CosineOutOfRange(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed relation vector: {0}")]
    MalformedRelation(String),

    #[error("no orientation with the required cospectral pair found in {0} trials")]
    FixtureSearchFailed(usize),

    #[error("{what} deviates by {deviation:.3e}")]
    CrossCheck { what: String, deviation: f64 },

    #[error("{0}")]
    Format(String),
}
