use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("parallel edge {0}-{1}")]
    ParallelEdge(usize, usize),

    #[error("graph is disconnected: vertex {unreached} not reachable from {root}")]
    Disconnected { root: usize, unreached: usize },

    #[error("inconsistent rotation system at directed edge {0}->{1}")]
    BadRotation(usize, usize),

    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),

    #[error("graph too small: need at least {need} vertices, got {got}")]
    TooSmall { need: usize, got: usize },

    #[error("cannot triangulate face {0:?} without a parallel edge")]
    Untriangulable(Vec<usize>),

    #[error("input graph is not a tree: {0}")]
    NotATree(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no certified sequence found (length {n}, alphabet {sigma}, t_max {t_max})")]
    NoCertifiedSequence { n: usize, sigma: usize, t_max: usize },

    #[error("certificate too short: covers {have} layers, need {need}")]
    CertificateTooShort { have: usize, need: usize },

    #[error("lollipop already balanced")]
    AlreadyBalanced,

    #[error("separator contract violated: {0}")]
    SeparatorContract(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("search budget of {0} nodes exhausted; result inconclusive")]
    BudgetExhausted(u64),

    #[error("inconclusive: no nonrepetitive colouring with at most {max_colours} colours")]
    Inconclusive { max_colours: usize },

    #[error("slab colouring budget exhausted; smallest failing witness {witness:?}")]
    SlabBudgetExhausted { witness: Vec<usize> },

    #[error("missing slab colour for vertex {vertex} at residue {residue}")]
    MissingCover { vertex: usize, residue: usize },
}
