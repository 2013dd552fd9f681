use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not a subspace: {0}")]
    NotASubspace(String),

    #[error("vertex {vertex} out of range for a complex on {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("group of order {order} exceeds the subgroup enumeration bound {bound}")]
    GroupTooLarge { order: usize, bound: usize },

    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    #[error("face not preserved: {perm} maps {face:?} to {image:?}, which is not a face")]
    FaceNotPreserved {
        perm: String,
        face: Vec<usize>,
        image: Vec<usize>,
    },

    #[error("{what}: {value} vertices exceeds the bound {bound} (override with ZK_MAX_VERTICES)")]
    TooManyVertices {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("cell {0} is not a cell of the target complex")]
    CellNotInTarget(String),

    #[error("coefficient systems live over different orbit categories")]
    CategoryMismatch,

    #[error("functor axiom violated: {0}")]
    NotAFunctor(String),

    #[error("naturality violated: {0}")]
    NotNatural(String),

    #[error("envelope construction failed: {0}")]
    EnvelopeFailed(String),

    #[error("injective resolution needs more than {max_len} terms")]
    ResolutionTooLong { max_len: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
