use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polyhedron is not full-dimensional")]
    NotFullDimensional,

    #[error("polyhedron is empty")]
    Empty,

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("{0} facets exceed the subset-enumeration limit of {max}", max = crate::polyhedra::MAX_FACETS)]
    TooManyFacets(usize),

    #[error("polytope is not simple")]
    NotSimple,

    #[error("unsupported genericity: {0}")]
    UnsupportedGenericity(String),

    #[error("covector {xi} is not polarizing: constant on the edge {a} -- {b}")]
    NotPolarizing { xi: String, a: String, b: String },

    #[error("point {0} is not a vertex")]
    NotAVertex(String),

    #[error("unknown indeterminate `{0}`")]
    UnknownIndeterminate(String),

    #[error("no value given for indeterminate `{0}`")]
    MissingIndeterminate(String),

    #[error("system is infeasible")]
    Infeasible,

    #[error("arrangement has {found} distinct hyperplanes, over the cell cap of {cap}; use random point sampling instead")]
    CellCapExceeded { found: usize, cap: usize },

    #[error("chopping non-simple vertices failed: {0}")]
    ChopFailed(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Input(String),
}
