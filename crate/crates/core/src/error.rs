use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("points must be pairwise distinct")]
    DuplicatePoints,
    #[error("matrix {0} does not have determinant 1")]
    NotUnimodular(String),
    #[error("invalid subgroup table: {0}")]
    InvalidSubgroup(String),
    #[error("level must be at least 2, got {0}")]
    InvalidLevel(u64),
    #[error("subgroup is not contained in the given overgroup")]
    NotContained,
    #[error("coset enumeration exceeded {0} cosets")]
    EnumerationLimit(usize),
    #[error("operation requires a torsion-free group")]
    Torsion,
    #[error("edge orbit {0} cannot be flipped: {1}")]
    NotFlippable(usize, String),
    #[error("no edge orbit with label {0}")]
    NoSuchOrbit(usize),
    #[error("geodesic {0} is not an edge of the tessellation")]
    NotAnEdge(String),
    #[error("invalid tessellation: {0}")]
    InvalidTessellation(String),
    #[error("map is not Moebius: {0}")]
    NotMoebius(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("search budget of {0} nodes exhausted")]
    BudgetExhausted(usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
