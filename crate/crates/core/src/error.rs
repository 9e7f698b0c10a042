use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("relation {0:?} is not a composable path")]
    NonComposableRelation(Vec<String>),
    #[error("ε²=1 relation on `{0}` requires a degree-0 loop")]
    BadEpsilonRelation(String),
    #[error("`{0}` is not a degree-0 loop with ε²=0")]
    NotASpecialLoop(String),
    #[error("vertex collision while gluing: `{0}`")]
    VertexCollision(String),
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("algebra is not finite-dimensional below length {0}")]
    InfiniteDimensional(usize),
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("arc `{0}` is used only once")]
    ArcUsedOnce(String),
    #[error("arc `{0}` is used {1} times")]
    ArcUsedThrice(String, usize),
    #[error("incoherent corners at orbifold point `{0}`: {1}")]
    IncoherentOrbifoldCycle(String, String),
    #[error("no boundary stop")]
    NoBoundaryStop,
    #[error("malformed complex: {0}")]
    Malformed(String),
    #[error("dissection is not admissible: {0}")]
    NotAdmissible(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("degree sum violation: expected {expected}, got {got}")]
    DegreeSumViolation { expected: i64, got: i64 },
    #[error("twisted complex connection is not strictly upper triangular at ({0}, {1})")]
    NotUpperTriangular(usize, usize),
    #[error("Maurer–Cartan equation fails: {0}")]
    MaurerCartanFailure(String),
    #[error("morphisms are not composable")]
    NotComposable,
    #[error("morphism is not closed")]
    NotClosed,
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("higher products obstruct splitting: {0}")]
    HigherProductObstruction(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
