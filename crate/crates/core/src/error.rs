use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("degree out of range: {0}")]
    DegreeOutOfRange(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("endomorphism is singular")]
    SingularEndo,
    #[error("matrix over E is not invertible")]
    SingularProjectivity,
    #[error("pair is not admissible (rank {rank} < {needed})")]
    NotAdmissible { rank: usize, needed: usize },
    #[error("point is not on the standard chain")]
    NotOnChain,
    #[error("homogeneous coordinates are both zero")]
    ZeroPoint,
    #[error("scalar must be nonzero")]
    ZeroScalar,
    #[error("points are not distinct points of their chains")]
    PointsNotOnChain,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("point is not scattered")]
    NotScattered,
    #[error("line is not transversal to the family: {0}")]
    NotTransversal(String),
    #[error("no product structure: {0}")]
    NoProductStructure(String),
    #[error("exponent {0} does not give a generator of the Galois group")]
    NotGenerator(u32),
    #[error("set has {0} points, at least 3 are needed")]
    SetTooSmall(usize),
    #[error("the two chains coincide")]
    EqualChains,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}
