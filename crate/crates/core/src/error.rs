use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("precision exhausted after reaching {bits} bits: {context}")]
    PrecisionExhausted { bits: u32, context: String },
    #[error("degree {degree} exceeds the supported maximum {max}")]
    UnsupportedDegree { degree: usize, max: usize },
    #[error("enumeration budget exceeded: {candidates} candidates would be scanned (budget {budget})")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("enclosure meets the branch cut of the principal logarithm")]
    BranchCut,
    #[error("point lies in the excluded sector")]
    SectorViolation,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("polynomial does not depend on Y")]
    YIndependent,
    #[error("degenerate decomposition: R(X) vanishes identically")]
    DegenerateDecomposition,
    #[error("linear system has only the trivial solution")]
    InfeasibleSystem,
    #[error("unsupported coordinate: {0}")]
    UnsupportedCoordinate(String),
    #[error("zero-count center value is not bounded away from zero")]
    ZeroAtOrigin,
    #[error("no anchor radius accepted among {tried} candidates")]
    NoAnchorFound { tried: usize, rejected: Vec<String> },
    #[error("containment B(0, R_H) in B(z_i, s) fails: r_i + R_H = {needed:.6e} > s = {s:.6e}")]
    ContainmentFailed { needed: f64, s: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
