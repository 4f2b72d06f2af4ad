use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("GF({p}^{m}) exceeds the 2^20 field-size cap")]
    FieldTooLarge { p: u32, m: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation needs a quadratic extension GF(q^2)")]
    NotQuadratic,
    #[error("element is not in the subfield GF(q)")]
    NotInSubfield,
    #[error("element is not a square")]
    NonSquare,
    #[error("no scaling unit exists in this field")]
    NoScalingUnit,
    #[error("matrices live over different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("generator is rank deficient: rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("evaluation points are not distinct")]
    RepeatedPoints,
    #[error("hull methods disagree: gram gives {gram}, intersection gives {intersection}")]
    HullDisagreement { gram: usize, intersection: usize },
    #[error("predicted hull {predicted} but measured {measured}")]
    HullMismatch { predicted: usize, measured: usize },
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("no qualifying η: {0}")]
    NoEta(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}
