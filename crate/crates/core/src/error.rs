use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(String),

    #[error("underdetermined fit: {samples} samples of rank {rank} for {unknowns} unknown coefficients")]
    Underdetermined {
        samples: usize,
        rank: usize,
        unknowns: usize,
    },

    #[error("matrix has rank {rank} but {rows} rows")]
    RankDeficient { rank: usize, rows: usize },

    #[error("rank parameter {got} out of range (expected {expected})")]
    InvalidRank { got: usize, expected: &'static str },

    #[error("partition {partition} has more than {k} parts")]
    TooManyParts { partition: String, k: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("weight coordinates sum to {0}, expected 0")]
    NonzeroSum(String),

    #[error("sum mismatch: |λ|+|μ| = {lhs} but |ν| = {rhs}")]
    SumMismatch { lhs: i64, rhs: i64 },

    #[error("right-hand side B·(λ,μ,ν) is not integral")]
    NonIntegral,

    #[error("variable {0} of the system has no upper bound")]
    Unbounded(usize),

    #[error("chamber fit failed: {0}")]
    FitFailed(String),

    #[error("triple is not generic")]
    NotGeneric,

    #[error("found {found} same-region samples, {needed} needed")]
    InsufficientSamples { found: usize, needed: usize },

    #[error("polynomiality violated at N = {n}: counted {expected}, polynomial gives {got}")]
    PolynomialityViolated {
        n: u64,
        expected: String,
        got: String,
    },

    #[error("coefficient c_{{λμ}}^ν is zero")]
    ZeroCoefficient,

    #[error("only defined for at most 3 parts, got k = {0}")]
    TooLarge(usize),

    #[error("invalid permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("unknown variable {0}")]
    UnknownVariable(String),

    #[error("parse error: {0}")]
    Parse(String),
}
