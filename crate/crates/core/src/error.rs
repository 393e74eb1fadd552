use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series constant term {0:e} is too small to invert")]
    SingularSeries(f64),

    #[error("Schur recursion denominator vanished (|d| = {0:e})")]
    NumericDegeneracy(f64),

    #[error("invalid Schur parameter #{index}: |gamma| = {modulus} exceeds 1 - 1e-9")]
    InvalidSchurParameter { index: usize, modulus: f64 },

    #[error("denominator 1 - a2 z - z w(z) vanishes in the disk (winding number {0})")]
    NotAnalytic(i64),

    #[error("functional needs coefficient a_{needed} but series order is {order}")]
    InsufficientOrder { needed: usize, order: usize },

    #[error("invalid functional spec `{0}` (expected Z:n, GZ:m,n or K:n,p)")]
    InvalidSpec(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("sampler exhausted {0} tries without a feasible function")]
    SamplingStarved(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
