use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    Validation(String),

    #[error("matrix is not Hermitian (max |A - A^dag| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix has non-finite entries")]
    NonFinite,

    #[error("trace {trace} is not 1")]
    TraceNotUnit { trace: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The traceless part of an operator that should define a direction
    /// vanishes, so the corresponding temperature is undefined.
    #[error("degenerate direction: {0} is proportional to the identity")]
    DegenerateDirection(&'static str),

    #[error("state is rank deficient (rank {rank} < {dim})")]
    RankDeficient { rank: usize, dim: usize },

    #[error("finite-difference step too large: perturbed state is not positive definite")]
    StepTooLarge,

    #[error("free energy undefined: {0}")]
    FreeEnergyUndefined(&'static str),

    #[error("interaction lies in the span of the local Hamiltonians (h_chi = {h_chi:e})")]
    InteractionInLocalSpan { h_chi: f64 },
}

impl Error {
    /// `true` for failures of the numerics on otherwise well-formed input
    /// (degenerate directions, rank problems, non-convergence).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Numerical(_)
                | Error::DegenerateDirection(_)
                | Error::RankDeficient { .. }
                | Error::StepTooLarge
                | Error::FreeEnergyUndefined(_)
                | Error::InteractionInLocalSpan { .. }
        )
    }
}
