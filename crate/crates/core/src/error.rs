use thiserror::Error;

/// Failures raised by the beamforming and analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The desired steering vector lies (numerically) inside the span of the
    /// retained interference steering vectors, so no ZF weight exists.
    #[error("desired direction lies in the interference subspace")]
    DegenerateDesired,

    /// The geometric Gram matrix of the retained interferers is too poorly
    /// conditioned to invert.
    #[error("interference Gram matrix is singular (condition number {condition:.3e})")]
    SingularGram { condition: f64 },

    /// The requested orthogonality integer cannot be realised by any rotation.
    #[error("orthogonality integer m = {m} is infeasible (|cos beta| would be {cos_beta:.6})")]
    InfeasibleM { m: i64, cos_beta: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
