use alloc::string::String;

pub type Result<T, E = MaslovError> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MaslovError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("under-sampled path on [{start}, {end}]: {reason}")]
    UnderSampled { start: f64, end: f64, reason: String },
    #[error("inconsistent loop: winding residual {residual} exceeds 0.05")]
    InconsistentLoop { residual: f64 },
    #[error("crossings at t = {first} and t = {second} are closer than the grid step; densify the path")]
    CrossingResolution { first: f64, second: f64 },
    #[error("non-regular crossing at t = {t_star}: intersection dimension {dim}")]
    NonRegularCrossing { t_star: f64, dim: usize },
    #[error("no admissible beta near the crossing at t = {t_star}")]
    BetaSelection { t_star: f64 },
    #[error("the signature method needs alpha and alpha' transversal (intersection dimension {dim}); use the path method")]
    MethodDomain { dim: usize },
    #[error("cannot concatenate paths: {0}")]
    Concatenation(String),
    #[error("charts do not define the same Lagrangian plane")]
    IncompatibleCharts,
    #[error("numerical failure: {0}")]
    Numerical(String),
}

/// Coarse classification used to map errors onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Precondition,
    Internal,
}

impl MaslovError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            MaslovError::InvalidInput(_) | MaslovError::DimensionMismatch { .. } => ErrorKind::Input,
            MaslovError::Numerical(_) => ErrorKind::Internal,
            _ => ErrorKind::Precondition,
        }
    }

    /// Short machine-readable tag.
    pub fn tag(&self) -> &'static str {
        match self {
            MaslovError::InvalidInput(_) => "invalid_input",
            MaslovError::DimensionMismatch { .. } => "dimension_mismatch",
            MaslovError::Precondition(_) => "precondition",
            MaslovError::UnderSampled { .. } => "under_sampled",
            MaslovError::InconsistentLoop { .. } => "inconsistent_loop",
            MaslovError::CrossingResolution { .. } => "crossing_resolution",
            MaslovError::NonRegularCrossing { .. } => "non_regular_crossing",
            MaslovError::BetaSelection { .. } => "beta_selection",
            MaslovError::MethodDomain { .. } => "method_domain",
            MaslovError::Concatenation(_) => "concatenation",
            MaslovError::IncompatibleCharts => "incompatible_charts",
            MaslovError::Numerical(_) => "numerical",
        }
    }
}
