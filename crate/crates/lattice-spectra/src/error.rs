use thiserror::Error;

/// Errors produced by the solvers in this crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An operation that requires the single-cosine band was called with a
    /// different dispersion.
    #[error("operation requires the default single-cosine dispersion")]
    UnsupportedDispersion,

    /// The spectral duality map is only defined for dispersions whose
    /// even-range hopping amplitudes all vanish.
    #[error("duality does not apply: dispersion has nonzero even-range hopping")]
    DualityNotApplicable,

    /// Energy lies outside the discrete-spectrum window of the problem.
    #[error("energy {energy} outside the discrete window ({lo}, {hi})")]
    OutsideDiscreteWindow { energy: f64, lo: f64, hi: f64 },

    /// Step height coincides with a bound-state emergence threshold, where
    /// the count is ill-defined.
    #[error("step height {value} collides with emergence threshold {threshold} (k = {index})")]
    ThresholdCollision {
        value: f64,
        threshold: f64,
        index: usize,
    },

    /// The supplied energy does not satisfy the quantization condition.
    #[error("energy {energy} is not an eigenvalue: residual {residual:e} exceeds {tol:e}")]
    NotAnEigenvalue {
        energy: f64,
        residual: f64,
        tol: f64,
    },

    /// Truncation window has too few sites for the requested operation.
    #[error("window of {size} sites is too small (minimum {min})")]
    WindowTooSmall { size: usize, min: usize },

    /// Matrix dimension exceeds the documented solver limit.
    #[error("matrix dimension {size} exceeds the solver limit {limit}")]
    SizeLimit { size: usize, limit: usize },

    /// The eigensolver failed to converge for one eigenpair.
    #[error("eigensolver failed to converge at index {index}")]
    ConvergenceFailure { index: usize },

    /// Band-edge bracketing failed within the documented search range.
    #[error("band {band} not found for upsilon = {upsilon}")]
    BandNotFound { band: usize, upsilon: f64 },

    /// Parameter outside the floating-point range the schedule supports.
    #[error("upsilon = {upsilon} outside supported range (max {limit})")]
    StrengthOutOfRange { upsilon: f64, limit: f64 },

    /// A precondition on an input parameter was violated.
    #[error("invalid parameter `{name}`: {message}")]
    InvalidParameter { name: &'static str, message: String },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
