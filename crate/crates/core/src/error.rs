use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("time {t} lies outside the sampled span [{start}, {end}]")]
    OutOfSpan { t: f64, start: f64, end: f64 },

    #[error("separation must be positive, got {0} (oscillators coincide)")]
    CoincidentOscillators(f64),

    #[error("{operation} does not support the {variant} profile")]
    UnsupportedProfile {
        operation: &'static str,
        variant: &'static str,
    },

    #[error("signal is empty")]
    EmptySignal,

    #[error("non-finite coupling value at sample {index}")]
    NonFiniteSample { index: usize },

    #[error("coupling at the grid ends ({edge:e}) exceeds the tail threshold {threshold:e}; widen the grid")]
    TailNotSettled { edge: f64, threshold: f64 },

    #[error("inverted mode: squared frequency {omega_sq:e} <= 0 at t = {t} (coupling too strong)")]
    InvertedMode { t: f64, omega_sq: f64 },

    #[error("Fock truncation must be at least 2, got {0}")]
    TruncationTooSmall(usize),

    #[error("norm drift {drift:e} exceeds 1e-6; refine the time step or raise the truncation")]
    NormDrift { drift: f64 },

    #[error("invalid occupation: {0}")]
    InvalidOccupation(String),

    #[error("{0}")]
    Csv(String),
}

impl Error {
    /// True for failures of the numerics themselves, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::InvertedMode { .. } | Error::NormDrift { .. } | Error::TailNotSettled { .. }
        )
    }

    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
