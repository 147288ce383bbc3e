use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("angular frequency {omega} rad/s sits on the magnetic resonance of a lossless model")]
    ResonanceSingularity { omega: f64 },

    #[error("model has nonzero loss; only the complex response is available")]
    LossyModel,

    #[error("interface pole: incident and transmitted normal terms cancel")]
    DegenerateDenominator,

    #[error("potential {potential:e} J lies on the regime boundary V = E ± mc²")]
    RegimeBoundary { potential: f64 },

    #[error("group velocity is singular at E = V")]
    SingularGroupVelocity,

    #[error(
        "grid resolves {points_per_wavelength:.2} points per shortest wavelength, need at least 8"
    )]
    Undersampled { points_per_wavelength: f64 },

    #[error("beam axis undefined: {0}")]
    UndefinedAxis(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
