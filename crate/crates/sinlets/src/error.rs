//! Error type shared by every fallible operation in the crate.

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Everything that can go wrong in the numeric layer.
///
/// The variants are grouped the way a front end wants to report them:
/// domain/precision problems are one class, undersampling and rank
/// deficiency another.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The phase derivative underflowed, so derived quantities would be
    /// noise rather than numbers. Not a math error; move closer to the
    /// basis center or widen sigma.
    #[error("precision loss: phase derivative underflows at t = {t} (|t - t0| too many sigma out)")]
    PrecisionLoss { t: f64 },

    /// Input carries no usable information (e.g. an all-zero signal).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A tuning parameter is outside its documented range.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The sample grid cannot resolve the requested number of basis
    /// functions at four samples per period of the fastest one.
    #[error("aliasing: grid supports at most {max_safe} basis functions, {requested} requested")]
    Aliasing { requested: usize, max_safe: usize },

    /// The least-squares system is rank deficient.
    #[error("ill-posed fit: design matrix has effective rank {effective_rank}, need {needed}")]
    IllPosed { effective_rank: usize, needed: usize },

    /// Coefficients of the wrong kind were passed to a kind-specific
    /// operation (e.g. differentiation needs sinlet coefficients; convert
    /// coslet coefficients with `cos_to_sin` first).
    #[error("unsupported coefficient kind: expected {expected}, got {found}")]
    UnsupportedKind {
        expected: &'static str,
        found: &'static str,
    },

    /// A count blew past any representable value (e.g. the sinlet-count
    /// heuristic evaluated where the phase derivative underflows).
    #[error("overflow: {0}")]
    Overflow(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
