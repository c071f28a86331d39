use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors raised by the quadrature pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid precision: {digits} digits requested, at least {} required", crate::precision::MIN_DIGITS)]
    InvalidPrecision { digits: u32 },

    #[error("cannot parse {text:?} as a real number")]
    Parse { text: String },

    #[error("domain error in {function}: {reason}")]
    Domain { function: &'static str, reason: String },

    #[error("index {index} out of range (limit {limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("{series} series did not converge within {terms_used} terms")]
    NonConvergence { series: &'static str, terms_used: usize },

    #[error("modified moment m_{index} underflows the working arithmetic; raise the number of digits")]
    MomentUnderflow { index: usize },

    #[error(
        "modified Chebyshev algorithm broke down at k = {k}: mixed moment sigma_kk is not positive; \
         the functional lost positive definiteness in {digits}-digit arithmetic, raise the number of digits"
    )]
    Breakdown { k: usize, digits: u32 },

    #[error("eigensolver did not converge for eigenvalue {index} within {iterations} iterations")]
    EigenNonConvergence { index: usize, iterations: usize },

    #[error("accuracy loss in {stage}: {reason}; raise the number of digits")]
    Accuracy { stage: &'static str, reason: String },

    #[error("at grid point z = {z}: {source}")]
    AtGridPoint {
        z: f64,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn domain(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            function,
            reason: reason.into(),
        }
    }

    /// `true` for failures caused by the arithmetic rather than the inputs.
    pub fn is_numeric(&self) -> bool {
        match self {
            Error::NonConvergence { .. }
            | Error::MomentUnderflow { .. }
            | Error::Breakdown { .. }
            | Error::EigenNonConvergence { .. }
            | Error::Accuracy { .. } => true,
            Error::AtGridPoint { source, .. } => source.is_numeric(),
            _ => false,
        }
    }

    /// Pipeline stage the error originates from.
    pub fn stage(&self) -> &'static str {
        match self {
            Error::InvalidPrecision { .. } | Error::Parse { .. } => "input",
            Error::Domain { function, .. } => function,
            Error::IndexOutOfRange { .. } => "recurrence",
            Error::NonConvergence { .. } | Error::MomentUnderflow { .. } => "moments",
            Error::Breakdown { .. } => "chebyshev",
            Error::EigenNonConvergence { .. } => "eigensolver",
            Error::Accuracy { stage, .. } => stage,
            Error::AtGridPoint { source, .. } => source.stage(),
        }
    }

    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPrecision { .. } => "invalid_precision",
            Error::Parse { .. } => "parse",
            Error::Domain { .. } => "domain",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::NonConvergence { .. } => "non_convergence",
            Error::MomentUnderflow { .. } => "moment_underflow",
            Error::Breakdown { .. } => "breakdown",
            Error::EigenNonConvergence { .. } => "eigen_non_convergence",
            Error::Accuracy { .. } => "accuracy",
            Error::AtGridPoint { source, .. } => source.kind(),
        }
    }
}
