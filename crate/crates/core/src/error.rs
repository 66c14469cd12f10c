use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("not trace preserving: completeness residual {residual:.3e}")]
    NotTracePreserving { residual: f64 },

    #[error("not completely positive: minimum Choi eigenvalue {min_eigenvalue:.3e}")]
    NotCompletelyPositive { min_eigenvalue: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("parameter {name} = {value} outside {range}")]
    ParameterOutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("unknown channel '{0}'")]
    UnknownChannel(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("channel file: {0}")]
    ChannelFile(String),
}

impl Error {
    pub(crate) fn dims(op: &'static str, detail: impl Into<String>) -> Self {
        Error::DimensionMismatch {
            op,
            detail: detail.into(),
        }
    }
}
