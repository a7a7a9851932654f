use thiserror::Error;

use crate::poly::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable sets are incompatible: [{left}] vs [{right}]")]
    VariableMismatch { left: String, right: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("denominator is zero")]
    ZeroDenominator,

    #[error("numerator and denominator share the factor {factor}")]
    NotCoprime { factor: String },

    #[error("every polynomial vanishes at k = {0}")]
    DegenerateSpecialization(String),

    #[error("system is not zero-dimensional (basis: {})", .basis.join(", "))]
    NotZeroDimensional { basis: Vec<String> },

    #[error("(0:0:0) is not a projective point")]
    ZeroPoint,

    #[error("(0:0) is not a gain in P^1")]
    ZeroParameter,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{0}")]
    Numeric(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn at_stage(self, stage: &'static str) -> Self {
        match self {
            e @ Error::Stage { .. } => e,
            e => Error::Stage { stage, source: Box::new(e) },
        }
    }

    fn root(&self) -> &Error {
        match self {
            Error::Stage { source, .. } => source.root(),
            e => e,
        }
    }

    /// Process exit code used by the `pjroot` binary.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::Parse(_) | Error::ZeroDenominator | Error::Config(_) => 2,
            Error::NotCoprime { .. } => 3,
            _ => 4,
        }
    }
}
