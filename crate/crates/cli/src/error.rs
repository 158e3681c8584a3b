use dyckhike::boson::BosonError;
use dyckhike::engine::EngineError;
use dyckhike::oracle::OracleError;
use dyckhike::pade::PadeError;
use dyckhike::parse::ParseError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("math error: {0}")]
    Math(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::Math(_) => 4,
            CliError::Internal(_) => 5,
        }
    }
}

impl From<BosonError> for CliError {
    fn from(e: BosonError) -> Self {
        match e {
            BosonError::NotAVacuum { .. } | BosonError::ZeroPower | BosonError::EmptyMonomial | BosonError::EmptyExpr => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::Boson(b) => b.into(),
            EngineError::Path(p) => CliError::Validation(p.to_string()),
            EngineError::TowerExhausted { .. } => CliError::Math(e.to_string()),
        }
    }
}

impl From<PadeError> for CliError {
    fn from(e: PadeError) -> Self {
        match e {
            PadeError::InsufficientCoefficients { .. } | PadeError::BadArgument(_) => CliError::Validation(e.to_string()),
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BadPolicy | OracleError::NotAVacuum { .. } | OracleError::Path(_) => {
                CliError::Validation(e.to_string())
            }
            _ => CliError::Math(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}
