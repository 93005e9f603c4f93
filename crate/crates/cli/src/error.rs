use colloids_asymptotics::AsymptoticsError;
use colloids_fieldsolver::FieldSolverError;
use colloids_model::ModelError;
use colloids_montecarlo::MonteCarloError;
use colloids_specfun::SpecFunError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    /// 2 config error, 3 numerical failure, 4 verification failure, 1 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Io { .. } => 1,
        }
    }
}

impl From<ModelError> for CliError {
    fn from(e: ModelError) -> Self {
        CliError::Config(e.to_string())
    }
}

impl From<SpecFunError> for CliError {
    fn from(e: SpecFunError) -> Self {
        match e {
            SpecFunError::Domain { .. } => CliError::Config(e.to_string()),
            SpecFunError::Overflow { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

impl From<AsymptoticsError> for CliError {
    fn from(e: AsymptoticsError) -> Self {
        match e {
            AsymptoticsError::SpecFun(inner) => inner.into(),
            AsymptoticsError::Model(inner) => inner.into(),
            AsymptoticsError::Domain(_) => CliError::Config(e.to_string()),
        }
    }
}

impl From<FieldSolverError> for CliError {
    fn from(e: FieldSolverError) -> Self {
        match e {
            FieldSolverError::IllConditioned { .. }
            | FieldSolverError::NonConverged { .. }
            | FieldSolverError::InsufficientDecay(_) => CliError::Numerical(e.to_string()),
            FieldSolverError::SpecFun(inner) => inner.into(),
            FieldSolverError::Model(inner) => inner.into(),
            FieldSolverError::MeshTooCoarse { .. } | FieldSolverError::InvalidInput(_) => {
                CliError::Config(e.to_string())
            }
        }
    }
}

impl From<MonteCarloError> for CliError {
    fn from(e: MonteCarloError) -> Self {
        CliError::Config(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
