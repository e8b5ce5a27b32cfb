use patchwork_lab_core::census::CensusError;
use patchwork_lab_core::haas::HaasError;
use patchwork_lab_core::partitions::PartitionError;
use patchwork_lab_core::patchwork::PatchworkError;
use patchwork_lab_core::scheme::{ParseError, SchemeError};
use patchwork_lab_core::trees::TreeError;

/// A failed command. Usage errors exit with 2, everything else with 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) | CliError::Io(_) => 1,
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {
        $(impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        })*
    };
}

domain_from!(CensusError, HaasError, PartitionError, PatchworkError, ParseError, SchemeError, TreeError);
