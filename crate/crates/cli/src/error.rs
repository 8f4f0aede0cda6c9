use thiserror::Error;

use pcflab::converge::ConvergeError;
use pcflab::pcf::PcfError;
use pcflab::search::SearchError;
use pcflab::skolem::SkolemError;
use pcflab::variety::VarietyError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Pcf(#[from] PcfError),
    #[error(transparent)]
    Converge(#[from] ConvergeError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Skolem(#[from] SkolemError),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}
