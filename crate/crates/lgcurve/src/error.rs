use lgcurve_core::Error;

/// Process exit codes, one per error class.
pub mod exit {
    pub const OTHER: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const ISOLATION: u8 = 3;
    pub const STABILIZATION: u8 = 4;
    pub const MF_VERIFY: u8 = 5;
    pub const SECTOR: u8 = 6;
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        CliError {
            code: exit::PARSE,
            message: message.into(),
        }
    }

    pub fn other(message: impl Into<String>) -> Self {
        CliError {
            code: exit::OTHER,
            message: message.into(),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } | Error::UnknownVariable(_) | Error::NotPrime(_) => exit::PARSE,
            Error::NonIsolated => exit::ISOLATION,
            Error::NoStabilization(_) => exit::STABILIZATION,
            Error::NonIsolatedSector(_) => exit::SECTOR,
            Error::MaurerCartanFails | Error::ParityViolation(_) => exit::MF_VERIFY,
            _ => exit::OTHER,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
