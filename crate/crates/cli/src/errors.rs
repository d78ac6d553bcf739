//! Process-level error type and its exit-status mapping.

use std::fmt;
use std::io;
use std::path::{Path, PathBuf};

use splinedsp_core::SplineError;

/// Anything that can stop a command, with enough context for a one-line
/// diagnostic and a script-friendly exit status.
#[derive(Debug)]
pub enum AppError {
    /// A data file could not be understood; carries the 1-based line.
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    /// A config file failed to deserialize.
    Config { path: PathBuf, message: String },
    /// The operating system refused a read or write.
    Io { path: PathBuf, source: io::Error },
    /// A numerical or structural failure from the engine.
    Core(SplineError),
}

impl AppError {
    pub fn parse(path: &Path, line: usize, message: String) -> Self {
        AppError::Parse {
            path: path.to_path_buf(),
            line,
            message,
        }
    }

    pub fn io(path: &Path, source: io::Error) -> Self {
        AppError::Io {
            path: path.to_path_buf(),
            source,
        }
    }

    /// Exit status for `main`. 0 is success and 2 is reserved for flag
    /// errors, so the failure families start at 3; anything without a
    /// dedicated code maps to 1.
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Parse { .. } | AppError::Config { .. } => 3,
            AppError::Core(SplineError::Shape(_)) => 4,
            AppError::Core(SplineError::Range(_)) => 5,
            AppError::Io { .. } => 6,
            AppError::Core(_) => 1,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Parse {
                path,
                line,
                message,
            } => {
                write!(f, "{}:{line}: {message}", path.display())
            }
            AppError::Config { path, message } => {
                write!(f, "{}: {message}", path.display())
            }
            AppError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            AppError::Core(err) => err.fmt(f),
        }
    }
}

impl std::error::Error for AppError {}

impl From<SplineError> for AppError {
    fn from(err: SplineError) -> Self {
        AppError::Core(err)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn each_failure_family_gets_its_own_code() {
        let parse = AppError::parse(Path::new("sig.csv"), 7, "bad field".into());
        let config = AppError::Config {
            path: PathBuf::from("run.json"),
            message: "trailing comma".into(),
        };
        let shape = AppError::Core(SplineError::Shape("too short".into()));
        let range = AppError::Core(SplineError::Range("word too large".into()));
        let io = AppError::io(
            Path::new("out.csv"),
            io::Error::new(io::ErrorKind::PermissionDenied, "denied"),
        );
        let other = AppError::Core(SplineError::Domain("x is NaN".into()));
        assert_eq!(parse.exit_code(), 3);
        assert_eq!(config.exit_code(), 3);
        assert_eq!(shape.exit_code(), 4);
        assert_eq!(range.exit_code(), 5);
        assert_eq!(io.exit_code(), 6);
        assert_eq!(other.exit_code(), 1);
    }

    #[test]
    fn parse_diagnostics_carry_path_and_line() {
        let err = AppError::parse(Path::new("sig.csv"), 12, "column f: `abc` is not a number".into());
        assert_eq!(err.to_string(), "sig.csv:12: column f: `abc` is not a number");
    }

    #[test]
    fn core_errors_pass_their_message_through() {
        let err = AppError::from(SplineError::Range("coefficient 3 does not fit".into()));
        assert_eq!(err.to_string(), "range error: coefficient 3 does not fit");
    }
}
