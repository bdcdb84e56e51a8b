use qwalk_core::QwError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),

    #[error("{0}")]
    Resource(String),

    #[error(transparent)]
    Core(#[from] QwError),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error("verification failed: {0}")]
    Verify(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Resource(_) | CliError::Core(QwError::Resource { .. }) => 3,
            _ => 2,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Verify("x".into()).exit_code(), 1);
        assert_eq!(CliError::Config("x".into()).exit_code(), 2);
        assert_eq!(CliError::Resource("x".into()).exit_code(), 3);
        assert_eq!(CliError::Core(QwError::Resource { requested: 2, max: 1 }).exit_code(), 3);
        let io = CliError::io(std::path::Path::new("a"), std::io::Error::other("b"));
        assert_eq!(io.exit_code(), 2);
    }
}
