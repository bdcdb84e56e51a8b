use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QwError {
    #[error("initial state has vanishing norm (|alpha|^2 + |beta|^2 = {norm_sq:e})")]
    ZeroState { norm_sq: f64 },

    #[error("requested horizon {requested} exceeds the configured maximum {max}")]
    Resource { requested: usize, max: usize },

    #[error("bin width {width} is below the minimum {min} for t = {t}")]
    Bin { width: f64, min: f64, t: usize },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("quadrature did not converge: value {value}, error estimate {error:e} after {evaluations} evaluations")]
    Quadrature {
        value: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("root selection failed: {0}")]
    Branch(String),
}

pub type Result<T> = std::result::Result<T, QwError>;
