use thiserror::Error;

/// Library-wide error type.
///
/// Variants split into three exit-code classes used by the CLI: input errors
/// (`InvalidParams`, `ParseError`, `ValidationError`, `Io`), numerical errors
/// (`Pole`, `NonConvergence`, `StepTooLarge`, `GridTooCoarse`,
/// `AmplitudeMismatch`, `Reconstruction`) and the pair-enumeration `EmptySet`.
#[derive(Debug, Error)]
pub enum Error {
    #[error("pole of the hypergeometric series: b = {b} is a non-positive integer not cancelled by a terminating numerator")]
    Pole { b: f64 },

    #[error("series did not converge within {max_terms} terms (last |term/sum| = {last_ratio:.3e})")]
    NonConvergence { max_terms: usize, last_ratio: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("integration step too large: four-velocity normalization drift {drift:.3e} exceeds 1e-6")]
    StepTooLarge { drift: f64 },

    #[error("pair amplitudes differ: c_plus = {c_plus}, c_minus = {c_minus} (equal split required)")]
    AmplitudeMismatch { c_plus: f64, c_minus: f64 },

    #[error("no counterpropagating pairs exist for n = {n} (n >= 1 required)")]
    EmptySet { n: i64 },

    #[error("grid too coarse: Richardson order estimate {slope:.2} < 1.5; increase n_rho_pts/n_phi_pts or shrink the time step")]
    GridTooCoarse { slope: f64 },

    #[error("two-wave reconstruction identity violated by {max_dev:.3e} (expected rounding-level agreement)")]
    Reconstruction { max_dev: f64 },

    #[error("config parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },

    #[error("config validation error for `{key}`: {msg}")]
    ValidationError { key: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code for the CLI contract: 2 = input error, 3 = numerical error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParams(_)
            | Error::ParseError { .. }
            | Error::ValidationError { .. }
            | Error::EmptySet { .. }
            | Error::Io(_) => 2,
            Error::Pole { .. }
            | Error::NonConvergence { .. }
            | Error::StepTooLarge { .. }
            | Error::AmplitudeMismatch { .. }
            | Error::GridTooCoarse { .. }
            | Error::Reconstruction { .. } => 3,
        }
    }
}
