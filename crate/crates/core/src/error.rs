use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of a model function.
    #[error("domain error: {0}")]
    Domain(String),

    /// Parameters are individually well-formed but do not describe a valid setup.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// The explicit scheme is unstable for this grid: dt/dx^2 exceeds 1/2.
    #[error("CFL invariant violated: dt/dx^2 = {ratio} > 0.5 (max admissible dt = {max_dt})")]
    Stability { ratio: f64, max_dt: f64 },

    #[error("invalid step size {dt}: {reason}")]
    StepSize { dt: f64, reason: String },

    #[error("divergence at step {step}, node {node} (t = {time}): value {value}")]
    Divergence {
        step: usize,
        node: usize,
        time: f64,
        value: f64,
    },

    #[error("negative capital at step {step}, node {node} (t = {time}): value {value}")]
    Negativity {
        step: usize,
        node: usize,
        time: f64,
        value: f64,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Stability { .. }
            | Error::StepSize { .. }
            | Error::Divergence { .. }
            | Error::Negativity { .. } => 3,
            Error::Domain(_)
            | Error::Config(_)
            | Error::Parse { .. }
            | Error::Contract(_)
            | Error::Io { .. } => 2,
        }
    }

    /// One-line, `key=value` style reason suitable for log scraping.
    pub fn reason_line(&self) -> String {
        let flat = |s: &str| s.replace('\n', " ");
        match self {
            Error::Domain(m) => format!("domain-error msg=\"{}\"", flat(m)),
            Error::Config(m) => format!("consistency-error msg=\"{}\"", flat(m)),
            Error::Parse { line, message } => {
                format!("parse-error line={line} msg=\"{}\"", flat(message))
            }
            Error::Stability { ratio, max_dt } => {
                format!("cfl-violation ratio={ratio} max_dt={max_dt}")
            }
            Error::StepSize { dt, .. } => format!("step-size-error dt={dt}"),
            Error::Divergence {
                step,
                node,
                time,
                value,
            } => format!("divergence step={step} node={node} t={time} value={value}"),
            Error::Negativity {
                step,
                node,
                time,
                value,
            } => format!("negativity step={step} node={node} t={time} value={value}"),
            Error::Contract(m) => format!("contract-violation msg=\"{}\"", flat(m)),
            Error::Io { path, source } => {
                format!(
                    "io-error path=\"{}\" msg=\"{}\"",
                    path.display(),
                    flat(&source.to_string())
                )
            }
        }
    }
}
