use thiserror::Error;

/// Errors produced by the integrators, the coefficient algebra and the
/// series-extraction machinery.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside the mathematical domain of the requested
    /// construction (e.g. a splitting weight formula with a vanishing
    /// denominator, or a hyperbolic initial condition where an ellipse is
    /// required).
    #[error("domain error: {0}")]
    Domain(String),

    /// Force evaluation blew up inside a composition step.
    #[error("singular force evaluation at stage {stage}: {reason}")]
    Singularity { stage: usize, reason: String },

    /// The one-step oscillator matrix left the stable window |tr M|/2 <= 1,
    /// so no real approximate frequency exists for this step size.
    #[error("unstable step: |trace|/2 = {half_trace:.6} > 1 at eps = {eps:.6e}")]
    Unstable { eps: f64, half_trace: f64 },

    /// A step-size ladder did not behave like a convergent power series, so
    /// no coefficients can be trusted.
    #[error("series extraction failed: {0}")]
    Extraction(String),

    /// A scheme violates one of the structural invariants. `invariant` names
    /// the specific check that failed.
    #[error("invalid scheme: {invariant} violated: {detail}")]
    InvalidScheme { invariant: String, detail: String },

    /// The force model does not supply an analytic derivative that the
    /// requested computation needs.
    #[error("force model does not provide {0}")]
    Capability(String),

    /// Evaluation requested at (or numerically on top of) a pole of the
    /// underlying rational function.
    #[error("pole: {0}")]
    Pole(String),

    /// Bad command line / configuration input.
    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid_scheme(invariant: &str, detail: impl Into<String>) -> Self {
        Error::InvalidScheme {
            invariant: invariant.to_string(),
            detail: detail.into(),
        }
    }

    /// Exit status for the command line front end: usage errors exit 2,
    /// everything else (a computation that failed) exits 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
