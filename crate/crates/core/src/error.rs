use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum QcfError {
    /// A parameter lies outside the region where a symbol or identity is defined
    /// (|q| >= 1, a pole of a denominator symbol, a zero divisor).
    #[error("domain error: {0}")]
    Domain(String),

    /// A series did not reach its tolerance within the term budget.
    #[error("no convergence after {terms} terms (tail bound {tail_bound:e})")]
    NoConvergence { terms: usize, tail_bound: f64 },

    /// A continued fraction specification produced an invalid coefficient.
    #[error("invalid continued fraction '{name}': {reason}")]
    Spec { name: String, reason: String },

    /// The denominator of a modified approximant vanished.
    #[error("singular modification at n = {n}")]
    SingularModification { n: usize },

    /// lambda_n vanished in a Bauer-Muir transformation.
    #[error("degenerate Bauer-Muir transformation: lambda_{n} = 0{}", step.map(|s| format!(" (chain step {s})")).unwrap_or_default())]
    BmDegenerate { n: usize, step: Option<usize> },

    #[error("unknown identity '{0}'")]
    UnknownIdentity(String),

    #[error("unknown chain preset '{0}'")]
    UnknownPreset(String),

    #[error("could not sample a point for '{id}' after {attempts} attempts")]
    SamplingExhausted { id: String, attempts: usize },

    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, QcfError>;

impl QcfError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        QcfError::Domain(msg.into())
    }

    /// Tags a Bauer-Muir degeneracy with the chain step it occurred in.
    pub fn at_step(self, step: usize) -> Self {
        match self {
            QcfError::BmDegenerate { n, .. } => QcfError::BmDegenerate { n, step: Some(step) },
            other => other,
        }
    }
}
