//! Error types shared across the toolkit.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("substitution produced an identically zero denominator")]
    SingularSubstitution,

    #[error("expression is not linear in the requested variable")]
    NotLinear,

    #[error("coefficient of the requested variable vanishes identically")]
    NoSolution,

    #[error("matrix shape mismatch: {0}")]
    ShapeError(String),

    #[error("index out of range: {0}")]
    IndexError(String),

    #[error("matrix is singular: {0}")]
    SingularMatrix(String),

    #[error("invalid algebra specification: {0}")]
    SpecError(String),

    #[error("generator not supported: {0}")]
    UnsupportedGenerator(String),

    #[error("normalization stuck with parametric residuals: {}", residual.join("; "))]
    NormalizationStuck { residual: Vec<String> },

    #[error("inconclusive result: {0}")]
    Inconclusive(String),

    #[error("expression with fractional exponents cannot be symmetrized")]
    NotSymmetrizable,

    #[error("expression mentions variables outside the coordinate ring: {0}")]
    DomainError(String),

    #[error("parse error: {0}")]
    ParseError(String),
}

impl Error {
    /// Stable machine-readable tag for diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::SingularSubstitution => "SingularSubstitution",
            Error::NotLinear => "NotLinear",
            Error::NoSolution => "NoSolution",
            Error::ShapeError(_) => "ShapeError",
            Error::IndexError(_) => "IndexError",
            Error::SingularMatrix(_) => "SingularMatrix",
            Error::SpecError(_) => "SpecError",
            Error::UnsupportedGenerator(_) => "UnsupportedGenerator",
            Error::NormalizationStuck { .. } => "NormalizationStuck",
            Error::Inconclusive(_) => "Inconclusive",
            Error::NotSymmetrizable => "NotSymmetrizable",
            Error::DomainError(_) => "DomainError",
            Error::ParseError(_) => "ParseError",
        }
    }

    /// True for failures of the computation itself rather than of the input.
    pub fn is_computation_failure(&self) -> bool {
        matches!(
            self,
            Error::NormalizationStuck { .. }
                | Error::Inconclusive(_)
                | Error::UnsupportedGenerator(_)
                | Error::NotSymmetrizable
                | Error::DivisionByZero
                | Error::SingularSubstitution
                | Error::SingularMatrix(_)
                | Error::DomainError(_)
                | Error::NotLinear
                | Error::NoSolution
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
