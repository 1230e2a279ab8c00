use thiserror::Error;

use crate::exact::Grade;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,

    #[error("grade mismatch in {op}: {left} vs {right}")]
    GradeMismatch {
        op: &'static str,
        left: Grade,
        right: Grade,
    },

    #[error("grade overflow: {left} times {right} exceeds pi^2")]
    GradeOverflow { left: Grade, right: Grade },

    #[error("expected a {expected} value, got {got}")]
    WrongGrade { expected: Grade, got: Grade },

    #[error("value {0} does not fit in a finite double")]
    FloatOverflow(String),

    #[error("{name} must be at least 1, got {value}")]
    InvalidParameter { name: &'static str, value: i64 },

    #[error("{name} = {value} exceeds the supported maximum {max}")]
    ParameterTooLarge {
        name: &'static str,
        value: i64,
        max: u64,
    },

    #[error("no spherical structure asserted here (alpha = {alpha}, window {window})")]
    NotAsserted { alpha: String, window: String },

    #[error("finite-difference stencil alpha +/- {step} leaves the window {window}")]
    StencilOutside { step: f64, window: String },

    #[error("invalid verification config: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
