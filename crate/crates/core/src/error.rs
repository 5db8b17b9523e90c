//! Crate-wide error type.

use thiserror::Error;

/// Errors raised by value construction, matrix plumbing, and the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid IVIFN ([{lm}, {rm}], [{ln}, {rn}]): {reason}")]
    InvalidIvifn {
        lm: f64,
        rm: f64,
        ln: f64,
        rn: f64,
        reason: String,
    },

    #[error("scalar exponent must be positive, got {0}")]
    NonPositiveExponent(f64),

    #[error("invalid weight vector: {0}")]
    InvalidWeights(String),

    #[error("length mismatch: {left} values vs {right} weights")]
    LengthMismatch { left: usize, right: usize },

    #[error("matrix shape mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    ShapeMismatch {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("attribute list has {attrs} entries but matrix has {cols} columns")]
    AttributeCountMismatch { attrs: usize, cols: usize },

    #[error("matrix is already normalized")]
    AlreadyNormalized,

    #[error("matrix must be normalized first")]
    NotNormalized,

    #[error("empty matrix")]
    EmptyMatrix,

    #[error("need at least {need} alternatives, got {got}")]
    TooFewAlternatives { need: usize, got: usize },

    #[error("every column is degenerate: all alternatives are identical under every attribute")]
    AllColumnsDegenerate,

    #[error("average solution for attribute `{attribute}` has zero accuracy, cannot divide")]
    ZeroAccuracy { attribute: String },

    #[error("average of attribute `{attribute}` is {value}, must be positive")]
    NonPositiveAverage { attribute: String, value: f64 },

    #[error("all alternatives identical: development threshold is zero")]
    DegenerateTaxonomy,

    #[error("unknown linguistic label `{label}` at row {row}, column {col} for expert `{expert}`")]
    UnknownLabel {
        label: String,
        row: usize,
        col: usize,
        expert: String,
    },

    #[error("parameter `{param}` = {value} outside legal range {range}")]
    ParamOutOfRange {
        param: String,
        value: f64,
        range: String,
    },

    #[error("problem file: {0}")]
    ProblemFile(String),

    #[error("parse error: {0}")]
    Parse(#[from] toml::de::Error),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Annotate an error with the pipeline stage it came from.
    pub fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
