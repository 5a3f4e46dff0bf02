use thiserror::Error;

use crate::validate::Violation;

/// Classifies schema-level parse failures (as opposed to invariant failures,
/// which carry [`Violation`]s).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemaErrorKind {
    MissingField,
    UnknownField,
    WrongType,
    WrongArity,
    UnknownVariant,
}

impl SchemaErrorKind {
    fn label(&self) -> &'static str {
        match self {
            SchemaErrorKind::MissingField => "missing field",
            SchemaErrorKind::UnknownField => "unknown field",
            SchemaErrorKind::WrongType => "wrong type",
            SchemaErrorKind::WrongArity => "wrong arity",
            SchemaErrorKind::UnknownVariant => "unknown variant",
        }
    }
}

/// Parse failure for minimal-JSON sequence text. Every variant names the JSON
/// path it occurred at (empty path = document root).
#[derive(Debug, Error)]
pub enum ParseError {
    /// The text is not syntactically valid JSON.
    #[error("malformed JSON: {0}")]
    MalformedJson(#[from] serde_json::Error),

    /// The JSON is well formed but does not match the schema.
    #[error("schema violation at {path}: {kind_label}: {detail}", kind_label = kind.label())]
    SchemaViolation {
        path: String,
        kind: SchemaErrorKind,
        detail: String,
    },

    /// The document matches the schema but breaks a model invariant.
    #[error("invariant violation at {first}: {n} violation(s)", first = violations[0].path, n = violations.len())]
    InvariantViolation { violations: Vec<Violation> },
}

impl ParseError {
    pub fn schema(path: impl Into<String>, kind: SchemaErrorKind, detail: impl Into<String>) -> Self {
        ParseError::SchemaViolation {
            path: path.into(),
            kind,
            detail: detail.into(),
        }
    }

    /// The JSON path of the failure, when one is known.
    pub fn path(&self) -> Option<&str> {
        match self {
            ParseError::MalformedJson(_) => None,
            ParseError::SchemaViolation { path, .. } => Some(path),
            ParseError::InvariantViolation { violations } => {
                violations.first().map(|v| v.path.as_str())
            }
        }
    }
}
