use std::fmt;

use crate::error::Error;

/// 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DslErrorKind {
    SyntaxError,
    UnresolvedName,
    ValidationFailed,
}

impl fmt::Display for DslErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DslErrorKind::SyntaxError => "syntax error",
            DslErrorKind::UnresolvedName => "unresolved name",
            DslErrorKind::ValidationFailed => "validation failed",
        })
    }
}

/// A parse or validation error with its source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DslError {
    pub kind: DslErrorKind,
    pub pos: Pos,
    pub message: String,
    /// Input file, when parsing from disk.
    pub file: Option<String>,
    /// The module error behind a validation failure.
    pub cause: Option<Error>,
}

impl DslError {
    pub(crate) fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        DslError {
            kind: DslErrorKind::SyntaxError,
            pos,
            message: message.into(),
            file: None,
            cause: None,
        }
    }

    pub(crate) fn unresolved(pos: Pos, what: &str, name: &str) -> Self {
        DslError {
            kind: DslErrorKind::UnresolvedName,
            pos,
            message: format!("no {what} named `{name}`"),
            file: None,
            cause: None,
        }
    }

    pub(crate) fn invalid(pos: Pos, message: impl Into<String>) -> Self {
        DslError {
            kind: DslErrorKind::ValidationFailed,
            pos,
            message: message.into(),
            file: None,
            cause: None,
        }
    }

    pub(crate) fn wrap(pos: Pos, context: &str, cause: Error) -> Self {
        DslError {
            kind: DslErrorKind::ValidationFailed,
            pos,
            message: format!("{context}: {cause}"),
            file: None,
            cause: Some(cause),
        }
    }

    pub fn with_file(mut self, file: impl Into<String>) -> Self {
        self.file = Some(file.into());
        self
    }

    pub fn is_size_guard(&self) -> bool {
        self.cause.as_ref().is_some_and(Error::is_size_guard)
    }
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(file) = &self.file {
            write!(f, "{file}:")?;
        }
        write!(f, "{}: {}: {}", self.pos, self.kind, self.message)
    }
}

impl std::error::Error for DslError {}
