use std::fmt;

use thiserror::Error;

/// A single violated law or malformed entry found while validating a category.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("duplicate id `{id}`")]
    DuplicateId { id: String },
    #[error("dangling id `{id}` in {context}")]
    DanglingId { id: String, context: String },
    #[error("missing composite {g}.{f}")]
    MissingComposite { g: String, f: String },
    #[error("composite {g}.{f} given but cod({f}) != dom({g})")]
    NotComposable { g: String, f: String },
    #[error("composite {g}.{f} = {h} has the wrong domain or codomain")]
    BadComposite { g: String, f: String, h: String },
    #[error("conflicting composites {g}.{f} = {h1} and {g}.{f} = {h2}")]
    ConflictingComposite {
        g: String,
        f: String,
        h1: String,
        h2: String,
    },
    #[error("bad identity `{arrow}`: {detail}")]
    BadIdentity { arrow: String, detail: String },
    #[error("non-associative triple: {h}.({g}.{f}) != ({h}.{g}).{f}")]
    NonAssociative { h: String, g: String, f: String },
    #[error("shape `{shape}` violated: {detail}")]
    ShapeViolation { shape: String, detail: String },
}

/// Every law violation found for one candidate category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<CategoryError>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.errors.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl std::error::Error for ValidationReport {}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid category: {0}")]
    InvalidCategory(#[from] ValidationReport),
    #[error("invalid functor: {0}")]
    InvalidFunctor(String),
    #[error("invalid natural transformation: {0}")]
    InvalidNatTransform(String),
    #[error("invalid presheaf: {0}")]
    InvalidPresheaf(String),
    #[error("size guard exceeded: {what} exceeds {limit}")]
    SizeGuardExceeded { what: String, limit: usize },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("target mismatch: {0}")]
    TargetMismatch(String),
    #[error("arrow mismatch: {0}")]
    ArrowMismatch(String),
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),
    #[error("triangle mismatch: {0}")]
    TriangleMismatch(String),
    #[error("base mismatch: {0}")]
    BaseMismatch(String),
    #[error("invalid square: {0}")]
    InvalidSquare(String),
}

impl Error {
    pub fn is_size_guard(&self) -> bool {
        matches!(self, Error::SizeGuardExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
