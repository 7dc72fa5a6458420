use thiserror::Error;

/// Failures that are not law violations: dangling references, shape
/// mismatches, guard trips and unmet preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dangling reference: {0}")]
    Dangling(String),
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("size guard exceeded: {what} has {count} morphisms (bound {bound})")]
    SizeGuard { what: String, count: usize, bound: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no components exist: {0}")]
    NoComponents(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("law violated: {0}")]
    Law(String),
}

pub type Result<T> = std::result::Result<T, Error>;
