use thiserror::Error;

/// Crate-wide error type.
///
/// The distinction between `Precondition`, `Capability` and `Incomplete`
/// matters downstream: verification verdicts must never report a resource
/// limit or an unfinished search as a mathematical failure.
#[derive(Debug, Error)]
pub enum Error {
    /// An image array that is not a bijection, or mismatched degrees.
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    /// An operation was called on a pair (G, H) with H not contained in G.
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    /// A stated mathematical hypothesis of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The input is outside the configured enumeration bounds.
    #[error("capability limit: {what} needs {needed} but the bound is {bound}")]
    Capability {
        what: &'static str,
        needed: u64,
        bound: u64,
    },

    /// A search terminated without certifying its result. Never silent:
    /// callers downgrade the affected verdicts to "unverified".
    #[error("incomplete computation: {0}")]
    Incomplete(String),

    /// Corpus files, group files or builder specs that do not parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// Builder specs that parse but cannot be realised as a permutation group.
    #[error("build error: {0}")]
    Build(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("report serialization: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
