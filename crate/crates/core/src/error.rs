use thiserror::Error;

/// Every failure the library can report.
///
/// Variants fall into three groups that the CLI maps to exit codes:
/// input problems, property violations found by a check, and budget caps.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported schema version {found:?}, expected {expected:?}")]
    SchemaVersion { found: String, expected: String },
    #[error("io error: {0}")]
    Io(String),
    #[error("category is not enumerable: {0}")]
    InfiniteCategory(String),
    #[error("graph has a directed cycle through vertex {vertex:?}; pass a depth bound to truncate")]
    CyclicGraph { vertex: String },
    #[error("operation needs an exact category but the input is truncated at depth {depth}")]
    NonExact { depth: usize },
    #[error("category axioms violated: {0}")]
    InvalidCategory(String),
    #[error("category is not left cancellative: {left}*{a} = {left}*{b} with {a} != {b}")]
    NotLeftCancellative { left: String, a: String, b: String },
    #[error("shift pair ({alpha}, {beta}) has different sources")]
    SourceMismatch { alpha: String, beta: String },
    #[error("shift pairs ({0}) and ({1}) are not compatible")]
    IncompatiblePairs(String, String),
    #[error("restriction target is not below the domain idempotent")]
    NotASubIdempotent,
    #[error("malformed zigzag: {0}")]
    MalformedZigzag(String),
    #[error("budget exceeded while computing {what} (cap {cap})")]
    BudgetExceeded { what: String, cap: usize },
    #[error("characterizations disagree on {what}: {detail}")]
    CharacterizationMismatch { what: String, detail: String },
    #[error("filter does not satisfy the diagonal-membership condition")]
    ConditionStarViolated,
    #[error("action is undefined here: {0}")]
    DomainViolation(String),
    #[error("well-definedness failure: {0}")]
    WellDefinedness(String),
    #[error("isomorphism certificate failed: {0}")]
    IsomorphismFailure(String),
    #[error("hypotheses not met: {0}")]
    HypothesesNotMet(String),
    #[error("invalid system: {0}")]
    SystemInvalid(String),
    #[error("cocycle is ill defined: {0}")]
    CocycleIllDefined(String),
    #[error("grading monoid is not a join semilattice: {0}")]
    NotJoinSemilattice(String),
    #[error("action is not directed: {0}")]
    NotDirected(String),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::SchemaVersion { .. }
            | Error::Io(_)
            | Error::InfiniteCategory(_)
            | Error::CyclicGraph { .. }
            | Error::NonExact { .. }
            | Error::MalformedZigzag(_)
            | Error::SourceMismatch { .. } => 2,
            Error::BudgetExceeded { .. } => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
