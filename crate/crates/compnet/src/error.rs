use thiserror::Error;

/// Unified error type for the compnet library.
#[derive(Debug, Error)]
pub enum Error {
    /// Network JSON failed to parse.
    #[error("failed to parse network JSON: {0}")]
    Parse(#[from] serde_json::Error),

    /// Network structure violates a model invariant.
    #[error("invalid network: {0}")]
    InvalidNetwork(String),

    /// A node id was referenced that does not exist in the network.
    #[error("unknown node '{0}'")]
    UnknownNode(String),

    /// A link was referenced that does not exist in the network.
    #[error("unknown link '{0}'")]
    UnknownLink(String),

    /// Source and destination must be distinct nodes.
    #[error("source and destination must be distinct (got '{0}' for both)")]
    SourceEqualsDest(String),

    /// A removal fraction was outside [0, 1].
    #[error("removal fraction {fraction} for '{resource}' is outside [0, 1]")]
    InvalidFraction { resource: String, fraction: f64 },

    /// A numeric range was inverted, non-finite, or negative where forbidden.
    #[error("invalid range: {0}")]
    InvalidRange(String),

    /// The LP/MILP engine could not produce an optimal solution.
    #[error("solver failure: {0}")]
    Solver(String),

    /// A method that requires interdiction costs equal to capacities was
    /// invoked on a network where they differ.
    #[error("interdiction cost differs from capacity for '{0}', but the requested method requires cost = capacity")]
    CostModelMismatch(String),

    /// Path enumeration exceeded the configured limit.
    #[error("path enumeration exceeded the limit of {0} paths")]
    PathLimit(usize),

    /// An exhaustive oracle was asked to enumerate more resources than its limit.
    #[error("oracle limit exceeded: {found} candidate resources, limit {limit}")]
    OracleSize { found: usize, limit: usize },

    /// A budget was negative or non-finite.
    #[error("invalid budget {0}: must be a finite non-negative number")]
    InvalidBudget(f64),

    /// A set-cover triple was malformed.
    #[error("invalid triple {0}")]
    InvalidTriple(String),

    /// Requested operation is not implemented for the given configuration.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// File I/O error (fixture export, CLI helpers).
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
