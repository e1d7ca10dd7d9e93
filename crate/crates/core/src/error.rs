use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

/// Argument and validation errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector id {id} out of range for a table of {n} vectors")]
    IdOutOfRange { id: u32, n: u32 },
    #[error("unknown table {0}")]
    UnknownTable(u32),
    #[error("table {0} has no lookups")]
    NoLookups(u32),
    #[error("query must contain at least one id")]
    EmptyQuery,
    #[error("trace has no queries")]
    EmptyTrace,
    #[error("split fraction must lie in (0, 1), got {0}")]
    InvalidFraction(f64),
    #[error("invalid workload spec: {0}")]
    InvalidSpec(&'static str),
    #[error("stack distance series is empty")]
    EmptySeries,
    #[error("sizes must be strictly increasing and at least 1")]
    InvalidSizes,
    #[error("cluster count k={k} invalid for n={n} points")]
    InvalidClusterCount { k: u32, n: u32 },
    #[error("invalid layout: {0}")]
    InvalidLayout(&'static str),
    #[error("query set is empty")]
    NoQueries,
    #[error("invalid cache config: {0}")]
    InvalidCacheConfig(&'static str),
    #[error("policy performed zero block reads; bandwidth increase undefined")]
    ZeroBlockReads,
    #[error("sampling rate must lie in (0, 1], got {0}")]
    InvalidSamplingRate(f64),
    #[error("miniature trace is empty at sampling rate {0}")]
    EmptyMiniTrace(f64),
    #[error("no threshold candidates supplied")]
    NoCandidates,
    #[error("allocation grid infeasible: {0}")]
    InfeasibleGrid(&'static str),
}
