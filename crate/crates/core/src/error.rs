use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An edge references a vertex index outside the declared classes.
    #[error("edge ({i}, {j}) out of range for a {v_count}x{w_count} bipartite graph")]
    InvalidEdge {
        i: u32,
        j: u32,
        v_count: usize,
        w_count: usize,
    },

    /// The same edge was supplied twice; parallel edges are rejected.
    #[error("parallel edge ({i}, {j})")]
    ParallelEdge { i: u32, j: u32 },

    /// A configured resource cap (point count, subset size, side size) was hit.
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// The operation is undefined for the given input.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An internal cross-check failed; this signals a bug, never bad input.
    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
