use num_bigint::BigUint;
use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid rational literal `{0}` (expected `p` or `p/q` with q > 0)")]
    InvalidRational(String),

    #[error("utility of agent {agent} for house {house} is negative")]
    NegativeUtility { agent: usize, house: usize },

    #[error("instance has {agents} agents but only {houses} houses")]
    AgentsExceedHouses { agents: usize, houses: usize },

    #[error("instance must contain at least one agent")]
    EmptyInstance,

    #[error("row {row} has {got} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("{what}: expected {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("house index {house} out of range for {houses} houses")]
    HouseOutOfRange { house: usize, houses: usize },

    #[error("house {house} is assigned to more than one agent")]
    DuplicateHouse { house: usize },

    #[error("shift for agent {agent} is negative")]
    NegativeShift { agent: usize },

    #[error("subsidy for agent {agent} is negative")]
    NegativeSubsidy { agent: usize },

    #[error("allocation admits no envy-eliminating subsidy vector")]
    NotEnvyFreeable,

    #[error("expected a square matrix with one house per agent, got {agents} agents and {houses} houses")]
    NotSquare { agents: usize, houses: usize },

    #[error(
        "house surplus {surplus} exceeds cap {cap}: the run would enumerate {subsets} subsets \
         of houses; raise the cap to force it"
    )]
    SurplusCapExceeded {
        surplus: usize,
        cap: usize,
        subsets: BigUint,
    },

    #[error("utility rows are not identical (row {agent} differs from row 0)")]
    NotIdentical { agent: usize },

    #[error("enumeration of {required} allocations exceeds the budget of {budget}")]
    BudgetExceeded { required: BigUint, budget: u64 },

    #[error("graph must have at least two vertices, got {0}")]
    TooFewVertices(usize),

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge ({u}, {v}) out of range for {vertex_count} vertices")]
    EdgeOutOfRange {
        u: usize,
        v: usize,
        vertex_count: usize,
    },

    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("k = {k} must satisfy 1 <= k < {vertex_count} - 1")]
    KTooLarge { k: usize, vertex_count: usize },

    #[error("set is not a vertex cover: edge ({u}, {v}) is uncovered")]
    NotACover { u: usize, v: usize },

    #[error("cover has {size} vertices, exceeding k = {k}")]
    CoverTooLarge { size: usize, k: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
