use crate::topology::NodeId;

/// Everything that can go wrong in the core crate.
///
/// Variants split into two families: rejected inputs (bad parameters, node ids
/// out of range, malformed packets) and violated invariants, which indicate a
/// bug in a routing algorithm rather than a caller mistake. See
/// [`Error::is_invariant_violation`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("base s must be at least 2, got {0}")]
    BaseTooSmall(usize),
    #[error("dimension k must be at least 1, got {0}")]
    DimensionTooSmall(usize),
    #[error("order n must be at least 3, got {0}")]
    OrderTooSmall(usize),
    #[error("s^k overflows the node index range (s = {s}, k = {k})")]
    OrderOverflow { s: usize, k: usize },
    #[error("generatrix list is empty")]
    NoGeneratrices,
    #[error("generatrix {gen} is outside 1..={max}")]
    GeneratrixOutOfRange { gen: usize, max: usize },
    #[error("generatrices must be strictly increasing ({prev} then {next})")]
    GeneratricesNotIncreasing { prev: usize, next: usize },
    #[error("circulant is disconnected: gcd of generatrices and n is {0}")]
    Disconnected(usize),
    #[error("operation requires a multiplicative circulant MC(s, k)")]
    NotMultiplicative,
    #[error("node {node} is out of range for n = {n}")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("nodes {from} and {to} are not adjacent")]
    NotAdjacent { from: NodeId, to: NodeId },
    #[error("path of {hops} hops exceeds the packet capacity of {max} hops")]
    PathTooLong { hops: usize, max: usize },
    #[error("corrupt packet: port code {code} is not in 1..={port_count}")]
    CorruptPacket { code: u32, port_count: u32 },
    #[error("source and destination coincide at node {0}")]
    SameEndpoints(NodeId),
    #[error("n = {n} exceeds the all-pairs guard of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("greedy route {src} -> {dst} exceeded the hop budget of {budget}")]
    HopBudgetExceeded {
        src: NodeId,
        dst: NodeId,
        budget: usize,
    },
    #[error("packet {src} -> {dst} stopped at node {at}")]
    Undeliverable {
        src: NodeId,
        dst: NodeId,
        at: NodeId,
    },
}

impl Error {
    /// True for errors that can only arise from a broken routing invariant.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(
            self,
            Error::HopBudgetExceeded { .. } | Error::Undeliverable { .. }
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
