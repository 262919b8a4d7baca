use thiserror::Error;

use crate::graph::Vertex;

/// Why a graph was rejected as a line graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Obstruction {
    /// An induced `K_{1,3}`: a center with three pairwise non-adjacent neighbours.
    InducedClaw { center: Vertex, leaves: [Vertex; 3] },
    /// The graph is claw-free, but no edge-clique cover with every vertex in
    /// at most two cliques exists.
    KrauszFailure,
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::InducedClaw { center, leaves } => write!(
                f,
                "induced claw centered at {} with leaves {}, {}, {}",
                center, leaves[0], leaves[1], leaves[2]
            ),
            Obstruction::KrauszFailure => write!(f, "no Krausz clique cover exists"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("the graph is empty")]
    EmptyGraph,

    #[error("the graph has no edges")]
    EdgelessInput,

    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),

    #[error("not a bijection on [1..{0}]")]
    NonBijective(usize),

    #[error("not chordal: chordless cycle {0:?}")]
    NotChordal(Vec<Vertex>),

    #[error("the graph is complete")]
    CompleteGraph,

    #[error("the graph is disconnected")]
    Disconnected,

    #[error("not a line graph: {0}")]
    NotLineGraph(Obstruction),

    #[error("not a hat image: {0}")]
    NotHatImage(String),

    #[error("triple {0:?} does not lie in exactly one maximal clique")]
    NotInU([Vertex; 3]),

    #[error("structural violation: {0}")]
    StructuralViolation(String),

    #[error("no root candidate survived validation")]
    NoCandidates,

    #[error("component containing vertex {component} is not a chordal line graph: {reason}")]
    NotChordalLine { component: Vertex, reason: String },

    #[error("witness is not an isomorphism: {0}")]
    WitnessMismatch(String),

    #[error("input too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
