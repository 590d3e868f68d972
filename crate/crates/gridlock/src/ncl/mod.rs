//! Constraint-logic machines: weighted graphs with per-vertex minimum
//! in-flow, whose states are edge orientations and whose moves reverse one
//! edge at a time.

mod graph;
mod orientation;
mod solve;

pub use graph::{
    graph_from_parts, k4_all_or, ConstraintGraph, EdgeData, EdgeId, GraphError, ValidationReport,
    VertexData, VertexId, VertexKind, Violation,
};
pub use orientation::Orientation;
pub use solve::{
    enumerate_valid_orientations, legal_moves, orientation_is_valid, solve_edge_to_edge,
    solve_full_to_edge, solve_full_to_full, EdgeDirection, MoveWitness, NclError,
    DEFAULT_ENUMERATION_CAP,
};
