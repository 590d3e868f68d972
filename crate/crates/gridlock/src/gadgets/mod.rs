//! Gadget geometry: each grid-graph vertex becomes a 5x5 cell (10x10
//! half-units) of obstacles and robots that emulates the vertex's logic.
//!
//! An edge robot sits in a doorway shared by two cells and has exactly two
//! stable positions, half-inside one cell or half-inside the other; which
//! one encodes the direction of the corresponding edge. Vertex robots stay
//! inside one cell and transmit blocking pressure between the doorways so
//! that the reachable in/out combinations are exactly the valid
//! orientations of the vertex.
//!
//! The designs here are verified behaviorally: `verify` enumerates every
//! reachable configuration of a cell (or a pair of cells) exhaustively and
//! compares the projection onto edge-robot positions with the vertex truth
//! table.

mod cellgrid;
mod design;
mod statespace;
mod verify;

pub use cellgrid::{Boundary, CellGrid, CellRobot, CellRobotKind, DOOR_HALF_SPAN, PITCH};
pub use design::{make_gadget, Gadget, GadgetError, GadgetKind, VertexRobot, CELL};
pub use statespace::{explore_labeled, LabeledExploration};
pub use verify::{
    expected_projections, verify_gadget_semantics, verify_pair, verify_rotation_equivariance,
    GadgetReport, PairReport,
};
