//! Constraint-logic machines, grid embeddings, gadget geometry, and exact
//! solvers for unlabeled multi-robot motion planning with unit-square
//! robots amid rectilinear obstacles.
//!
//! The pipeline: a planar AND/OR constraint graph is embedded onto the unit
//! grid (`embed`), each grid vertex becomes a 5x5 cell holding a gadget of
//! obstacles and robots (`gadgets`, `reduce`), and questions about edge
//! reversals translate into questions about moving interchangeable robots
//! (`motion`). Both sides are decided exactly at desk scale so the
//! translation can be cross-validated instance by instance.

pub mod embed;
pub mod fmt;
pub mod gadgets;
pub mod gen;
pub mod geom;
pub mod motion;
pub mod ncl;
pub mod reduce;
pub mod svg;
