//! Exact discrete motion planning for unit-square robots on the half-unit
//! lattice. One robot moves one half-step at a time; a move is legal when
//! the swept 1 x 1.5 rectangle stays clear of obstacle interiors, point
//! obstacles, and the other robots' interiors.

mod instance;
mod solve;

pub use instance::{is_free, legal_single_moves, Instance, InstanceError, MultiConfig};
pub use solve::{
    enumerate_free_configs, solve_labeled, solve_multi_to_multi, solve_multi_to_single,
    solve_multi_to_single_restricted, solve_single_to_single, MotionError, PathPlan, PlanStep,
    SearchLimits, StateSpace,
};
