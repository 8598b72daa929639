//! Routing for a vehicle that carries a fleet of delivery robots between
//! stations, minimizing the total weighted tardiness of customer services.
//!
//! - [`model`]: instances, plans, schedules, JSON I/O and the built-in fixtures.
//! - [`eval`]: geometry, validation and schedule propagation.
//! - [`exact`]: exhaustive oracle and branch and bound.
//! - [`heuristic`]: greedy construction and local search.
//! - [`mipexport`]: LP-format export of the quadratic model and its big-M
//!   linearization, plus solver-solution import.
//! - [`instgen`]: seeded random instances.

pub mod eval;
pub mod exact;
pub mod heuristic;
pub mod instgen;
pub mod mipexport;
pub mod model;
mod report;

pub use eval::{objective, propagate, sortie_length, validate, DistanceTable, EvalError, Evaluator, Layout};
pub use model::{
    builtin_fixture, parse_instance, parse_plan, serialize_instance, serialize_plan, Customer, CustomerId, Fixture,
    Instance, ModelError, Point, RobotId, RoutePlan, Schedule, Sortie, Station, StationId, Violation, ViolationKind,
};
pub use report::{ProofStatus, SolveReport};
