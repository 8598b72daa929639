use std::time::Duration;

use serde::{Serialize, Serializer};

use crate::model::{RoutePlan, Schedule};

/// Whether a solver proved its result optimal.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ProofStatus {
    Optimal,
    /// Search stopped early; `lower_bound` is a valid bound on the optimum.
    BudgetExhausted {
        lower_bound: f64,
        gap: f64,
    },
    /// No optimality claim (heuristic result).
    Heuristic,
}

impl ProofStatus {
    pub fn is_optimal(&self) -> bool {
        matches!(self, ProofStatus::Optimal)
    }
}

/// Outcome of any solver.
#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub plan: RoutePlan,
    pub schedule: Schedule,
    pub objective: f64,
    pub status: ProofStatus,
    /// Branch-and-bound nodes, oracle leaves, or local-search evaluations.
    pub nodes: u64,
    #[serde(serialize_with = "seconds")]
    pub wall_time: Duration,
}

fn seconds<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}
