//! JSON reading and writing of instances and plans. The document layout is
//! described in `docs/FORMAT.md`.

use super::{Instance, ModelError, RawInstance, RoutePlan};

fn syntax(err: serde_json::Error) -> ModelError {
    ModelError::Syntax {
        line: err.line(),
        column: err.column(),
        message: err.to_string(),
    }
}

/// Parses an instance document. Malformed JSON or a wrongly typed field is a
/// [`ModelError::Syntax`]; a well-formed document breaking an invariant
/// yields the invariant error.
pub fn parse_instance(text: &str) -> Result<Instance, ModelError> {
    let raw: RawInstance = serde_json::from_str(text).map_err(syntax)?;
    Instance::try_from(raw)
}

pub fn serialize_instance(instance: &Instance) -> String {
    let mut s = serde_json::to_string_pretty(instance).expect("instance serializes");
    s.push('\n');
    s
}

/// Parses a plan document. Only plan-local invariants are checked here
/// (non-empty, duplicate-free sorties); use [`crate::eval::validate`] against
/// an instance for the rest.
pub fn parse_plan(text: &str) -> Result<RoutePlan, ModelError> {
    serde_json::from_str(text).map_err(syntax)
}

pub fn serialize_plan(plan: &RoutePlan) -> String {
    let mut s = serde_json::to_string_pretty(plan).expect("plan serializes");
    s.push('\n');
    s
}
