//! Domain types: instances, route plans, schedules and constraint violations.
//!
//! Station ids are 1-based and customer ids 0-based. The depot is a plain
//! [`Point`] (index 0 in the link and time variables) and never appears in a
//! [`RoutePlan`] tour, so the depot-degree constraints hold by construction.

mod fixtures;
mod io;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use fixtures::{builtin_fixture, Fixture};
pub use io::{parse_instance, parse_plan, serialize_instance, serialize_plan};

/// 1-based station identifier.
pub type StationId = usize;
/// 0-based customer identifier.
pub type CustomerId = usize;
/// 0-based robot identifier.
pub type RobotId = usize;

/// Absolute tolerance applied to length and time comparisons.
pub const EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Station {
    pub id: StationId,
    pub location: Point,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Customer {
    pub id: CustomerId,
    pub location: Point,
    /// Weight of this customer's tardiness in the objective.
    pub importance: f64,
    pub deadline: f64,
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ModelError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid field `{field}`: {message}")]
    Invalid { field: String, message: String },
    #[error("unreachable customer {customer}: no station within half the robot range")]
    UnreachableCustomer { customer: CustomerId },
    #[error("unknown fixture `{0}` (expected `small` or `medium`)")]
    UnknownFixture(String),
}

impl ModelError {
    fn invalid(field: impl Into<String>, message: impl Into<String>) -> Self {
        ModelError::Invalid {
            field: field.into(),
            message: message.into(),
        }
    }
}

/// A complete problem datum. Immutable once constructed; every instance
/// obtained through [`Instance::new`] or parsing satisfies all invariants,
/// including reachability of every customer from some station.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct Instance {
    depot: Point,
    stations: Vec<Station>,
    customers: Vec<Customer>,
    fleet_size: usize,
    robot_range: f64,
    vehicle_speed: f64,
    robot_speed: f64,
}

/// Unchecked mirror of [`Instance`], used as the deserialization target.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawInstance {
    depot: Point,
    stations: Vec<Station>,
    customers: Vec<Customer>,
    fleet_size: usize,
    robot_range: f64,
    vehicle_speed: f64,
    robot_speed: f64,
}

impl TryFrom<RawInstance> for Instance {
    type Error = ModelError;

    fn try_from(raw: RawInstance) -> Result<Self, Self::Error> {
        Instance::new(
            raw.depot,
            raw.stations,
            raw.customers,
            raw.fleet_size,
            raw.robot_range,
            raw.vehicle_speed,
            raw.robot_speed,
        )
    }
}

fn check_point(field: &str, p: Point) -> Result<(), ModelError> {
    if p.x.is_finite() && p.y.is_finite() {
        Ok(())
    } else {
        Err(ModelError::invalid(field, "coordinates must be finite"))
    }
}

impl Instance {
    /// Builds an instance, sorting stations and customers by id and checking
    /// every invariant.
    pub fn new(
        depot: Point,
        mut stations: Vec<Station>,
        mut customers: Vec<Customer>,
        fleet_size: usize,
        robot_range: f64,
        vehicle_speed: f64,
        robot_speed: f64,
    ) -> Result<Self, ModelError> {
        check_point("depot", depot)?;
        if fleet_size < 1 {
            return Err(ModelError::invalid("fleet_size", "must be at least 1"));
        }
        if !(robot_range.is_finite() && robot_range > 0.0) {
            return Err(ModelError::invalid("robot_range", "must be finite and positive"));
        }
        if !(vehicle_speed.is_finite() && vehicle_speed > 0.0) {
            return Err(ModelError::invalid("vehicle_speed", "must be finite and positive"));
        }
        if !(robot_speed.is_finite() && robot_speed > 0.0) {
            return Err(ModelError::invalid("robot_speed", "must be finite and positive"));
        }
        if stations.is_empty() {
            return Err(ModelError::invalid("stations", "at least one station is required"));
        }

        stations.sort_by_key(|s| s.id);
        for (i, s) in stations.iter().enumerate() {
            if s.id != i + 1 {
                return Err(ModelError::invalid(
                    "stations",
                    format!("station ids must be unique and contiguous from 1 (found {})", s.id),
                ));
            }
            check_point(&format!("stations[{}].location", s.id), s.location)?;
        }

        customers.sort_by_key(|c| c.id);
        for (i, c) in customers.iter().enumerate() {
            if c.id != i {
                return Err(ModelError::invalid(
                    "customers",
                    format!("customer ids must be unique and contiguous from 0 (found {})", c.id),
                ));
            }
            check_point(&format!("customers[{}].location", c.id), c.location)?;
            if !(c.importance.is_finite() && c.importance > 0.0) {
                return Err(ModelError::invalid(
                    format!("customers[{}].importance", c.id),
                    "must be finite and positive",
                ));
            }
            if !(c.deadline.is_finite() && c.deadline >= 0.0) {
                return Err(ModelError::invalid(
                    format!("customers[{}].deadline", c.id),
                    "must be finite and nonnegative",
                ));
            }
        }

        let instance = Self {
            depot,
            stations,
            customers,
            fleet_size,
            robot_range,
            vehicle_speed,
            robot_speed,
        };
        for c in &instance.customers {
            if instance.reachable_stations(c.id).next().is_none() {
                return Err(ModelError::UnreachableCustomer { customer: c.id });
            }
        }
        Ok(instance)
    }

    pub fn depot(&self) -> Point {
        self.depot
    }

    pub fn stations(&self) -> &[Station] {
        &self.stations
    }

    pub fn customers(&self) -> &[Customer] {
        &self.customers
    }

    /// Station with the given 1-based id.
    pub fn station(&self, id: StationId) -> Option<&Station> {
        id.checked_sub(1).and_then(|i| self.stations.get(i))
    }

    pub fn customer(&self, id: CustomerId) -> Option<&Customer> {
        self.customers.get(id)
    }

    pub fn num_stations(&self) -> usize {
        self.stations.len()
    }

    pub fn num_customers(&self) -> usize {
        self.customers.len()
    }

    /// Number of robots carried by the vehicle.
    pub fn fleet_size(&self) -> usize {
        self.fleet_size
    }

    pub fn robot_range(&self) -> f64 {
        self.robot_range
    }

    pub fn vehicle_speed(&self) -> f64 {
        self.vehicle_speed
    }

    pub fn robot_speed(&self) -> f64 {
        self.robot_speed
    }

    /// Stations from which the customer can be served by an out-and-back trip.
    pub fn reachable_stations(&self, customer: CustomerId) -> impl Iterator<Item = StationId> + '_ {
        let loc = self.customers[customer].location;
        self.stations
            .iter()
            .filter(move |s| 2.0 * crate::eval::distance(s.location, loc) <= self.robot_range + EPS)
            .map(|s| s.id)
    }
}

/// One robot's dispatch at one station: the customers it serves, in order,
/// returning to the station between consecutive services.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSortie")]
pub struct Sortie {
    pub robot: RobotId,
    pub station: StationId,
    services: Vec<CustomerId>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSortie {
    robot: RobotId,
    station: StationId,
    services: Vec<CustomerId>,
}

impl TryFrom<RawSortie> for Sortie {
    type Error = ModelError;

    fn try_from(raw: RawSortie) -> Result<Self, Self::Error> {
        Sortie::new(raw.robot, raw.station, raw.services)
    }
}

impl Sortie {
    /// Fails if `services` is empty or lists a customer twice.
    pub fn new(robot: RobotId, station: StationId, services: Vec<CustomerId>) -> Result<Self, ModelError> {
        if services.is_empty() {
            return Err(ModelError::invalid(
                "services",
                "a sortie must serve at least one customer",
            ));
        }
        let mut seen = HashSet::with_capacity(services.len());
        for &o in &services {
            if !seen.insert(o) {
                return Err(ModelError::invalid(
                    "services",
                    format!("customer {o} appears twice in the sortie of robot {robot} at station {station}"),
                ));
            }
        }
        Ok(Self {
            robot,
            station,
            services,
        })
    }

    pub fn services(&self) -> &[CustomerId] {
        &self.services
    }

    pub fn first(&self) -> CustomerId {
        self.services[0]
    }

    pub fn last(&self) -> CustomerId {
        self.services[self.services.len() - 1]
    }
}

/// The decision object: the vehicle's station order plus every robot sortie.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoutePlan {
    /// Visiting order of all stations; the depot endpoints are implicit.
    pub tour: Vec<StationId>,
    pub sorties: Vec<Sortie>,
}

impl RoutePlan {
    /// Checked constructor: rejects any plan breaking a structural constraint
    /// (everything except the travel range, which needs geometry).
    pub fn new(instance: &Instance, tour: Vec<StationId>, sorties: Vec<Sortie>) -> Result<Self, Vec<Violation>> {
        let plan = Self { tour, sorties };
        let violations: Vec<_> = crate::eval::validate(instance, &plan)
            .into_iter()
            .filter(|v| v.kind != ViolationKind::Range)
            .collect();
        if violations.is_empty() {
            Ok(plan)
        } else {
            Err(violations)
        }
    }

    /// Sorts sorties by (station, robot) so equal plans serialize identically.
    pub fn canonicalize(&mut self) {
        self.sorties.sort_by_key(|s| (s.station, s.robot));
    }

    pub fn sorties_at(&self, station: StationId) -> impl Iterator<Item = &Sortie> {
        self.sorties.iter().filter(move |s| s.station == station)
    }
}

/// Times produced by schedule propagation. `arrive`/`depart` are indexed by
/// station id − 1, `complete`/`tardiness` by customer id.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    pub arrive: Vec<f64>,
    pub depart: Vec<f64>,
    pub complete: Vec<f64>,
    pub tardiness: Vec<f64>,
    pub objective: f64,
}

impl Schedule {
    pub fn arrive_at(&self, station: StationId) -> f64 {
        self.arrive[station - 1]
    }

    pub fn depart_at(&self, station: StationId) -> f64 {
        self.depart[station - 1]
    }
}

/// Constraint group broken by a plan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// (1)/(2): leave and re-enter the depot exactly once.
    Depot,
    /// (3)/(4): every station entered and left exactly once.
    StationDegree,
    /// (5)/(6): at most one dispatch and one collection per robot and station.
    DispatchCollect,
    /// (7): dispatches balance collections.
    Balance,
    /// (8): route continuity.
    Continuity,
    /// (9): robot travel range.
    Range,
    /// (10)/(11): every customer served exactly once.
    Coverage,
    /// Unknown ids, empty or self-repeating sorties.
    Structural,
}

impl ViolationKind {
    /// Constraint numbers of the underlying model, e.g. `"(10)/(11)"`.
    pub fn constraints(self) -> &'static str {
        match self {
            ViolationKind::Depot => "(1)/(2)",
            ViolationKind::StationDegree => "(3)/(4)",
            ViolationKind::DispatchCollect => "(5)/(6)",
            ViolationKind::Balance => "(7)",
            ViolationKind::Continuity => "(8)",
            ViolationKind::Range => "(9)",
            ViolationKind::Coverage => "(10)/(11)",
            ViolationKind::Structural => "structural",
        }
    }
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.constraints())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: ViolationKind, detail: impl Into<String>) -> Self {
        Self {
            kind,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.detail)
    }
}
