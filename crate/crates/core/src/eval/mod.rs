//! Geometry, plan validation and schedule propagation.
//!
//! Vehicle legs take `length / vehicle_speed`, robot legs
//! `length / robot_speed`. Departures are taken as early as the returning
//! robots allow and tardiness is `max(0, completion - deadline)`.

mod layout;

use std::collections::HashMap;

pub use layout::{Evaluator, IncrementalSchedule, Layout};

use crate::model::{Instance, Point, RoutePlan, Schedule, Sortie, Violation, ViolationKind, EPS};

/// Euclidean distance.
pub fn distance(a: Point, b: Point) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

/// All link lengths of an instance. Stations are addressed by index
/// (id − 1) and customers by id.
#[derive(Clone, Debug)]
pub struct DistanceTable {
    n_s: usize,
    n_c: usize,
    depot_station: Vec<f64>,
    station_station: Vec<f64>,
    station_customer: Vec<f64>,
    customer_customer: Vec<f64>,
}

impl DistanceTable {
    pub fn new(instance: &Instance) -> Self {
        let st = instance.stations();
        let cu = instance.customers();
        let (n_s, n_c) = (st.len(), cu.len());
        let mut station_station = Vec::with_capacity(n_s * n_s);
        for a in st {
            station_station.extend(st.iter().map(|b| distance(a.location, b.location)));
        }
        let mut station_customer = Vec::with_capacity(n_s * n_c);
        for s in st {
            station_customer.extend(cu.iter().map(|c| distance(s.location, c.location)));
        }
        let mut customer_customer = Vec::with_capacity(n_c * n_c);
        for a in cu {
            customer_customer.extend(cu.iter().map(|b| distance(a.location, b.location)));
        }
        Self {
            n_s,
            n_c,
            depot_station: st.iter().map(|s| distance(instance.depot(), s.location)).collect(),
            station_station,
            station_customer,
            customer_customer,
        }
    }

    #[inline]
    pub fn depot_station(&self, k: usize) -> f64 {
        self.depot_station[k]
    }

    #[inline]
    pub fn station_station(&self, k: usize, l: usize) -> f64 {
        self.station_station[k * self.n_s + l]
    }

    #[inline]
    pub fn station_customer(&self, k: usize, o: usize) -> f64 {
        self.station_customer[k * self.n_c + o]
    }

    /// Present for completeness; no constraint of the model uses it.
    #[inline]
    pub fn customer_customer(&self, o: usize, p: usize) -> f64 {
        self.customer_customer[o * self.n_c + p]
    }
}

/// Total robot travel of a sortie: out to the first customer, back and out
/// between consecutive services, and home from the last.
pub fn sortie_length(instance: &Instance, sortie: &Sortie) -> f64 {
    let k = instance
        .station(sortie.station)
        .expect("sortie station exists")
        .location;
    let loc = |o: usize| instance.customer(o).expect("sortie customer exists").location;
    let s = sortie.services();
    let mut len = distance(k, loc(s[0]));
    for w in s.windows(2) {
        len += distance(loc(w[0]), k) + distance(k, loc(w[1]));
    }
    len + distance(loc(sortie.last()), k)
}

/// Lists every constraint the plan breaks; an empty list means feasible.
/// Balance (7) and continuity (8) hold by the sortie representation.
pub fn validate(instance: &Instance, plan: &RoutePlan) -> Vec<Violation> {
    let mut out = Vec::new();
    let n_s = instance.num_stations();

    if plan.tour.is_empty() {
        out.push(Violation::new(ViolationKind::Depot, "vehicle never leaves the depot"));
    }
    let mut visits = vec![0usize; n_s];
    for &k in &plan.tour {
        match instance.station(k) {
            Some(_) => visits[k - 1] += 1,
            None => out.push(Violation::new(
                ViolationKind::Structural,
                format!("tour references unknown station {k}"),
            )),
        }
    }
    for (i, &n) in visits.iter().enumerate() {
        if n == 0 {
            out.push(Violation::new(
                ViolationKind::StationDegree,
                format!("station {} is never visited", i + 1),
            ));
        } else if n > 1 {
            out.push(Violation::new(
                ViolationKind::StationDegree,
                format!("station {} is visited {n} times", i + 1),
            ));
        }
    }

    let mut per_slot: HashMap<(usize, usize), usize> = HashMap::new();
    let mut served = vec![0usize; instance.num_customers()];
    for s in &plan.sorties {
        let mut ok = true;
        if s.robot >= instance.fleet_size() {
            ok = false;
            out.push(Violation::new(
                ViolationKind::Structural,
                format!("sortie references unknown robot {}", s.robot),
            ));
        }
        if instance.station(s.station).is_none() {
            ok = false;
            out.push(Violation::new(
                ViolationKind::Structural,
                format!("sortie of robot {} references unknown station {}", s.robot, s.station),
            ));
        }
        for &o in s.services() {
            match served.get_mut(o) {
                Some(n) => *n += 1,
                None => {
                    ok = false;
                    out.push(Violation::new(
                        ViolationKind::Structural,
                        format!("sortie of robot {} references unknown customer {o}", s.robot),
                    ));
                }
            }
        }
        *per_slot.entry((s.robot, s.station)).or_default() += 1;
        if ok {
            let len = sortie_length(instance, s);
            if len > instance.robot_range() + EPS {
                out.push(Violation::new(
                    ViolationKind::Range,
                    format!(
                        "sortie {} has length {len:.3} > range {}",
                        describe_sortie(s),
                        instance.robot_range()
                    ),
                ));
            }
        }
    }

    let mut dup: Vec<_> = per_slot.into_iter().filter(|&(_, n)| n > 1).collect();
    dup.sort_unstable();
    for ((r, k), n) in dup {
        out.push(Violation::new(
            ViolationKind::DispatchCollect,
            format!("robot {r} is dispatched {n} times at station {k}"),
        ));
    }

    for (o, &n) in served.iter().enumerate() {
        if n == 0 {
            out.push(Violation::new(
                ViolationKind::Coverage,
                format!("customer {o} is not served"),
            ));
        } else if n > 1 {
            out.push(Violation::new(
                ViolationKind::Coverage,
                format!("customer {o} is served {n} times"),
            ));
        }
    }
    out
}

/// `(r0, S4, [C6, C0])`
pub fn describe_sortie(s: &Sortie) -> String {
    let services: Vec<_> = s.services().iter().map(|o| format!("C{o}")).collect();
    format!("(r{}, S{}, [{}])", s.robot, s.station, services.join(", "))
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum EvalError {
    #[error("plan is structurally invalid: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidPlan(Vec<Violation>),
}

/// Computes the earliest schedule of a plan. Range violations are tolerated
/// (the schedule is still well defined); any other violation is an error.
pub fn propagate(instance: &Instance, plan: &RoutePlan) -> Result<Schedule, EvalError> {
    let blocking: Vec<_> = validate(instance, plan)
        .into_iter()
        .filter(|v| v.kind != ViolationKind::Range)
        .collect();
    if !blocking.is_empty() {
        return Err(EvalError::InvalidPlan(blocking));
    }
    let ev = Evaluator::new(instance);
    Ok(ev.schedule(&Layout::from_plan(instance, plan)))
}

/// Total weighted tardiness of a schedule.
pub fn objective(instance: &Instance, schedule: &Schedule) -> f64 {
    instance
        .customers()
        .iter()
        .zip(&schedule.tardiness)
        .fold(0.0, |acc, (c, t)| acc + c.importance * t)
}
