//! The two published benchmark instances and their published solutions.
//!
//! Plans are rebuilt from the published nonzero link variables (y, x, w, z),
//! not from the per-robot route listings, which carry labeling typos.
//!
//! Small instance notes: the published solution table lists two rows named
//! `t_1^depart` (65.72 and 35.15); the second is `t_0^complete`. Its printed
//! objective is 36.52 (35.52 in the accompanying text); recomputation gives
//! 36.3712.
//!
//! Medium instance notes, all in the published solution:
//! - `z_{0,10,12}` names a station that does not exist; read as `z_{0,10,2}`,
//!   the only reading consistent with `x_{0,2,10}`.
//! - `x_{1,3,9}` would give robot 1 two dispatches at station 3 and leaves
//!   `z_{3,9,1}` unmatched; read as `x_{3,1,9}`.
//! - The sortie `(r0, S4, [C6, C0])` has length 160.708 against a range of
//!   80, so the published plan is range-infeasible. It is kept verbatim so it
//!   can be audited.

use std::str::FromStr;

use super::{Customer, Instance, ModelError, Point, RoutePlan, Sortie, Station};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fixture {
    Small,
    Medium,
}

impl Fixture {
    pub const ALL: [Fixture; 2] = [Fixture::Small, Fixture::Medium];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Small => "small",
            Fixture::Medium => "medium",
        }
    }

    pub fn instance(self) -> Instance {
        match self {
            Fixture::Small => build(&SMALL_STATIONS, &SMALL_CUSTOMERS, 2, 200.0),
            Fixture::Medium => build(&MEDIUM_STATIONS, &MEDIUM_CUSTOMERS, 4, 80.0),
        }
    }

    pub fn plan(self) -> RoutePlan {
        let (tour, sorties): (&[usize], &[(usize, usize, &[usize])]) = match self {
            Fixture::Small => (&[2, 1], SMALL_SORTIES),
            Fixture::Medium => (&[2, 4, 1, 3], MEDIUM_SORTIES),
        };
        let mut plan = RoutePlan {
            tour: tour.to_vec(),
            sorties: sorties
                .iter()
                .map(|&(r, k, services)| Sortie::new(r, k, services.to_vec()).expect("fixture sortie"))
                .collect(),
        };
        plan.canonicalize();
        plan
    }
}

impl FromStr for Fixture {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "small" => Ok(Fixture::Small),
            "medium" => Ok(Fixture::Medium),
            other => Err(ModelError::UnknownFixture(other.to_string())),
        }
    }
}

/// Returns the named fixture instance with its published plan.
pub fn builtin_fixture(name: &str) -> Result<(Instance, RoutePlan), ModelError> {
    let f: Fixture = name.parse()?;
    Ok((f.instance(), f.plan()))
}

const SMALL_STATIONS: [(f64, f64); 2] = [(25.0, 25.0), (75.0, 25.0)];

// (x, y, importance, deadline) by customer id.
const SMALL_CUSTOMERS: [(f64, f64, f64, f64); 8] = [
    (19.0, 39.0, 0.36, 18.0),
    (86.0, 17.0, 0.06, 40.0),
    (87.0, 1.0, 0.55, 21.0),
    (0.0, 46.0, 0.83, 23.0),
    (70.0, 58.0, 0.87, 10.0),
    (25.0, 69.0, 0.51, 22.0),
    (80.0, 90.0, 0.95, 16.0),
    (62.0, 83.0, 0.31, 49.0),
];

// (robot, station, services)
const SMALL_SORTIES: &[(usize, usize, &[usize])] =
    &[(0, 1, &[3, 5]), (1, 1, &[0, 7]), (0, 2, &[4, 2, 1]), (1, 2, &[6])];

const MEDIUM_STATIONS: [(f64, f64); 4] = [(25.0, 25.0), (75.0, 25.0), (75.0, 75.0), (25.0, 75.0)];

const MEDIUM_CUSTOMERS: [(f64, f64, f64, f64); 12] = [
    (48.0, 71.0, 0.55, 37.0),
    (75.0, 61.0, 0.20, 45.0),
    (1.0, 98.0, 0.63, 19.0),
    (60.0, 35.0, 0.47, 13.0),
    (17.0, 58.0, 0.01, 36.0),
    (74.0, 58.0, 0.53, 38.0),
    (80.0, 90.0, 0.96, 39.0),
    (99.0, 79.0, 0.50, 37.0),
    (43.0, 45.0, 0.78, 47.0),
    (39.0, 37.0, 0.34, 34.0),
    (55.0, 23.0, 0.87, 47.0),
    (56.0, 31.0, 0.42, 11.0),
];

const MEDIUM_SORTIES: &[(usize, usize, &[usize])] = &[
    (0, 2, &[10]),
    (1, 2, &[3]),
    (3, 2, &[11]),
    (0, 4, &[6, 0]),
    (1, 4, &[4]),
    (2, 4, &[2]),
    (3, 4, &[8]),
    (3, 1, &[9]),
    (1, 3, &[1]),
    (2, 3, &[7]),
    (3, 3, &[5]),
];

fn build(stations: &[(f64, f64)], customers: &[(f64, f64, f64, f64)], fleet: usize, range: f64) -> Instance {
    Instance::new(
        Point::new(0.0, 0.0),
        stations
            .iter()
            .enumerate()
            .map(|(i, &(x, y))| Station {
                id: i + 1,
                location: Point::new(x, y),
            })
            .collect(),
        customers
            .iter()
            .enumerate()
            .map(|(id, &(x, y, importance, deadline))| Customer {
                id,
                location: Point::new(x, y),
                importance,
                deadline,
            })
            .collect(),
        fleet,
        range,
        50.0,
        5.0,
    )
    .expect("fixture instance is valid")
}
