//! Seeded random instances.
//!
//! The random source is PCG-XSL-RR 128/64 (`rand_pcg::Pcg64`) with state
//! `seed` and the fixed stream [`STREAM`]. Each uniform draw on `[0, 1)` is
//! `(next_u64 >> 11) · 2⁻⁵³`. Customers are drawn in id order, each as
//! `x, y, importance, deadline`; a location that no station can reach within
//! the robot range is redrawn (x and y only) up to [`MAX_ATTEMPTS`] times.
//! See `docs/FORMAT.md` for the full recipe.

use rand::RngCore;
use rand_pcg::Pcg64;

use crate::model::{Customer, Instance, ModelError, Point, Station, EPS};

/// PCG stream selector used for every generated instance.
pub const STREAM: u128 = 0x0a02_bdbf_7bb3_c0a7_ac28_fa16_a64a_bf96;
/// Location draws per customer before giving up.
pub const MAX_ATTEMPTS: u32 = 1000;

pub const DEADLINE_MIN: f64 = 10.0;
pub const DEADLINE_MAX: f64 = 50.0;

#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub seed: u64,
    pub stations: usize,
    pub robots: usize,
    pub customers: usize,
    pub width: f64,
    pub height: f64,
    pub robot_range: f64,
    pub vehicle_speed: f64,
    pub robot_speed: f64,
}

impl Default for GenParams {
    fn default() -> Self {
        Self {
            seed: 0,
            stations: 2,
            robots: 2,
            customers: 8,
            width: 100.0,
            height: 100.0,
            robot_range: 200.0,
            vehicle_speed: 50.0,
            robot_speed: 5.0,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum GenError {
    #[error("invalid generator parameter `{field}`: {message}")]
    InvalidParams { field: &'static str, message: String },
    #[error("customer {customer} is unreachable after {attempts} location draws")]
    Unreachable { customer: usize, attempts: u32 },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Station coordinates: quarter points for 2 and 4 stations, otherwise the
/// cell centres of a `ceil(√n)`-column grid filled row by row.
pub fn station_layout(n: usize, width: f64, height: f64) -> Vec<Point> {
    let (w, h) = (width, height);
    match n {
        2 => vec![Point::new(w / 4.0, h / 4.0), Point::new(3.0 * w / 4.0, h / 4.0)],
        4 => vec![
            Point::new(w / 4.0, h / 4.0),
            Point::new(3.0 * w / 4.0, h / 4.0),
            Point::new(3.0 * w / 4.0, 3.0 * h / 4.0),
            Point::new(w / 4.0, 3.0 * h / 4.0),
        ],
        _ => {
            let cols = (n as f64).sqrt().ceil().max(1.0) as usize;
            let rows = n.div_ceil(cols).max(1);
            (0..n)
                .map(|i| {
                    let (row, col) = (i / cols, i % cols);
                    Point::new(
                        (col as f64 + 0.5) * w / cols as f64,
                        (row as f64 + 0.5) * h / rows as f64,
                    )
                })
                .collect()
        }
    }
}

struct Uniform(Pcg64);

impl Uniform {
    fn next(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    fn between(&mut self, lo: f64, hi: f64) -> f64 {
        lo + self.next() * (hi - lo)
    }

    /// Uniform on the open interval (0, 1).
    fn open(&mut self) -> f64 {
        loop {
            let u = self.next();
            if u > 0.0 {
                return u;
            }
        }
    }
}

fn positive(field: &'static str, v: f64) -> Result<(), GenError> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(GenError::InvalidParams {
            field,
            message: format!("must be positive and finite, got {v}"),
        })
    }
}

fn at_least_one(field: &'static str, v: usize) -> Result<(), GenError> {
    if v >= 1 {
        Ok(())
    } else {
        Err(GenError::InvalidParams {
            field,
            message: "must be at least 1".into(),
        })
    }
}

pub fn generate(params: &GenParams) -> Result<Instance, GenError> {
    at_least_one("stations", params.stations)?;
    at_least_one("robots", params.robots)?;
    at_least_one("customers", params.customers)?;
    positive("width", params.width)?;
    positive("height", params.height)?;
    positive("robot_range", params.robot_range)?;
    positive("vehicle_speed", params.vehicle_speed)?;
    positive("robot_speed", params.robot_speed)?;

    let sites = station_layout(params.stations, params.width, params.height);
    let reachable = |p: Point| {
        sites
            .iter()
            .any(|&s| 2.0 * crate::eval::distance(s, p) <= params.robot_range + EPS)
    };

    let mut rng = Uniform(Pcg64::new(params.seed as u128, STREAM));
    let mut customers = Vec::with_capacity(params.customers);
    for id in 0..params.customers {
        let mut attempts = 0;
        let location = loop {
            if attempts == MAX_ATTEMPTS {
                return Err(GenError::Unreachable { customer: id, attempts });
            }
            attempts += 1;
            let p = Point::new(rng.between(0.0, params.width), rng.between(0.0, params.height));
            if reachable(p) {
                break p;
            }
        };
        let importance = rng.open();
        let deadline = rng.between(DEADLINE_MIN, DEADLINE_MAX);
        customers.push(Customer {
            id,
            location,
            importance,
            deadline,
        });
    }
    let stations = sites
        .into_iter()
        .enumerate()
        .map(|(i, location)| Station { id: i + 1, location })
        .collect();
    Ok(Instance::new(
        Point::new(0.0, 0.0),
        stations,
        customers,
        params.robots,
        params.robot_range,
        params.vehicle_speed,
        params.robot_speed,
    )?)
}
