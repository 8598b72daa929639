use crate::model::{CustomerId, Instance, RoutePlan, Schedule, Sortie};

use super::DistanceTable;

/// Index-based working form of a plan used by the solvers.
///
/// `tour` holds station indices (id − 1); `routes[k][r]` is the ordered
/// service list of robot `r` at station index `k` (empty when unused).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    pub tour: Vec<usize>,
    pub routes: Vec<Vec<Vec<CustomerId>>>,
}

impl Layout {
    /// Stations visited in id order, no services.
    pub fn empty(instance: &Instance) -> Self {
        Self {
            tour: (0..instance.num_stations()).collect(),
            routes: vec![vec![Vec::new(); instance.fleet_size()]; instance.num_stations()],
        }
    }

    /// Converts a structurally valid plan.
    pub fn from_plan(instance: &Instance, plan: &RoutePlan) -> Self {
        let mut layout = Self::empty(instance);
        layout.tour = plan.tour.iter().map(|&k| k - 1).collect();
        for s in &plan.sorties {
            layout.routes[s.station - 1][s.robot] = s.services().to_vec();
        }
        layout
    }

    /// Canonical plan: sorties ordered by (station, robot).
    pub fn to_plan(&self) -> RoutePlan {
        let mut sorties = Vec::new();
        for (k, robots) in self.routes.iter().enumerate() {
            for (r, list) in robots.iter().enumerate() {
                if !list.is_empty() {
                    sorties.push(Sortie::new(r, k + 1, list.clone()).expect("layout sorties are valid"));
                }
            }
        }
        RoutePlan {
            tour: self.tour.iter().map(|&k| k + 1).collect(),
            sorties,
        }
    }

    /// Position of every station index in the tour.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.tour.len()];
        for (i, &k) in self.tour.iter().enumerate() {
            pos[k] = i;
        }
        pos
    }
}

/// Instance plus precomputed distances; the single implementation of the
/// timing rules shared by propagation, the oracle, branch and bound and the
/// heuristics, so equal plans evaluate to bit-identical numbers everywhere.
#[derive(Clone, Debug)]
pub struct Evaluator<'a> {
    instance: &'a Instance,
    dist: DistanceTable,
}

impl<'a> Evaluator<'a> {
    pub fn new(instance: &'a Instance) -> Self {
        Self {
            instance,
            dist: DistanceTable::new(instance),
        }
    }

    pub fn instance(&self) -> &'a Instance {
        self.instance
    }

    pub fn distances(&self) -> &DistanceTable {
        &self.dist
    }

    /// Vehicle ride time into station `k` from `from` (`None` = depot).
    #[inline]
    pub fn ride(&self, from: Option<usize>, k: usize) -> f64 {
        let len = match from {
            None => self.dist.depot_station(k),
            Some(i) => self.dist.station_station(i, k),
        };
        len / self.instance.vehicle_speed()
    }

    /// Ride time from station `k` back to the depot.
    #[inline]
    pub fn ride_home(&self, k: usize) -> f64 {
        self.dist.depot_station(k) / self.instance.vehicle_speed()
    }

    /// One-way robot time between station `k` and customer `o`.
    #[inline]
    pub fn leg(&self, k: usize, o: CustomerId) -> f64 {
        self.dist.station_customer(k, o) / self.instance.robot_speed()
    }

    /// Robot travel length of a service list at station index `k`.
    pub fn route_length(&self, k: usize, list: &[CustomerId]) -> f64 {
        list.iter().map(|&o| 2.0 * self.dist.station_customer(k, o)).sum()
    }

    pub fn within_range(&self, k: usize, list: &[CustomerId]) -> bool {
        self.route_length(k, list) <= self.instance.robot_range() + crate::model::EPS
    }

    /// Runs one robot's list from `arrive`, writing completion times; returns
    /// the time the robot is back at the station.
    #[inline]
    pub fn run_route(&self, k: usize, arrive: f64, list: &[CustomerId], complete: &mut [f64]) -> f64 {
        let vr = self.instance.robot_speed();
        let mut t = arrive;
        let mut prev: Option<CustomerId> = None;
        for &o in list {
            let out = self.dist.station_customer(k, o);
            t = match prev {
                None => t + out / vr,
                Some(p) => t + (self.dist.station_customer(k, p) + out) / vr,
            };
            complete[o] = t;
            prev = Some(o);
        }
        match prev {
            Some(p) => t + self.leg(k, p),
            None => arrive,
        }
    }

    /// Serves every robot list at station `k`; returns the departure time.
    #[inline]
    pub fn serve_station(&self, k: usize, arrive: f64, robots: &[Vec<CustomerId>], complete: &mut [f64]) -> f64 {
        robots
            .iter()
            .map(|list| self.run_route(k, arrive, list, complete))
            .fold(arrive, f64::max)
    }

    #[inline]
    pub fn tardiness(&self, o: CustomerId, complete: f64) -> f64 {
        (complete - self.instance.customers()[o].deadline).max(0.0)
    }

    #[inline]
    pub fn weighted_tardiness(&self, o: CustomerId, complete: f64) -> f64 {
        self.instance.customers()[o].importance * self.tardiness(o, complete)
    }

    /// Full earliest-time schedule of a layout that serves every customer.
    pub fn schedule(&self, layout: &Layout) -> Schedule {
        let n_s = self.instance.num_stations();
        let n_c = self.instance.num_customers();
        let mut arrive = vec![0.0; n_s];
        let mut depart = vec![0.0; n_s];
        let mut complete = vec![0.0; n_c];
        let mut t = 0.0;
        let mut prev = None;
        for &k in &layout.tour {
            arrive[k] = t + self.ride(prev, k);
            depart[k] = self.serve_station(k, arrive[k], &layout.routes[k], &mut complete);
            t = depart[k];
            prev = Some(k);
        }
        let tardiness: Vec<f64> = (0..n_c).map(|o| self.tardiness(o, complete[o])).collect();
        let objective = self.objective_of(&tardiness);
        Schedule {
            arrive,
            depart,
            complete,
            tardiness,
            objective,
        }
    }

    /// Σ importance × tardiness, summed in customer id order.
    pub fn objective_of(&self, tardiness: &[f64]) -> f64 {
        self.instance
            .customers()
            .iter()
            .zip(tardiness)
            .fold(0.0, |acc, (c, t)| acc + c.importance * t)
    }

    pub fn objective(&self, layout: &Layout) -> f64 {
        self.schedule(layout).objective
    }
}

/// Schedule cache keyed by tour position that recomputes only from the first
/// affected position onward.
#[derive(Clone, Debug)]
pub struct IncrementalSchedule {
    arrive: Vec<f64>,
    depart: Vec<f64>,
    complete: Vec<f64>,
    /// Weighted tardiness accumulated through each tour position.
    prefix: Vec<f64>,
}

impl IncrementalSchedule {
    pub fn new(ev: &Evaluator<'_>, layout: &Layout) -> Self {
        let n = layout.tour.len();
        let mut s = Self {
            arrive: vec![0.0; n],
            depart: vec![0.0; n],
            complete: vec![0.0; ev.instance().num_customers()],
            prefix: vec![0.0; n],
        };
        s.recompute_from(ev, layout, 0);
        s
    }

    /// Recomputes positions `from..`; earlier positions must be unchanged
    /// since the last computation.
    pub fn recompute_from(&mut self, ev: &Evaluator<'_>, layout: &Layout, from: usize) {
        let (mut t, mut acc, mut prev) = if from == 0 {
            (0.0, 0.0, None)
        } else {
            (
                self.depart[from - 1],
                self.prefix[from - 1],
                Some(layout.tour[from - 1]),
            )
        };
        for pos in from..layout.tour.len() {
            let k = layout.tour[pos];
            let a = t + ev.ride(prev, k);
            let d = ev.serve_station(k, a, &layout.routes[k], &mut self.complete);
            for list in &layout.routes[k] {
                for &o in list {
                    acc += ev.weighted_tardiness(o, self.complete[o]);
                }
            }
            self.arrive[pos] = a;
            self.depart[pos] = d;
            self.prefix[pos] = acc;
            t = d;
            prev = Some(k);
        }
    }

    pub fn objective(&self) -> f64 {
        self.prefix.last().copied().unwrap_or(0.0)
    }

    /// Time the vehicle is back at the depot.
    pub fn makespan(&self, ev: &Evaluator<'_>, layout: &Layout) -> f64 {
        match layout.tour.last() {
            Some(&k) => self.depart[layout.tour.len() - 1] + ev.ride_home(k),
            None => 0.0,
        }
    }

    pub fn complete(&self) -> &[f64] {
        &self.complete
    }
}
