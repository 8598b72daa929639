//! Exact optimization: an exhaustive oracle for tiny instances and a
//! depth-first branch and bound.
//!
//! Branch and bound fixes the vehicle tour first, one station at a time, then
//! places customers one by one into a (station, robot, position) slot. Robots
//! are interchangeable, so at each station only the robots already in use plus
//! the next unused index are tried.
//!
//! The bound relies on monotonicity: adding services never makes any
//! completion or departure earlier. Assigned customers therefore contribute
//! their current weighted tardiness, and every unassigned customer contributes
//! the tardiness of its earliest conceivable completion, a direct robot trip
//! from the earliest possible arrival at any station within reach.

use std::time::{Duration, Instant};

use log::debug;

use crate::eval::{Evaluator, Layout};
use crate::heuristic::{self, SearchParams};
use crate::model::{CustomerId, Instance, Sortie, StationId, EPS};
use crate::report::{ProofStatus, SolveReport};

/// Largest instance accepted by [`solve_oracle`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub stations: usize,
    pub customers: usize,
    pub robots: usize,
}

pub const ORACLE_LIMITS: OracleLimits = OracleLimits {
    stations: 3,
    customers: 6,
    robots: 2,
};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ExactError {
    #[error(
        "instance exceeds the enumeration limits ({stations} stations, {customers} customers, {robots} robots; \
         limits are {limits_s}, {limits_c}, {limits_r})",
        limits_s = ORACLE_LIMITS.stations,
        limits_c = ORACLE_LIMITS.customers,
        limits_r = ORACLE_LIMITS.robots
    )]
    SizeLimit {
        stations: usize,
        customers: usize,
        robots: usize,
    },
    #[error("instance is infeasible: no plan serves every customer within the robot range")]
    Infeasible,
    #[error("budget exhausted before any feasible plan was found")]
    NoIncumbent,
}

/// Node and wall-time caps; `None` means unlimited.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_nodes: None,
            max_time: Some(Duration::from_secs(600)),
        }
    }
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_nodes: None,
        max_time: None,
    };

    pub fn nodes(n: u64) -> Self {
        Self {
            max_nodes: Some(n),
            max_time: None,
        }
    }
}

/// A partial plan: a prefix of the tour and some customers already placed.
/// Customers absent from every sortie are unassigned.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchNode {
    pub tour: Vec<StationId>,
    pub sorties: Vec<Sortie>,
}

impl SearchNode {
    pub fn root() -> Self {
        Self::default()
    }
}

/// Vehicle ride time of the longest station permutation (exact up to eight
/// stations, otherwise bounded by summing each node's longest incident link)
/// plus the longest out-and-back trip of every customer.
pub fn horizon(instance: &Instance) -> f64 {
    let ev = Evaluator::new(instance);
    let n_s = instance.num_stations();
    let ride = if n_s <= 8 {
        let mut best = 0.0f64;
        let mut perm: Vec<usize> = (0..n_s).collect();
        for_each_permutation(&mut perm, 0, &mut |p| {
            best = best.max(tour_ride(&ev, p));
        });
        best
    } else {
        let from_depot = (0..n_s).map(|k| ev.ride(None, k)).fold(0.0, f64::max);
        let rest: f64 = (0..n_s)
            .map(|k| (0..n_s).map(|l| ev.ride(Some(l), k)).fold(ev.ride_home(k), f64::max))
            .sum();
        from_depot + rest
    };
    let services: f64 = (0..instance.num_customers())
        .map(|o| (0..n_s).map(|k| 2.0 * ev.leg(k, o)).fold(0.0, f64::max))
        .sum();
    ride + services
}

fn tour_ride(ev: &Evaluator<'_>, tour: &[usize]) -> f64 {
    let mut t = 0.0;
    let mut prev = None;
    for &k in tour {
        t += ev.ride(prev, k);
        prev = Some(k);
    }
    t + prev.map_or(0.0, |k| ev.ride_home(k))
}

/// Calls `f` on every ordering of `items[start..]`.
fn for_each_permutation(items: &mut Vec<usize>, start: usize, f: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        f(items);
        return;
    }
    for i in start..items.len() {
        let x = items.remove(i);
        items.insert(start, x);
        for_each_permutation(items, start + 1, f);
        let x = items.remove(start);
        items.insert(i, x);
    }
}

fn report(ev: &Evaluator<'_>, layout: &Layout, status: ProofStatus, nodes: u64, start: Instant) -> SolveReport {
    let schedule = ev.schedule(layout);
    SolveReport {
        plan: layout.to_plan(),
        objective: schedule.objective,
        schedule,
        status,
        nodes,
        wall_time: start.elapsed(),
    }
}

/// Enumerates every feasible plan and returns the best; ties go to the
/// lexicographically smallest serialized plan.
pub fn solve_oracle(instance: &Instance) -> Result<SolveReport, ExactError> {
    let (n_s, n_c, n_r) = (instance.num_stations(), instance.num_customers(), instance.fleet_size());
    if n_s > ORACLE_LIMITS.stations || n_c > ORACLE_LIMITS.customers || n_r > ORACLE_LIMITS.robots {
        return Err(ExactError::SizeLimit {
            stations: n_s,
            customers: n_c,
            robots: n_r,
        });
    }
    let start = Instant::now();
    let ev = Evaluator::new(instance);

    struct Best {
        objective: f64,
        key: String,
        layout: Layout,
    }
    let mut best: Option<Best> = None;
    let mut leaves = 0u64;

    fn place(ev: &Evaluator<'_>, layout: &mut Layout, o: CustomerId, best: &mut Option<Best>, leaves: &mut u64) {
        let inst = ev.instance();
        if o == inst.num_customers() {
            *leaves += 1;
            let objective = ev.objective(layout);
            let better = match best {
                None => true,
                Some(b) if objective < b.objective => true,
                Some(b) if objective == b.objective => crate::model::serialize_plan(&layout.to_plan()) < b.key,
                Some(_) => false,
            };
            if better {
                *best = Some(Best {
                    objective,
                    key: crate::model::serialize_plan(&layout.to_plan()),
                    layout: layout.clone(),
                });
            }
            return;
        }
        for k in 0..inst.num_stations() {
            for r in 0..inst.fleet_size() {
                for pos in 0..=layout.routes[k][r].len() {
                    layout.routes[k][r].insert(pos, o);
                    if ev.within_range(k, &layout.routes[k][r]) {
                        place(ev, layout, o + 1, best, leaves);
                    }
                    layout.routes[k][r].remove(pos);
                }
            }
        }
    }

    let mut perm: Vec<usize> = (0..n_s).collect();
    let mut layout = Layout::empty(instance);
    for_each_permutation(&mut perm, 0, &mut |p| {
        layout.tour = p.to_vec();
        place(&ev, &mut layout, 0, &mut best, &mut leaves);
    });

    let best = best.ok_or(ExactError::Infeasible)?;
    Ok(report(&ev, &best.layout, ProofStatus::Optimal, leaves, start))
}

/// Admissible bound on the objective of every completion of `node`.
pub fn lower_bound(instance: &Instance, node: &SearchNode) -> f64 {
    let ev = Evaluator::new(instance);
    let mut layout = Layout::empty(instance);
    layout.tour = node.tour.iter().map(|&k| k - 1).collect();
    let mut assigned = vec![false; instance.num_customers()];
    for s in &node.sorties {
        layout.routes[s.station - 1][s.robot] = s.services().to_vec();
        for &o in s.services() {
            assigned[o] = true;
        }
    }
    let reach = reach_table(instance);
    let mut scratch = Scratch::new(instance);
    bound(&ev, &reach, &layout.tour, &layout.routes, &assigned, &mut scratch)
}

fn reach_table(instance: &Instance) -> Vec<Vec<usize>> {
    (0..instance.num_customers())
        .map(|o| instance.reachable_stations(o).map(|k| k - 1).collect())
        .collect()
}

struct Scratch {
    arrive: Vec<f64>,
    placed: Vec<bool>,
    complete: Vec<f64>,
}

impl Scratch {
    fn new(instance: &Instance) -> Self {
        Self {
            arrive: vec![0.0; instance.num_stations()],
            placed: vec![false; instance.num_stations()],
            complete: vec![0.0; instance.num_customers()],
        }
    }
}

// Relative slack on rides to stations outside the tour prefix; those arrival
// bounds rest on the triangle inequality, which floating point may miss by
// an ulp.
const TRIANGLE_SLACK: f64 = 1e-12;

fn bound(
    ev: &Evaluator<'_>,
    reach: &[Vec<usize>],
    tour: &[usize],
    routes: &[Vec<Vec<CustomerId>>],
    assigned: &[bool],
    s: &mut Scratch,
) -> f64 {
    s.placed.iter_mut().for_each(|p| *p = false);
    let mut t = 0.0;
    let mut prev = None;
    for &k in tour {
        let a = t + ev.ride(prev, k);
        s.arrive[k] = a;
        s.placed[k] = true;
        t = ev.serve_station(k, a, &routes[k], &mut s.complete);
        prev = Some(k);
    }
    for k in 0..s.arrive.len() {
        if !s.placed[k] {
            let a = t + ev.ride(prev, k) * (1.0 - TRIANGLE_SLACK);
            s.arrive[k] = a;
            ev.serve_station(k, a, &routes[k], &mut s.complete);
        }
    }
    let inst = ev.instance();
    (0..inst.num_customers()).fold(0.0, |acc, o| {
        let c = if assigned[o] {
            s.complete[o]
        } else {
            reach[o]
                .iter()
                .map(|&k| s.arrive[k] + ev.leg(k, o))
                .fold(f64::INFINITY, f64::min)
        };
        acc + ev.weighted_tardiness(o, c)
    })
}

struct Bnb<'a, 'e> {
    ev: &'e Evaluator<'a>,
    reach: Vec<Vec<usize>>,
    order: Vec<CustomerId>,
    layout: Layout,
    in_tour: Vec<bool>,
    assigned: Vec<bool>,
    scratch: Scratch,
    best: f64,
    best_layout: Option<Layout>,
    nodes: u64,
    budget: Budget,
    start: Instant,
    exhausted: bool,
    frontier: f64,
}

impl Bnb<'_, '_> {
    fn out_of_budget(&mut self) -> bool {
        if self.exhausted {
            return true;
        }
        self.nodes += 1;
        if self.budget.max_nodes.is_some_and(|n| self.nodes > n) {
            self.exhausted = true;
        } else if let Some(limit) = self.budget.max_time {
            if self.nodes % 1024 == 0 && self.start.elapsed() > limit {
                self.exhausted = true;
            }
        }
        self.exhausted
    }

    fn node_bound(&mut self) -> f64 {
        bound(
            self.ev,
            &self.reach,
            &self.layout.tour,
            &self.layout.routes,
            &self.assigned,
            &mut self.scratch,
        )
    }

    fn cut(&mut self, b: f64) {
        self.frontier = self.frontier.min(b);
    }

    fn explore_tour(&mut self, node_bound: f64) {
        if self.out_of_budget() {
            self.cut(node_bound);
            return;
        }
        let n_s = self.in_tour.len();
        if self.layout.tour.len() == n_s {
            self.explore_customers(0, node_bound);
            return;
        }
        let mut children = Vec::new();
        for k in 0..n_s {
            if self.in_tour[k] {
                continue;
            }
            self.layout.tour.push(k);
            let b = self.node_bound();
            self.layout.tour.pop();
            if b < self.best {
                children.push((b, k));
            }
        }
        children.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        for (b, k) in children {
            if self.exhausted {
                self.cut(b);
                return;
            }
            if b >= self.best {
                break;
            }
            self.layout.tour.push(k);
            self.in_tour[k] = true;
            self.explore_tour(b);
            self.in_tour[k] = false;
            self.layout.tour.pop();
        }
    }

    fn explore_customers(&mut self, depth: usize, node_bound: f64) {
        if depth > 0 && self.out_of_budget() {
            self.cut(node_bound);
            return;
        }
        if depth == self.order.len() {
            if node_bound < self.best {
                self.best = node_bound;
                self.best_layout = Some(self.layout.clone());
                debug!("incumbent {node_bound:.6} after {} nodes", self.nodes);
            }
            return;
        }
        let o = self.order[depth];
        let n_r = self.ev.instance().fleet_size();
        let range = self.ev.instance().robot_range() + EPS;
        let mut children = Vec::new();
        self.assigned[o] = true;
        for i in 0..self.reach[o].len() {
            let k = self.reach[o][i];
            let used = self.layout.routes[k].iter().take_while(|l| !l.is_empty()).count();
            for r in 0..(used + 1).min(n_r) {
                let len = self.ev.route_length(k, &self.layout.routes[k][r]);
                if len + 2.0 * self.ev.distances().station_customer(k, o) > range {
                    continue;
                }
                for pos in 0..=self.layout.routes[k][r].len() {
                    self.layout.routes[k][r].insert(pos, o);
                    let b = self.node_bound();
                    self.layout.routes[k][r].remove(pos);
                    if b < self.best {
                        children.push((b, k, r, pos));
                    }
                }
            }
        }
        children.sort_by(|a, b| a.0.total_cmp(&b.0).then((a.1, a.2, a.3).cmp(&(b.1, b.2, b.3))));
        for (b, k, r, pos) in children {
            if self.exhausted {
                self.cut(b);
                break;
            }
            if b >= self.best {
                break;
            }
            self.layout.routes[k][r].insert(pos, o);
            self.explore_customers(depth + 1, b);
            self.layout.routes[k][r].remove(pos);
        }
        self.assigned[o] = false;
    }
}

/// Branch and bound. With enough budget the result is proven optimal;
/// otherwise the incumbent is returned with the global bound gap.
pub fn solve_bnb(instance: &Instance, budget: Budget) -> Result<SolveReport, ExactError> {
    let start = Instant::now();
    let ev = Evaluator::new(instance);

    // A quick deterministic heuristic run seeds the incumbent.
    let seed_params = SearchParams {
        restarts: 2,
        max_iterations: 30,
        time_limit: None,
        ..SearchParams::default()
    };
    let (best, best_layout) = match heuristic::solve(instance, &seed_params) {
        Ok(rep) => (rep.objective, Some(Layout::from_plan(instance, &rep.plan))),
        Err(_) => (f64::INFINITY, None),
    };

    let mut order: Vec<CustomerId> = (0..instance.num_customers()).collect();
    order.sort_by(|&a, &b| {
        let ca = &instance.customers()[a];
        let cb = &instance.customers()[b];
        ca.deadline.total_cmp(&cb.deadline).then(a.cmp(&b))
    });

    let mut bnb = Bnb {
        ev: &ev,
        reach: reach_table(instance),
        order,
        layout: Layout {
            tour: Vec::new(),
            routes: vec![vec![Vec::new(); instance.fleet_size()]; instance.num_stations()],
        },
        in_tour: vec![false; instance.num_stations()],
        assigned: vec![false; instance.num_customers()],
        scratch: Scratch::new(instance),
        best,
        best_layout,
        nodes: 0,
        budget,
        start,
        exhausted: false,
        frontier: f64::INFINITY,
    };
    let root = bnb.node_bound();
    if root < bnb.best {
        bnb.explore_tour(root);
    }

    let exhausted = bnb.exhausted;
    let nodes = bnb.nodes;
    let layout = match bnb.best_layout.take() {
        Some(l) => l,
        None if exhausted => return Err(ExactError::NoIncumbent),
        None => return Err(ExactError::Infeasible),
    };
    let status = if exhausted {
        let lower = bnb.frontier.min(bnb.best);
        ProofStatus::BudgetExhausted {
            lower_bound: lower,
            gap: bnb.best - lower,
        }
    } else {
        ProofStatus::Optimal
    };
    Ok(report(&ev, &layout, status, nodes, start))
}
