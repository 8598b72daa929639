//! Test-side reference implementations, written without the library's
//! evaluator so they can serve as independent oracles.
#![allow(dead_code)]

use std::collections::HashMap;

use mothership::exact::SearchNode;
use mothership::instgen::{generate, GenParams};
use mothership::{Instance, Point, RoutePlan, Sortie, StationId};

pub mod cases;
pub mod lp;

pub fn dist(a: Point, b: Point) -> f64 {
    ((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y)).sqrt()
}

pub fn station_xy(inst: &Instance, k: StationId) -> Point {
    inst.stations().iter().find(|s| s.id == k).unwrap().location
}

pub fn customer_xy(inst: &Instance, o: usize) -> Point {
    inst.customers().iter().find(|c| c.id == o).unwrap().location
}

pub fn l_ko(inst: &Instance, k: StationId, o: usize) -> f64 {
    dist(station_xy(inst, k), customer_xy(inst, o))
}

#[derive(Clone, Debug)]
pub struct RefSchedule {
    pub arrive: HashMap<StationId, f64>,
    pub depart: HashMap<StationId, f64>,
    /// Time each sortie's robot is back at its station, keyed by (robot, station).
    pub back: HashMap<(usize, StationId), f64>,
    pub complete: Vec<f64>,
    pub tardiness: Vec<f64>,
    pub objective: f64,
}

/// Earliest schedule, straight from the timing rules:
/// arrive = previous departure + leg / VV; the first service of a sortie
/// completes at arrive + L_ko / VR, each next one after returning to the
/// station and driving out again; the vehicle leaves when the last robot
/// is back.
pub fn reference_schedule(inst: &Instance, plan: &RoutePlan) -> RefSchedule {
    let vv = inst.vehicle_speed();
    let vr = inst.robot_speed();
    let mut arrive = HashMap::new();
    let mut depart = HashMap::new();
    let mut back = HashMap::new();
    let mut complete = vec![f64::NAN; inst.num_customers()];
    let mut here = inst.depot();
    let mut clock = 0.0;
    for &k in &plan.tour {
        let at = station_xy(inst, k);
        let a = clock + dist(here, at) / vv;
        let mut d = a;
        for s in plan.sorties.iter().filter(|s| s.station == k) {
            let mut t = a;
            let mut prev: Option<usize> = None;
            for &o in s.services() {
                t += match prev {
                    None => l_ko(inst, k, o) / vr,
                    Some(p) => (l_ko(inst, k, p) + l_ko(inst, k, o)) / vr,
                };
                complete[o] = t;
                prev = Some(o);
            }
            let ret = t + l_ko(inst, k, s.last()) / vr;
            back.insert((s.robot, k), ret);
            if ret > d {
                d = ret;
            }
        }
        arrive.insert(k, a);
        depart.insert(k, d);
        clock = d;
        here = at;
    }
    let mut tardiness = Vec::new();
    let mut objective = 0.0;
    for c in inst.customers() {
        let t = if complete[c.id] > c.deadline {
            complete[c.id] - c.deadline
        } else {
            0.0
        };
        tardiness.push(t);
        objective += c.importance * t;
    }
    RefSchedule {
        arrive,
        depart,
        back,
        complete,
        tardiness,
        objective,
    }
}

pub fn reference_length(inst: &Instance, s: &Sortie) -> f64 {
    s.services().iter().map(|&o| 2.0 * l_ko(inst, s.station, o)).sum()
}

pub fn range_ok(inst: &Instance, plan: &RoutePlan) -> bool {
    plan.sorties
        .iter()
        .all(|s| reference_length(inst, s) <= inst.robot_range() + 1e-9)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

type Routes = HashMap<(StationId, usize), Vec<usize>>;

fn routes_to_plan(tour: &[StationId], routes: &Routes) -> RoutePlan {
    let mut keys: Vec<_> = routes.keys().copied().filter(|k| !routes[k].is_empty()).collect();
    keys.sort_unstable();
    RoutePlan {
        tour: tour.to_vec(),
        sorties: keys
            .into_iter()
            .map(|(k, r)| Sortie::new(r, k, routes[&(k, r)].clone()).unwrap())
            .collect(),
    }
}

fn insert_all(
    inst: &Instance,
    tour: &[StationId],
    routes: &mut Routes,
    pending: &[usize],
    visit: &mut dyn FnMut(&RoutePlan),
) {
    let Some((&o, rest)) = pending.split_first() else {
        let plan = routes_to_plan(tour, routes);
        if range_ok(inst, &plan) {
            visit(&plan);
        }
        return;
    };
    for k in 1..=inst.num_stations() {
        for r in 0..inst.fleet_size() {
            let len = routes.get(&(k, r)).map_or(0, Vec::len);
            for pos in 0..=len {
                routes.entry((k, r)).or_default().insert(pos, o);
                insert_all(inst, tour, routes, rest, visit);
                routes.get_mut(&(k, r)).unwrap().remove(pos);
            }
        }
    }
}

/// Visits every complete, range-feasible plan (with no symmetry reduction).
pub fn for_each_plan(inst: &Instance, visit: &mut dyn FnMut(&RoutePlan)) {
    let node = SearchNode::root();
    for_each_completion(inst, &node, visit);
}

/// Visits every range-feasible completion of a partial plan: the tour prefix
/// extended by any order of the remaining stations, every unassigned
/// customer inserted anywhere (existing service orders kept).
pub fn for_each_completion(inst: &Instance, node: &SearchNode, visit: &mut dyn FnMut(&RoutePlan)) {
    let rest: Vec<usize> = (1..=inst.num_stations()).filter(|k| !node.tour.contains(k)).collect();
    let mut routes: Routes = HashMap::new();
    let mut assigned = vec![false; inst.num_customers()];
    for s in &node.sorties {
        routes.insert((s.station, s.robot), s.services().to_vec());
        for &o in s.services() {
            assigned[o] = true;
        }
    }
    let pending: Vec<usize> = (0..inst.num_customers()).filter(|&o| !assigned[o]).collect();
    for tail in permutations(&rest) {
        let mut tour = node.tour.clone();
        tour.extend(tail);
        insert_all(inst, &tour, &mut routes, &pending, visit);
    }
}

/// Best objective over all completions (None when no completion fits the range).
pub fn best_completion(inst: &Instance, node: &SearchNode) -> Option<f64> {
    let mut best: Option<f64> = None;
    for_each_completion(inst, node, &mut |plan| {
        let obj = reference_schedule(inst, plan).objective;
        if best.map_or(true, |b| obj < b) {
            best = Some(obj);
        }
    });
    best
}

/// Parameters of the `i`-th tiny corpus instance: 1–2 stations, 1–2 robots,
/// 1–5 customers, 100×100 region, range 200, speeds 50 / 5.
pub fn tiny_params(seed: u64) -> GenParams {
    GenParams {
        seed,
        stations: 1 + (seed % 2) as usize,
        robots: 1 + ((seed / 2) % 2) as usize,
        customers: 1 + ((seed / 4) % 5) as usize,
        ..GenParams::default()
    }
}

pub fn tiny_instance(seed: u64) -> Instance {
    generate(&tiny_params(seed)).expect("tiny instance generates")
}

#[track_caller]
pub fn assert_close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tolerance {tol})");
}
