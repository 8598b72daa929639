//! Random instance + plan cases and the property checks run on them.

use mothership::eval::{Evaluator, IncrementalSchedule, Layout};
use mothership::{
    parse_instance, parse_plan, propagate, serialize_instance, serialize_plan, sortie_length, Customer, Instance,
    Point, RoutePlan, Sortie, Station,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{l_ko, reference_length, reference_schedule};

pub const RANGE: f64 = 300.0;

#[derive(Clone, Debug)]
pub struct Case {
    pub depot: (f64, f64),
    pub stations: Vec<(f64, f64)>,
    /// (x, y, importance, deadline)
    pub customers: Vec<(f64, f64, f64, f64)>,
    pub robots: usize,
    pub vv: f64,
    pub vr: f64,
    pub tour: Vec<usize>,
    /// Per customer: (station index, robot, order key).
    pub picks: Vec<(usize, usize, u32)>,
}

impl Case {
    pub fn instance(&self) -> Instance {
        self.scaled(1.0)
    }

    /// Every coordinate, the range and both speeds multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Instance {
        Instance::new(
            Point::new(self.depot.0 * factor, self.depot.1 * factor),
            self.stations
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| Station {
                    id: i + 1,
                    location: Point::new(x * factor, y * factor),
                })
                .collect(),
            self.customers
                .iter()
                .enumerate()
                .map(|(id, &(x, y, importance, deadline))| Customer {
                    id,
                    location: Point::new(x * factor, y * factor),
                    importance,
                    deadline,
                })
                .collect(),
            self.robots,
            RANGE * factor,
            self.vv * factor,
            self.vr * factor,
        )
        .unwrap()
    }

    /// Customers grouped into sorties by station and robot, ordered by key.
    pub fn plan(&self) -> RoutePlan {
        let mut keyed: Vec<(usize, usize, u32, usize)> = self
            .picks
            .iter()
            .enumerate()
            .map(|(o, &(k, r, key))| (k + 1, r, key, o))
            .collect();
        keyed.sort_unstable();
        let mut sorties: Vec<Sortie> = Vec::new();
        let mut i = 0;
        while i < keyed.len() {
            let (k, r, ..) = keyed[i];
            let mut services = Vec::new();
            while i < keyed.len() && (keyed[i].0, keyed[i].1) == (k, r) {
                services.push(keyed[i].3);
                i += 1;
            }
            sorties.push(Sortie::new(r, k, services).unwrap());
        }
        RoutePlan {
            tour: self.tour.clone(),
            sorties,
        }
    }
}

fn coord() -> impl Strategy<Value = (f64, f64)> {
    (0.0..100.0f64, 0.0..100.0f64)
}

/// 1–3 stations, 0–7 customers, 1–3 robots in a 100×100 square; range 300
/// keeps every customer reachable while long sorties may still exceed it.
pub fn case() -> impl Strategy<Value = Case> {
    (1..=3usize, 0..=7usize, 1..=3usize).prop_flat_map(|(ns, nc, nr)| {
        (
            coord(),
            prop::collection::vec(coord(), ns),
            prop::collection::vec((0.0..100.0f64, 0.0..100.0f64, 0.01..1.0f64, 0.0..60.0f64), nc),
            1.0..100.0f64,
            1.0..20.0f64,
            Just((1..=ns).collect::<Vec<_>>()).prop_shuffle(),
            prop::collection::vec((0..ns, 0..nr, 0..1000u32), nc),
        )
            .prop_map(move |(depot, stations, customers, vv, vr, tour, picks)| Case {
                depot,
                stations,
                customers,
                robots: nr,
                vv,
                vr,
                tour,
                picks,
            })
    })
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

pub type Check = Result<(), TestCaseError>;

pub fn sortie_length_identity(c: &Case) -> Check {
    let inst = c.instance();
    for s in &c.plan().sorties {
        let got = sortie_length(&inst, s);
        let want = reference_length(&inst, s);
        prop_assert!(rel_close(got, want, 1e-12), "{} vs {}", got, want);
    }
    Ok(())
}

pub fn propagation_matches_reference(c: &Case) -> Check {
    let inst = c.instance();
    let plan = c.plan();
    let got = propagate(&inst, &plan).unwrap();
    let want = reference_schedule(&inst, &plan);
    for &k in &plan.tour {
        prop_assert!(rel_close(got.arrive_at(k), want.arrive[&k], 1e-12));
        prop_assert!(rel_close(got.depart_at(k), want.depart[&k], 1e-12));
    }
    for o in 0..inst.num_customers() {
        prop_assert!(rel_close(got.complete[o], want.complete[o], 1e-12));
    }
    prop_assert!(rel_close(got.objective, want.objective, 1e-12));
    prop_assert_eq!(propagate(&inst, &plan).unwrap(), got);
    Ok(())
}

pub fn scaling_invariance(c: &Case, factor: f64) -> Check {
    let plan = c.plan();
    let inst = c.instance();
    let scaled = c.scaled(factor);
    let a = propagate(&inst, &plan).unwrap();
    let b = propagate(&scaled, &plan).unwrap();
    let pairs = a
        .arrive
        .iter()
        .zip(&b.arrive)
        .chain(a.depart.iter().zip(&b.depart))
        .chain(a.complete.iter().zip(&b.complete));
    for (x, y) in pairs {
        prop_assert!(rel_close(*x, *y, 1e-9), "{} vs {}", x, y);
    }
    prop_assert!(rel_close(a.objective, b.objective, 1e-9));
    prop_assert_eq!(
        mothership::validate(&inst, &plan).len(),
        mothership::validate(&scaled, &plan).len()
    );

    let mut heavier = c.clone();
    for cu in &mut heavier.customers {
        cu.2 *= factor;
    }
    let h = propagate(&heavier.instance(), &plan).unwrap().objective;
    prop_assert!(
        rel_close(a.objective * factor, h, 1e-12),
        "{} * {} vs {}",
        a.objective,
        factor,
        h
    );
    Ok(())
}

pub fn departure_tightness(c: &Case) -> Check {
    let inst = c.instance();
    let plan = c.plan();
    let sched = propagate(&inst, &plan).unwrap();
    let reference = reference_schedule(&inst, &plan);
    for &k in &plan.tour {
        let (a, d) = (sched.arrive_at(k), sched.depart_at(k));
        prop_assert!(a <= d);
        let mut tight = d == a;
        for s in plan.sorties_at(k) {
            let back = sched.complete[s.last()] + l_ko(&inst, k, s.last()) / inst.robot_speed();
            prop_assert!(d >= back - 1e-9 * (1.0 + back));
            prop_assert!(rel_close(back, reference.back[&(s.robot, k)], 1e-12));
            tight |= rel_close(d, back, 1e-12);
        }
        prop_assert!(tight, "station {} departs at {} with slack", k, d);
    }
    Ok(())
}

pub fn tardiness_closed_form(c: &Case) -> Check {
    let inst = c.instance();
    let sched = propagate(&inst, &c.plan()).unwrap();
    let mut total = 0.0;
    for cu in inst.customers() {
        let want = (sched.complete[cu.id] - cu.deadline).max(0.0);
        prop_assert_eq!(sched.tardiness[cu.id], want);
        prop_assert!(sched.tardiness[cu.id] >= sched.complete[cu.id] - cu.deadline);
        total += cu.importance * want;
    }
    prop_assert!(rel_close(sched.objective, total, 1e-12));
    prop_assert_eq!(mothership::objective(&inst, &sched), sched.objective);
    Ok(())
}

pub fn serialization_round_trip(c: &Case) -> Check {
    let inst = c.instance();
    let plan = c.plan();
    prop_assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    prop_assert_eq!(parse_plan(&serialize_plan(&plan)).unwrap(), plan);
    Ok(())
}

/// Applies (customer, station, robot, position) relocations one by one and
/// compares the incremental schedule with a full recomputation after each.
pub fn incremental_matches_full(c: &Case, moves: &[(usize, usize, usize, usize)]) -> Check {
    let inst = c.instance();
    if inst.num_customers() == 0 {
        return Ok(());
    }
    let ev = Evaluator::new(&inst);
    let mut layout = Layout::from_plan(&inst, &c.plan());
    let mut inc = IncrementalSchedule::new(&ev, &layout);
    let pos_of = layout.positions();
    for &(o, k2, r2, at) in moves {
        let o = o % inst.num_customers();
        let k2 = k2 % inst.num_stations();
        let r2 = r2 % inst.fleet_size();
        let (k1, r1, i1) = layout
            .routes
            .iter()
            .enumerate()
            .flat_map(|(k, rs)| {
                rs.iter()
                    .enumerate()
                    .filter_map(move |(r, l)| l.iter().position(|&x| x == o).map(|i| (k, r, i)))
            })
            .next()
            .unwrap();
        layout.routes[k1][r1].remove(i1);
        let at = at.min(layout.routes[k2][r2].len());
        layout.routes[k2][r2].insert(at, o);
        inc.recompute_from(&ev, &layout, pos_of[k1].min(pos_of[k2]));
        let full = ev.schedule(&layout);
        prop_assert!(rel_close(inc.objective(), full.objective, 1e-12));
        prop_assert_eq!(inc.complete(), &full.complete[..]);
    }
    Ok(())
}
