//! Greedy construction followed by iterated local search.
//!
//! Moves that break the robot range or customer coverage are never generated,
//! so every intermediate plan is feasible. Candidates are compared by
//! objective first and vehicle return time second; the objective never rises.
//!
//! Restart `i` of a run with base seed `s` uses a SplitMix64 output derived
//! from `s` and `i`, see [`restart_seed`].

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;
use rayon::prelude::*;

use crate::eval::{validate, Evaluator, IncrementalSchedule, Layout};
use crate::model::{CustomerId, Instance, RoutePlan, Violation};
use crate::report::{ProofStatus, SolveReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Neighborhoods {
    /// Move one customer to another sortie, station or robot.
    pub relocate: bool,
    /// Exchange two customers.
    pub swap: bool,
    /// Move a customer within its own sortie.
    pub reorder: bool,
    /// Move or merge a whole sortie onto another robot or station.
    pub sortie_move: bool,
    /// Reverse a segment of the vehicle tour.
    pub tour_two_opt: bool,
}

impl Default for Neighborhoods {
    fn default() -> Self {
        Self {
            relocate: true,
            swap: true,
            reorder: true,
            sortie_move: true,
            tour_two_opt: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchParams {
    pub seed: u64,
    /// Perturbation rounds per restart.
    pub max_iterations: u64,
    /// Wall-clock cap per restart. Results are seed-deterministic only when
    /// the iteration cap binds first.
    pub time_limit: Option<Duration>,
    pub neighborhoods: Neighborhoods,
    pub restarts: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            seed: 0,
            max_iterations: 200,
            time_limit: Some(Duration::from_secs(60)),
            neighborhoods: Neighborhoods::default(),
            restarts: 8,
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum HeuristicError {
    #[error("greedy insertion found no feasible slot for customer {0}")]
    NoFeasibleInsertion(CustomerId),
    #[error("input plan is infeasible: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    InvalidPlan(Vec<Violation>),
    #[error("search parameters must have positive caps")]
    InvalidParams,
}

/// SplitMix64 finalizer applied to `seed + index · 0x9E3779B97F4A7C15`.
pub fn restart_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

const TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug)]
struct Score {
    objective: f64,
    makespan: f64,
}

impl Score {
    fn better_than(self, other: Score) -> bool {
        self.objective < other.objective - TOL
            || (self.objective <= other.objective && self.makespan < other.makespan - TOL)
    }
}

fn reach_table(instance: &Instance) -> Vec<Vec<usize>> {
    (0..instance.num_customers())
        .map(|o| instance.reachable_stations(o).map(|k| k - 1).collect())
        .collect()
}

/// Robots worth trying at a station: every busy robot plus the first idle one.
fn candidate_robots(robots: &[Vec<CustomerId>]) -> impl Iterator<Item = usize> + '_ {
    let first_idle = robots.iter().position(Vec::is_empty);
    robots
        .iter()
        .enumerate()
        .filter(move |(r, l)| !l.is_empty() || Some(*r) == first_idle)
        .map(|(r, _)| r)
}

fn closed_ride(ev: &Evaluator<'_>, tour: &[usize]) -> f64 {
    let mut t = 0.0;
    let mut prev = None;
    for &k in tour {
        t += ev.ride(prev, k);
        prev = Some(k);
    }
    t + prev.map_or(0.0, |k| ev.ride_home(k))
}

/// Nearest-neighbour station order from the depot, refined by 2-opt on the
/// vehicle's ride time.
fn initial_tour(ev: &Evaluator<'_>) -> Vec<usize> {
    let n = ev.instance().num_stations();
    let mut left: Vec<usize> = (0..n).collect();
    let mut tour = Vec::with_capacity(n);
    let mut prev = None;
    while !left.is_empty() {
        let (i, _) = left
            .iter()
            .enumerate()
            .min_by(|a, b| ev.ride(prev, *a.1).total_cmp(&ev.ride(prev, *b.1)))
            .expect("nonempty");
        let k = left.remove(i);
        tour.push(k);
        prev = Some(k);
    }
    let mut best = closed_ride(ev, &tour);
    loop {
        let mut improved = false;
        for i in 0..n {
            for j in i + 1..n {
                tour[i..=j].reverse();
                let len = closed_ride(ev, &tour);
                if len < best - TOL {
                    best = len;
                    improved = true;
                } else {
                    tour[i..=j].reverse();
                }
            }
        }
        if !improved {
            return tour;
        }
    }
}

/// Cheapest feasible (station, robot, position) for `o`, ties sampled by `rng`.
fn best_slot(
    ev: &Evaluator<'_>,
    reach: &[Vec<usize>],
    layout: &mut Layout,
    inc: &IncrementalSchedule,
    trial: &mut IncrementalSchedule,
    pos_of: &[usize],
    o: CustomerId,
    rng: &mut Pcg64,
) -> Option<(Score, usize, usize, usize)> {
    let mut best: Option<(Score, usize, usize, usize)> = None;
    let mut ties = 0u32;
    for &k in &reach[o] {
        let robots: Vec<usize> = candidate_robots(&layout.routes[k]).collect();
        for r in robots {
            for pos in 0..=layout.routes[k][r].len() {
                layout.routes[k][r].insert(pos, o);
                if ev.within_range(k, &layout.routes[k][r]) {
                    trial.clone_from(inc);
                    trial.recompute_from(ev, layout, pos_of[k]);
                    let score = Score {
                        objective: trial.objective(),
                        makespan: trial.makespan(ev, layout),
                    };
                    match best {
                        Some((b, ..)) if b.better_than(score) => {}
                        Some((b, ..)) if !score.better_than(b) => {
                            // equal within tolerance: reservoir-sample among ties
                            ties += 1;
                            if rng.random_range(0..=ties) == 0 {
                                best = Some((score, k, r, pos));
                            }
                        }
                        _ => {
                            ties = 0;
                            best = Some((score, k, r, pos));
                        }
                    }
                }
                layout.routes[k][r].remove(pos);
            }
        }
    }
    best
}

/// Makes room for `o` by moving one already placed customer `q` out of a
/// robot route that `o` would then fit into; `q` goes to its cheapest
/// feasible slot elsewhere. Returns false when no single ejection works.
fn eject_and_insert(
    ev: &Evaluator<'_>,
    reach: &[Vec<usize>],
    layout: &mut Layout,
    inc: &mut IncrementalSchedule,
    pos_of: &[usize],
    o: CustomerId,
    rng: &mut Pcg64,
) -> bool {
    let n_r = ev.instance().fleet_size();
    let mut trial = inc.clone();
    let mut best: Option<(Score, Layout)> = None;
    for &k in &reach[o] {
        for r in 0..n_r {
            for j in 0..layout.routes[k][r].len() {
                let q = layout.routes[k][r].remove(j);
                for pos in 0..=layout.routes[k][r].len() {
                    layout.routes[k][r].insert(pos, o);
                    if ev.within_range(k, &layout.routes[k][r]) {
                        let placed = IncrementalSchedule::new(ev, layout);
                        if let Some((score, k2, r2, pos2)) =
                            best_slot(ev, reach, layout, &placed, &mut trial, pos_of, q, rng)
                        {
                            if best.as_ref().map_or(true, |(b, _)| score.better_than(*b)) {
                                let mut candidate = layout.clone();
                                candidate.routes[k2][r2].insert(pos2, q);
                                best = Some((score, candidate));
                            }
                        }
                    }
                    layout.routes[k][r].remove(pos);
                }
                layout.routes[k][r].insert(j, q);
            }
        }
    }
    match best {
        Some((_, candidate)) => {
            *layout = candidate;
            inc.recompute_from(ev, layout, 0);
            true
        }
        None => false,
    }
}

/// Depth-first search over (station, robot) assignments that only looks at
/// robot range; used when greedy insertion paints itself into a corner.
/// Services within a route are ordered by deadline.
fn pack(ev: &Evaluator<'_>, reach: &[Vec<usize>]) -> Option<Layout> {
    fn go(
        ev: &Evaluator<'_>,
        reach: &[Vec<usize>],
        order: &[CustomerId],
        layout: &mut Layout,
        nodes: &mut u64,
    ) -> bool {
        let Some((&o, rest)) = order.split_first() else {
            return true;
        };
        for &k in &reach[o] {
            let robots: Vec<usize> = candidate_robots(&layout.routes[k]).collect();
            for r in robots {
                *nodes += 1;
                if *nodes > PACK_NODE_LIMIT {
                    return false;
                }
                layout.routes[k][r].push(o);
                if ev.within_range(k, &layout.routes[k][r]) && go(ev, reach, rest, layout, nodes) {
                    return true;
                }
                layout.routes[k][r].pop();
            }
        }
        false
    }

    let inst = ev.instance();
    let dist = ev.distances();
    let heaviest = |o: CustomerId| {
        reach[o]
            .iter()
            .map(|&k| dist.station_customer(k, o))
            .fold(0.0, f64::max)
    };
    let mut order: Vec<CustomerId> = (0..inst.num_customers()).collect();
    order.sort_by(|&a, &b| {
        reach[a]
            .len()
            .cmp(&reach[b].len())
            .then(heaviest(b).total_cmp(&heaviest(a)))
            .then(a.cmp(&b))
    });
    let mut reach_sorted = reach.to_vec();
    for (o, ks) in reach_sorted.iter_mut().enumerate() {
        ks.sort_by(|&a, &b| dist.station_customer(a, o).total_cmp(&dist.station_customer(b, o)));
    }
    let mut layout = Layout::empty(inst);
    let mut nodes = 0;
    if !go(ev, &reach_sorted, &order, &mut layout, &mut nodes) {
        return None;
    }
    for robots in &mut layout.routes {
        for list in robots.iter_mut() {
            list.sort_by(|&a, &b| {
                inst.customers()[a]
                    .deadline
                    .total_cmp(&inst.customers()[b].deadline)
                    .then(a.cmp(&b))
            });
        }
    }
    Some(layout)
}

const PACK_NODE_LIMIT: u64 = 5_000_000;

fn construct_layout(ev: &Evaluator<'_>, reach: &[Vec<usize>], seed: u64) -> Result<Layout, HeuristicError> {
    let inst = ev.instance();
    let mut rng = Pcg64::seed_from_u64(seed);
    let mut layout = Layout::empty(inst);
    layout.tour = initial_tour(ev);
    let pos_of = layout.positions();

    let mut order: Vec<CustomerId> = (0..inst.num_customers()).collect();
    let urgency = |o: CustomerId| inst.customers()[o].deadline / inst.customers()[o].importance;
    order.sort_by(|&a, &b| urgency(a).total_cmp(&urgency(b)).then(a.cmp(&b)));

    let mut inc = IncrementalSchedule::new(ev, &layout);
    let mut trial = inc.clone();
    for o in order {
        match best_slot(ev, reach, &mut layout, &inc, &mut trial, &pos_of, o, &mut rng) {
            Some((_, k, r, pos)) => {
                layout.routes[k][r].insert(pos, o);
                inc.recompute_from(ev, &layout, pos_of[k]);
            }
            None => {
                if !eject_and_insert(ev, reach, &mut layout, &mut inc, &pos_of, o, &mut rng) {
                    let mut packed = pack(ev, reach).ok_or(HeuristicError::NoFeasibleInsertion(o))?;
                    packed.tour = layout.tour;
                    return Ok(packed);
                }
            }
        }
    }
    Ok(layout)
}

/// Greedy insertion: customers by ascending deadline / importance, each placed
/// at the feasible (station, robot, position) with the smallest objective
/// (then earliest vehicle return), ties broken by `seed`. When range
/// capacity runs out, one previously placed customer may be moved aside, and
/// failing that a range-only packing search supplies the plan.
pub fn construct(instance: &Instance, seed: u64) -> Result<RoutePlan, HeuristicError> {
    let ev = Evaluator::new(instance);
    Ok(construct_layout(&ev, &reach_table(instance), seed)?.to_plan())
}

/// One accepted move recorded by [`improve_traced`].
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub plan: RoutePlan,
    pub objective: f64,
    /// The move changed the best plan found so far (as opposed to a plan
    /// being descended after a perturbation).
    pub incumbent: bool,
}

struct LocalSearch<'a, 'e> {
    ev: &'e Evaluator<'a>,
    reach: Vec<Vec<usize>>,
    nb: Neighborhoods,
    evaluations: u64,
    trace: Option<Vec<TraceStep>>,
    on_incumbent: bool,
}

struct State {
    layout: Layout,
    inc: IncrementalSchedule,
    pos_of: Vec<usize>,
    score: Score,
}

impl LocalSearch<'_, '_> {
    fn state(&self, layout: Layout) -> State {
        let inc = IncrementalSchedule::new(self.ev, &layout);
        let score = Score {
            objective: inc.objective(),
            makespan: inc.makespan(self.ev, &layout),
        };
        State {
            pos_of: layout.positions(),
            layout,
            inc,
            score,
        }
    }

    /// Evaluates the already-modified layout from tour position `from`; keeps
    /// it and returns true when it beats the current score.
    fn try_accept(&mut self, st: &mut State, trial: &mut IncrementalSchedule, from: usize) -> bool {
        self.evaluations += 1;
        trial.clone_from(&st.inc);
        trial.recompute_from(self.ev, &st.layout, from);
        let score = Score {
            objective: trial.objective(),
            makespan: trial.makespan(self.ev, &st.layout),
        };
        if score.better_than(st.score) {
            std::mem::swap(&mut st.inc, trial);
            st.score = score;
            let incumbent = self.on_incumbent;
            self.record(&st.layout, score, incumbent);
            true
        } else {
            false
        }
    }

    fn record(&mut self, layout: &Layout, score: Score, incumbent: bool) {
        if let Some(trace) = &mut self.trace {
            trace.push(TraceStep {
                plan: layout.to_plan(),
                objective: score.objective,
                incumbent,
            });
        }
    }

    fn relocate(&mut self, st: &mut State, trial: &mut IncrementalSchedule) -> bool {
        let n_s = st.layout.routes.len();
        let n_r = self.ev.instance().fleet_size();
        for k1 in 0..n_s {
            for r1 in 0..n_r {
                for i1 in 0..st.layout.routes[k1][r1].len() {
                    let o = st.layout.routes[k1][r1].remove(i1);
                    for t in 0..self.reach[o].len() {
                        let k2 = self.reach[o][t];
                        let robots: Vec<usize> = candidate_robots(&st.layout.routes[k2]).collect();
                        for r2 in robots {
                            let same = (k1, r1) == (k2, r2);
                            if (same && !self.nb.reorder) || (!same && !self.nb.relocate) {
                                continue;
                            }
                            for i2 in 0..=st.layout.routes[k2][r2].len() {
                                if same && i2 == i1 {
                                    continue;
                                }
                                st.layout.routes[k2][r2].insert(i2, o);
                                if self.ev.within_range(k2, &st.layout.routes[k2][r2]) {
                                    let from = st.pos_of[k1].min(st.pos_of[k2]);
                                    if self.try_accept(st, trial, from) {
                                        return true;
                                    }
                                }
                                st.layout.routes[k2][r2].remove(i2);
                            }
                        }
                    }
                    st.layout.routes[k1][r1].insert(i1, o);
                }
            }
        }
        false
    }

    fn swap(&mut self, st: &mut State, trial: &mut IncrementalSchedule) -> bool {
        let slots: Vec<(usize, usize, usize)> = st
            .layout
            .routes
            .iter()
            .enumerate()
            .flat_map(|(k, robots)| {
                robots
                    .iter()
                    .enumerate()
                    .flat_map(move |(r, l)| (0..l.len()).map(move |i| (k, r, i)))
            })
            .collect();
        for a in 0..slots.len() {
            for b in a + 1..slots.len() {
                let (k1, r1, i1) = slots[a];
                let (k2, r2, i2) = slots[b];
                let same = (k1, r1) == (k2, r2);
                if same && !self.nb.reorder {
                    continue;
                }
                let o = st.layout.routes[k1][r1][i1];
                let p = st.layout.routes[k2][r2][i2];
                st.layout.routes[k1][r1][i1] = p;
                st.layout.routes[k2][r2][i2] = o;
                if self.ev.within_range(k1, &st.layout.routes[k1][r1])
                    && self.ev.within_range(k2, &st.layout.routes[k2][r2])
                {
                    let from = st.pos_of[k1].min(st.pos_of[k2]);
                    if self.try_accept(st, trial, from) {
                        return true;
                    }
                }
                st.layout.routes[k1][r1][i1] = o;
                st.layout.routes[k2][r2][i2] = p;
            }
        }
        false
    }

    fn sortie_move(&mut self, st: &mut State, trial: &mut IncrementalSchedule) -> bool {
        let n_s = st.layout.routes.len();
        let n_r = self.ev.instance().fleet_size();
        for k1 in 0..n_s {
            for r1 in 0..n_r {
                if st.layout.routes[k1][r1].is_empty() {
                    continue;
                }
                let moved = std::mem::take(&mut st.layout.routes[k1][r1]);
                for k2 in 0..n_s {
                    let robots: Vec<usize> = candidate_robots(&st.layout.routes[k2]).collect();
                    for r2 in robots {
                        if (k2, r2) == (k1, r1) || (k2 == k1 && st.layout.routes[k2][r2].is_empty()) {
                            continue;
                        }
                        let before = st.layout.routes[k2][r2].len();
                        st.layout.routes[k2][r2].extend_from_slice(&moved);
                        if self.ev.within_range(k2, &st.layout.routes[k2][r2]) {
                            let from = st.pos_of[k1].min(st.pos_of[k2]);
                            if self.try_accept(st, trial, from) {
                                return true;
                            }
                        }
                        st.layout.routes[k2][r2].truncate(before);
                    }
                }
                st.layout.routes[k1][r1] = moved;
            }
        }
        false
    }

    fn two_opt(&mut self, st: &mut State, trial: &mut IncrementalSchedule) -> bool {
        let n = st.layout.tour.len();
        for i in 0..n {
            for j in i + 1..n {
                st.layout.tour[i..=j].reverse();
                if self.try_accept(st, trial, i) {
                    st.pos_of = st.layout.positions();
                    return true;
                }
                st.layout.tour[i..=j].reverse();
            }
        }
        false
    }

    /// First-improvement descent until no enabled neighbourhood improves.
    fn descend(&mut self, st: &mut State) {
        let mut trial = st.inc.clone();
        loop {
            let improved = ((self.nb.relocate || self.nb.reorder) && self.relocate(st, &mut trial))
                || ((self.nb.swap) && self.swap(st, &mut trial))
                || (self.nb.sortie_move && self.sortie_move(st, &mut trial))
                || (self.nb.tour_two_opt && self.two_opt(st, &mut trial));
            if !improved {
                return;
            }
        }
    }

    /// Random feasible relocations of `strength` customers, plus a random
    /// tour reversal every other call when there is more than one station.
    fn perturb(&self, layout: &mut Layout, rng: &mut Pcg64, strength: usize, flip: bool) {
        let n_c = self.ev.instance().num_customers();
        if flip && layout.tour.len() > 1 {
            let i = rng.random_range(0..layout.tour.len() - 1);
            let j = rng.random_range(i + 1..layout.tour.len());
            layout.tour[i..=j].reverse();
        }
        if n_c == 0 {
            return;
        }
        for _ in 0..strength {
            let o = rng.random_range(0..n_c);
            let (k1, r1, i1) = locate(layout, o);
            layout.routes[k1][r1].remove(i1);
            let mut slots = Vec::new();
            for &k in &self.reach[o] {
                for r in candidate_robots(&layout.routes[k]) {
                    let len = self.ev.route_length(k, &layout.routes[k][r]);
                    if len + 2.0 * self.ev.distances().station_customer(k, o)
                        <= self.ev.instance().robot_range() + crate::model::EPS
                    {
                        for pos in 0..=layout.routes[k][r].len() {
                            slots.push((k, r, pos));
                        }
                    }
                }
            }
            // the vacated slot is always among the candidates
            let (k, r, pos) = slots[rng.random_range(0..slots.len())];
            layout.routes[k][r].insert(pos, o);
        }
    }
}

fn locate(layout: &Layout, o: CustomerId) -> (usize, usize, usize) {
    for (k, robots) in layout.routes.iter().enumerate() {
        for (r, list) in robots.iter().enumerate() {
            if let Some(i) = list.iter().position(|&x| x == o) {
                return (k, r, i);
            }
        }
    }
    unreachable!("customer {o} is not in the layout")
}

/// Iterated local search from `plan`. The returned plan is never worse than
/// the input and is the input itself unless the objective strictly improves.
pub fn improve(instance: &Instance, plan: &RoutePlan, params: &SearchParams) -> Result<SolveReport, HeuristicError> {
    improve_inner(instance, plan, params, false).map(|(report, _)| report)
}

/// [`improve`] that also returns every accepted move in order.
pub fn improve_traced(
    instance: &Instance,
    plan: &RoutePlan,
    params: &SearchParams,
) -> Result<(SolveReport, Vec<TraceStep>), HeuristicError> {
    improve_inner(instance, plan, params, true)
}

fn improve_inner(
    instance: &Instance,
    plan: &RoutePlan,
    params: &SearchParams,
    trace: bool,
) -> Result<(SolveReport, Vec<TraceStep>), HeuristicError> {
    let violations = validate(instance, plan);
    if !violations.is_empty() {
        return Err(HeuristicError::InvalidPlan(violations));
    }
    if params.restarts == 0 || params.time_limit.is_some_and(|t| t.is_zero()) {
        return Err(HeuristicError::InvalidParams);
    }
    let start = Instant::now();
    let ev = Evaluator::new(instance);
    let input = Layout::from_plan(instance, plan);
    let (layout, evaluations, steps) = improve_layout(&ev, reach_table(instance), input.clone(), params, start, trace);
    let chosen = if ev.objective(&layout) < ev.objective(&input) - TOL {
        layout
    } else {
        input
    };
    Ok((finish(&ev, &chosen, plan, evaluations, start), steps))
}

fn finish(ev: &Evaluator<'_>, layout: &Layout, input: &RoutePlan, evaluations: u64, start: Instant) -> SolveReport {
    let schedule = ev.schedule(layout);
    let from_layout = layout.to_plan();
    // keep the caller's sortie order when nothing changed
    let mut canon = input.clone();
    canon.canonicalize();
    let plan = if canon == from_layout {
        input.clone()
    } else {
        from_layout
    };
    SolveReport {
        plan,
        objective: schedule.objective,
        schedule,
        status: ProofStatus::Heuristic,
        nodes: evaluations,
        wall_time: start.elapsed(),
    }
}

fn improve_layout(
    ev: &Evaluator<'_>,
    reach: Vec<Vec<usize>>,
    layout: Layout,
    params: &SearchParams,
    start: Instant,
    trace: bool,
) -> (Layout, u64, Vec<TraceStep>) {
    let mut ls = LocalSearch {
        ev,
        reach,
        nb: params.neighborhoods,
        evaluations: 0,
        trace: trace.then(Vec::new),
        on_incumbent: true,
    };
    let mut rng = Pcg64::seed_from_u64(params.seed);
    let mut best = ls.state(layout);
    ls.descend(&mut best);
    for it in 0..params.max_iterations {
        if params.time_limit.is_some_and(|t| start.elapsed() > t) {
            break;
        }
        let mut cand = best.layout.clone();
        ls.perturb(&mut cand, &mut rng, 1 + (it % 3) as usize, it % 2 == 1);
        let mut st = ls.state(cand);
        ls.on_incumbent = false;
        ls.descend(&mut st);
        ls.on_incumbent = true;
        if st.score.better_than(best.score) {
            ls.record(&st.layout, st.score, true);
            best = st;
        }
    }
    (best.layout, ls.evaluations, ls.trace.unwrap_or_default())
}

/// Multi-start search: `params.restarts` independent constructions and
/// improvements, run in parallel and reduced deterministically (lowest
/// objective, then lowest restart index).
pub fn solve(instance: &Instance, params: &SearchParams) -> Result<SolveReport, HeuristicError> {
    if params.restarts == 0 || params.time_limit.is_some_and(|t| t.is_zero()) {
        return Err(HeuristicError::InvalidParams);
    }
    let start = Instant::now();
    let ev = Evaluator::new(instance);
    let reach = reach_table(instance);
    let runs: Vec<Result<(Layout, u64), HeuristicError>> = (0..params.restarts as u64)
        .into_par_iter()
        .map(|i| {
            let seed = restart_seed(params.seed, i);
            let layout = construct_layout(&ev, &reach, seed)?;
            let p = SearchParams { seed, ..params.clone() };
            let (layout, n, _) = improve_layout(&ev, reach.clone(), layout, &p, start, false);
            Ok((layout, n))
        })
        .collect();

    let mut best: Option<(f64, Layout)> = None;
    let mut evaluations = 0;
    let mut last_err = None;
    for run in runs {
        match run {
            Ok((layout, n)) => {
                evaluations += n;
                let obj = ev.objective(&layout);
                if best.as_ref().map_or(true, |(b, _)| obj < *b) {
                    best = Some((obj, layout));
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    match best {
        Some((_, layout)) => {
            let plan = layout.to_plan();
            Ok(finish(&ev, &layout, &plan, evaluations, start))
        }
        None => Err(last_err.expect("at least one restart ran")),
    }
}
