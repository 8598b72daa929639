mod support;

use mothership::exact::{lower_bound, solve_bnb, solve_oracle, Budget, ExactError, SearchNode};
use mothership::heuristic::{construct, improve, improve_traced, solve, SearchParams};
use mothership::{builtin_fixture, propagate, validate, Customer, Instance, ProofStatus, Sortie};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg64;

use support::{best_completion, for_each_plan, reference_schedule, tiny_instance};

fn brute_force(inst: &Instance) -> Option<f64> {
    let mut best: Option<f64> = None;
    for_each_plan(inst, &mut |plan| {
        let obj = reference_schedule(inst, plan).objective;
        if best.map_or(true, |b| obj < b) {
            best = Some(obj);
        }
    });
    best
}

fn quick() -> SearchParams {
    SearchParams {
        max_iterations: 30,
        time_limit: None,
        restarts: 2,
        ..SearchParams::default()
    }
}

#[test]
fn branch_and_bound_matches_independent_enumeration() {
    for seed in 0..80 {
        let inst = tiny_instance(seed);
        match (brute_force(&inst), solve_bnb(&inst, Budget::UNLIMITED)) {
            (None, Err(e)) => assert_eq!(e, ExactError::Infeasible, "seed {seed}"),
            (Some(want), Ok(rep)) => {
                assert!(rep.status.is_optimal());
                assert!(
                    (rep.objective - want).abs() <= 1e-9,
                    "seed {seed}: {} vs {want}",
                    rep.objective
                );
            }
            (want, got) => panic!("seed {seed}: enumeration {want:?}, solver {got:?}"),
        }
    }
}

#[test]
fn oracle_and_branch_and_bound_agree_exactly() {
    for seed in 0..120 {
        let inst = tiny_instance(seed);
        match (solve_oracle(&inst), solve_bnb(&inst, Budget::UNLIMITED)) {
            (Ok(a), Ok(b)) => assert_eq!(a.objective, b.objective, "seed {seed}"),
            (Err(a), Err(b)) => assert_eq!(a, b),
            (a, b) => panic!("seed {seed}: {a:?} vs {b:?}"),
        }
    }
}

fn random_node(inst: &Instance, rng: &mut Pcg64) -> SearchNode {
    let mut stations: Vec<usize> = (1..=inst.num_stations()).collect();
    stations.shuffle(rng);
    let prefix = rng.random_range(0..=stations.len());
    let mut routes: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new(); inst.fleet_size()]; inst.num_stations()];
    for o in 0..inst.num_customers() {
        if rng.random_bool(0.5) {
            let reach: Vec<usize> = inst.reachable_stations(o).collect();
            let k = reach[rng.random_range(0..reach.len())];
            let r = rng.random_range(0..inst.fleet_size());
            routes[k - 1][r].push(o);
        }
    }
    let mut sorties = Vec::new();
    for (k, robots) in routes.into_iter().enumerate() {
        for (r, list) in robots.into_iter().enumerate() {
            if !list.is_empty() {
                sorties.push(Sortie::new(r, k + 1, list).unwrap());
            }
        }
    }
    SearchNode {
        tour: stations[..prefix].to_vec(),
        sorties,
    }
}

#[test]
fn lower_bound_never_exceeds_best_completion() {
    let mut rng = Pcg64::seed_from_u64(11);
    let mut checked = 0;
    for seed in 0..100 {
        let inst = tiny_instance(seed);
        for _ in 0..5 {
            let node = random_node(&inst, &mut rng);
            if let Some(best) = best_completion(&inst, &node) {
                let lb = lower_bound(&inst, &node);
                assert!(lb <= best + 1e-9, "seed {seed}: bound {lb} > best {best} at {node:?}");
                checked += 1;
            }
        }
        let root = lower_bound(&inst, &SearchNode::root());
        if let Some(best) = best_completion(&inst, &SearchNode::root()) {
            assert!(root <= best + 1e-9);
        }
    }
    assert!(checked > 200, "only {checked} nodes had a feasible completion");
}

#[test]
fn reported_plans_are_feasible_and_consistent() {
    for seed in 0..40 {
        let inst = tiny_instance(seed);
        let reports = [
            solve_bnb(&inst, Budget::UNLIMITED).ok(),
            solve_oracle(&inst).ok(),
            solve(&inst, &SearchParams { seed, ..quick() }).ok(),
        ];
        for rep in reports.into_iter().flatten() {
            assert!(validate(&inst, &rep.plan).is_empty());
            let again = propagate(&inst, &rep.plan).unwrap();
            assert!((again.objective - rep.objective).abs() <= 1e-9);
            assert_eq!(again, rep.schedule);
        }
    }
}

#[test]
fn branch_and_bound_is_deterministic() {
    let (inst, _) = builtin_fixture("small").unwrap();
    let a = solve_bnb(&inst, Budget::UNLIMITED).unwrap();
    let b = solve_bnb(&inst, Budget::UNLIMITED).unwrap();
    assert_eq!(
        (a.plan, a.objective, a.nodes, a.status),
        (b.plan, b.objective, b.nodes, b.status)
    );
    let a = solve_bnb(&inst, Budget::nodes(25)).unwrap();
    let b = solve_bnb(&inst, Budget::nodes(25)).unwrap();
    assert_eq!((a.plan, a.status), (b.plan, b.status));
}

#[test]
fn budget_exhaustion_reports_a_valid_gap() {
    let (inst, _) = builtin_fixture("medium").unwrap();
    let full = solve_bnb(&inst, Budget::UNLIMITED).unwrap();
    let cut = solve_bnb(&inst, Budget::nodes(20)).unwrap();
    match cut.status {
        ProofStatus::BudgetExhausted { lower_bound, gap } => {
            assert!(lower_bound <= full.objective + 1e-9);
            assert!((gap - (cut.objective - lower_bound)).abs() <= 1e-12);
            assert!(cut.objective >= full.objective - 1e-12);
        }
        other => panic!("expected an exhausted budget, got {other:?}"),
    }
}

#[test]
fn scaling_importance_keeps_the_optimal_plan() {
    for seed in 0..40 {
        let inst = tiny_instance(seed);
        let Ok(base) = solve_bnb(&inst, Budget::UNLIMITED) else {
            continue;
        };
        let factor = 3.5;
        let heavier = Instance::new(
            inst.depot(),
            inst.stations().to_vec(),
            inst.customers()
                .iter()
                .map(|c| Customer {
                    importance: c.importance * factor,
                    ..*c
                })
                .collect(),
            inst.fleet_size(),
            inst.robot_range(),
            inst.vehicle_speed(),
            inst.robot_speed(),
        )
        .unwrap();
        let scaled = solve_bnb(&heavier, Budget::UNLIMITED).unwrap();
        assert!((scaled.objective - factor * base.objective).abs() <= 1e-9 * (1.0 + scaled.objective));
        let base_plan_there = propagate(&heavier, &base.plan).unwrap().objective;
        assert!((base_plan_there - scaled.objective).abs() <= 1e-9 * (1.0 + scaled.objective));
    }
}

#[test]
fn heuristic_trace_is_monotone_and_feasible() {
    for seed in 0..30 {
        let inst = tiny_instance(seed);
        let Ok(start) = construct(&inst, seed) else { continue };
        let (rep, trace) = improve_traced(&inst, &start, &SearchParams { seed, ..quick() }).unwrap();
        let mut last = propagate(&inst, &start).unwrap().objective;
        for step in &trace {
            assert!(validate(&inst, &step.plan).is_empty(), "seed {seed}");
            let obj = propagate(&inst, &step.plan).unwrap().objective;
            assert!((obj - step.objective).abs() <= 1e-9);
            if step.incumbent {
                assert!(obj <= last + 1e-12, "seed {seed}: {obj} after {last}");
                last = obj;
            }
        }
        assert!(rep.objective <= last + 1e-12);
    }
    let (inst, plan) = builtin_fixture("medium").unwrap();
    let plan = construct(&inst, 1).unwrap_or(plan);
    let (_, trace) = improve_traced(&inst, &plan, &quick()).unwrap();
    assert!(trace.iter().all(|s| validate(&inst, &s.plan).is_empty()));
}

#[test]
fn heuristic_is_seed_deterministic() {
    let (inst, _) = builtin_fixture("medium").unwrap();
    let p = SearchParams { seed: 9, ..quick() };
    let a = solve(&inst, &p).unwrap();
    let b = solve(&inst, &p).unwrap();
    assert_eq!(a.plan, b.plan);
    assert_eq!(a.objective, b.objective);
}

#[test]
fn heuristic_never_beats_the_oracle() {
    for seed in 0..60 {
        let inst = tiny_instance(seed);
        let Ok(opt) = solve_oracle(&inst) else { continue };
        let start = construct(&inst, seed).expect("construction succeeds on feasible tiny instances");
        assert!(validate(&inst, &start).is_empty());
        let rep = improve(&inst, &start, &SearchParams { seed, ..quick() }).unwrap();
        assert!(rep.objective >= opt.objective - 1e-9, "seed {seed}");
        assert!(rep.objective <= propagate(&inst, &start).unwrap().objective);
    }
}

#[test]
fn oversized_instances_are_refused_by_the_oracle() {
    let (inst, _) = builtin_fixture("medium").unwrap();
    assert!(matches!(solve_oracle(&inst), Err(ExactError::SizeLimit { .. })));
}
