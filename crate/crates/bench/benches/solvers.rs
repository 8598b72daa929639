use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mothership::exact::{solve_bnb, solve_oracle, Budget};
use mothership::heuristic::{construct, improve, SearchParams};
use mothership::instgen::{generate, GenParams};
use mothership::mipexport::{export_bigm, export_miqcp, ExportOptions};
use mothership::{propagate, validate, Fixture};

fn bench_propagate(c: &mut Criterion) {
    let mut group = c.benchmark_group("propagate");
    for f in Fixture::ALL {
        let (inst, plan) = (f.instance(), f.plan());
        group.bench_function(f.name(), |b| {
            b.iter(|| propagate(black_box(&inst), black_box(&plan)).unwrap())
        });
    }
    group.finish();

    let (inst, plan) = (Fixture::Medium.instance(), Fixture::Medium.plan());
    c.bench_function("validate/medium", |b| {
        b.iter(|| validate(black_box(&inst), black_box(&plan)))
    });
}

fn bench_exact(c: &mut Criterion) {
    let small = Fixture::Small.instance();
    c.bench_function("bnb/small", |b| {
        b.iter(|| solve_bnb(black_box(&small), Budget::UNLIMITED).unwrap())
    });

    let mut group = c.benchmark_group("oracle_vs_bnb");
    group.sample_size(20);
    for customers in [3usize, 4, 5] {
        let inst = generate(&GenParams {
            seed: 1,
            customers,
            ..GenParams::default()
        })
        .unwrap();
        group.bench_with_input(BenchmarkId::new("oracle", customers), &inst, |b, inst| {
            b.iter(|| solve_oracle(inst).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("bnb", customers), &inst, |b, inst| {
            b.iter(|| solve_bnb(inst, Budget::UNLIMITED).unwrap())
        });
    }
    group.finish();
}

fn bench_heuristic(c: &mut Criterion) {
    let mut group = c.benchmark_group("heuristic");
    group.sample_size(10);
    let params = SearchParams {
        time_limit: None,
        restarts: 1,
        max_iterations: 50,
        ..SearchParams::default()
    };
    for f in Fixture::ALL {
        let inst = f.instance();
        let start = construct(&inst, 0).unwrap();
        group.bench_function(BenchmarkId::new("construct", f.name()), |b| {
            b.iter(|| construct(black_box(&inst), 0).unwrap())
        });
        group.bench_function(BenchmarkId::new("improve", f.name()), |b| {
            b.iter(|| improve(&inst, black_box(&start), &params).unwrap())
        });
    }
    group.finish();
}

fn bench_export(c: &mut Criterion) {
    let mut group = c.benchmark_group("export");
    for f in Fixture::ALL {
        let inst = f.instance();
        group.bench_function(BenchmarkId::new("miqcp", f.name()), |b| {
            b.iter(|| export_miqcp(black_box(&inst), ExportOptions::default()))
        });
        group.bench_function(BenchmarkId::new("bigm", f.name()), |b| {
            b.iter(|| export_bigm(black_box(&inst)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_propagate, bench_exact, bench_heuristic, bench_export);
criterion_main!(benches);
