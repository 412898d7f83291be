use cardenc::verifier::{check_circuit_equivalence_with, check_correct_with, check_pac_with};
use cardenc::{CardinalityConstraint, EncoderKind, SweepMode};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

const MODES: [(&str, SweepMode); 2] = [
    ("sequential", SweepMode::Sequential),
    ("parallel", SweepMode::Parallel),
];

fn bench_pac(c: &mut Criterion) {
    let mut group = c.benchmark_group("pac_n8");
    for kind in [EncoderKind::Totalizer, EncoderKind::SortingNetwork] {
        let e = kind.encode(&CardinalityConstraint::at_most(4, 8)).unwrap();
        for (name, mode) in MODES {
            group.bench_with_input(BenchmarkId::new(name, kind), &e, |b, e| {
                b.iter(|| black_box(check_pac_with(e, mode).unwrap()))
            });
        }
    }
    group.finish();
}

fn bench_correct(c: &mut Criterion) {
    let mut group = c.benchmark_group("correct_n10");
    let e = EncoderKind::BinaryAdder
        .encode(&CardinalityConstraint::at_most(5, 10))
        .unwrap();
    for (name, mode) in MODES {
        group.bench_function(name, |b| b.iter(|| black_box(check_correct_with(&e, mode).unwrap())));
    }
    group.finish();
}

fn bench_circuit(c: &mut Criterion) {
    let mut group = c.benchmark_group("circuit_n5");
    group.sample_size(20);
    let e = EncoderKind::Totalizer
        .encode(&CardinalityConstraint::at_most(2, 5))
        .unwrap();
    let target = e.input_vars[0];
    for (name, mode) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| black_box(check_circuit_equivalence_with(&e, target, mode).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_pac, bench_correct, bench_circuit);
criterion_main!(benches);
