use std::hint::black_box;

use coxeter::theorem::verify_theorem;
use coxeter::{Ball, CoxeterSystem, Word};
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

fn preset(name: &str) -> CoxeterSystem {
    CoxeterSystem::preset(name).unwrap()
}

fn normalize(c: &mut Criterion) {
    let mut group = c.benchmark_group("normalize");
    for (name, letters) in [
        ("H3 (012)^5", [0u8, 1, 2].repeat(5)),
        ("B3 (012)^4", [0u8, 1, 2].repeat(4)),
        ("affine-A2 (012)^6", [0u8, 1, 2].repeat(6)),
    ] {
        let word = Word::new(letters);
        // a fresh system each time so the memo does not answer for us
        group.bench_function(name, |b| {
            b.iter_batched(
                || preset(name.split(' ').next().unwrap()),
                |system| system.normalize(black_box(&word)).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn ball(c: &mut Criterion) {
    let mut group = c.benchmark_group("ball");
    group.sample_size(20);
    for (name, bound) in [("H3", 15), ("affine-A2", 8)] {
        group.bench_function(format!("{name} L={bound}"), |b| {
            b.iter_batched(
                || preset(name),
                |system| {
                    let ball = Ball::new(&system, bound).unwrap();
                    // force the lazily built order matrix
                    ball.leq(0, ball.len() - 1)
                },
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn theorem(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_theorem");
    group.sample_size(10);
    for (name, bound) in [("A3", 6), ("H3", 15)] {
        let ball = Ball::new(&preset(name), bound).unwrap();
        ball.leq(0, 0);
        group.bench_function(name, |b| b.iter(|| verify_theorem(black_box(&ball))));
    }
    group.finish();
}

criterion_group!(benches, normalize, ball, theorem);
criterion_main!(benches);
