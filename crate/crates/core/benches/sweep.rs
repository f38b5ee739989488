use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sharpknot::inference::{apply_batch, apply_rules, InferenceOptions};
use sharpknot::parity::sweep_sequential;
use sharpknot::{seed_database, slope_bound, KnotRecord};

fn parity(c: &mut Criterion) {
    let mut g = c.benchmark_group("parity_sweep");
    g.sample_size(10);
    for &(h, k) in &[(8, 4), (10, 5)] {
        let id = format!("h{h}_k{k}");
        g.bench_with_input(BenchmarkId::new("sequential", &id), &(h, k), |b, &(h, k)| {
            b.iter(|| sweep_sequential(black_box(h), black_box(k)).expect("sweep"))
        });
        #[cfg(feature = "parallel")]
        g.bench_with_input(BenchmarkId::new("parallel", &id), &(h, k), |b, &(h, k)| {
            b.iter(|| sharpknot::parity::sweep_parallel(black_box(h), black_box(k)).expect("sweep"))
        });
    }
    g.finish();
}

fn partial_records() -> Vec<KnotRecord> {
    let seeds = seed_database();
    (0..256u32)
        .map(|i| {
            let mut r = seeds[i as usize % seeds.len()].clone();
            r.name = format!("k{i}");
            if i & 1 != 0 {
                r.r0 = None;
            }
            if i & 2 != 0 {
                r.nu_sharp = None;
            }
            if i & 4 != 0 {
                r.genus = None;
            }
            if i & 8 != 0 {
                r.flags.clear();
            }
            r
        })
        .collect()
}

fn inference(c: &mut Criterion) {
    let recs = partial_records();
    let opts = InferenceOptions::new();
    let mut g = c.benchmark_group("inference_batch");
    g.sample_size(10);
    g.bench_function("sequential", |b| {
        b.iter(|| recs.iter().map(|r| apply_rules(r, &opts)).collect::<Vec<_>>())
    });
    g.bench_function("batch", |b| b.iter(|| apply_batch(black_box(&recs), &opts)));
    g.finish();
}

fn bound(c: &mut Criterion) {
    c.bench_function("slope_bound_60", |b| b.iter(|| slope_bound(black_box(60), true).expect("bound")));
}

criterion_group!(benches, parity, inference, bound);
criterion_main!(benches);
