//! Benchmarks for the paths that dominate real runs: subsum enumeration,
//! interval-set normalization, the collision oracle, the exclusion sweep,
//! and dual lookups on the representation graph.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};

use cantorval::{
    build_permutation, collision_oracle, k_set, rat, standard_tail_menu, verify_cantorval_center,
    DigitStream, Interval, IntervalSet, MatchInstance, RepGraph, TermSequence,
    DEFAULT_SUBSUM_BUDGET,
};

fn subsum_enumeration(c: &mut Criterion) {
    let seq = TermSequence::cantorval();
    c.bench_function("partial_sums_16_terms", |b| {
        b.iter(|| seq.partial_sums(16, DEFAULT_SUBSUM_BUDGET).unwrap())
    });
    c.bench_function("approximation_12_terms", |b| {
        b.iter(|| seq.approximation(12, DEFAULT_SUBSUM_BUDGET).unwrap())
    });
}

fn interval_normalization(c: &mut Criterion) {
    // Many overlapping intervals that all merge into one part, forcing
    // the normalizer to walk and fuse the entire list.
    let intervals: Vec<Interval> = (0..512)
        .map(|i| {
            let lo = rat(i, 1024);
            let hi = rat(i + 2, 1024);
            Interval::new(lo, hi).unwrap()
        })
        .collect();
    c.bench_function("interval_set_from_512_overlapping", |b| {
        b.iter_batched(
            || intervals.clone(),
            IntervalSet::from_parts,
            BatchSize::SmallInput,
        )
    });
}

fn endpoint_lattice(c: &mut Criterion) {
    c.bench_function("k_set_n6", |b| b.iter(|| k_set(6)));
}

fn collision_grouping(c: &mut Criterion) {
    let menu = standard_tail_menu();
    c.bench_function("collision_oracle_len5", |b| {
        b.iter(|| collision_oracle(5, &menu, DEFAULT_SUBSUM_BUDGET).unwrap())
    });
}

fn center_sweep(c: &mut Criterion) {
    c.bench_function("cantorval_center_level6_grid64", |b| {
        b.iter(|| verify_cantorval_center(6, 64).unwrap())
    });
}

fn dual_lookup(c: &mut Criterion) {
    let graph = RepGraph::new();
    let paired: DigitStream = "2|50".parse().unwrap();
    let unique: DigitStream = "0|23".parse().unwrap();
    c.bench_function("dual_paired_and_unique", |b| {
        b.iter(|| (graph.dual(&paired), graph.dual(&unique)))
    });
}

fn matching(c: &mut Criterion) {
    let n = 96usize;
    let instance = MatchInstance::Line {
        cluster: vec![rat(0, 1), rat(1, 1)],
        a: (0..n).map(|m| rat(1, m as i64 + 2)).collect(),
        b: (0..n).map(|m| rat(m as i64 + 1, m as i64 + 2)).collect(),
    };
    let one = rat(1, 1);
    c.bench_function("build_permutation_64_steps", |b| {
        b.iter(|| build_permutation(&instance, &one, 64).unwrap())
    });
}

fn tuned() -> Criterion {
    Criterion::default().sample_size(10)
}

criterion_group! {
    name = benches;
    config = tuned();
    targets = subsum_enumeration, interval_normalization, endpoint_lattice,
              collision_grouping, center_sweep, dual_lookup, matching
}
criterion_main!(benches);
