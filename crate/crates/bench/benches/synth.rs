use criterion::{criterion_group, criterion_main, Criterion};
use digramkit::synth::{Dsl, Gate, TestCase};
use digramkit::{synthesize, AllowedDigrams, SynthConfig, Value};
use digramkit_bench::mine_fixture;

fn tests() -> Vec<TestCase> {
    vec![
        TestCase::new(vec![Value::str("  ab ")], Value::int(2)),
        TestCase::new(vec![Value::str("xyz")], Value::int(3)),
    ]
}

fn config(gate: Gate) -> SynthConfig {
    let mut c = SynthConfig::new(Dsl::standard(), gate);
    c.max_depth = 2;
    c
}

fn padded_length(c: &mut Criterion) {
    let tests = tests();
    let mined = mine_fixture().allowed;
    let allowed = mined.union(&AllowedDigrams::from_pairs([("strip", "len")]));
    let mut group = c.benchmark_group("synthesize/padded_length");
    group.bench_function("complete", |b| {
        let cfg = config(Gate::Complete);
        b.iter(|| synthesize(&tests, &cfg).unwrap())
    });
    group.bench_function("gated", |b| {
        let cfg = config(Gate::Allowed(allowed.clone()));
        b.iter(|| synthesize(&tests, &cfg).unwrap())
    });
    group.finish();
}

criterion_group!(benches, padded_length);
criterion_main!(benches);
