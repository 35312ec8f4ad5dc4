use base_arith::BaseRing;
use criterion::{criterion_group, criterion_main, Criterion};
use qpd_envelope::QPDModule;

fn bench_nygaard(c: &mut Criterion) {
    let base = BaseRing::create(3, 3, 4, 2).expect("base ring");
    let module = QPDModule::new(base, 1, 9);
    let mut group = c.benchmark_group("nygaard_verify");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter(|| module.nygaard_verify(2).expect("verify"))
    });
    group.bench_function("sequential", |b| {
        b.iter(|| module.nygaard_verify_sequential(2).expect("verify"))
    });
    group.finish();
}

criterion_group!(benches, bench_nygaard);
criterion_main!(benches);
