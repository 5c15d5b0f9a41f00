use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use miuct_core::bandit::PolicyConfig;
use miuct_core::testbed::{run_task, GaussianBanditTask, RegretMode};

fn bandit_benches(c: &mut Criterion) {
    let task = GaussianBanditTask::generate(60, 42);
    let horizon = 5000;
    let mut group = c.benchmark_group("bandit_5000_plays_k60");
    group.sample_size(20);
    for name in ["ucb1", "iucb-ep", "miucb-nor", "miucb", "miucb-ep"] {
        let policy = PolicyConfig::from_name(name, horizon).unwrap();
        group.bench_function(name, |b| {
            b.iter(|| {
                black_box(
                    run_task(&task, policy, horizon, RegretMode::PseudoTrueMeans).unwrap(),
                )
            });
        });
    }
    group.finish();
}

criterion_group!(benches, bandit_benches);
criterion_main!(benches);
