use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use miuct_core::game::NoGo9State;
use miuct_core::mcts::{search_best_move, EngineConfig};
use miuct_core::rng::playout_rng;

fn search_benches(c: &mut Criterion) {
    let state = NoGo9State::new();
    let mut group = c.benchmark_group("search_1000_playouts_nogo");
    group.sample_size(10);
    group.bench_function("miuct", |b| {
        let config = EngineConfig::miuct(1000);
        let mut rng = playout_rng(3);
        b.iter(|| black_box(search_best_move(&config, &state, &mut rng).unwrap()));
    });
    group.bench_function("uct_c07", |b| {
        let config = EngineConfig::uct(0.7, 1000);
        let mut rng = playout_rng(3);
        b.iter(|| black_box(search_best_move(&config, &state, &mut rng).unwrap()));
    });
    group.finish();
}

criterion_group!(benches, search_benches);
criterion_main!(benches);
