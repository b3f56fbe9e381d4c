use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use gsv_bench::connected_random;
use gsv_core::generate::random_graph;
use gsv_core::sld::{
    closed_form_ghz, sld_bruteforce_partitioned, sld_bruteforce_serial, sld_combine,
    threshold_majorization,
};
use gsv_core::{decode_graph_id, Sld};

fn kernel(c: &mut Criterion) {
    let mut group = c.benchmark_group("sld_kernel");
    group.sample_size(10);
    for n in [12, 16, 20] {
        let g = connected_random(n, 0.3, n as u64);
        group.throughput(Throughput::Elements(1 << n));
        group.bench_with_input(BenchmarkId::new("serial", n), &g, |b, g| {
            b.iter(|| sld_bruteforce_serial(black_box(g)).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("parallel", n), &g, |b, g| {
            let parts = rayon_parts();
            b.iter(|| sld_bruteforce_partitioned(black_box(g), parts).unwrap())
        });
    }
    group.finish();
}

fn rayon_parts() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get()) * 4
}

fn codec(c: &mut Criterion) {
    let graphs: Vec<_> = (0..64).map(|s| random_graph(32, 0.5, s).unwrap()).collect();
    let ids: Vec<String> = graphs.iter().map(|g| g.id().to_string()).collect();
    c.bench_function("graph_id_encode_32", |b| {
        b.iter(|| graphs.iter().map(|g| g.id()).collect::<Vec<_>>())
    });
    c.bench_function("graph_id_decode_32", |b| {
        b.iter(|| {
            ids.iter()
                .map(|id| decode_graph_id(black_box(id)).unwrap())
                .collect::<Vec<_>>()
        })
    });
}

fn distributions(c: &mut Criterion) {
    let a = closed_form_ghz(28).unwrap();
    let b = Sld::product_state(30).unwrap();
    c.bench_function("sld_combine_28x30", |bench| {
        bench.iter(|| sld_combine(black_box(&a), black_box(&b)).unwrap())
    });
    c.bench_function("threshold_majorization_28", |bench| {
        bench.iter(|| threshold_majorization(black_box(&a)))
    });
}

criterion_group!(benches, kernel, codec, distributions);
criterion_main!(benches);
