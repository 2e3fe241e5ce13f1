use criterion::{criterion_group, criterion_main, Criterion};
use relhyp_bench::{ball, basepoint_edges};
use relhyp_core::divider::{frink_metric, frink_sequence_from_divider, Divider, WindowEntourage};
use relhyp_core::floyd::{floyd_matrix, FloydConfig};
use relhyp_core::thin::thin_triangle_delta_ball;
use relhyp_core::visibility::principal_set;

fn metrics(c: &mut Criterion) {
    let f2 = ball("free:2", 5);
    let cfg = FloydConfig::new(0.5, 0).unwrap();
    c.bench_function("cayley_ball free:2 R=6", |b| b.iter(|| ball("free:2", 6)));
    c.bench_function("floyd_matrix free:2 R=5", |b| b.iter(|| floyd_matrix(f2.graph(), &cfg).unwrap()));
    let e = basepoint_edges(&f2);
    c.bench_function("principal_set free:2 R=5", |b| b.iter(|| principal_set(f2.graph(), &e).unwrap()));

    let f6 = ball("free:2", 6);
    let u = WindowEntourage::principal(&f6, &basepoint_edges(&f6), 6).unwrap();
    let mut f = vec![f6.model().identity()];
    f.extend(f6.model().generators());
    let div = Divider::certify(&f6, u, f, 3, 4).unwrap();
    c.bench_function("frink_metric free:2 R=6", |b| {
        b.iter(|| frink_metric(&frink_sequence_from_divider(&f6, &div, 3).unwrap()))
    });

    let z2 = ball("zn:2", 9);
    c.bench_function("thin_triangle_delta zn:2 R=9", |b| b.iter(|| thin_triangle_delta_ball(&z2, 5000, 0).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = metrics
}
criterion_main!(benches);
