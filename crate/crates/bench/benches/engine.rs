use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twistgeom::apath::cocycle_integral;
use twistgeom::contact::{check_contact, jacobi_from_contact, solve};
use twistgeom::groupoid::{build_pair_groupoid, check_axioms};
use twistgeom::jacobi::check_twisted_jacobi;
use twistgeom::{Expr, SampleConfig};
use twistgeom_bench::{r3, twisted_contact, vertical_path};

fn expr(c: &mut Criterion) {
    let chart = r3();
    let text = "(x + y*z)^3 * exp(2*z) - x^3*exp(2*z) - 3*x^2*y*z*exp(2*z) - 3*x*y^2*z^2*exp(2*z) - y^3*z^3*exp(2*z)";
    c.bench_function("expr/parse", |b| b.iter(|| Expr::parse(text, &chart).unwrap()));
}

fn contact(c: &mut Criterion) {
    let ct = twisted_contact();
    let cfg = SampleConfig::default();
    c.bench_function("contact/solve", |b| b.iter(|| solve(&ct).unwrap()));
    c.bench_function("contact/check", |b| b.iter(|| check_contact(&ct, &cfg)));
    let j = jacobi_from_contact(&ct).unwrap();
    c.bench_function("jacobi/check", |b| b.iter(|| check_twisted_jacobi(&j, &cfg)));
}

fn groupoid(c: &mut Criterion) {
    let ct = twisted_contact();
    let cfg = SampleConfig::default();
    let mut g = c.benchmark_group("groupoid");
    g.sample_size(10);
    g.bench_function("pair_build", |b| b.iter(|| build_pair_groupoid(&ct, &cfg).unwrap()));
    let model = build_pair_groupoid(&ct, &cfg).unwrap();
    g.bench_function("axioms", |b| b.iter(|| check_axioms(&model, &cfg)));
    g.finish();
}

fn apath(c: &mut Criterion) {
    let mut g = c.benchmark_group("apath/cocycle");
    for n in [16, 64, 256] {
        let p = vertical_path(n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| b.iter(|| cocycle_integral(p).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, expr, contact, groupoid, apath);
criterion_main!(benches);
