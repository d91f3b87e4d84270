use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use visibility_bench::{action, symplectic};
use visibility_core::analysis::{run_epsilon_suite, run_sweep};
use visibility_core::exact::rational_eigenspaces;
use visibility_core::lie::maximal_abelian;
use visibility_core::numeric::{certify, planted_recovery, CertifyOptions};
use visibility_core::realizations::{characteristic_element, Dataset, RowFilter};
use visibility_core::roots::k_epsilon_family;

fn exact(c: &mut Criterion) {
    let r = symplectic(3);
    c.bench_function("characteristic element of sp(3,R)", |b| {
        b.iter(|| characteristic_element(&r.algebra, &r.theta).expect("characteristic element"))
    });
    let h = maximal_abelian(&r.algebra, &r.p).basis()[0].clone();
    let ad = r.algebra.ad_matrix(&h);
    c.bench_function("ad(H) eigenspaces on sp(3,R)", |b| {
        b.iter(|| rational_eigenspaces(&ad).expect("rational spectrum"))
    });
    c.bench_function("maximal abelian in p of sp(3,R)", |b| b.iter(|| maximal_abelian(&r.algebra, &r.p)));
    c.bench_function("K_ε family of sp(2,R)", |b| {
        let r = symplectic(2);
        b.iter(|| k_epsilon_family(&r.algebra, &r.theta, &r.p).expect("family"))
    });
}

fn tables(c: &mut Criterion) {
    let ds = Dataset::embedded().expect("dataset");
    let mut g = c.benchmark_group("tables");
    g.sample_size(10);
    g.bench_function("sweep, ambient 4", |b| b.iter(|| run_sweep(&ds, &RowFilter::all(), "", 4).expect("sweep")));
    g.bench_function("ε suite, ambient 4", |b| {
        b.iter(|| run_epsilon_suite(&ds, &RowFilter::all(), 4).expect("suite"))
    });
    g.finish();
}

fn numeric(c: &mut Criterion) {
    let mut g = c.benchmark_group("numeric");
    g.sample_size(10);
    for id in ["sl2R:K", "sp2R:GL2R", "su6:II-1"] {
        let s = action(id);
        let opts = CertifyOptions { samples: 20, ..CertifyOptions::default() };
        g.bench_function(format!("certify {id}, 20 samples"), |b| {
            b.iter_batched(|| opts, |o| certify(&s, &o).expect("certificate"), BatchSize::SmallInput)
        });
    }
    let s = action("sp2R:Sp1C");
    g.bench_function("planted recovery sp2R:Sp1C, 100 trials", |b| {
        b.iter(|| planted_recovery(&s, 100, 0, 32).expect("planted"))
    });
    g.finish();
}

criterion_group!(benches, exact, tables, numeric);
criterion_main!(benches);
