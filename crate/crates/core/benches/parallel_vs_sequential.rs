use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use qdr_core::calculus::{PoissonModel, Space};
use qdr_core::cohomology::quantum_derham_table;
use qdr_core::exec::Exec;
use qdr_core::exterior::Symplectic;
use qdr_core::quantum::qwedge_with;
use qdr_core::random::{self, rng};
use qdr_core::scalar::{GRat, HLaurent, Rat};
use qdr_core::suites::run_suite;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn bench_qwedge(c: &mut Criterion) {
    let mut g = c.benchmark_group("qwedge");
    for m in [6usize, 8] {
        let mut r = rng(m as u64);
        let w = random::antisymmetric(&mut r, m);
        let a = random::form(&mut r, m, 12, 0..=1, random::small_rat);
        let b = random::form(&mut r, m, 12, 0..=1, random::small_rat);
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, m), &m, |bch, _| {
                bch.iter(|| qwedge_with::<Rat>(exec, black_box(&a), black_box(&b), &w).unwrap())
            });
        }
    }
    g.finish();
}

fn bench_derham(c: &mut Criterion) {
    let mut g = c.benchmark_group("derham_t4");
    g.sample_size(10);
    let model = PoissonModel::symplectic(Space::Torus, Symplectic::darboux(2), false).unwrap();
    for (name, exec) in MODES {
        g.bench_function(name, |bch| bch.iter(|| quantum_derham_table::<HLaurent<GRat>>(&model, 1, 4, exec).unwrap()));
    }
    g.finish();
}

fn bench_suite(c: &mut Criterion) {
    let mut g = c.benchmark_group("suite_associativity");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |bch| bch.iter(|| run_suite("associativity", 16, 1, exec).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, bench_qwedge, bench_derham, bench_suite);
criterion_main!(benches);
