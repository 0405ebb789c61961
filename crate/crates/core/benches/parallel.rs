use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use parahecke::coxcore::{CoxeterDatum, DiagramAut};
use parahecke::grouptab::{compute_table, FiniteGroup};
use parahecke::hcduality::ParabolicContext;
use parahecke::hecke::{HeckeAlgebra, ParamFunction};
use parahecke::par::{self, Execution};

const MODES: [Execution; 2] = [Execution::Parallel, Execution::Sequential];

fn mode_name(e: Execution) -> &'static str {
    match e {
        Execution::Parallel => "parallel",
        Execution::Sequential => "sequential",
    }
}

/// Both sides of the Mackey formula for every stable pair in D4, from a cold context.
fn mackey_sweep(c: &mut Criterion) {
    let d = Arc::new(CoxeterDatum::parse("D4").unwrap());
    let mut g = c.benchmark_group("mackey D4");
    g.sample_size(10);
    for exec in MODES {
        g.bench_function(BenchmarkId::from_parameter(mode_name(exec)), |b| {
            b.iter(|| {
                let ctx = ParabolicContext::with_execution(d.clone(), DiagramAut::identity(4), exec).unwrap();
                let i = d.simples();
                let subsets = ctx.stable_subsets(i);
                let pairs: Vec<_> = subsets.iter().flat_map(|&k| subsets.iter().map(move |&kp| (k, kp))).collect();
                par::map(exec, &pairs, |&(k, kp)| {
                    ctx.mackey_lhs_matrix(k, kp, i).unwrap() == ctx.mackey_rhs_matrix(k, kp, i).unwrap()
                })
            })
        });
    }
    g.finish();
}

fn f4_table(c: &mut Criterion) {
    let d = CoxeterDatum::parse("F4").unwrap();
    let group = Arc::new(FiniteGroup::weyl(&d).unwrap());
    group.classes().unwrap();
    let mut g = c.benchmark_group("character table W(F4)");
    g.sample_size(10);
    for exec in MODES {
        g.bench_function(BenchmarkId::from_parameter(mode_name(exec)), |b| {
            b.iter(|| compute_table(&group, exec).unwrap())
        });
    }
    g.finish();
}

fn hecke_associativity(c: &mut Criterion) {
    let d = CoxeterDatum::parse("B3").unwrap();
    let h = HeckeAlgebra::new(&d, ParamFunction::new(&d, vec![1, 1, 2]).unwrap()).unwrap();
    let n = h.dim();
    let triples: Vec<(usize, usize, usize)> = (0..2000).map(|i| (i % n, (i * 7 + 3) % n, (i * 13 + 5) % n)).collect();
    let mut g = c.benchmark_group("hecke associativity B3(1,1,2)");
    g.sample_size(10);
    for exec in MODES {
        g.bench_function(BenchmarkId::from_parameter(mode_name(exec)), |b| {
            b.iter(|| {
                par::map(exec, &triples, |&(x, y, z)| {
                    let (a, b, c) = (h.basis(x), h.basis(y), h.basis(z));
                    a.mul(&b).unwrap().mul(&c).unwrap() == a.mul(&b.mul(&c).unwrap()).unwrap()
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, mackey_sweep, f4_table, hecke_associativity);
criterion_main!(benches);
