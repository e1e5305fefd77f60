use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use manyval::{
    entails, enumerate_congruences, factor_matrix, find_epimorphisms, find_isomorphism, generate_rules,
    prove_entailment, Budget, CongruenceOptions, EpiOptions,
};
use manyval_bench::{builtin, formulas, NC_CASES};

fn congruences(c: &mut Criterion) {
    let fc = builtin("fc");
    c.bench_function("fc congruences", |b| {
        b.iter(|| enumerate_congruences(black_box(&fc), &CongruenceOptions::default()).unwrap())
    });
    let opts = CongruenceOptions {
        jobs: 4,
        ..Default::default()
    };
    c.bench_function("fc congruences, 4 jobs", |b| {
        b.iter(|| enumerate_congruences(black_box(&fc), &opts).unwrap())
    });
}

fn isomorphism(c: &mut Criterion) {
    let (fc, nc) = (builtin("fc"), builtin("nc"));
    let nine = CongruenceOptions {
        classes: Some(9),
        ..Default::default()
    };
    let cong = enumerate_congruences(&fc, &nine).unwrap().remove(0);
    let (factor, _) = factor_matrix(&fc, &cong).unwrap();
    c.bench_function("fc/9 vs nc iso", |b| {
        b.iter(|| find_isomorphism(black_box(&factor), &nc).unwrap())
    });
    c.bench_function("fc onto nc epi", |b| {
        b.iter(|| find_epimorphisms(black_box(&fc), &nc, &EpiOptions::default()).unwrap())
    });
}

fn entailment(c: &mut Criterion) {
    let nc = builtin("nc");
    let mut group = c.benchmark_group("nc entailment");
    for (i, (premises, conclusion)) in NC_CASES.iter().enumerate() {
        let ps = formulas(premises);
        let g = formulas(&[conclusion]).remove(0);
        group.bench_function(format!("case {i}"), |b| {
            b.iter(|| entails(black_box(&nc), &ps, &g).unwrap())
        });
    }
    group.finish();
}

fn rules(c: &mut Criterion) {
    let (nc, fc) = (builtin("nc"), builtin("fc"));
    c.bench_function("nc rules", |b| b.iter(|| generate_rules(black_box(&nc))));
    c.bench_function("fc rules", |b| b.iter(|| generate_rules(black_box(&fc))));
}

fn prover(c: &mut Criterion) {
    let nc = builtin("nc");
    let r = generate_rules(&nc);
    let mut group = c.benchmark_group("nc prover");
    for (i, (premises, conclusion)) in NC_CASES.iter().enumerate() {
        let ps = formulas(premises);
        let g = formulas(&[conclusion]).remove(0);
        group.bench_function(format!("case {i}"), |b| {
            b.iter(|| {
                prove_entailment(black_box(&nc), &r, &ps, &g, Budget::unlimited())
                    .unwrap()
                    .holds
            })
        });
    }
    group.finish();
}

criterion_group!(benches, congruences, isomorphism, entailment, rules, prover);
criterion_main!(benches);
