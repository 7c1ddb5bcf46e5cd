use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hymcg::symplectic::{chain_transvections_mod, evaluate, group_closure, DEFAULT_CLOSURE_CAP};
use hymcg::words::TwistWord;

fn closures(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    group.sample_size(10);
    let mod2 = chain_transvections_mod(2, 2).unwrap();
    group.bench_function("sp4_mod2", |b| b.iter(|| group_closure(black_box(&mod2), DEFAULT_CLOSURE_CAP).unwrap().order()));
    let squares: Vec<_> = chain_transvections_mod(2, 3).unwrap().iter().map(|t| t.mul(t)).collect();
    group.bench_function("sp4_mod3_squares", |b| {
        b.iter(|| group_closure(black_box(&squares), DEFAULT_CLOSURE_CAP).unwrap().order())
    });
    group.finish();
}

fn evaluation(c: &mut Criterion) {
    let inv = TwistWord::involution(6).unwrap();
    c.bench_function("evaluate_involution_g6", |b| b.iter(|| evaluate(black_box(&inv))));
    let huge = TwistWord::parse(4, "t1^99999999999999999999 t2^-77777777777777777 t5^3 t9^12345678901234567890").unwrap();
    c.bench_function("evaluate_huge_exponents_g4", |b| b.iter(|| evaluate(black_box(&huge))));
}

criterion_group!(benches, closures, evaluation);
criterion_main!(benches);
