use alcove_hecke::bounds::empirical_search;
use alcove_hecke::paths::enumerate;
use alcove_hecke::{HeckeRep, Word};
use alcove_hecke_bench::setup;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn paths(c: &mut Criterion) {
    let (ctx, _, _) = setup("A3", &[1]);
    let e = ctx.aw.identity();
    let w = Word::new(vec![3, 2, 3, 1, 2, 3, 0, 1, 2]);
    c.bench_function("enumerate A3 J=1 length 9", |b| b.iter(|| enumerate(&ctx, black_box(&w), &e, None).unwrap().len()));
    let (ctx, _, _) = setup("G2", &[1]);
    let e = ctx.aw.identity();
    let w = Word::new(vec![0, 2, 1, 2, 1, 2, 0, 2, 1]);
    c.bench_function("enumerate G2 J=1 length 9", |b| b.iter(|| enumerate(&ctx, black_box(&w), &e, None).unwrap().len()));
}

fn matrices(c: &mut Criterion) {
    let (ctx, v, dom) = setup("C2", &[2]);
    let rep = HeckeRep::new(&ctx, &v, &dom);
    c.bench_function("tw_ball C2 J=2 radius 6", |b| b.iter(|| rep.tw_ball(black_box(6)).len()));
    let w = Word::new(vec![0, 1, 2, 1, 0, 1]);
    c.bench_function("matrix via paths C2 J=2", |b| b.iter(|| rep.matrix_via_paths_word(black_box(&w)).unwrap()));
}

fn search(c: &mut Criterion) {
    let (ctx, v, dom) = setup("G2", &[1]);
    let rep = HeckeRep::new(&ctx, &v, &dom);
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("empirical_search G2 J=1 radius 8", |b| b.iter(|| empirical_search(&rep, black_box(8), false).max_degree));
    g.finish();
}

criterion_group!(benches, paths, matrices, search);
criterion_main!(benches);
