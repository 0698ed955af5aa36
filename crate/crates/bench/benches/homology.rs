use criterion::{black_box, criterion_group, criterion_main, Criterion};

use barhom::bar::word_homology;
use barhom::field::FieldSpec;
use barhom::graph::{binary_tree_family, graph_from_system, reduce_homology, TreeFamily};
use barhom::matrix::{rank, IntMatrix};
use barhom::recurrence::recurrence_dims;
use barhom::series::scan_inverse;
use barhom::system::system_homology;
use barhom::word::{Alphabet, RelationSet, Word};

/// The middle differential of a nearly free twelve-variable complex:
/// large, sparse, and shaped like every matrix this crate ranks.
fn middle_differential() -> IntMatrix {
    let system = barhom::system::SetSystem::from_point_sets(12, &[vec![1, 2]]).unwrap();
    let complex = barhom::system::grassmann_complex(&system, None).unwrap();
    complex.differential(5).unwrap().clone()
}

fn bench_rank(c: &mut Criterion) {
    let m = middle_differential();
    let name = format!("rank {}x{} differential", m.rows(), m.cols());
    c.bench_function(&format!("{name} mod 32003"), |b| {
        b.iter(|| rank(black_box(&m), FieldSpec::default_prime()).unwrap())
    });
    c.bench_function(&format!("{name} rational"), |b| {
        b.iter(|| rank(black_box(&m), FieldSpec::Rational).unwrap())
    });
}

fn bench_word(c: &mut Criterion) {
    let word = Word::new(vec![0; 14]);
    let rels = RelationSet::new(vec![Word::new(vec![0, 0, 0])]).unwrap();
    c.bench_function("word homology x^14 mod xxx", |b| {
        b.iter(|| word_homology(black_box(&word), &rels, FieldSpec::default_prime()).unwrap())
    });
}

fn bench_graph(c: &mut Criterion) {
    let system = binary_tree_family(3, TreeFamily::LineGraph).unwrap();
    c.bench_function("oracle on depth-3 line system", |b| {
        b.iter(|| system_homology(black_box(&system), FieldSpec::default_prime()).unwrap())
    });
    let deep = binary_tree_family(6, TreeFamily::LineGraph).unwrap();
    let graph = graph_from_system(&deep).unwrap();
    c.bench_function("reduce depth-6 line graph", |b| {
        b.iter(|| reduce_homology(black_box(&graph), FieldSpec::default_prime()).unwrap())
    });
}

fn bench_series(c: &mut Criterion) {
    let a = Alphabet::of_size(2).unwrap();
    let rels = RelationSet::new(vec![Word::new(vec![0, 0]), Word::new(vec![1, 0, 1])]).unwrap();
    c.bench_function("inverse scan two letters to degree 12", |b| {
        b.iter(|| {
            let mut acc = 0i64;
            scan_inverse(&a, &rels, 12, 1 << 21, |_, coeff, _| acc += coeff).unwrap();
            acc
        })
    });
}

fn bench_recurrence(c: &mut Criterion) {
    c.bench_function("recurrence dims at 16", |b| b.iter(|| recurrence_dims(black_box(16))));
}

criterion_group!(benches, bench_rank, bench_word, bench_graph, bench_series, bench_recurrence);
criterion_main!(benches);
