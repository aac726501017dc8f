//! Timings for nerve counting, the adjugate, closed forms, covering checks
//! and the filtered Euler characteristic.

use catcover_core::builders::{fan, Ladder};
use catcover_core::generate::random_category;
use catcover_core::matrix::PolyMatrix;
use catcover_core::{
    adjacency_matrix, check_covering, chi_fil, enumerate_nerve, nerve_count, series_euler_characteristic,
    zeta_closed_form, Variant,
};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn nerve(c: &mut Criterion) {
    let mut group = c.benchmark_group("nerve");
    let fan = fan(6).unwrap().total;
    for n in [2, 4, 8, 16] {
        group.bench_with_input(BenchmarkId::new("matrix", n), &n, |b, &n| {
            b.iter(|| nerve_count(black_box(&fan), n, Variant::Nondegenerate))
        });
    }
    for n in [2, 3, 4] {
        group.bench_with_input(BenchmarkId::new("listing", n), &n, |b, &n| {
            b.iter(|| enumerate_nerve(black_box(&fan), n, Variant::Degenerate, usize::MAX))
        });
    }
    group.finish();
}

fn adjugate(c: &mut Criterion) {
    let mut group = c.benchmark_group("adjugate");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for objects in [2, 4, 6] {
        let cat = random_category(&mut rng, objects, objects * 3);
        let m = PolyMatrix::identity_minus(&adjacency_matrix(&cat, Variant::Nondegenerate).entries);
        group.bench_with_input(BenchmarkId::new("interpolated", cat.num_objects()), &m, |b, m| {
            b.iter(|| black_box(m).adjugate())
        });
        group.bench_with_input(BenchmarkId::new("cofactors", cat.num_objects()), &m, |b, m| {
            b.iter(|| black_box(m).adjugate_by_cofactors())
        });
    }
    group.finish();
}

fn euler(c: &mut Criterion) {
    let mut group = c.benchmark_group("euler");
    for sheets in [2, 4, 8] {
        let bundle = fan(sheets).unwrap();
        group.bench_with_input(BenchmarkId::new("closed_form", sheets), &bundle.total, |b, cat| {
            b.iter(|| zeta_closed_form(black_box(cat)))
        });
        group.bench_with_input(BenchmarkId::new("series_chi", sheets), &bundle.total, |b, cat| {
            b.iter(|| series_euler_characteristic(black_box(cat)))
        });
        let p = bundle.functor().unwrap();
        group.bench_with_input(BenchmarkId::new("covering_check", sheets), &p, |b, p| {
            b.iter(|| check_covering(black_box(p.clone())))
        });
    }
    group.finish();
}

fn filtered(c: &mut Criterion) {
    let mut group = c.benchmark_group("chi_fil");
    for levels in [16, 32, 64] {
        group.bench_with_input(BenchmarkId::new("ladder", levels), &levels, |b, &levels| {
            b.iter(|| chi_fil(&Ladder, levels, 6))
        });
    }
    group.finish();
}

criterion_group!(benches, nerve, adjugate, euler, filtered);
criterion_main!(benches);
