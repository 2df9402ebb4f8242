use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use gh_embed::metric::hausdorff_distance_finite_seq;
#[cfg(feature = "parallel")]
use gh_embed::metric::hausdorff_distance_finite_par;
use gh_embed::lemma::{all_cases, verify_lemma_case_seq};
#[cfg(feature = "parallel")]
use gh_embed::lemma::verify_lemma_case;
use gh_embed::metric::{PointSet, Vector};
use gh_embed::scaffold::{build_scaffold, sample_scaffold, BlockVariant, Scaffold};

fn dense_samples(eps: f64) -> (PointSet, PointSet) {
    let kx = scaffold(&[0.25, 1.75, 1.0]);
    let ky = scaffold(&[0.5, 1.5, 0.0]);
    (
        sample_scaffold(&kx, eps).unwrap(),
        sample_scaffold(&ky, eps).unwrap(),
    )
}

fn scaffold(x: &[f64]) -> Scaffold {
    build_scaffold(
        &Vector::new(x.to_vec()).unwrap(),
        2.0,
        BlockVariant::FullSquare,
    )
    .unwrap()
}

fn bench_hausdorff(c: &mut Criterion) {
    let mut group = c.benchmark_group("hausdorff_finite");
    for eps in [0.25, 0.125] {
        let (a, b) = dense_samples(eps);
        group.bench_with_input(BenchmarkId::new("seq", eps), &eps, |bch, _| {
            bch.iter(|| hausdorff_distance_finite_seq(&a, &b).unwrap())
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("par", eps), &eps, |bch, _| {
            bch.iter(|| hausdorff_distance_finite_par(&a, &b).unwrap())
        });
    }
    group.finish();
}

fn bench_lemma(c: &mut Criterion) {
    let k = scaffold(&[0.5, 1.25, 2.0, 0.0]);
    let cases = all_cases(k.dim());
    let grid_eps = 0.125;
    let mut group = c.benchmark_group("lemma_cases");
    group.bench_function("seq", |bch| {
        bch.iter(|| {
            for case in &cases {
                verify_lemma_case_seq(case, &k, grid_eps).unwrap();
            }
        })
    });
    #[cfg(feature = "parallel")]
    group.bench_function("par", |bch| {
        bch.iter(|| {
            for case in &cases {
                verify_lemma_case(case, &k, grid_eps).unwrap();
            }
        })
    });
    group.finish();
}

criterion_group!(benches, bench_hausdorff, bench_lemma);
criterion_main!(benches);
