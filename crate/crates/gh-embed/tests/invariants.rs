//! Property tests for the metric, scaffold, and solver invariants.

use proptest::prelude::*;

use gh_embed::gh::{gh_bruteforce, gh_lower_bounds};
use gh_embed::hausdorff::scaffold_hausdorff;
use gh_embed::kuratowski::kuratowski_embed;
use gh_embed::metric::{
    chebyshev_distance, euclidean_distance, hausdorff_distance_finite, validate_metric,
    FiniteMetricSpace, PointSet, Vector,
};
use gh_embed::scaffold::{build_scaffold, normalize, BlockVariant};

fn grid_coord(m: f64) -> impl Strategy<Value = f64> {
    (0..=64u32).prop_map(move |k| k as f64 * m / 64.0)
}

fn grid_vec(dim: usize, m: f64) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(grid_coord(m), dim)
}

fn any_vec(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0..100.0f64, dim)
}

fn vector(coords: Vec<f64>) -> Vector {
    Vector::new(coords).unwrap()
}

proptest! {
    #[test]
    fn chebyshev_is_a_metric(
        (a, b, c) in (1usize..6)
            .prop_flat_map(|dim| (any_vec(dim), any_vec(dim), any_vec(dim))),
    ) {
        let (a, b, c) = (vector(a), vector(b), vector(c));
        let dab = chebyshev_distance(&a, &b).unwrap();
        let dba = chebyshev_distance(&b, &a).unwrap();
        let dac = chebyshev_distance(&a, &c).unwrap();
        let dcb = chebyshev_distance(&c, &b).unwrap();
        prop_assert!(dab >= 0.0);
        prop_assert_eq!(dab, dba);
        prop_assert_eq!(chebyshev_distance(&a, &a).unwrap(), 0.0);
        prop_assert!(dab <= dac + dcb + 1e-12);
    }

    #[test]
    fn euclidean_dominates_chebyshev(a in any_vec(5), b in any_vec(5)) {
        let (a, b) = (vector(a), vector(b));
        let cheb = chebyshev_distance(&a, &b).unwrap();
        let euc = euclidean_distance(&a, &b).unwrap();
        prop_assert!(cheb <= euc + 1e-12 * (1.0 + euc));
        prop_assert!(euc <= 5f64.sqrt() * cheb + 1e-12 * (1.0 + euc));
    }

    #[test]
    fn finite_hausdorff_is_symmetric_and_zero_on_self(
        pts in prop::collection::vec(any_vec(2), 1..8),
        qts in prop::collection::vec(any_vec(2), 1..8),
    ) {
        let a = PointSet::new(pts.into_iter().map(vector).collect()).unwrap();
        let b = PointSet::new(qts.into_iter().map(vector).collect()).unwrap();
        let dab = hausdorff_distance_finite(&a, &b).unwrap();
        let dba = hausdorff_distance_finite(&b, &a).unwrap();
        prop_assert_eq!(dab, dba);
        prop_assert!(dab >= 0.0);
        prop_assert_eq!(hausdorff_distance_finite(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn scaffold_hausdorff_equals_chebyshev(
        x in grid_vec(3, 2.0),
        y in grid_vec(3, 2.0),
    ) {
        let (x, y) = (vector(x), vector(y));
        let kx = build_scaffold(&x, 2.0, BlockVariant::FullSquare).unwrap();
        let ky = build_scaffold(&y, 2.0, BlockVariant::FullSquare).unwrap();
        prop_assert_eq!(
            scaffold_hausdorff(&kx, &ky).unwrap().value,
            chebyshev_distance(&x, &y).unwrap()
        );
    }

    #[test]
    fn scaffold_hausdorff_triangle(
        x in grid_vec(2, 1.0),
        y in grid_vec(2, 1.0),
        z in grid_vec(2, 1.0),
    ) {
        let build = |v: &Vector| build_scaffold(v, 1.0, BlockVariant::Frame).unwrap();
        let (x, y, z) = (vector(x), vector(y), vector(z));
        let (kx, ky, kz) = (build(&x), build(&y), build(&z));
        let dxy = scaffold_hausdorff(&kx, &ky).unwrap().value;
        let dxz = scaffold_hausdorff(&kx, &kz).unwrap().value;
        let dzy = scaffold_hausdorff(&kz, &ky).unwrap().value;
        prop_assert!(dxy <= dxz + dzy + 1e-12);
    }

    #[test]
    fn gh_bounds_are_ordered(
        pts in prop::collection::vec(any_vec(2), 1..5),
        qts in prop::collection::vec(any_vec(2), 1..5),
    ) {
        let x = FiniteMetricSpace::from_points(
            &PointSet::new(pts.into_iter().map(vector).collect()).unwrap(),
        );
        let y = FiniteMetricSpace::from_points(
            &PointSet::new(qts.into_iter().map(vector).collect()).unwrap(),
        );
        let lower = gh_lower_bounds(&x, &y);
        let gh = gh_bruteforce(&x, &y, None).unwrap();
        let upper = x.diameter().max(y.diameter()) / 2.0;
        prop_assert!(lower <= gh + 1e-12);
        prop_assert!(gh <= upper + 1e-12);
        prop_assert_eq!(gh_bruteforce(&x, &x, None).unwrap(), 0.0);
    }

    #[test]
    fn normalize_preserves_distances_and_fits_bound(
        pts in prop::collection::vec(any_vec(3), 2..6),
    ) {
        let a = PointSet::new(pts.into_iter().map(vector).collect()).unwrap();
        let (b, bound) = normalize(&a).unwrap();
        prop_assert!(bound > 0.0);
        for p in &b.points {
            for &c in p.coords() {
                prop_assert!((0.0..=bound + 1e-12).contains(&c));
            }
        }
        for i in 0..a.len() {
            for j in 0..a.len() {
                let da = chebyshev_distance(&a.points[i], &a.points[j]).unwrap();
                let db = chebyshev_distance(&b.points[i], &b.points[j]).unwrap();
                prop_assert!((da - db).abs() <= 1e-12 * (1.0 + da));
            }
        }
    }

    #[test]
    fn kuratowski_images_are_isometric(
        pts in prop::collection::vec(any_vec(3), 1..7),
    ) {
        let space = FiniteMetricSpace::from_points(
            &PointSet::new(pts.into_iter().map(vector).collect()).unwrap(),
        );
        let e = kuratowski_embed(&space).unwrap();
        for i in 0..space.len() {
            for j in 0..space.len() {
                let d = chebyshev_distance(&e.images.points[i], &e.images.points[j]).unwrap();
                prop_assert!((d - space.dist(i, j)).abs() <= 1e-12 * (1.0 + d));
            }
        }
    }

    #[test]
    fn point_derived_matrices_are_metrics(
        pts in prop::collection::vec(any_vec(2), 1..7),
    ) {
        let space = FiniteMetricSpace::from_points(
            &PointSet::new(pts.into_iter().map(vector).collect()).unwrap(),
        );
        prop_assert!(validate_metric(&space, Some(1e-9)).is_empty());
    }
}
