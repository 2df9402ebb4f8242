//! Exact Hausdorff distance between two scaffolds sharing parameters, and
//! nearest-component queries.
//!
//! Because both scaffolds contain identical blocks, every block's directed
//! contribution is zero and only marker components matter; the directed
//! sup-inf collapses to a max over marker pairs, which equals the Chebyshev
//! distance of the source points.

use serde::{Deserialize, Serialize};

use crate::metric::{hausdorff_distance_finite, PointSet};
use crate::scaffold::{sample_scaffold, Component, Point2, Scaffold, Sign};
use crate::{Error, Result};

/// Witness for a point-to-scaffold distance query: the closest component
/// and the exact distance. Ties resolve to markers before blocks, lowest
/// index first, `+` before `−`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NearestComponentReport {
    pub query: Point2,
    pub component: Component,
    pub distance: f64,
}

/// Exact minimum distance from a planar point to a scaffold, per component.
pub fn nearest_component(p: Point2, k: &Scaffold) -> NearestComponentReport {
    let mut best = NearestComponentReport {
        query: p,
        component: Component::Marker {
            index: 0,
            sign: Sign::Plus,
        },
        distance: f64::INFINITY,
    };
    for n in 0..k.dim() {
        for sign in Sign::BOTH {
            let d = p.cheb(k.marker(n, sign).unwrap());
            if d < best.distance {
                best.component = Component::Marker { index: n, sign };
                best.distance = d;
            }
        }
    }
    for n in 0..k.dim() {
        let d = k.block_distance(p, n).unwrap();
        if d < best.distance {
            best.component = Component::Block { index: n };
            best.distance = d;
        }
    }
    best
}

/// Exact Hausdorff distance between two scaffolds plus the marker index
/// realizing it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaffoldHausdorff {
    pub value: f64,
    pub witness_marker: usize,
}

fn check_same_params(kx: &Scaffold, ky: &Scaffold) -> Result<()> {
    let (a, b) = (kx.params(), ky.params());
    if a.dim != b.dim {
        return Err(Error::ScaffoldMismatch(format!(
            "dimension {} vs {}",
            a.dim, b.dim
        )));
    }
    if a.bound != b.bound {
        return Err(Error::ScaffoldMismatch(format!(
            "bound {} vs {}",
            a.bound, b.bound
        )));
    }
    if a.variant != b.variant {
        return Err(Error::ScaffoldMismatch(format!(
            "variant {} vs {}",
            a.variant, b.variant
        )));
    }
    Ok(())
}

/// Hd(K_x, K_y), computed structurally as the max over directed
/// marker-to-scaffold distances. Equals the Chebyshev distance of the
/// source points exactly.
pub fn scaffold_hausdorff(kx: &Scaffold, ky: &Scaffold) -> Result<ScaffoldHausdorff> {
    check_same_params(kx, ky)?;
    let mut value = 0.0f64;
    let mut witness_marker = 0usize;
    for (src, dst) in [(kx, ky), (ky, kx)] {
        // identical blocks never contribute to the directed sup
        for n in 0..src.dim() {
            for g in src.block_generators(n)? {
                if dst.block_distance(g, n)? != 0.0 {
                    return Err(Error::ScaffoldMismatch(format!(
                        "block {n} geometry differs between scaffolds"
                    )));
                }
            }
        }
        for n in 0..src.dim() {
            for sign in Sign::BOTH {
                let d = nearest_component(src.marker(n, sign)?, dst).distance;
                if d > value {
                    value = d;
                    witness_marker = n;
                }
            }
        }
    }
    debug_assert_eq!(
        value,
        crate::metric::chebyshev_distance(kx.source(), ky.source())?
    );
    Ok(ScaffoldHausdorff {
        value,
        witness_marker,
    })
}

/// Sampled oracle for [`scaffold_hausdorff`]: finite Hausdorff distance
/// between eps-dense samples, within 2·eps of the exact value.
pub fn scaffold_hausdorff_sampled(kx: &Scaffold, ky: &Scaffold, eps: f64) -> Result<f64> {
    check_same_params(kx, ky)?;
    let sx: PointSet = sample_scaffold(kx, eps)?;
    let sy: PointSet = sample_scaffold(ky, eps)?;
    hausdorff_distance_finite(&sx, &sy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Vector;
    use crate::scaffold::{build_scaffold, BlockVariant};

    fn k(coords: &[f64], m: f64) -> Scaffold {
        k_var(coords, m, BlockVariant::FullSquare)
    }

    fn k_var(coords: &[f64], m: f64, variant: BlockVariant) -> Scaffold {
        build_scaffold(&Vector::new(coords.to_vec()).unwrap(), m, variant).unwrap()
    }

    #[test]
    fn nearest_component_marker_case() {
        // p = p_n^+(x) against the scaffold of y: closest is marker n of y
        let kx = k(&[1.0, 2.0], 2.0);
        let ky = k(&[0.5, 2.0], 2.0);
        let p = kx.marker(0, Sign::Plus).unwrap();
        let r = nearest_component(p, &ky);
        assert_eq!(
            r.component,
            Component::Marker {
                index: 0,
                sign: Sign::Plus
            }
        );
        assert_eq!(r.distance, 0.5);
    }

    #[test]
    fn nearest_component_inside_block() {
        let kx = k(&[1.0], 2.0);
        let r = nearest_component(Point2::new(9.0, 0.5), &kx);
        assert_eq!(r.component, Component::Block { index: 0 });
        assert_eq!(r.distance, 0.0);
    }

    #[test]
    fn nearest_component_off_scaffold() {
        let ky = k(&[0.0], 2.0);
        let r = nearest_component(Point2::new(0.0, 3.0), &ky);
        assert_eq!(
            r.component,
            Component::Marker {
                index: 0,
                sign: Sign::Plus
            }
        );
        assert_eq!(r.distance, 3.0);
    }

    #[test]
    fn hausdorff_examples() {
        let a = k(&[1.0, 2.0], 2.0);
        let b = k(&[0.0, 2.0], 2.0);
        let r = scaffold_hausdorff(&a, &b).unwrap();
        assert_eq!(r.value, 1.0);
        assert_eq!(r.witness_marker, 0);

        assert_eq!(scaffold_hausdorff(&a, &a).unwrap().value, 0.0);

        let c = k(&[2.0, 0.0], 2.0);
        assert_eq!(scaffold_hausdorff(&a, &c).unwrap().value, 2.0);
    }

    #[test]
    fn hausdorff_rejects_mismatched_params() {
        let a = k(&[1.0], 2.0);
        assert!(scaffold_hausdorff(&a, &k(&[1.0, 0.0], 2.0)).is_err());
        assert!(scaffold_hausdorff(&a, &k(&[1.0], 3.0)).is_err());
        assert!(scaffold_hausdorff(&a, &k_var(&[1.0], 2.0, BlockVariant::Frame)).is_err());
    }

    #[test]
    fn sampled_within_two_eps() {
        let a = k(&[1.0, 2.0], 2.0);
        let b = k(&[0.0, 2.0], 2.0);
        let exact = scaffold_hausdorff(&a, &b).unwrap().value;
        for eps in [1.0, 0.5, 0.25] {
            let sampled = scaffold_hausdorff_sampled(&a, &b, eps).unwrap();
            assert!(
                (sampled - exact).abs() <= 2.0 * eps,
                "eps {eps}: sampled {sampled} vs exact {exact}"
            );
        }
        assert_eq!(scaffold_hausdorff_sampled(&a, &a, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn variant_invariance() {
        for variant in BlockVariant::ALL {
            let a = k_var(&[1.0, 2.0], 2.0, variant);
            let b = k_var(&[2.0, 0.0], 2.0, variant);
            assert_eq!(scaffold_hausdorff(&a, &b).unwrap().value, 2.0);
        }
    }
}
