//! Isometric embedding of finite metric spaces into (ℝⁿ, ℓ∞) and the
//! end-to-end pipeline into scaffold families.
//!
//! The embedding sends x_j to (d(x_j, x_i) − d(x_i, x_base))_i. Pairwise
//! Chebyshev distances of the images reproduce the distance matrix exactly:
//! ≤ by the triangle inequality, ≥ from the coordinate i = j.

use serde::{Deserialize, Serialize};

use crate::hausdorff::scaffold_hausdorff;
use crate::metric::{validate_metric, FiniteMetricSpace, PointSet, Vector};
use crate::scaffold::{build_scaffold, normalize, BlockVariant, Scaffold};
use crate::{Error, Result};

/// A finite metric space realized as points of (ℝⁿ, ℓ∞).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmbeddedSpace {
    pub source: FiniteMetricSpace,
    pub images: PointSet,
    pub base_index: usize,
}

/// Embeds a finite metric space into ℝⁿ with the Chebyshev metric, using
/// the first point as base.
pub fn kuratowski_embed(m: &FiniteMetricSpace) -> Result<EmbeddedSpace> {
    kuratowski_embed_with_base(m, 0)
}

/// Same embedding with an arbitrary base point; isometric for every base.
pub fn kuratowski_embed_with_base(m: &FiniteMetricSpace, base: usize) -> Result<EmbeddedSpace> {
    let n = m.len();
    if n == 0 {
        return Err(Error::EmptyPointSet);
    }
    if base >= n {
        return Err(Error::IndexOutOfRange {
            index: base,
            len: n,
        });
    }
    let violations = validate_metric(m, None);
    if !violations.is_empty() {
        return Err(Error::InvalidMetric(violations));
    }
    let images = PointSet::new(
        (0..n)
            .map(|j| {
                Vector::new(
                    (0..n)
                        .map(|i| m.dist(j, i) - m.dist(i, base))
                        .collect(),
                )
            })
            .collect::<Result<Vec<_>>>()?,
    )?;
    Ok(EmbeddedSpace {
        source: m.clone(),
        images,
        base_index: base,
    })
}

/// Result of the full pipeline: one scaffold per point plus the distance
/// matrix recovered from pairwise scaffold Hausdorff distances.
#[derive(Debug, Clone)]
pub struct EmbeddedFamily {
    pub scaffolds: Vec<Scaffold>,
    pub recovered: FiniteMetricSpace,
    pub bound: f64,
}

/// Embeds a finite metric space as a family of compact planar sets whose
/// pairwise Hausdorff distances equal the source matrix.
pub fn embed_finite_space(m: &FiniteMetricSpace, variant: BlockVariant) -> Result<EmbeddedFamily> {
    embed_finite_space_with_base(m, variant, 0)
}

pub fn embed_finite_space_with_base(
    m: &FiniteMetricSpace,
    variant: BlockVariant,
    base: usize,
) -> Result<EmbeddedFamily> {
    let embedded = kuratowski_embed_with_base(m, base)?;
    let (translated, bound) = normalize(&embedded.images)?;
    let scaffolds = translated
        .points
        .iter()
        .map(|x| build_scaffold(x, bound, variant))
        .collect::<Result<Vec<_>>>()?;
    let n = scaffolds.len();
    let mut matrix = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = scaffold_hausdorff(&scaffolds[i], &scaffolds[j])?.value;
            matrix[i][j] = d;
            matrix[j][i] = d;
        }
    }
    let recovered = FiniteMetricSpace::new(m.labels.clone(), matrix)?;
    Ok(EmbeddedFamily {
        scaffolds,
        recovered,
        bound,
    })
}
