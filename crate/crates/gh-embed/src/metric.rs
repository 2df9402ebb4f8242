//! Foundational metric types and distance computations.

use serde::{Deserialize, Serialize};

use crate::{Error, Result, DEFAULT_TOLERANCE};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// A point of ℝ^N, carried around with the Chebyshev metric in mind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector {
    coords: Vec<f64>,
}

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyVector);
        }
        if let Some(&value) = coords.iter().find(|c| !c.is_finite()) {
            return Err(Error::NonFiniteCoordinate { value });
        }
        Ok(Vector { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Re-validates invariants after deserialization.
    pub fn validate(&self) -> Result<()> {
        Self::new(self.coords.clone()).map(|_| ())
    }
}

impl std::ops::Index<usize> for Vector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.coords[i]
    }
}

/// A non-empty finite set of points of uniform dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    pub dim: usize,
    pub points: Vec<Vector>,
}

impl PointSet {
    pub fn new(points: Vec<Vector>) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptyPointSet)?.dim();
        for p in &points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch {
                    left: dim,
                    right: p.dim(),
                });
            }
        }
        Ok(PointSet { dim, points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let rebuilt = Self::new(self.points.clone())?;
        if rebuilt.dim != self.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rebuilt.dim,
            });
        }
        for p in &self.points {
            p.validate()?;
        }
        Ok(())
    }

    /// Diameter under the Chebyshev metric.
    pub fn diameter(&self) -> f64 {
        let mut d = 0.0f64;
        for (i, p) in self.points.iter().enumerate() {
            for q in &self.points[i + 1..] {
                d = d.max(chebyshev_distance(p, q).unwrap());
            }
        }
        d
    }
}

/// A finite metric space given by labels and a symmetric distance matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteMetricSpace {
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
}

impl FiniteMetricSpace {
    /// Builds the space, checking shape only; metric axioms are checked
    /// separately by [`validate_metric`].
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<f64>>) -> Result<Self> {
        let rows = matrix.len();
        for (row, r) in matrix.iter().enumerate() {
            if r.len() != rows {
                return Err(Error::NonSquareMatrix {
                    rows,
                    row,
                    cols: r.len(),
                });
            }
        }
        if labels.len() != rows {
            return Err(Error::LabelCountMismatch {
                labels: labels.len(),
                size: rows,
            });
        }
        Ok(FiniteMetricSpace { labels, matrix })
    }

    /// Space of pairwise Chebyshev distances of a point set. Always a valid
    /// metric.
    pub fn from_points(ps: &PointSet) -> Self {
        let n = ps.len();
        let mut matrix = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = chebyshev_distance(&ps.points[i], &ps.points[j]).unwrap();
                matrix[i][j] = d;
                matrix[j][i] = d;
            }
        }
        let labels = (0..n).map(|i| format!("x{i}")).collect();
        FiniteMetricSpace { labels, matrix }
    }

    pub fn len(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.is_empty()
    }

    pub fn dist(&self, i: usize, j: usize) -> f64 {
        self.matrix[i][j]
    }

    pub fn diameter(&self) -> f64 {
        self.matrix
            .iter()
            .flatten()
            .fold(0.0f64, |acc, &d| acc.max(d))
    }
}

/// A single failed metric axiom, with the witnessing indices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MetricViolation {
    NonzeroDiagonal { i: usize, value: f64 },
    Asymmetric { i: usize, j: usize },
    Negative { i: usize, j: usize, value: f64 },
    Triangle { i: usize, j: usize, via: usize },
}

/// Chebyshev (ℓ∞) distance: max over coordinates of |x_n − y_n|.
pub fn chebyshev_distance(x: &Vector, y: &Vector) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(x.coords()
        .iter()
        .zip(y.coords())
        .fold(0.0f64, |acc, (a, b)| acc.max((a - b).abs())))
}

/// Euclidean (ℓ2) distance.
pub fn euclidean_distance(x: &Vector, y: &Vector) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        });
    }
    Ok(x.coords()
        .iter()
        .zip(y.coords())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt())
}

/// Checks the bilipschitz sandwich d^N ≤ d_Euclid ≤ √N·d^N for one pair.
/// Both flags hold for every pair up to floating-point tolerance.
pub fn check_bilipschitz(x: &Vector, y: &Vector) -> Result<(bool, bool)> {
    let cheb = chebyshev_distance(x, y)?;
    let euc = euclidean_distance(x, y)?;
    let tol = 1e-12 * (1.0 + euc.abs());
    let lower_ok = cheb <= euc + tol;
    let upper_ok = euc <= (x.dim() as f64).sqrt() * cheb + tol;
    Ok((lower_ok, upper_ok))
}

fn directed_hausdorff_seq(a: &PointSet, b: &PointSet) -> f64 {
    a.points
        .iter()
        .map(|p| {
            b.points
                .iter()
                .map(|q| chebyshev_distance(p, q).unwrap())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0f64, f64::max)
}

#[cfg(feature = "parallel")]
fn directed_hausdorff_par(a: &PointSet, b: &PointSet) -> f64 {
    a.points
        .par_iter()
        .map(|p| {
            b.points
                .iter()
                .map(|q| chebyshev_distance(p, q).unwrap())
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0f64, f64::max)
}

/// Hausdorff distance between two finite point sets under the Chebyshev
/// metric: the larger of the two directed max-min distances.
pub fn hausdorff_distance_finite(a: &PointSet, b: &PointSet) -> Result<f64> {
    check_hausdorff_inputs(a, b)?;
    #[cfg(feature = "parallel")]
    {
        Ok(directed_hausdorff_par(a, b).max(directed_hausdorff_par(b, a)))
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(directed_hausdorff_seq(a, b).max(directed_hausdorff_seq(b, a)))
    }
}

/// Sequential implementation of [`hausdorff_distance_finite`], kept public
/// for benchmarking against the parallel path.
pub fn hausdorff_distance_finite_seq(a: &PointSet, b: &PointSet) -> Result<f64> {
    check_hausdorff_inputs(a, b)?;
    Ok(directed_hausdorff_seq(a, b).max(directed_hausdorff_seq(b, a)))
}

#[cfg(feature = "parallel")]
pub fn hausdorff_distance_finite_par(a: &PointSet, b: &PointSet) -> Result<f64> {
    check_hausdorff_inputs(a, b)?;
    Ok(directed_hausdorff_par(a, b).max(directed_hausdorff_par(b, a)))
}

fn check_hausdorff_inputs(a: &PointSet, b: &PointSet) -> Result<()> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(())
}

/// Exhaustive check of the metric axioms, default tolerance
/// [`DEFAULT_TOLERANCE`]. Empty result means the matrix is a metric.
pub fn validate_metric(m: &FiniteMetricSpace, tolerance: Option<f64>) -> Vec<MetricViolation> {
    let tol = tolerance.unwrap_or(DEFAULT_TOLERANCE);
    let n = m.len();
    let mut out = Vec::new();
    for i in 0..n {
        if m.matrix[i][i].abs() > tol {
            out.push(MetricViolation::NonzeroDiagonal {
                i,
                value: m.matrix[i][i],
            });
        }
        for j in 0..n {
            if (m.matrix[i][j] - m.matrix[j][i]).abs() > tol && i < j {
                out.push(MetricViolation::Asymmetric { i, j });
            }
            if m.matrix[i][j] < -tol && i < j {
                out.push(MetricViolation::Negative {
                    i,
                    j,
                    value: m.matrix[i][j],
                });
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for k in 0..n {
                if k == i || k == j {
                    continue;
                }
                if m.matrix[i][j] > m.matrix[i][k] + m.matrix[k][j] + tol && i < j {
                    out.push(MetricViolation::Triangle { i, j, via: k });
                }
            }
        }
    }
    out
}
