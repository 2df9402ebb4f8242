//! Embedding bounded subsets of (ℝ^N, Chebyshev) into the Gromov-Hausdorff
//! space, numerically certified.
//!
//! The library builds, for each point `x` of a bounded set, a compact planar
//! scaffold `K_x` (marker pairs plus rigid spacer blocks) whose pairwise
//! Hausdorff distances reproduce the Chebyshev distances of the source points
//! exactly. On top of that sit:
//!
//! - [`metric`]: Chebyshev/Euclidean distances, finite-set Hausdorff distance,
//!   distance-matrix validation, bilipschitz checks.
//! - [`scaffold`]: scaffold construction, normalization, dense sampling, and
//!   the block-shape variants.
//! - [`lemma`]: closed-form component distances paired with brute-force grid
//!   oracles.
//! - [`hausdorff`]: exact scaffold-to-scaffold Hausdorff distance and
//!   nearest-component queries.
//! - [`gh`]: brute-force Gromov-Hausdorff distance over correspondences,
//!   ε-isometry checks, and the component-map analyzer.
//! - [`kuratowski`]: isometric embedding of finite metric spaces into
//!   (ℝⁿ, ℓ∞) and the end-to-end pipeline into scaffolds.
//! - [`verify`]: seeded randomized verification campaigns with replayable
//!   failure witnesses.
//!
//! With the `parallel` feature (on by default) the heavy inner loops run on
//! rayon; without it everything falls back to sequential code with identical
//! results.

use thiserror::Error;

pub mod gh;
pub mod hausdorff;
pub mod kuratowski;
pub mod lemma;
pub mod metric;
pub mod scaffold;
pub mod svg;
pub mod verify;

pub use gh::{Correspondence, EpsIsometryReport};
pub use hausdorff::{NearestComponentReport, ScaffoldHausdorff};
pub use kuratowski::EmbeddedSpace;
pub use metric::{FiniteMetricSpace, MetricViolation, PointSet, Vector};
pub use scaffold::{BlockVariant, Point2, Scaffold, ScaffoldParams};

/// Default comparison tolerance for metric-matrix validation.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("vector must have at least one coordinate")]
    EmptyVector,
    #[error("coordinates must be finite, got {value}")]
    NonFiniteCoordinate { value: f64 },
    #[error("point set must be non-empty")]
    EmptyPointSet,
    #[error("matrix is not square: {rows} rows but row {row} has {cols} entries")]
    NonSquareMatrix { rows: usize, row: usize, cols: usize },
    #[error("{labels} labels for a {size}x{size} matrix")]
    LabelCountMismatch { labels: usize, size: usize },
    #[error("matrix is not a metric: {0:?}")]
    InvalidMetric(Vec<MetricViolation>),
    #[error("coordinate {index} = {value} outside [0, {bound}]")]
    CoordinateOutOfRange { index: usize, value: f64, bound: f64 },
    #[error("bound M must be positive, got {0}")]
    NonPositiveBound(f64),
    #[error("sampling resolution must be positive, got {0}")]
    NonPositiveEps(f64),
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("indices must differ, both are {0}")]
    SameIndex(usize),
    #[error("scaffold parameters differ: {0}")]
    ScaffoldMismatch(String),
    #[error("instance size {size} exceeds enumeration budget {budget}")]
    BudgetExceeded { size: usize, budget: usize },
    #[error("correspondence is not bi-surjective: {side} element {index} uncovered")]
    NotBisurjective { side: &'static str, index: usize },
    #[error("map must be total: {expected} source points, {got} images")]
    MapNotTotal { expected: usize, got: usize },
    #[error("map image {image} out of range (target has {len} points)")]
    MapImageOutOfRange { image: usize, len: usize },
    #[error("samples do not match scaffolds: {0}")]
    SampleMismatch(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
