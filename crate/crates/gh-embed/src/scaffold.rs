//! Construction of the compact planar scaffold `K_x` encoding a point
//! x ∈ [0,M]^N: one marker pair per coordinate plus rigid spacer blocks.
//!
//! Block indices are 0-based throughout: block `n` is anchored at abscissa
//! `C + D·n` and marker pair `n` sits at abscissa `D·n`, with `C = 4M` and
//! `D = 10M`.

use serde::{Deserialize, Serialize};

use crate::metric::{FiniteMetricSpace, PointSet, Vector};
use crate::{Error, Result};

/// A point of the plane, compared under the Chebyshev metric.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    /// Chebyshev distance in the plane.
    pub fn cheb(self, other: Point2) -> f64 {
        (self.x - other.x).abs().max((self.y - other.y).abs())
    }

    pub fn to_vector(self) -> Vector {
        Vector::new(vec![self.x, self.y]).unwrap()
    }
}

/// Shape of the spacer blocks. The full square is the default; the other
/// three are the thinned replacements that leave all relevant distances
/// unchanged (only marker points and block extremes are ever probed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockVariant {
    FullSquare,
    Frame,
    FourCorners,
    ThreePoints,
}

impl BlockVariant {
    pub const ALL: [BlockVariant; 4] = [
        BlockVariant::FullSquare,
        BlockVariant::Frame,
        BlockVariant::FourCorners,
        BlockVariant::ThreePoints,
    ];
}

impl std::fmt::Display for BlockVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            BlockVariant::FullSquare => "full-square",
            BlockVariant::Frame => "frame",
            BlockVariant::FourCorners => "four-corners",
            BlockVariant::ThreePoints => "three-points",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for BlockVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full-square" => Ok(BlockVariant::FullSquare),
            "frame" => Ok(BlockVariant::Frame),
            "four-corners" => Ok(BlockVariant::FourCorners),
            "three-points" => Ok(BlockVariant::ThreePoints),
            other => Err(Error::InvalidConfig(format!(
                "unknown variant {other:?}; expected full-square, frame, four-corners or three-points"
            ))),
        }
    }
}

/// Scaffold constants: C = 4M and D = C + 2M + C = 10M.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScaffoldParams {
    pub dim: usize,
    pub bound: f64,
    pub c: f64,
    pub d: f64,
    pub variant: BlockVariant,
}

impl ScaffoldParams {
    pub fn new(dim: usize, bound: f64, variant: BlockVariant) -> Result<Self> {
        if bound <= 0.0 || !bound.is_finite() {
            return Err(Error::NonPositiveBound(bound));
        }
        if dim == 0 {
            return Err(Error::EmptyVector);
        }
        let c = 4.0 * bound;
        let d = c + 2.0 * bound + c;
        Ok(ScaffoldParams {
            dim,
            bound,
            c,
            d,
            variant,
        })
    }
}

/// One marker pair p_n^± = (D·n, ±x_n).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarkerPair {
    pub plus: Point2,
    pub minus: Point2,
}

/// One spacer block, occupying abscissas [x0, x0 + 2M] and ordinates
/// [−M, M] (or the variant's subset thereof).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub index: usize,
    pub x0: f64,
}

/// Sign selector for a marker within its pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Which component of a scaffold a planar point belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Component {
    Marker { index: usize, sign: Sign },
    Block { index: usize },
}

/// The compact set K_x together with its parameters and source point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "ScaffoldFile", try_from = "ScaffoldFile")]
pub struct Scaffold {
    params: ScaffoldParams,
    source: Vector,
    markers: Vec<MarkerPair>,
    blocks: Vec<Block>,
}

/// On-disk form: geometry is recomputed on load.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScaffoldFile {
    pub dim: usize,
    #[serde(rename = "M")]
    pub m: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub variant: BlockVariant,
    pub x: Vec<f64>,
}

impl From<Scaffold> for ScaffoldFile {
    fn from(k: Scaffold) -> Self {
        ScaffoldFile {
            dim: k.params.dim,
            m: k.params.bound,
            c: k.params.c,
            d: k.params.d,
            variant: k.params.variant,
            x: k.source.coords().to_vec(),
        }
    }
}

impl TryFrom<ScaffoldFile> for Scaffold {
    type Error = Error;
    fn try_from(f: ScaffoldFile) -> Result<Self> {
        if f.x.len() != f.dim {
            return Err(Error::DimensionMismatch {
                left: f.dim,
                right: f.x.len(),
            });
        }
        let k = build_scaffold(&Vector::new(f.x)?, f.m, f.variant)?;
        if (k.params.c - f.c).abs() > 1e-9 || (k.params.d - f.d).abs() > 1e-9 {
            return Err(Error::InvalidConfig(format!(
                "inconsistent constants: expected C={}, D={} for M={}",
                k.params.c, k.params.d, f.m
            )));
        }
        Ok(k)
    }
}

impl Scaffold {
    pub fn params(&self) -> &ScaffoldParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.params.dim
    }

    pub fn bound(&self) -> f64 {
        self.params.bound
    }

    pub fn variant(&self) -> BlockVariant {
        self.params.variant
    }

    pub fn source(&self) -> &Vector {
        &self.source
    }

    pub fn markers(&self) -> &[MarkerPair] {
        &self.markers
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn marker(&self, n: usize, sign: Sign) -> Result<Point2> {
        let pair = self
            .markers
            .get(n)
            .ok_or(Error::IndexOutOfRange {
                index: n,
                len: self.markers.len(),
            })?;
        Ok(match sign {
            Sign::Plus => pair.plus,
            Sign::Minus => pair.minus,
        })
    }

    /// Abscissa interval [x0, x1] of block `n`.
    pub fn block_interval(&self, n: usize) -> Result<(f64, f64)> {
        let b = self.blocks.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            len: self.blocks.len(),
        })?;
        Ok((b.x0, b.x0 + 2.0 * self.params.bound))
    }

    /// The four square corners of block `n` (three points for the
    /// three-points variant).
    pub fn block_generators(&self, n: usize) -> Result<Vec<Point2>> {
        let (x0, x1) = self.block_interval(n)?;
        let m = self.params.bound;
        Ok(match self.params.variant {
            BlockVariant::ThreePoints => vec![
                Point2::new(x0, -m),
                Point2::new(x0, m),
                Point2::new(x1, 0.0),
            ],
            _ => vec![
                Point2::new(x0, -m),
                Point2::new(x0, m),
                Point2::new(x1, -m),
                Point2::new(x1, m),
            ],
        })
    }

    /// Exact Chebyshev distance from a planar point to block `n`,
    /// respecting the block variant.
    pub fn block_distance(&self, p: Point2, n: usize) -> Result<f64> {
        let (x0, x1) = self.block_interval(n)?;
        let m = self.params.bound;
        let d = match self.params.variant {
            BlockVariant::FullSquare => box_distance(p, x0, x1, -m, m),
            BlockVariant::Frame => {
                if p.x >= x0 && p.x <= x1 && p.y >= -m && p.y <= m {
                    // interior: nearest frame point is reached by a pure
                    // axis move to the closest edge
                    (p.x - x0).min(x1 - p.x).min(p.y + m).min(m - p.y)
                } else {
                    box_distance(p, x0, x1, -m, m)
                }
            }
            BlockVariant::FourCorners | BlockVariant::ThreePoints => self
                .block_generators(n)?
                .into_iter()
                .map(|q| p.cheb(q))
                .fold(f64::INFINITY, f64::min),
        };
        Ok(d)
    }
}

fn box_distance(p: Point2, x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    let dx = (x0 - p.x).max(p.x - x1).max(0.0);
    let dy = (y0 - p.y).max(p.y - y1).max(0.0);
    dx.max(dy)
}

/// Translates a point set so every coordinate lies in [0, M] and returns
/// the resulting bound M. Translation preserves all pairwise Chebyshev
/// distances exactly. A fully degenerate set gets M = 1 by convention.
pub fn normalize(a: &PointSet) -> Result<(PointSet, f64)> {
    if a.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let dim = a.dim;
    let mut mins = vec![f64::INFINITY; dim];
    for p in &a.points {
        for (i, &c) in p.coords().iter().enumerate() {
            mins[i] = mins[i].min(c);
        }
    }
    let mut bound = 0.0f64;
    let mut translated = Vec::with_capacity(a.len());
    for p in &a.points {
        let coords: Vec<f64> = p
            .coords()
            .iter()
            .zip(&mins)
            .map(|(c, min)| c - min)
            .collect();
        for &c in &coords {
            bound = bound.max(c);
        }
        translated.push(Vector::new(coords)?);
    }
    if bound == 0.0 {
        bound = 1.0;
    }
    Ok((PointSet::new(translated)?, bound))
}

/// Builds K_x for x ∈ [0,M]^N.
pub fn build_scaffold(x: &Vector, bound: f64, variant: BlockVariant) -> Result<Scaffold> {
    let params = ScaffoldParams::new(x.dim(), bound, variant)?;
    for (index, &value) in x.coords().iter().enumerate() {
        if !(0.0..=bound).contains(&value) {
            return Err(Error::CoordinateOutOfRange {
                index,
                value,
                bound,
            });
        }
    }
    let markers = (0..params.dim)
        .map(|n| {
            let abscissa = params.d * n as f64;
            MarkerPair {
                plus: Point2::new(abscissa, x[n]),
                minus: Point2::new(abscissa, -x[n]),
            }
        })
        .collect();
    let blocks = (0..params.dim)
        .map(|n| Block {
            index: n,
            x0: params.c + params.d * n as f64,
        })
        .collect();
    Ok(Scaffold {
        params,
        source: x.clone(),
        markers,
        blocks,
    })
}

/// A finite sample of a scaffold with every point tagged by its source
/// component. Marker points always come first (index order, + then −),
/// followed by block points in block order.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaffoldSample {
    pub points: Vec<Point2>,
    pub components: Vec<Component>,
}

impl ScaffoldSample {
    /// The sample as a plain planar point set, exact duplicates removed.
    pub fn to_point_set(&self) -> PointSet {
        let mut seen: Vec<Point2> = Vec::new();
        for &p in &self.points {
            if !seen.contains(&p) {
                seen.push(p);
            }
        }
        PointSet::new(seen.into_iter().map(Point2::to_vector).collect()).unwrap()
    }

    /// Pairwise Chebyshev distances of the sample points.
    pub fn to_metric_space(&self) -> FiniteMetricSpace {
        let n = self.points.len();
        let mut matrix = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = self.points[i].cheb(self.points[j]);
                matrix[i][j] = d;
                matrix[j][i] = d;
            }
        }
        let labels = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| match c {
                Component::Marker { index, sign } => format!("p{index}{sign}"),
                Component::Block { index } => format!("b{index}#{i}"),
            })
            .collect();
        FiniteMetricSpace { labels, matrix }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Samples a scaffold with covering radius ≤ eps, keeping component tags.
/// All markers and all variant generator points are always included.
pub fn sample_scaffold_classified(k: &Scaffold, eps: f64) -> Result<ScaffoldSample> {
    if eps <= 0.0 || !eps.is_finite() {
        return Err(Error::NonPositiveEps(eps));
    }
    let mut points = Vec::new();
    let mut components = Vec::new();
    for (n, pair) in k.markers().iter().enumerate() {
        points.push(pair.plus);
        components.push(Component::Marker {
            index: n,
            sign: Sign::Plus,
        });
        points.push(pair.minus);
        components.push(Component::Marker {
            index: n,
            sign: Sign::Minus,
        });
    }
    for n in 0..k.dim() {
        for p in block_sample(k, n, eps)? {
            points.push(p);
            components.push(Component::Block { index: n });
        }
    }
    Ok(ScaffoldSample { points, components })
}

/// Finite subset of block `n` with covering radius ≤ eps, always containing
/// the variant's generator points.
pub fn block_sample(k: &Scaffold, n: usize, eps: f64) -> Result<Vec<Point2>> {
    if eps <= 0.0 || !eps.is_finite() {
        return Err(Error::NonPositiveEps(eps));
    }
    let m = k.bound();
    let (x0, x1) = k.block_interval(n)?;
    let mut block_points: Vec<Point2> = Vec::new();
    let push = |p: Point2, acc: &mut Vec<Point2>| {
        if !acc.contains(&p) {
            acc.push(p);
        }
    };
    match k.variant() {
        BlockVariant::FourCorners | BlockVariant::ThreePoints => {
            for p in k.block_generators(n)? {
                push(p, &mut block_points);
            }
        }
        BlockVariant::FullSquare => {
            let steps = ((2.0 * m / eps).ceil() as usize).max(1);
            let h = 2.0 * m / steps as f64;
            for i in 0..=steps {
                for j in 0..=steps {
                    push(
                        Point2::new(x0 + h * i as f64, -m + h * j as f64),
                        &mut block_points,
                    );
                }
            }
        }
        BlockVariant::Frame => {
            let steps = ((2.0 * m / eps).ceil() as usize).max(1);
            let h = 2.0 * m / steps as f64;
            for i in 0..=steps {
                let t = h * i as f64;
                push(Point2::new(x0 + t, -m), &mut block_points);
                push(Point2::new(x0 + t, m), &mut block_points);
                push(Point2::new(x0, -m + t), &mut block_points);
                push(Point2::new(x1, -m + t), &mut block_points);
            }
        }
    }
    Ok(block_points)
}

/// Samples a scaffold with covering radius ≤ eps as a plain point set.
pub fn sample_scaffold(k: &Scaffold, eps: f64) -> Result<PointSet> {
    Ok(sample_scaffold_classified(k, eps)?.to_point_set())
}
