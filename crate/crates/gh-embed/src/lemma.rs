//! Closed forms for the component distances of a scaffold, each paired with
//! a brute-force grid oracle.
//!
//! These seven facts are the load-bearing arithmetic of the whole
//! construction (indices 0-based here, so block `n` is anchored at
//! `C + D·n`):
//!
//! - (1-1) marker pair: d(p_n^+, p_n^−) = 2·x_n ≤ 2M
//! - (1-2) cross markers: d(p_n^s, p_m^t) = D|n−m| for n ≠ m
//! - (2-1) marker to later block: dist(p_n^±, □(m)) = C + D(m−n) for n ≤ m
//! - (2-2) marker to earlier block: dist(p_n^±, □(m)) = D(n−m) − C − 2M
//! - (3)   block gap: dist(□(n), □(m)) = D|n−m| − 2M for n ≠ m
//! - (4)   block span: sup d(P,Q) over □(n)×□(m) = D|n−m| + 2M
//! - (5)   marker to previous block: sup d(p_n^±, Q) over □(n−1) = D − C

use serde::{Deserialize, Serialize};

use crate::scaffold::{block_sample, Point2, Scaffold, Sign};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The seven Lemma items.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaItem {
    /// (1-1)
    MarkerPair,
    /// (1-2)
    CrossMarker,
    /// (2-1)
    MarkerBlockForward,
    /// (2-2)
    MarkerBlockBackward,
    /// (3)
    BlockGap,
    /// (4)
    BlockSpan,
    /// (5)
    MarkerPrevBlock,
}

impl LemmaItem {
    pub const ALL: [LemmaItem; 7] = [
        LemmaItem::MarkerPair,
        LemmaItem::CrossMarker,
        LemmaItem::MarkerBlockForward,
        LemmaItem::MarkerBlockBackward,
        LemmaItem::BlockGap,
        LemmaItem::BlockSpan,
        LemmaItem::MarkerPrevBlock,
    ];
}

impl std::fmt::Display for LemmaItem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            LemmaItem::MarkerPair => "1-1",
            LemmaItem::CrossMarker => "1-2",
            LemmaItem::MarkerBlockForward => "2-1",
            LemmaItem::MarkerBlockBackward => "2-2",
            LemmaItem::BlockGap => "3",
            LemmaItem::BlockSpan => "4",
            LemmaItem::MarkerPrevBlock => "5",
        };
        f.write_str(s)
    }
}

/// One instance of a Lemma item: indices plus sign selectors where the item
/// uses them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaCase {
    pub item: LemmaItem,
    pub n: usize,
    pub m: usize,
    pub s: Sign,
    pub t: Sign,
}

/// Outcome of checking one case against its grid oracle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub closed_form: f64,
    pub sampled: f64,
    pub agree: bool,
    /// True when no grid was involved and the comparison is exact.
    pub exact: bool,
}

fn check_index(k: &Scaffold, n: usize) -> Result<()> {
    if n >= k.dim() {
        return Err(Error::IndexOutOfRange {
            index: n,
            len: k.dim(),
        });
    }
    Ok(())
}

/// (1-1) Exact distance within marker pair `n`: 2·x_n, never above 2M.
pub fn marker_pair_distance(k: &Scaffold, n: usize) -> Result<f64> {
    check_index(k, n)?;
    Ok(2.0 * k.source()[n])
}

/// (1-2) Distance between markers of distinct pairs: D·|n−m|, independent
/// of the signs.
pub fn cross_marker_distance(k: &Scaffold, n: usize, m: usize, s: Sign, t: Sign) -> Result<f64> {
    check_index(k, n)?;
    check_index(k, m)?;
    if n == m {
        return Err(Error::SameIndex(n));
    }
    let closed = k.params().d * n.abs_diff(m) as f64;
    debug_assert_eq!(closed, k.marker(n, s)?.cheb(k.marker(m, t)?));
    let _ = (s, t);
    Ok(closed)
}

/// (2-1)/(2-2) Distance from marker pair `n` to block `m`.
pub fn marker_block_distance(k: &Scaffold, n: usize, m: usize) -> Result<f64> {
    check_index(k, n)?;
    check_index(k, m)?;
    let p = k.params();
    Ok(if n <= m {
        p.c + p.d * (m - n) as f64
    } else {
        p.d * (n - m) as f64 - p.c - 2.0 * p.bound
    })
}

/// (3) Gap between distinct blocks: D|n−m| − 2M.
pub fn block_block_distance(k: &Scaffold, n: usize, m: usize) -> Result<f64> {
    check_index(k, n)?;
    check_index(k, m)?;
    if n == m {
        return Err(Error::SameIndex(n));
    }
    let p = k.params();
    Ok(p.d * n.abs_diff(m) as f64 - 2.0 * p.bound)
}

/// (4) Upper bound D|n−m| + 2M on distances between points of blocks `n`
/// and `m`; the supremum attains it at the extreme corners.
pub fn block_block_upper(k: &Scaffold, n: usize, m: usize) -> Result<f64> {
    check_index(k, n)?;
    check_index(k, m)?;
    let p = k.params();
    Ok(p.d * n.abs_diff(m) as f64 + 2.0 * p.bound)
}

/// True supremum of d(P,Q) over blocks `n` and `m`, from the generator
/// points (the max over a block of a Chebyshev distance sits at a corner).
pub fn block_block_sup(k: &Scaffold, n: usize, m: usize) -> Result<f64> {
    let a = k.block_generators(n)?;
    let b = k.block_generators(m)?;
    Ok(a.iter()
        .flat_map(|p| b.iter().map(move |q| p.cheb(*q)))
        .fold(0.0f64, f64::max))
}

/// (5) Upper bound D − C on distances from marker pair `n` to the previous
/// block; attained at the block's left edge. Requires n ≥ 1.
pub fn marker_prevblock_upper(k: &Scaffold, n: usize) -> Result<f64> {
    check_index(k, n)?;
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            len: k.dim(),
        });
    }
    let p = k.params();
    Ok(p.d - p.c)
}

/// True supremum of d(p_n^sign, Q) over block n−1.
pub fn marker_prevblock_sup(k: &Scaffold, n: usize, sign: Sign) -> Result<f64> {
    if n == 0 {
        return Err(Error::IndexOutOfRange {
            index: 0,
            len: k.dim(),
        });
    }
    let p = k.marker(n, sign)?;
    Ok(k.block_generators(n - 1)?
        .iter()
        .map(|q| p.cheb(*q))
        .fold(0.0f64, f64::max))
}

/// The exact inequality chains the proof leans on, as identities in M:
/// C − 2M = 2M, D − C − 2M = 4M ≥ C − 2M, D − 2M ≥ C, 2D − 2M > C + D.
pub fn proof_chain_identities(m: f64) -> bool {
    let c = 4.0 * m;
    let d = c + 2.0 * m + c;
    c - 2.0 * m == 2.0 * m
        && d - c - 2.0 * m == 4.0 * m
        && d - c - 2.0 * m >= c - 2.0 * m
        && d - 2.0 * m >= c
        && 2.0 * d - 2.0 * m > c + d
}

enum Extremum {
    Min,
    Max,
}

fn cross_extremum_seq(a: &[Point2], b: &[Point2], which: &Extremum) -> f64 {
    let per_point = |p: &Point2| {
        b.iter().map(|q| p.cheb(*q)).fold(
            match which {
                Extremum::Min => f64::INFINITY,
                Extremum::Max => f64::NEG_INFINITY,
            },
            |acc, d| match which {
                Extremum::Min => acc.min(d),
                Extremum::Max => acc.max(d),
            },
        )
    };
    a.iter()
        .map(per_point)
        .fold(match which {
            Extremum::Min => f64::INFINITY,
            Extremum::Max => f64::NEG_INFINITY,
        }, |acc, d| match which {
            Extremum::Min => acc.min(d),
            Extremum::Max => acc.max(d),
        })
}

#[cfg(feature = "parallel")]
fn cross_extremum_par(a: &[Point2], b: &[Point2], which: &Extremum) -> f64 {
    a.par_iter()
        .map(|p| {
            b.iter().map(|q| p.cheb(*q)).fold(
                match which {
                    Extremum::Min => f64::INFINITY,
                    Extremum::Max => f64::NEG_INFINITY,
                },
                |acc, d| match which {
                    Extremum::Min => acc.min(d),
                    Extremum::Max => acc.max(d),
                },
            )
        })
        .reduce(
            || match which {
                Extremum::Min => f64::INFINITY,
                Extremum::Max => f64::NEG_INFINITY,
            },
            |x, y| match which {
                Extremum::Min => x.min(y),
                Extremum::Max => x.max(y),
            },
        )
}

fn cross_extremum(a: &[Point2], b: &[Point2], which: Extremum) -> f64 {
    #[cfg(feature = "parallel")]
    {
        cross_extremum_par(a, b, &which)
    }
    #[cfg(not(feature = "parallel"))]
    {
        cross_extremum_seq(a, b, &which)
    }
}

/// Checks one Lemma case against an exhaustive min/max over grids of
/// spacing ≤ grid_eps on the two components the case names. Marker-only
/// items are compared exactly; grid-backed ones within grid_eps.
pub fn verify_lemma_case(case: &LemmaCase, k: &Scaffold, grid_eps: f64) -> Result<LemmaCheck> {
    verify_impl(case, k, grid_eps, cross_extremum)
}

/// Sequential variant of [`verify_lemma_case`], kept public for benchmarks.
pub fn verify_lemma_case_seq(case: &LemmaCase, k: &Scaffold, grid_eps: f64) -> Result<LemmaCheck> {
    verify_impl(case, k, grid_eps, |a, b, w| cross_extremum_seq(a, b, &w))
}

fn verify_impl(
    case: &LemmaCase,
    k: &Scaffold,
    grid_eps: f64,
    extremum: impl Fn(&[Point2], &[Point2], Extremum) -> f64,
) -> Result<LemmaCheck> {
    if grid_eps <= 0.0 || !grid_eps.is_finite() {
        return Err(Error::NonPositiveEps(grid_eps));
    }
    let &LemmaCase { item, n, m, s, t } = case;
    let (closed_form, sampled, exact) = match item {
        LemmaItem::MarkerPair => {
            let closed = marker_pair_distance(k, n)?;
            let sampled = k.marker(n, Sign::Plus)?.cheb(k.marker(n, Sign::Minus)?);
            (closed, sampled, true)
        }
        LemmaItem::CrossMarker => {
            let closed = cross_marker_distance(k, n, m, s, t)?;
            let sampled = k.marker(n, s)?.cheb(k.marker(m, t)?);
            (closed, sampled, true)
        }
        LemmaItem::MarkerBlockForward | LemmaItem::MarkerBlockBackward => {
            if item == LemmaItem::MarkerBlockForward && n > m {
                return Err(Error::InvalidConfig(format!(
                    "item 2-1 needs n <= m, got n={n}, m={m}"
                )));
            }
            if item == LemmaItem::MarkerBlockBackward && n < m + 1 {
                return Err(Error::InvalidConfig(format!(
                    "item 2-2 needs m+1 <= n, got n={n}, m={m}"
                )));
            }
            let closed = marker_block_distance(k, n, m)?;
            let marker = [k.marker(n, s)?];
            let grid = block_sample(k, m, grid_eps)?;
            (closed, extremum(&marker, &grid, Extremum::Min), false)
        }
        LemmaItem::BlockGap => {
            let closed = block_block_distance(k, n, m)?;
            let a = block_sample(k, n, grid_eps)?;
            let b = block_sample(k, m, grid_eps)?;
            (closed, extremum(&a, &b, Extremum::Min), false)
        }
        LemmaItem::BlockSpan => {
            let closed = block_block_upper(k, n, m)?;
            let a = block_sample(k, n, grid_eps)?;
            let b = block_sample(k, m, grid_eps)?;
            (closed, extremum(&a, &b, Extremum::Max), false)
        }
        LemmaItem::MarkerPrevBlock => {
            let closed = marker_prevblock_upper(k, n)?;
            let marker = [k.marker(n, s)?];
            let grid = block_sample(k, n - 1, grid_eps)?;
            (closed, extremum(&marker, &grid, Extremum::Max), false)
        }
    };
    let agree = if exact {
        closed_form == sampled
    } else {
        (closed_form - sampled).abs() <= grid_eps
    };
    Ok(LemmaCheck {
        closed_form,
        sampled,
        agree,
        exact,
    })
}

/// All applicable cases for a scaffold of dimension N (sign selectors
/// expanded where the item uses them).
pub fn all_cases(dim: usize) -> Vec<LemmaCase> {
    let mut out = Vec::new();
    let mk = |item, n, m, s, t| LemmaCase { item, n, m, s, t };
    for n in 0..dim {
        out.push(mk(LemmaItem::MarkerPair, n, n, Sign::Plus, Sign::Minus));
        if n >= 1 {
            for s in Sign::BOTH {
                out.push(mk(LemmaItem::MarkerPrevBlock, n, n - 1, s, s));
            }
        }
        for m in 0..dim {
            if n != m {
                for s in Sign::BOTH {
                    for t in Sign::BOTH {
                        out.push(mk(LemmaItem::CrossMarker, n, m, s, t));
                    }
                }
                out.push(mk(LemmaItem::BlockGap, n, m, Sign::Plus, Sign::Plus));
            }
            for s in Sign::BOTH {
                if n <= m {
                    out.push(mk(LemmaItem::MarkerBlockForward, n, m, s, s));
                } else {
                    out.push(mk(LemmaItem::MarkerBlockBackward, n, m, s, s));
                }
            }
            out.push(mk(LemmaItem::BlockSpan, n, m, Sign::Plus, Sign::Plus));
        }
    }
    out
}
