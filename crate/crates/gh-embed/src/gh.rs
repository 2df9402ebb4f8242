//! Gromov-Hausdorff machinery on finite metric spaces: exact brute-force
//! GH via correspondence enumeration with pruning, cheap lower bounds,
//! ε-isometry verification, and the component-map analyzer for candidate
//! maps between scaffold samples.
//!
//! GH is computed as half the minimal distortion over bi-surjective
//! correspondences, the standard reformulation of the embedding-infimum
//! definition.

use serde::{Deserialize, Serialize};

use crate::metric::FiniteMetricSpace;
use crate::scaffold::{Component, Scaffold, ScaffoldSample};
use crate::{Error, Result};

/// Refuse exact enumeration above this |X|·|Y| unless the caller raises
/// the budget explicitly.
pub const DEFAULT_GH_BUDGET: usize = 24;

/// A bi-surjective relation between index sets of two finite spaces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Correspondence {
    pub pairs: Vec<(usize, usize)>,
}

impl Correspondence {
    /// Checks bi-surjectivity against the given space sizes.
    pub fn check(&self, size_x: usize, size_y: usize) -> Result<()> {
        for side in 0..size_x {
            if !self.pairs.iter().any(|&(i, _)| i == side) {
                return Err(Error::NotBisurjective {
                    side: "left",
                    index: side,
                });
            }
        }
        for side in 0..size_y {
            if !self.pairs.iter().any(|&(_, j)| j == side) {
                return Err(Error::NotBisurjective {
                    side: "right",
                    index: side,
                });
            }
        }
        for &(i, j) in &self.pairs {
            if i >= size_x {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: size_x,
                });
            }
            if j >= size_y {
                return Err(Error::IndexOutOfRange {
                    index: j,
                    len: size_y,
                });
            }
        }
        Ok(())
    }
}

/// Worst disagreement of paired distances under a correspondence.
pub fn distortion(
    r: &Correspondence,
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<f64> {
    r.check(x.len(), y.len())?;
    let mut worst = 0.0f64;
    for (a, &(i, j)) in r.pairs.iter().enumerate() {
        for &(i2, j2) in &r.pairs[a..] {
            worst = worst.max((x.dist(i, i2) - y.dist(j, j2)).abs());
        }
    }
    Ok(worst)
}

struct Search<'a> {
    x: &'a FiniteMetricSpace,
    y: &'a FiniteMetricSpace,
    pairs: Vec<(usize, usize)>,
    best: f64,
}

impl Search<'_> {
    fn added_cost(&self, i: usize, j: usize) -> f64 {
        self.pairs.iter().fold(0.0f64, |acc, &(i2, j2)| {
            acc.max((self.x.dist(i, i2) - self.y.dist(j, j2)).abs())
        })
    }

    /// Phase 1: give every element of X an image.
    fn assign_x(&mut self, i: usize, cur: f64) {
        if cur >= self.best {
            return;
        }
        if i == self.x.len() {
            let uncovered: Vec<usize> = (0..self.y.len())
                .filter(|&j| !self.pairs.iter().any(|&(_, j2)| j2 == j))
                .collect();
            self.assign_y(&uncovered, 0, cur);
            return;
        }
        for j in 0..self.y.len() {
            let next = cur.max(self.added_cost(i, j));
            if next < self.best {
                self.pairs.push((i, j));
                self.assign_x(i + 1, next);
                self.pairs.pop();
            }
        }
    }

    /// Phase 2: cover the remaining elements of Y.
    fn assign_y(&mut self, uncovered: &[usize], pos: usize, cur: f64) {
        if cur >= self.best {
            return;
        }
        if pos == uncovered.len() {
            self.best = cur;
            return;
        }
        let j = uncovered[pos];
        for i in 0..self.x.len() {
            let next = cur.max(self.added_cost(i, j));
            if next < self.best {
                self.pairs.push((i, j));
                self.assign_y(uncovered, pos + 1, next);
                self.pairs.pop();
            }
        }
    }
}

/// Exact Gromov-Hausdorff distance by branch-and-bound over bi-surjective
/// correspondences: d_GH = ½·min distortion. Refuses instances whose
/// |X|·|Y| exceeds the budget rather than approximating silently.
pub fn gh_bruteforce(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    budget: Option<usize>,
) -> Result<f64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let budget = budget.unwrap_or(DEFAULT_GH_BUDGET);
    let size = x.len() * y.len();
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut search = Search {
        x,
        y,
        pairs: Vec::with_capacity(x.len() + y.len()),
        best: f64::INFINITY,
    };
    search.assign_x(0, 0.0);
    Ok(search.best / 2.0)
}

/// Cheap lower bounds on d_GH; at minimum half the diameter difference.
/// Always ≤ [`gh_bruteforce`] when the latter is computable.
pub fn gh_lower_bounds(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> f64 {
    0.5 * (x.diameter() - y.diameter()).abs()
}

/// Distortion and surjectivity-gap evidence for an explicit map F: X → Y
/// given as an image index per source index.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EpsIsometryReport {
    pub max_distortion: f64,
    pub max_surjectivity_gap: f64,
}

impl EpsIsometryReport {
    /// True iff F is ε-isometric and ε-surjective.
    pub fn is_eps_isometry(&self, eps: f64) -> bool {
        self.max_distortion <= eps && self.max_surjectivity_gap <= eps
    }
}

/// Measures how far a total map F is from being an isometry onto Y.
pub fn check_eps_isometry(
    f: &[usize],
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
) -> Result<EpsIsometryReport> {
    if f.len() != x.len() {
        return Err(Error::MapNotTotal {
            expected: x.len(),
            got: f.len(),
        });
    }
    for &image in f {
        if image >= y.len() {
            return Err(Error::MapImageOutOfRange {
                image,
                len: y.len(),
            });
        }
    }
    let mut max_distortion = 0.0f64;
    for i in 0..x.len() {
        for i2 in i..x.len() {
            max_distortion = max_distortion.max((x.dist(i, i2) - y.dist(f[i], f[i2])).abs());
        }
    }
    let max_surjectivity_gap = (0..y.len())
        .map(|j| {
            f.iter()
                .map(|&fi| y.dist(fi, j))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0f64, f64::max);
    Ok(EpsIsometryReport {
        max_distortion,
        max_surjectivity_gap,
    })
}

/// A failed step-condition of the component-map analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MapViolation {
    /// Block points map to a marker or are scattered over several blocks.
    BlockScatter { block: usize },
    SigmaNotInjective { a: usize, b: usize },
    /// |σ(n+1) − σ(n)| ≠ 1.
    SigmaNonAdjacent { n: usize },
    /// Marker pair images are not markers of a single pair.
    TauUndefined { marker: usize },
    TauNotInjective { a: usize, b: usize },
    /// τ(n) ∉ {σ(n), σ(n)+1}.
    TauOutOfRange { marker: usize },
    SigmaNotIdentity { n: usize },
    TauNotIdentity { n: usize },
}

/// The induced block map σ and marker map τ of a candidate map between
/// scaffold samples, with every failed step-condition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentMapReport {
    pub sigma: Vec<Option<usize>>,
    pub tau: Vec<Option<usize>>,
    pub violations: Vec<MapViolation>,
    pub max_distortion: f64,
}

impl ComponentMapReport {
    pub fn is_identity(&self) -> bool {
        self.violations.is_empty()
            && self.sigma.iter().enumerate().all(|(n, s)| *s == Some(n))
            && self.tau.iter().enumerate().all(|(n, t)| *t == Some(n))
    }
}

/// Analyzes a map F from a sample of K_x to a sample of K_y: computes the
/// induced σ (on blocks) and τ (on marker pairs) where well defined and
/// reports every failed step-condition of the rigidity argument.
pub fn analyze_component_map(
    f: &[usize],
    sx: &ScaffoldSample,
    sy: &ScaffoldSample,
    kx: &Scaffold,
    ky: &Scaffold,
) -> Result<ComponentMapReport> {
    if f.len() != sx.len() {
        return Err(Error::MapNotTotal {
            expected: sx.len(),
            got: f.len(),
        });
    }
    for &image in f {
        if image >= sy.len() {
            return Err(Error::MapImageOutOfRange {
                image,
                len: sy.len(),
            });
        }
    }
    let dim = kx.dim();
    if ky.dim() != dim {
        return Err(Error::ScaffoldMismatch(format!(
            "dimension {} vs {}",
            dim,
            ky.dim()
        )));
    }
    for (sample, k, name) in [(sx, kx, "source"), (sy, ky, "target")] {
        for c in &sample.components {
            let index = match c {
                Component::Marker { index, .. } | Component::Block { index } => *index,
            };
            if index >= k.dim() {
                return Err(Error::SampleMismatch(format!(
                    "{name} sample references component {index} of a dim-{} scaffold",
                    k.dim()
                )));
            }
        }
    }

    let mut violations = Vec::new();

    let mut sigma: Vec<Option<usize>> = vec![None; dim];
    for n in 0..dim {
        let mut target_blocks: Vec<usize> = Vec::new();
        let mut scattered = false;
        for (i, c) in sx.components.iter().enumerate() {
            if *c != (Component::Block { index: n }) {
                continue;
            }
            match sy.components[f[i]] {
                Component::Block { index } => {
                    if !target_blocks.contains(&index) {
                        target_blocks.push(index);
                    }
                }
                Component::Marker { .. } => scattered = true,
            }
        }
        if scattered || target_blocks.len() > 1 {
            violations.push(MapViolation::BlockScatter { block: n });
        } else if let [m] = target_blocks[..] {
            sigma[n] = Some(m);
        }
    }

    for a in 0..dim {
        for b in a + 1..dim {
            if sigma[a].is_some() && sigma[a] == sigma[b] {
                violations.push(MapViolation::SigmaNotInjective { a, b });
            }
        }
    }
    for n in 0..dim.saturating_sub(1) {
        if let (Some(s0), Some(s1)) = (sigma[n], sigma[n + 1]) {
            if s0.abs_diff(s1) != 1 {
                violations.push(MapViolation::SigmaNonAdjacent { n });
            }
        }
    }

    let mut tau: Vec<Option<usize>> = vec![None; dim];
    for n in 0..dim {
        let mut target_pairs: Vec<usize> = Vec::new();
        let mut off_marker = false;
        let mut seen = false;
        for (i, c) in sx.components.iter().enumerate() {
            if !matches!(c, Component::Marker { index, .. } if *index == n) {
                continue;
            }
            seen = true;
            match sy.components[f[i]] {
                Component::Marker { index, .. } => {
                    if !target_pairs.contains(&index) {
                        target_pairs.push(index);
                    }
                }
                Component::Block { .. } => off_marker = true,
            }
        }
        if off_marker || target_pairs.len() > 1 {
            violations.push(MapViolation::TauUndefined { marker: n });
        } else if seen {
            if let [m] = target_pairs[..] {
                tau[n] = Some(m);
            }
        }
    }

    for a in 0..dim {
        for b in a + 1..dim {
            if tau[a].is_some() && tau[a] == tau[b] {
                violations.push(MapViolation::TauNotInjective { a, b });
            }
        }
    }
    for n in 0..dim {
        if let (Some(t), Some(s)) = (tau[n], sigma[n]) {
            if t != s && t != s + 1 {
                violations.push(MapViolation::TauOutOfRange { marker: n });
            }
        }
    }

    for n in 0..dim {
        if matches!(sigma[n], Some(s) if s != n) {
            violations.push(MapViolation::SigmaNotIdentity { n });
        }
        if matches!(tau[n], Some(t) if t != n) {
            violations.push(MapViolation::TauNotIdentity { n });
        }
    }

    let mut max_distortion = 0.0f64;
    for i in 0..sx.len() {
        for i2 in i..sx.len() {
            let dx = sx.points[i].cheb(sx.points[i2]);
            let dy = sy.points[f[i]].cheb(sy.points[f[i2]]);
            max_distortion = max_distortion.max((dx - dy).abs());
        }
    }

    Ok(ComponentMapReport {
        sigma,
        tau,
        violations,
        max_distortion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::Vector;
    use crate::scaffold::{build_scaffold, sample_scaffold_classified, BlockVariant, Sign};

    fn two_point(d: f64) -> FiniteMetricSpace {
        FiniteMetricSpace::new(
            vec!["a".into(), "b".into()],
            vec![vec![0.0, d], vec![d, 0.0]],
        )
        .unwrap()
    }

    #[test]
    fn distortion_examples() {
        let x = two_point(2.0);
        let id = Correspondence {
            pairs: vec![(0, 0), (1, 1)],
        };
        assert_eq!(distortion(&id, &x, &x).unwrap(), 0.0);

        let y = two_point(6.0);
        assert_eq!(distortion(&id, &x, &y).unwrap(), 4.0);

        let collapse = Correspondence {
            pairs: vec![(0, 0), (1, 0), (0, 1)],
        };
        // pairs (0,0)-(1,0): |2-0|=2; (0,0)-(0,1): |0-6|=6; (1,0)-(0,1): |2-6|=4
        assert_eq!(distortion(&collapse, &x, &y).unwrap(), 6.0);
    }

    #[test]
    fn distortion_rejects_non_bisurjective() {
        let x = two_point(2.0);
        let r = Correspondence {
            pairs: vec![(0, 0), (0, 1)],
        };
        assert!(matches!(
            distortion(&r, &x, &x),
            Err(Error::NotBisurjective { side: "left", index: 1 })
        ));
    }

    #[test]
    fn gh_two_point_spaces() {
        let x = two_point(2.0);
        let y = two_point(6.0);
        assert_eq!(gh_bruteforce(&x, &y, None).unwrap(), 2.0);
        assert_eq!(gh_bruteforce(&x, &x, None).unwrap(), 0.0);
    }

    #[test]
    fn gh_one_point_vs_any() {
        let one = FiniteMetricSpace::new(vec!["p".into()], vec![vec![0.0]]).unwrap();
        let y = FiniteMetricSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![0.0, 3.0, 4.0],
                vec![3.0, 0.0, 2.0],
                vec![4.0, 2.0, 0.0],
            ],
        )
        .unwrap();
        assert_eq!(gh_bruteforce(&one, &y, None).unwrap(), 2.0);
    }

    #[test]
    fn gh_budget_refusal() {
        let x = FiniteMetricSpace::from_points(
            &crate::metric::PointSet::new(
                (0..6)
                    .map(|i| Vector::new(vec![i as f64]).unwrap())
                    .collect(),
            )
            .unwrap(),
        );
        assert!(matches!(
            gh_bruteforce(&x, &x, None),
            Err(Error::BudgetExceeded { size: 36, budget: 24 })
        ));
        assert!(gh_bruteforce(&x, &x, Some(36)).is_ok());
    }

    #[test]
    fn lower_bound_examples() {
        let x = two_point(4.0);
        let y = two_point(10.0);
        assert_eq!(gh_lower_bounds(&x, &y), 3.0);
        assert_eq!(gh_lower_bounds(&x, &x), 0.0);
        assert!(gh_lower_bounds(&x, &y) <= gh_bruteforce(&x, &y, None).unwrap());
    }

    #[test]
    fn eps_isometry_examples() {
        let x = two_point(2.0);
        let id = check_eps_isometry(&[0, 1], &x, &x).unwrap();
        assert_eq!(id.max_distortion, 0.0);
        assert_eq!(id.max_surjectivity_gap, 0.0);
        assert!(id.is_eps_isometry(0.0));

        let constant = check_eps_isometry(&[0, 0], &x, &x).unwrap();
        assert_eq!(constant.max_distortion, 2.0);
        assert_eq!(constant.max_surjectivity_gap, 2.0);
        assert!(!constant.is_eps_isometry(1.0));
        assert!(constant.is_eps_isometry(2.0));
    }

    #[test]
    fn eps_isometry_rejects_partial_maps() {
        let x = two_point(2.0);
        assert!(check_eps_isometry(&[0], &x, &x).is_err());
        assert!(check_eps_isometry(&[0, 5], &x, &x).is_err());
    }

    fn samples() -> (Scaffold, Scaffold, ScaffoldSample, ScaffoldSample) {
        let kx = build_scaffold(
            &Vector::new(vec![1.0, 2.0]).unwrap(),
            2.0,
            BlockVariant::FourCorners,
        )
        .unwrap();
        let ky = build_scaffold(
            &Vector::new(vec![0.0, 2.0]).unwrap(),
            2.0,
            BlockVariant::FourCorners,
        )
        .unwrap();
        let sx = sample_scaffold_classified(&kx, 2.0).unwrap();
        let sy = sample_scaffold_classified(&ky, 2.0).unwrap();
        assert_eq!(sx.len(), sy.len());
        (kx, ky, sx, sy)
    }

    #[test]
    fn natural_matching_is_identity() {
        let (kx, ky, sx, sy) = samples();
        let f: Vec<usize> = (0..sx.len()).collect();
        let report = analyze_component_map(&f, &sx, &sy, &kx, &ky).unwrap();
        assert!(report.is_identity(), "{report:?}");
        assert_eq!(report.sigma, vec![Some(0), Some(1)]);
        assert_eq!(report.tau, vec![Some(0), Some(1)]);
        // natural map only moves markers, by at most d^N(x, y)
        assert!(report.max_distortion <= 2.0 * 1.0);
    }

    #[test]
    fn block_to_wrong_block_detected() {
        let (kx, ky, sx, sy) = samples();
        let block1_first = sy
            .components
            .iter()
            .position(|c| *c == Component::Block { index: 1 })
            .unwrap();
        let f: Vec<usize> = (0..sx.len())
            .map(|i| {
                if sx.components[i] == (Component::Block { index: 0 }) {
                    block1_first
                } else {
                    i
                }
            })
            .collect();
        let report = analyze_component_map(&f, &sx, &sy, &kx, &ky).unwrap();
        assert!(report
            .violations
            .contains(&MapViolation::SigmaNotInjective { a: 0, b: 1 }));
        assert!(report
            .violations
            .contains(&MapViolation::SigmaNotIdentity { n: 0 }));
        assert!(report.max_distortion >= 4.0);
    }

    #[test]
    fn block_to_marker_detected() {
        let (kx, ky, sx, sy) = samples();
        let block0_first = sx
            .components
            .iter()
            .position(|c| *c == Component::Block { index: 0 })
            .unwrap();
        let marker_target = sy
            .components
            .iter()
            .position(|c| matches!(c, Component::Marker { index: 0, .. }))
            .unwrap();
        let f: Vec<usize> = (0..sx.len())
            .map(|i| if i == block0_first { marker_target } else { i })
            .collect();
        let report = analyze_component_map(&f, &sx, &sy, &kx, &ky).unwrap();
        assert!(report
            .violations
            .contains(&MapViolation::BlockScatter { block: 0 }));
        assert!(report.max_distortion >= 4.0);
    }

    #[test]
    fn marker_swap_detected() {
        let (kx, ky, sx, sy) = samples();
        let marker_of = |sample: &ScaffoldSample, n: usize, sign: Sign| {
            sample
                .components
                .iter()
                .position(|c| *c == Component::Marker { index: n, sign })
                .unwrap()
        };
        let f: Vec<usize> = (0..sx.len())
            .map(|i| match sx.components[i] {
                Component::Marker { index, sign } => marker_of(&sy, 1 - index, sign),
                _ => i,
            })
            .collect();
        let report = analyze_component_map(&f, &sx, &sy, &kx, &ky).unwrap();
        assert!(report
            .violations
            .contains(&MapViolation::TauOutOfRange { marker: 1 }));
        assert!(report
            .violations
            .contains(&MapViolation::TauNotIdentity { n: 0 }));
        assert!(report.max_distortion >= 4.0);
    }
}
