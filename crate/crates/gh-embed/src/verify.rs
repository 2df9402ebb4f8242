//! Seeded randomized verification campaigns tying all modules together.
//!
//! Every suite is deterministic given (seed, config): each trial derives its
//! own RNG stream, so trials can run in parallel while reports stay
//! byte-identical. A failure always carries a replayable witness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::gh::{analyze_component_map, gh_bruteforce};
use crate::hausdorff::{scaffold_hausdorff, scaffold_hausdorff_sampled};
use crate::kuratowski::embed_finite_space;
use crate::lemma::{all_cases, verify_lemma_case};
use crate::metric::{
    check_bilipschitz, chebyshev_distance, FiniteMetricSpace, PointSet, Vector,
};
use crate::scaffold::{
    build_scaffold, sample_scaffold_classified, BlockVariant, Point2, Scaffold, Sign,
};
use crate::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub dims: Vec<usize>,
    pub bound: f64,
    pub eps_list: Vec<f64>,
    pub variant: BlockVariant,
    pub tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            trials: 100,
            dims: vec![1, 2, 4],
            bound: 2.0,
            eps_list: vec![1.0, 0.5, 0.25],
            variant: BlockVariant::FullSquare,
            tolerance: crate::DEFAULT_TOLERANCE,
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be >= 1".into()));
        }
        if self.dims.is_empty() || self.dims.contains(&0) {
            return Err(Error::InvalidConfig("dims must be non-empty positive".into()));
        }
        if self.bound <= 0.0 || !self.bound.is_finite() {
            return Err(Error::InvalidConfig(format!("bound must be positive, got {}", self.bound)));
        }
        if self.eps_list.is_empty() || self.eps_list.iter().any(|&e| e <= 0.0) {
            return Err(Error::InvalidConfig("eps_list must be non-empty positive".into()));
        }
        if self.tolerance <= 0.0 {
            return Err(Error::InvalidConfig("tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Replayable evidence for one failed trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FailureWitness {
    pub trial: usize,
    pub seed: u64,
    pub message: String,
    pub inputs: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: usize,
    pub failures: Vec<FailureWitness>,
    pub worst: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.failures.is_empty())
    }
}

struct TrialOutcome {
    worst: f64,
    failure: Option<FailureWitness>,
}

fn trial_rng(seed: u64, suite: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.wrapping_mul(0x9e37_79b9).wrapping_add(trial as u64 + 1));
    rng
}

/// Uniform draw from the M/64 grid on [0, M]^dim, so downstream arithmetic
/// stays exact in binary floating point.
fn grid_vector(rng: &mut impl Rng, dim: usize, bound: f64) -> Vector {
    let step = bound / 64.0;
    Vector::new(
        (0..dim)
            .map(|_| rng.gen_range(0..=64u32) as f64 * step)
            .collect(),
    )
    .unwrap()
}

fn run_trials(
    total: usize,
    body: impl Fn(usize) -> TrialOutcome + Sync + Send,
) -> Vec<TrialOutcome> {
    #[cfg(feature = "parallel")]
    {
        (0..total).into_par_iter().map(body).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..total).map(body).collect()
    }
}

fn collect(suite: &str, outcomes: Vec<TrialOutcome>) -> SuiteReport {
    let trials = outcomes.len();
    let mut worst = 0.0f64;
    let mut failures = Vec::new();
    for o in outcomes {
        worst = worst.max(o.worst);
        if let Some(f) = o.failure {
            failures.push(f);
        }
    }
    SuiteReport {
        suite: suite.into(),
        trials,
        failures,
        worst,
    }
}

fn suite_hausdorff_equality(cfg: &VerifyConfig) -> SuiteReport {
    let total = cfg.trials * cfg.dims.len();
    let outcomes = run_trials(total, |t| {
        let dim = cfg.dims[t % cfg.dims.len()];
        let mut rng = trial_rng(cfg.seed, 1, t);
        let x = grid_vector(&mut rng, dim, cfg.bound);
        let y = grid_vector(&mut rng, dim, cfg.bound);
        let kx = build_scaffold(&x, cfg.bound, cfg.variant).unwrap();
        let ky = build_scaffold(&y, cfg.bound, cfg.variant).unwrap();
        let got = scaffold_hausdorff(&kx, &ky).unwrap().value;
        let expected = chebyshev_distance(&x, &y).unwrap();
        let deviation = (got - expected).abs();
        let mut failure = (deviation != 0.0).then(|| FailureWitness {
            trial: t,
            seed: cfg.seed,
            message: format!("Hd = {got}, Chebyshev = {expected}"),
            inputs: json!({"x": x.coords(), "y": y.coords(), "M": cfg.bound}),
        });
        // sampled-oracle sandwich on a subsample of trials (the dense
        // samples are quadratic in 1/eps)
        if failure.is_none() && dim <= 2 && t < 10 * cfg.dims.len() {
            for &eps in &cfg.eps_list {
                let sampled = scaffold_hausdorff_sampled(&kx, &ky, eps).unwrap();
                if (sampled - got).abs() > 2.0 * eps {
                    failure = Some(FailureWitness {
                        trial: t,
                        seed: cfg.seed,
                        message: format!(
                            "sampled Hd {sampled} outside {got} ± {}",
                            2.0 * eps
                        ),
                        inputs: json!({"x": x.coords(), "y": y.coords(), "eps": eps}),
                    });
                    break;
                }
            }
        }
        TrialOutcome {
            worst: deviation,
            failure,
        }
    });
    collect("hausdorff-equality", outcomes)
}

fn suite_lemma_oracle(cfg: &VerifyConfig) -> SuiteReport {
    let total = cfg.trials * cfg.dims.len();
    let grid_eps = cfg.bound / 8.0;
    let outcomes = run_trials(total, |t| {
        let dim = cfg.dims[t % cfg.dims.len()];
        let mut rng = trial_rng(cfg.seed, 2, t);
        let x = grid_vector(&mut rng, dim, cfg.bound);
        let k = build_scaffold(&x, cfg.bound, cfg.variant).unwrap();
        let mut worst = 0.0f64;
        let mut failure = None;
        for case in all_cases(dim) {
            let check = verify_lemma_case(&case, &k, grid_eps).unwrap();
            worst = worst.max((check.closed_form - check.sampled).abs());
            if !check.agree && failure.is_none() {
                failure = Some(FailureWitness {
                    trial: t,
                    seed: cfg.seed,
                    message: format!("lemma case {case:?} disagrees: {check:?}"),
                    inputs: json!({"x": x.coords(), "M": cfg.bound}),
                });
            }
        }
        TrialOutcome { worst, failure }
    });
    collect("lemma-oracle", outcomes)
}

/// At most five sample points: markers first (deduplicated), then block
/// generator points round-robin across blocks.
pub fn small_sample(k: &Scaffold, max_points: usize) -> Vec<Point2> {
    let mut points: Vec<Point2> = Vec::new();
    let push = |p: Point2, points: &mut Vec<Point2>| {
        if points.len() < max_points && !points.contains(&p) {
            points.push(p);
        }
    };
    for n in 0..k.dim() {
        for sign in Sign::BOTH {
            push(k.marker(n, sign).unwrap(), &mut points);
        }
    }
    let generators: Vec<Vec<Point2>> = (0..k.dim())
        .map(|n| k.block_generators(n).unwrap())
        .collect();
    let longest = generators.iter().map(Vec::len).max().unwrap_or(0);
    for round in 0..longest {
        for gens in &generators {
            if let Some(&g) = gens.get(round) {
                push(g, &mut points);
            }
        }
    }
    points
}

/// Guaranteed upper bound on the covering radius of `sample` within the
/// scaffold: probe-grid maximum plus the probe grid's own covering radius.
pub fn covering_radius_upper(k: &Scaffold, sample: &[Point2], probe_eps: f64) -> f64 {
    let probe = sample_scaffold_classified(k, probe_eps).unwrap();
    let measured = probe
        .points
        .iter()
        .map(|p| {
            sample
                .iter()
                .map(|q| p.cheb(*q))
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0f64, f64::max);
    measured + probe_eps / 2.0
}

fn metric_of(points: &[Point2]) -> FiniteMetricSpace {
    let vs: Vec<Vector> = points.iter().map(|p| p.to_vector()).collect();
    FiniteMetricSpace::from_points(&PointSet::new(vs).unwrap())
}

fn suite_gh_sandwich(cfg: &VerifyConfig) -> SuiteReport {
    let dims: Vec<usize> = cfg.dims.iter().copied().filter(|&d| d <= 2).collect();
    if dims.is_empty() {
        return SuiteReport {
            suite: "gh-sandwich".into(),
            trials: 0,
            failures: Vec::new(),
            worst: 0.0,
        };
    }
    let total = cfg.trials * dims.len();
    let probe_eps = cfg.bound / 8.0;
    let outcomes = run_trials(total, |t| {
        let dim = dims[t % dims.len()];
        let mut rng = trial_rng(cfg.seed, 3, t);
        let x = grid_vector(&mut rng, dim, cfg.bound);
        let y = grid_vector(&mut rng, dim, cfg.bound);
        let kx = build_scaffold(&x, cfg.bound, cfg.variant).unwrap();
        let ky = build_scaffold(&y, cfg.bound, cfg.variant).unwrap();
        let sx = small_sample(&kx, 5);
        let sy = small_sample(&ky, 5);
        let ex = covering_radius_upper(&kx, &sx, probe_eps);
        let ey = covering_radius_upper(&ky, &sy, probe_eps);
        let gh = gh_bruteforce(&metric_of(&sx), &metric_of(&sy), Some(25)).unwrap();
        let d = chebyshev_distance(&x, &y).unwrap();
        let slack = ex + ey + cfg.tolerance;
        let deviation = (gh - d).abs();
        let inside = gh >= d - slack && gh <= d + slack;
        TrialOutcome {
            worst: deviation,
            failure: (!inside).then(|| FailureWitness {
                trial: t,
                seed: cfg.seed,
                message: format!("gh = {gh} outside [{} , {}]", d - slack, d + slack),
                inputs: json!({"x": x.coords(), "y": y.coords(), "eps_x": ex, "eps_y": ey}),
            }),
        }
    });
    collect("gh-sandwich", outcomes)
}

fn suite_kuratowski(cfg: &VerifyConfig) -> SuiteReport {
    let outcomes = run_trials(cfg.trials, |t| {
        let mut rng = trial_rng(cfg.seed, 4, t);
        let count = rng.gen_range(1..=8usize);
        let dim = rng.gen_range(1..=4usize);
        let points = PointSet::new(
            (0..count)
                .map(|_| grid_vector(&mut rng, dim, cfg.bound))
                .collect(),
        )
        .unwrap();
        let space = FiniteMetricSpace::from_points(&points);
        let fam = embed_finite_space(&space, cfg.variant).unwrap();
        let mut worst = 0.0f64;
        for i in 0..count {
            for j in 0..count {
                worst = worst.max((fam.recovered.matrix[i][j] - space.matrix[i][j]).abs());
            }
        }
        TrialOutcome {
            worst,
            failure: (worst > 1e-12).then(|| FailureWitness {
                trial: t,
                seed: cfg.seed,
                message: format!("round-trip deviation {worst}"),
                inputs: json!({"matrix": space.matrix}),
            }),
        }
    });
    collect("kuratowski-roundtrip", outcomes)
}

fn suite_bilipschitz(cfg: &VerifyConfig) -> SuiteReport {
    let outcomes = run_trials(cfg.trials, |t| {
        let mut rng = trial_rng(cfg.seed, 5, t);
        let dim = rng.gen_range(1..=16usize);
        let x = Vector::new((0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect()).unwrap();
        let y = Vector::new((0..dim).map(|_| rng.gen_range(-10.0..10.0)).collect()).unwrap();
        let (lower_ok, upper_ok) = check_bilipschitz(&x, &y).unwrap();
        TrialOutcome {
            worst: 0.0,
            failure: (!(lower_ok && upper_ok)).then(|| FailureWitness {
                trial: t,
                seed: cfg.seed,
                message: format!("bilipschitz failed: lower {lower_ok}, upper {upper_ok}"),
                inputs: json!({"x": x.coords(), "y": y.coords()}),
            }),
        }
    });
    collect("bilipschitz", outcomes)
}

fn suite_component_map(cfg: &VerifyConfig) -> SuiteReport {
    let total = cfg.trials * cfg.dims.len();
    let outcomes = run_trials(total, |t| {
        let dim = cfg.dims[t % cfg.dims.len()];
        let mut rng = trial_rng(cfg.seed, 6, t);
        let x = grid_vector(&mut rng, dim, cfg.bound);
        let y = grid_vector(&mut rng, dim, cfg.bound);
        let kx = build_scaffold(&x, cfg.bound, cfg.variant).unwrap();
        let ky = build_scaffold(&y, cfg.bound, cfg.variant).unwrap();
        let sx = sample_scaffold_classified(&kx, cfg.bound).unwrap();
        let sy = sample_scaffold_classified(&ky, cfg.bound).unwrap();
        // both scaffolds share block geometry, so the samples align
        // index-by-index and the natural matching is the identity map
        let natural: Vec<usize> = (0..sx.len()).collect();
        let report = analyze_component_map(&natural, &sx, &sy, &kx, &ky).unwrap();
        let ok = report.is_identity();
        TrialOutcome {
            worst: report.max_distortion,
            failure: (!ok).then(|| FailureWitness {
                trial: t,
                seed: cfg.seed,
                message: format!("natural matching not identity: {:?}", report.violations),
                inputs: json!({"x": x.coords(), "y": y.coords()}),
            }),
        }
    });
    collect("component-map", outcomes)
}

/// Runs all six suites deterministically for the given config.
pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport> {
    cfg.validate()?;
    let suites = vec![
        suite_hausdorff_equality(cfg),
        suite_lemma_oracle(cfg),
        suite_gh_sandwich(cfg),
        suite_kuratowski(cfg),
        suite_bilipschitz(cfg),
        suite_component_map(cfg),
    ];
    Ok(VerifyReport {
        config: cfg.clone(),
        suites,
    })
}
