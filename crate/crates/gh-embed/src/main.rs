use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use gh_embed::gh::{check_eps_isometry, gh_bruteforce, gh_lower_bounds};
use gh_embed::hausdorff::{scaffold_hausdorff, scaffold_hausdorff_sampled};
use gh_embed::kuratowski::embed_finite_space;
use gh_embed::lemma::{all_cases, verify_lemma_case, LemmaItem};
use gh_embed::metric::{validate_metric, FiniteMetricSpace, Vector};
use gh_embed::scaffold::{build_scaffold, BlockVariant, Scaffold};
use gh_embed::svg::render_svg;
use gh_embed::verify::{run_verify, VerifyConfig};

const SEED_ENV: &str = "GH_EMBED_SEED";

#[derive(Parser)]
#[command(
    name = "gh-embed",
    about = "Scaffold embeddings of bounded Chebyshev sets into the Gromov-Hausdorff space",
    long_about = "Builds compact planar scaffolds encoding points of [0,M]^N, computes exact \
and sampled Hausdorff distances between them, brute-forces Gromov-Hausdorff distances on \
finite metric spaces, and runs randomized verification campaigns.\n\n\
File formats (JSON):\n  \
metric space: {\"labels\": [...], \"matrix\": [[...]]}\n  \
point set:    {\"dim\": N, \"points\": [[...]]}\n  \
scaffold:     {\"dim\": N, \"M\": .., \"C\": .., \"D\": .., \"variant\": \"full-square\", \"x\": [...]}\n  \
map F:        [[i, j], ...] index pairs, total on the source"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a scaffold K_x and write it as JSON and/or SVG
    Construct(ConstructArgs),
    /// Render a scaffold JSON file as SVG
    Render(RenderArgs),
    /// Hausdorff distance between two scaffolds (exact or sampled)
    Hausdorff(HausdorffArgs),
    /// Gromov-Hausdorff distance between two finite metric spaces
    Gh(GhArgs),
    /// Embed a finite metric space as a family of scaffolds
    EmbedFinite(EmbedFiniteArgs),
    /// Check every closed-form component distance against its grid oracle
    VerifyLemma(VerifyLemmaArgs),
    /// Run the full randomized verification campaign
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ConstructArgs {
    /// Comma-separated coordinates of x, e.g. 1,2
    #[arg(long, value_delimiter = ',', required = true)]
    x: Vec<f64>,
    /// Bound M with 0 <= x_n <= M
    #[arg(long = "M")]
    bound: f64,
    #[arg(long, default_value = "full-square")]
    variant: BlockVariant,
    /// Write the scaffold JSON here (stdout if neither --out nor --svg given)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write an SVG rendering here
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long)]
    input: PathBuf,
    /// Output SVG path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct HausdorffArgs {
    #[arg(long)]
    a: PathBuf,
    #[arg(long)]
    b: PathBuf,
    #[arg(long, default_value = "exact")]
    mode: HausdorffMode,
    /// Sampling density for --mode sampled
    #[arg(long, default_value_t = 0.25)]
    eps: f64,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum HausdorffMode {
    Exact,
    Sampled,
}

#[derive(Args)]
struct GhArgs {
    #[arg(long)]
    x: PathBuf,
    #[arg(long)]
    y: PathBuf,
    /// Only print the cheap lower bound (no enumeration)
    #[arg(long)]
    lower_only: bool,
    /// Raise the |X|*|Y| enumeration budget
    #[arg(long)]
    budget: Option<usize>,
    /// Check an explicit map F (JSON index pairs) instead of solving
    #[arg(long)]
    map: Option<PathBuf>,
}

#[derive(Args)]
struct EmbedFiniteArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value = "full-square")]
    variant: BlockVariant,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args)]
struct VerifyLemmaArgs {
    /// Bounds M to sweep
    #[arg(long, value_delimiter = ',', default_values_t = [0.5, 1.0, 2.0])]
    bounds: Vec<f64>,
    /// Dimensions N to sweep
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 3, 4])]
    dims: Vec<usize>,
    #[arg(long, default_value = "full-square")]
    variant: BlockVariant,
    /// Coordinate grid step as a fraction of M
    #[arg(long, default_value_t = 4.0)]
    coord_div: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Campaign seed (falls back to GH_EMBED_SEED, then 42)
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, value_delimiter = ',', default_values_t = [1usize, 2, 4])]
    dims: Vec<usize>,
    #[arg(long = "M", default_value_t = 2.0)]
    bound: f64,
    #[arg(long, value_delimiter = ',', default_values_t = [1.0, 0.5])]
    eps: Vec<f64>,
    #[arg(long, default_value = "full-square")]
    variant: BlockVariant,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    /// Write the JSON report here
    #[arg(long)]
    report: Option<PathBuf>,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf, what: &str) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {what} {path:?}"))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {what} {path:?}"))
}

fn read_space(path: &PathBuf) -> Result<FiniteMetricSpace> {
    let raw: FiniteMetricSpace = read_json(path, "metric space")?;
    let space = FiniteMetricSpace::new(raw.labels, raw.matrix)?;
    let violations = validate_metric(&space, None);
    if !violations.is_empty() {
        bail!("{path:?} is not a metric: {violations:?}");
    }
    Ok(space)
}

fn cmd_construct(args: ConstructArgs) -> Result<ExitCode> {
    let x = Vector::new(args.x)?;
    let k = build_scaffold(&x, args.bound, args.variant)?;
    let json = serde_json::to_string_pretty(&k)?;
    if let Some(path) = &args.svg {
        fs::write(path, render_svg(&k)).with_context(|| format!("writing {path:?}"))?;
    }
    if let Some(path) = &args.out {
        fs::write(path, &json).with_context(|| format!("writing {path:?}"))?;
    }
    if args.out.is_none() && args.svg.is_none() {
        println!("{json}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_render(args: RenderArgs) -> Result<ExitCode> {
    let k: Scaffold = read_json(&args.input, "scaffold")?;
    let svg = render_svg(&k);
    match &args.out {
        Some(path) => fs::write(path, svg).with_context(|| format!("writing {path:?}"))?,
        None => print!("{svg}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_hausdorff(args: HausdorffArgs) -> Result<ExitCode> {
    let a: Scaffold = read_json(&args.a, "scaffold")?;
    let b: Scaffold = read_json(&args.b, "scaffold")?;
    match args.mode {
        HausdorffMode::Exact => {
            let r = scaffold_hausdorff(&a, &b)?;
            println!("{}", r.value);
            eprintln!("witness marker: {}", r.witness_marker);
        }
        HausdorffMode::Sampled => {
            println!("{}", scaffold_hausdorff_sampled(&a, &b, args.eps)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_gh(args: GhArgs) -> Result<ExitCode> {
    let x = read_space(&args.x)?;
    let y = read_space(&args.y)?;
    if let Some(map_path) = &args.map {
        let pairs: Vec<(usize, usize)> = read_json(map_path, "map")?;
        let mut f = vec![usize::MAX; x.len()];
        for (i, j) in pairs {
            if i >= x.len() {
                bail!("map source index {i} out of range");
            }
            f[i] = j;
        }
        if f.contains(&usize::MAX) {
            bail!("map is not total on the source space");
        }
        let report = check_eps_isometry(&f, &x, &y)?;
        println!("{}", serde_json::to_string_pretty(&report)?);
        return Ok(ExitCode::SUCCESS);
    }
    if args.lower_only {
        println!("{}", gh_lower_bounds(&x, &y));
        return Ok(ExitCode::SUCCESS);
    }
    println!("{}", gh_bruteforce(&x, &y, args.budget)?);
    Ok(ExitCode::SUCCESS)
}

fn cmd_embed_finite(args: EmbedFiniteArgs) -> Result<ExitCode> {
    let space = read_space(&args.input)?;
    let fam = embed_finite_space(&space, args.variant)?;
    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("creating {:?}", args.out_dir))?;
    for (i, k) in fam.scaffolds.iter().enumerate() {
        let stem = args.out_dir.join(format!("scaffold_{i}"));
        fs::write(stem.with_extension("json"), serde_json::to_string_pretty(k)?)?;
        fs::write(stem.with_extension("svg"), render_svg(k))?;
    }
    fs::write(
        args.out_dir.join("recovered.json"),
        serde_json::to_string_pretty(&fam.recovered)?,
    )?;
    let exact = fam
        .recovered
        .matrix
        .iter()
        .zip(&space.matrix)
        .all(|(a, b)| a == b);
    println!(
        "wrote {} scaffolds to {:?}; recovered matrix {} source",
        fam.scaffolds.len(),
        args.out_dir,
        if exact { "matches" } else { "DIFFERS FROM" }
    );
    Ok(if exact {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_verify_lemma(args: VerifyLemmaArgs) -> Result<ExitCode> {
    let mut checked = 0usize;
    let mut disagreements = 0usize;
    for &item in &LemmaItem::ALL {
        let mut worst = 0.0f64;
        for &bound in &args.bounds {
            let grid_eps = bound / 8.0;
            let coord_step = bound / args.coord_div;
            let levels = (args.coord_div as usize).max(1);
            for &dim in &args.dims {
                for level in 0..=levels {
                    let x = Vector::new(vec![coord_step * level as f64; dim])?;
                    let k = build_scaffold(&x, bound, args.variant)?;
                    for case in all_cases(dim) {
                        if case.item != item {
                            continue;
                        }
                        let check = verify_lemma_case(&case, &k, grid_eps)?;
                        checked += 1;
                        worst = worst.max((check.closed_form - check.sampled).abs());
                        if !check.agree {
                            disagreements += 1;
                            eprintln!("disagreement: M={bound} {case:?} -> {check:?}");
                        }
                    }
                }
            }
        }
        println!("item {item}: worst deviation {worst}");
    }
    println!("{checked} cases checked, {disagreements} disagreements");
    Ok(if disagreements == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let seed = args
        .seed
        .or_else(|| std::env::var(SEED_ENV).ok()?.parse().ok())
        .unwrap_or(42);
    let cfg = VerifyConfig {
        seed,
        trials: args.trials,
        dims: args.dims,
        bound: args.bound,
        eps_list: args.eps,
        variant: args.variant,
        tolerance: args.tolerance,
    };
    let report = run_verify(&cfg)?;
    for suite in &report.suites {
        println!(
            "{:<22} trials {:>5}  failures {:>3}  worst {}",
            suite.suite,
            suite.trials,
            suite.failures.len(),
            suite.worst
        );
    }
    if let Some(path) = &args.report {
        fs::write(path, serde_json::to_string_pretty(&report)?)
            .with_context(|| format!("writing {path:?}"))?;
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(args) => cmd_construct(args),
        Command::Render(args) => cmd_render(args),
        Command::Hausdorff(args) => cmd_hausdorff(args),
        Command::Gh(args) => cmd_gh(args),
        Command::EmbedFinite(args) => cmd_embed_finite(args),
        Command::VerifyLemma(args) => cmd_verify_lemma(args),
        Command::Verify(args) => cmd_verify(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
