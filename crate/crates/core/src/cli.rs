//! The `rg-lie` command line.

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coord::{
    build_bb, check_uniform, full_homology, load_quadruple, verify_bb_lie,
    verify_beta_star_relations, verify_derivations, verify_diamond_heart, verify_homology,
    verify_laws, CoordAlgebra,
};
use crate::error::{Error, Result};
use crate::exactla::SparseVec;
use crate::graded::{
    build_model, subalgebra, verify_antisymmetry, verify_grading, verify_jacobi,
    verify_level_transition, verify_subalgebra, GradedModel, JacobiStrategy, Level,
};
use crate::liealg::build_algebra;
use crate::report::{CheckRecord, Report};
use crate::rootsys::{classify_lengths, generate, Family};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "RG_LIE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "rg-lie",
    version,
    about = "Exact construction and verification of root-graded Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate a root system.
    Roots(RootsArgs),
    /// Describe the matrix Lie algebra of a family.
    Algebra(RootsArgs),
    /// Compute the full homology of {𝔟,𝔟}_ℓ for a quadruple.
    Fh(FhArgs),
    /// Build a graded model and print its shape.
    Build(ModelArgs),
    /// Build a graded model and run verification suites.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Json,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Write the JSON output to this path instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub emit: Emit,
}

#[derive(Debug, Args)]
pub struct RootsArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    /// Built-in quadruple, e.g. `symplectic:m=2` or `matrix(2)`.
    #[arg(long, conflicts_with = "file")]
    pub preset: Option<String>,
    /// Quadruple JSON file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

impl SourceArgs {
    fn source(&self) -> Result<String> {
        match (&self.preset, &self.file) {
            (Some(p), None) => Ok(p.clone()),
            (None, Some(f)) => Ok(f.display().to_string()),
            _ => Err(Error::Config(
                "exactly one of --preset and --file is required".into(),
            )),
        }
    }
}

#[derive(Debug, Args)]
pub struct FhArgs {
    #[arg(long)]
    pub ell: usize,
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KChoice {
    /// 𝒦 = {0}.
    Zero,
    /// 𝒦 = FH(𝔟).
    Fh,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long)]
    pub family: Family,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub ell: usize,
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value = "zero")]
    pub k: KChoice,
    /// Build even when ℓ is below the family's rank bound.
    #[arg(long)]
    pub override_bounds: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    Grading,
    Jacobi,
    Derivation,
    Homology,
    Uniform,
    Transition,
    Subsystem,
}

pub const DEFAULT_SUITE: [Suite; 3] = [Suite::Grading, Suite::Jacobi, Suite::Derivation];

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Comma-separated suites; defaults to grading, jacobi and derivation.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub suite: Option<Vec<String>>,
    /// Random Jacobi triples; 0 selects the exhaustive run.
    #[arg(long, default_value_t = 500)]
    pub samples: usize,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Record per-check wall times (makes reports run-dependent).
    #[arg(long)]
    pub timings: bool,
}

/// Exit status and the text written to stdout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (program name first) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Roots(a) => roots(a).and_then(|v| emit(&a.output, &v, 0)),
        Command::Algebra(a) => algebra(a).and_then(|v| emit(&a.output, &v, 0)),
        Command::Fh(a) => fh(a).and_then(|v| emit(&a.output, &v, 0)),
        Command::Build(a) => build(a).and_then(|v| emit(&a.output, &v, 0)),
        Command::Verify(a) => verify(a).and_then(|r| {
            let code = if r.all_pass() { 0 } else { 1 };
            emit(&a.model.output, &serde_json::to_value(&r)?, code)
        }),
    };
    result.unwrap_or_else(|e| Outcome {
        code: e.exit_code(),
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    })
}

fn emit(out: &OutputArgs, v: &Value, code: i32) -> Result<Outcome> {
    let text = serde_json::to_string_pretty(v)? + "\n";
    match &out.out {
        Some(path) => {
            std::fs::write(path, &text)?;
            Ok(Outcome {
                code,
                stdout: String::new(),
                stderr: String::new(),
            })
        }
        None => Ok(Outcome {
            code,
            stdout: text,
            stderr: String::new(),
        }),
    }
}

fn roots(a: &RootsArgs) -> Result<Value> {
    let r = generate(a.family, a.n)?;
    let lengths: BTreeMap<String, usize> =
        classify_lengths(&r)
            .values()
            .fold(BTreeMap::new(), |mut m, c| {
                *m.entry(c.to_string()).or_default() += 1;
                m
            });
    let roots: Vec<Vec<(usize, i64)>> = r.roots().iter().map(|x| x.coords().collect()).collect();
    Ok(json!({
        "family": a.family.to_string(),
        "rank": a.n,
        "count": roots.len(),
        "nonzero_count": roots.len() - 1,
        "roots": roots,
        "lengths": lengths,
    }))
}

fn algebra(a: &RootsArgs) -> Result<Value> {
    let g = build_algebra(a.family, a.n)?;
    let spaces: BTreeMap<String, usize> = g
        .root_index()
        .iter()
        .filter(|(r, _)| !r.is_zero())
        .map(|(r, idx)| (r.to_string(), idx.len()))
        .collect();
    Ok(json!({
        "family": a.family.to_string(),
        "n": a.n,
        "dim": g.dim(),
        "cartan_dim": g.cartan().len(),
        "root_spaces": spaces,
    }))
}

fn fh(a: &FhArgs) -> Result<Value> {
    let q = load_quadruple(&a.source.source()?)?;
    let alg = CoordAlgebra::new(q)?;
    let bb = build_bb(&alg, a.ell)?;
    let h = full_homology(&bb)?;
    let basis: Vec<BTreeMap<String, String>> = h
        .basis
        .iter()
        .map(|v| {
            v.iter()
                .map(|(i, c)| (bb.labels()[i].clone(), c.to_string()))
                .collect()
        })
        .collect();
    Ok(json!({
        "family": alg.family().to_string(),
        "ell": a.ell,
        "bb_dim": bb.dim(),
        "fh_dim": h.dim(),
        "central": h.central,
        "basis": basis,
    }))
}

fn model_from(a: &ModelArgs) -> Result<GradedModel> {
    let q = load_quadruple(&a.source.source()?)?;
    let k_span: Vec<SparseVec> = match a.k {
        KChoice::Zero => Vec::new(),
        KChoice::Fh => {
            let alg = CoordAlgebra::new(q.clone())?;
            full_homology(&build_bb(&alg, a.ell)?)?.basis
        }
    };
    build_model(a.family, a.n, a.ell, &q, &k_span, a.override_bounds)
}

fn model_config(a: &ModelArgs) -> Value {
    json!({
        "family": a.family.to_string(),
        "n": a.n,
        "ell": a.ell,
        "preset": a.source.preset,
        "file": a.source.file.as_ref().map(|f| f.display().to_string()),
        "k": match a.k { KChoice::Zero => "zero", KChoice::Fh => "fh" },
        "override_bounds": a.override_bounds,
    })
}

fn build(a: &ModelArgs) -> Result<Value> {
    let m = model_from(a)?;
    let [g, s, v, d] = m.component_dims();
    let (da, db, dc) = m.coord().dims();
    let mut weights: BTreeMap<String, usize> = BTreeMap::new();
    for w in m.weights() {
        *weights.entry(w.to_string()).or_default() += 1;
    }
    Ok(json!({
        "config": model_config(a),
        "below_bound": m.below_bound(),
        "level_size": m.level_size(),
        "dim": m.dim(),
        "components": { "G": g, "S": s, "V": v, "D": d },
        "coordinates": { "A": da, "B": db, "C": dc },
        "weight_multiplicities": weights,
    }))
}

/// Parses suite names; `None` selects the default suite.
pub fn parse_suites(raw: &Option<Vec<String>>) -> Result<BTreeSet<Suite>> {
    let Some(raw) = raw else {
        return Ok(DEFAULT_SUITE.into_iter().collect());
    };
    let mut out = BTreeSet::new();
    for name in raw.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        out.insert(
            Suite::from_str(name, true)
                .map_err(|_| Error::Config(format!("unknown suite {name:?}")))?,
        );
    }
    if out.is_empty() {
        return Err(Error::Config("the suite list is empty".into()));
    }
    Ok(out)
}

fn suite_name(s: Suite) -> String {
    s.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_string()
}

fn timed(timings: bool, f: impl FnOnce() -> Result<Vec<CheckRecord>>) -> Result<Vec<CheckRecord>> {
    let start = std::time::Instant::now();
    let mut recs = f()?;
    if timings {
        let ms = start.elapsed().as_millis() as u64;
        for r in &mut recs {
            r.elapsed_ms = Some(ms);
        }
    }
    Ok(recs)
}

/// Runs the selected suites on a freshly built model.
pub fn verify(a: &VerifyArgs) -> Result<Report> {
    let suites = parse_suites(&a.suite)?;
    if suites.contains(&Suite::Jacobi) && a.samples > 0 && a.seed.is_none() {
        return Err(Error::Config(
            "--seed is required for random Jacobi sampling".into(),
        ));
    }
    let m = model_from(&a.model)?;
    let mut checks = Vec::new();
    for &s in &suites {
        let recs = timed(a.timings, || run_suite(&m, s, a.samples, a.seed))?;
        checks.extend(recs);
    }
    let config = json!({
        "model": model_config(&a.model),
        "suites": suites.iter().map(|s| suite_name(*s)).collect::<Vec<_>>(),
        "samples": a.samples,
        "seed": a.seed,
    });
    let mut r = Report::new(checks).with_config(config);
    if !a.timings {
        r = r.without_timings();
    }
    Ok(r)
}

/// Runs one suite. `samples = 0` selects exhaustive Jacobi; otherwise a seed
/// is required.
pub fn run_suite(
    m: &GradedModel,
    s: Suite,
    samples: usize,
    seed: Option<u64>,
) -> Result<Vec<CheckRecord>> {
    let bb = m.bb();
    Ok(match s {
        Suite::Grading => {
            let mut v = verify_grading(m)?;
            v.push(verify_antisymmetry(m));
            v
        }
        Suite::Jacobi => {
            let strategy = match (samples, seed) {
                (0, _) => JacobiStrategy::Exhaustive,
                (samples, Some(seed)) => JacobiStrategy::Random { samples, seed },
                (_, None) => {
                    return Err(Error::Config(
                        "a seed is required for random Jacobi sampling".into(),
                    ))
                }
            };
            let rep = verify_jacobi(m, strategy);
            let name = match strategy {
                JacobiStrategy::Exhaustive => "jacobi/exhaustive".to_string(),
                JacobiStrategy::Random { samples, .. } => format!("jacobi/random-{samples}"),
            };
            vec![rep.record(&name)]
        }
        Suite::Derivation => {
            let mut v = verify_laws(m.coord());
            v.push(verify_derivations(bb));
            v.push(verify_bb_lie(bb));
            v
        }
        Suite::Homology => {
            let mut v = vec![verify_homology(bb)?];
            if m.coord().dims().2 > 0 {
                v.push(verify_diamond_heart(m.coord())?);
            }
            v
        }
        Suite::Uniform => {
            let cross = bb.ell() + 3;
            let rep = check_uniform(bb, m.k_span(), cross)?;
            let mut w = Vec::new();
            if let Some(x) = rep.witness {
                w.push(x);
            }
            if !rep.cross_in_fh {
                w.push(format!("𝒦 leaves FH at ℓ = {cross}"));
            }
            if rep.cross_uniform != rep.uniform {
                w.push(format!("uniform verdict differs at ℓ = {cross}"));
            }
            vec![
                verify_beta_star_relations(bb),
                CheckRecord::new("uniform/k", w),
            ]
        }
        Suite::Transition => {
            if !matches!(m.family(), Family::A | Family::C | Family::BC) {
                return Ok(vec![CheckRecord::skipped(
                    "transition",
                    format!("no level cosets in type {}", m.family()),
                )]);
            }
            let mut v = Vec::new();
            for extra in 1..=2 {
                if m.level_size() + extra > m.n() {
                    v.push(CheckRecord::skipped(
                        format!("transition/+{extra}"),
                        "λ would exceed n",
                    ));
                    continue;
                }
                let level = Level::extend(m, extra)?;
                for mut r in verify_level_transition(m, &level)? {
                    r.name = r
                        .name
                        .replacen("transition/", &format!("transition/+{extra}/"), 1);
                    v.push(r);
                }
            }
            v
        }
        Suite::Subsystem => {
            let r = generate(m.family(), m.n())?;
            let min = if m.family() == Family::A { 3 } else { 2 };
            if m.n() < min {
                return Ok(vec![CheckRecord::skipped(
                    "subalgebra",
                    "no proper irreducible subsystem on n − 1 indices",
                )]);
            }
            let s = r.restrict(&(1..m.n()).collect());
            let sub = subalgebra(m, &s)?;
            verify_subalgebra(m, &sub)?
        }
    })
}

/// Applies `RG_LIE_THREADS` to the global thread pool, if set.
pub fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| {
        Error::Config(format!(
            "{THREADS_ENV} must be a positive integer, got {v:?}"
        ))
    })?;
    if n == 0 {
        return Err(Error::Config(format!("{THREADS_ENV} must be positive")));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(e.to_string()))
}
