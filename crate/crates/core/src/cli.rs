//! Command-line front end: `norm`, `estimate`, `verify`, `table` and `replay`.
//!
//! Exit codes: 0 success or PASS, 1 verification FAIL, 2 malformed input,
//! 3 domain error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::distributions::DistributionModel;
use crate::error::Error;
use crate::mc::{expected_max_product, expected_max_single, McConfig, McEstimate};
use crate::orlicz::{luxemburg_norm, mixed_norm, CoefficientMatrix, InnerNorm, OrliczFunction};
use crate::verify::{
    linear_grid, sig17, study_corollary, study_function_equiv, study_gaussian_not_l2,
    study_product, study_thm1, FunctionEquivalence, ProductTheorem, RatioStudy, StudyConfig,
    TheoremId,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

const MATRIX_LAYOUT: &str =
    "Matrix CSV layout: one line per row index i, one column per index j, no header. \
The inner norm runs over i (law ξ, size n) and the outer ℓ_p norm over j (law η, size m): \
‖( ‖(a_ij)_{i=1..n}‖_inner )_{j=1..m}‖_p.";

#[derive(Debug, Parser)]
#[command(
    name = "orlicz-maxima",
    version,
    about = "Orlicz norms and expected maxima of weighted random variables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Evaluate a Luxemburg norm or a mixed norm.
    #[command(after_help = MATRIX_LAYOUT)]
    Norm(NormArgs),
    /// Monte Carlo estimate of an expected maximum.
    #[command(after_help = MATRIX_LAYOUT)]
    Estimate(EstimateArgs),
    /// Run a bounded-ratio study and report PASS or FAIL.
    Verify(VerifyArgs),
    /// Dump an Orlicz function over a grid as CSV.
    Table(TableArgs),
    /// Re-run the command recorded in a manifest.
    #[serde(skip)]
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct NormArgs {
    /// Orlicz function: gaussian | loggamma:p | power:p | quad:<dist> | composed:<p>:<base>.
    #[arg(long = "M", value_name = "FUNCTION")]
    pub m_function: Option<String>,
    /// Inline vector, comma separated.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with_all = ["x_file", "matrix"])]
    pub x: Option<Vec<f64>>,
    /// Vector read from a CSV file (all values, in order).
    #[arg(long, conflicts_with = "matrix")]
    pub x_file: Option<PathBuf>,
    /// Coefficient matrix CSV; rows are i, columns are j.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Outer ℓ_p exponent over j.
    #[arg(long, requires = "matrix")]
    pub outer: Option<f64>,
    /// Inner norm over i: lq:q | orlicz:<function>.
    #[arg(long, requires = "matrix")]
    pub inner: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct McArgs {
    /// Samples per replicate.
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    /// Replicates for median-of-means (odd).
    #[arg(long, default_value_t = 15)]
    pub replicates: usize,
    /// Worker threads; never changes the numbers.
    #[arg(long, env = "ORLICZ_MAXIMA_WORKERS", default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct EstimateArgs {
    /// Law of ξ for a single weighted maximum: gaussian | loggamma:p | stable:p.
    #[arg(long, conflicts_with_all = ["dist1", "dist2"])]
    pub dist: Option<String>,
    /// Law of ξ_i (rows) for a product maximum.
    #[arg(long, requires_all = ["dist2", "matrix"])]
    pub dist1: Option<String>,
    /// Law of η_j (columns) for a product maximum.
    #[arg(long, requires = "dist1")]
    pub dist2: Option<String>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with_all = ["x_file", "matrix"])]
    pub x: Option<Vec<f64>>,
    #[arg(long, conflicts_with = "matrix")]
    pub x_file: Option<PathBuf>,
    /// Coefficient matrix CSV; rows are i, columns are j.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Master seed; drawn from system entropy and recorded when absent.
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub mc: McArgs,
    /// Output file; a manifest is written next to it.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Output format; taken from the file extension when absent.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct VerifyArgs {
    /// t1 | t2 | t3 | corollary | t5 | t6 | gauss-not-l2 | func-t2 | func-t3
    pub theorem: String,
    /// Master seed (required).
    #[arg(long)]
    pub seed: u64,
    /// Law for t1.
    #[arg(long, default_value = "loggamma:2")]
    pub dist: String,
    /// Orlicz function for t1; the one generated by --dist when absent.
    #[arg(long = "M", value_name = "FUNCTION")]
    pub m_function: Option<String>,
    /// Sizes n for t1, corollary and gauss-not-l2.
    #[arg(long, value_delimiter = ',')]
    pub ns: Option<Vec<usize>>,
    /// Shapes `n x m` for product studies, comma separated (e.g. 4x4,8x8).
    #[arg(long, value_delimiter = ',')]
    pub shapes: Option<Vec<String>>,
    /// Random coefficient draws per size and family.
    #[arg(long, default_value_t = 5)]
    pub trials: usize,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    /// Grid of s values for function studies.
    #[arg(long, value_delimiter = ',')]
    pub s_grid: Option<Vec<f64>>,
    #[command(flatten)]
    #[serde(flatten)]
    pub mc: McArgs,
    /// Directory for `<theorem>.csv`, `<theorem>.json` and the manifest.
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct TableArgs {
    #[arg(long = "M", value_name = "FUNCTION")]
    pub m_function: String,
    #[arg(long, default_value_t = 0.01)]
    pub s_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub s_max: f64,
    #[arg(long, default_value_t = 200)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = Spacing::Log)]
    pub spacing: Spacing,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
    /// Override the recorded worker count.
    #[arg(long)]
    pub workers: Option<usize>,
    /// Write outputs into this directory instead of the recorded locations.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
}

/// Written next to every output file.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Command,
    pub master_seed: Option<u64>,
    pub tool_version: String,
    pub wall_clock_seconds: f64,
    pub outputs: Vec<PathBuf>,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Domain(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// Parses `args` (including the program name) and runs the command; returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            EXIT_INPUT
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            EXIT_DOMAIN
        }
    }
}

fn execute(command: Command) -> CliResult<i32> {
    match command {
        Command::Norm(args) => cmd_norm(&args),
        Command::Estimate(args) => cmd_estimate(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
        Command::Replay(args) => cmd_replay(&args),
    }
}

/// A float with 12 significant digits, in fixed notation for moderate sizes.
pub fn sig12(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let sci = format!("{v:.11e}");
    let exp: i32 = sci
        .rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .unwrap_or(0);
    if (-4..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        format!("{v:.decimals$}")
    } else {
        sci
    }
}

fn parse_spec<T: std::str::FromStr<Err = Error>>(s: &str, what: &str) -> CliResult<T> {
    s.parse().map_err(|e: Error| match e {
        Error::Parse(msg) => input(format!("invalid {what} `{s}`: {msg}")),
        other => CliError::Domain(other),
    })
}

fn read_numbers(path: &Path) -> CliResult<Vec<Vec<f64>>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(|e| input(format!("{}: {e}", path.display())))?;
        let row = record
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| {
                f.parse::<f64>().map_err(|_| {
                    input(format!(
                        "{}:{}: `{f}` is not a number",
                        path.display(),
                        line + 1
                    ))
                })
            })
            .collect::<CliResult<Vec<f64>>>()?;
        if !row.is_empty() {
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return Err(input(format!("{} contains no numbers", path.display())));
    }
    Ok(rows)
}

fn read_matrix(path: &Path) -> CliResult<CoefficientMatrix> {
    let rows = read_numbers(path)?;
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(input(format!(
            "{}: rows have different lengths",
            path.display()
        )));
    }
    Ok(CoefficientMatrix::from_rows(&rows)?)
}

fn vector_input(x: &Option<Vec<f64>>, x_file: &Option<PathBuf>) -> CliResult<Option<Vec<f64>>> {
    match (x, x_file) {
        (Some(x), _) => Ok(Some(x.clone())),
        (None, Some(path)) => Ok(Some(read_numbers(path)?.concat())),
        (None, None) => Ok(None),
    }
}

fn cmd_norm(args: &NormArgs) -> CliResult<i32> {
    let value = if let Some(path) = &args.matrix {
        let a = read_matrix(path)?;
        let outer = args.outer.ok_or_else(|| input("--matrix needs --outer"))?;
        let inner = match (&args.inner, &args.m_function) {
            (Some(spec), _) => parse_spec::<InnerNorm>(spec, "inner norm")?,
            (None, Some(m)) => InnerNorm::Orlicz(parse_spec(m, "Orlicz function")?),
            (None, None) => return Err(input("--matrix needs --inner or --M")),
        };
        mixed_norm(&a, outer, &inner)?
    } else {
        let x = vector_input(&args.x, &args.x_file)?
            .ok_or_else(|| input("give --x, --x-file or --matrix"))?;
        let spec = args
            .m_function
            .as_deref()
            .ok_or_else(|| input("a vector norm needs --M"))?;
        let m: OrliczFunction = parse_spec(spec, "Orlicz function")?;
        luxemburg_norm(&m, &x)?
    };
    println!("{}", sig12(value));
    Ok(EXIT_OK)
}

fn mc_config(mc: &McArgs, seed: u64) -> McConfig {
    McConfig {
        samples: mc.samples,
        replicates: mc.replicates,
        master_seed: seed,
        workers: mc.workers,
        ..McConfig::default()
    }
}

fn estimate_to_csv(est: &McEstimate) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let estimator = serde_json::to_value(est.estimator)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    w.write_record(["value", "spread", "samples_total", "estimator"])
        .map_err(|e| input(e.to_string()))?;
    w.write_record([
        sig17(est.value),
        sig17(est.spread),
        est.samples_total.to_string(),
        estimator,
    ])
    .map_err(|e| input(e.to_string()))?;
    let bytes = w.into_inner().map_err(|e| input(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| input(e.to_string()))
}

fn cmd_estimate(mut args: EstimateArgs) -> CliResult<i32> {
    let started = Instant::now();
    let seed = *args.seed.get_or_insert_with(|| rand::rng().random());
    let cfg = mc_config(&args.mc, seed);
    let est = if let Some(d) = &args.dist {
        let model: DistributionModel = parse_spec(d, "distribution")?;
        let x = match vector_input(&args.x, &args.x_file)? {
            Some(x) => x,
            None => match &args.matrix {
                Some(path) => read_matrix(path)?.entries().to_vec(),
                None => return Err(input("give --x, --x-file or --matrix")),
            },
        };
        expected_max_single(&model, &x, &cfg)?
    } else {
        let (Some(d1), Some(d2), Some(path)) = (&args.dist1, &args.dist2, &args.matrix) else {
            return Err(input("give --dist, or --dist1 with --dist2 and --matrix"));
        };
        let m1: DistributionModel = parse_spec(d1, "distribution")?;
        let m2: DistributionModel = parse_spec(d2, "distribution")?;
        expected_max_product(&m1, &m2, &read_matrix(path)?, &cfg)?
    };
    println!("value {}", sig12(est.value));
    println!("spread {}", sig12(est.spread));
    if let Some(out) = args.out.clone() {
        let format = args
            .format
            .unwrap_or(match out.extension().and_then(|e| e.to_str()) {
                Some("json") => Format::Json,
                _ => Format::Csv,
            });
        let body = match format {
            Format::Csv => estimate_to_csv(&est)?,
            Format::Json => {
                serde_json::to_string_pretty(&est).map_err(|e| input(e.to_string()))? + "\n"
            }
        };
        write_file(&out, &body)?;
        write_manifest(
            &out,
            "estimate",
            Command::Estimate(args),
            Some(seed),
            started,
            vec![out.clone()],
        )?;
    }
    Ok(EXIT_OK)
}

fn parse_shape(s: &str) -> CliResult<(usize, usize)> {
    let bad = || input(format!("invalid shape `{s}`, expected NxM"));
    let (n, m) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    Ok((
        n.trim().parse().map_err(|_| bad())?,
        m.trim().parse().map_err(|_| bad())?,
    ))
}

fn run_study(args: &VerifyArgs, id: TheoremId) -> CliResult<RatioStudy> {
    let cfg: StudyConfig = mc_config(&args.mc, args.seed).into();
    let ns = |default: &[usize]| args.ns.clone().unwrap_or_else(|| default.to_vec());
    let shapes = || -> CliResult<Vec<(usize, usize)>> {
        match &args.shapes {
            Some(list) => list.iter().map(|s| parse_shape(s)).collect(),
            None => Ok(vec![(4, 4), (8, 8), (16, 16)]),
        }
    };
    let p = |default: f64| args.p.unwrap_or(default);
    let grid = |lo: f64, hi: f64, count: usize| {
        args.s_grid
            .clone()
            .unwrap_or_else(|| linear_grid(lo, hi, count))
    };
    Ok(match id {
        TheoremId::T1 => {
            let model: DistributionModel = parse_spec(&args.dist, "distribution")?;
            let m = match &args.m_function {
                Some(spec) => parse_spec(spec, "Orlicz function")?,
                None => OrliczFunction::generated_by(&model),
            };
            study_thm1(&model, &m, &ns(&[2, 8, 32, 128]), args.trials, &cfg)?
        }
        TheoremId::Corollary => study_corollary(&ns(&[2, 8, 32, 128]), args.trials, &cfg)?,
        TheoremId::T2 => study_product(
            ProductTheorem::T2 {
                p: p(1.2),
                q: args.q.unwrap_or(1.8),
            },
            &shapes()?,
            args.trials,
            &cfg,
        )?,
        TheoremId::T3 => study_product(
            ProductTheorem::T3 { p: p(1.5) },
            &shapes()?,
            args.trials,
            &cfg,
        )?,
        TheoremId::T5 => study_product(
            ProductTheorem::T5 { p: p(1.5) },
            &shapes()?,
            args.trials,
            &cfg,
        )?,
        TheoremId::T6 => study_product(ProductTheorem::T6, &shapes()?, args.trials, &cfg)?,
        TheoremId::GaussNotL2 => study_gaussian_not_l2(&ns(&[4, 16, 64, 256, 1024]), &cfg)?,
        TheoremId::FuncEquivT2 => study_function_equiv(
            FunctionEquivalence::T2Proof {
                p: p(1.2),
                q: args.q.unwrap_or(1.8),
            },
            &grid(0.05, 1.0, 20),
        )?,
        TheoremId::FuncEquivT3 => study_function_equiv(
            FunctionEquivalence::T3Proof { p: p(1.5) },
            &grid(0.3, 3.0, 28),
        )?,
        TheoremId::GaussControl => {
            return Err(input("the control study runs as part of gauss-not-l2"))
        }
    })
}

fn cmd_verify(args: VerifyArgs) -> CliResult<i32> {
    let started = Instant::now();
    let id: TheoremId = args.theorem.parse().map_err(|_| {
        input(format!(
            "unknown theorem `{}`; expected t1, t2, t3, corollary, t5, t6, gauss-not-l2, func-t2 or func-t3",
            args.theorem
        ))
    })?;
    if id == TheoremId::GaussControl {
        return Err(input("the control study runs as part of gauss-not-l2"));
    }
    let study = run_study(&args, id)?;
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| input(format!("cannot create {}: {e}", args.out_dir.display())))?;
    let csv_path = args.out_dir.join(format!("{id}.csv"));
    let json_path = args.out_dir.join(format!("{id}.json"));
    write_file(&csv_path, &study.to_csv()?)?;
    write_file(&json_path, &(study.to_json()? + "\n"))?;
    let verdict = if study.pass() { "PASS" } else { "FAIL" };
    println!(
        "{verdict} {id} ratio_min={} ratio_max={} ratio_spread={} ({})",
        sig12(study.ratio_min()),
        sig12(study.ratio_max()),
        sig12(study.ratio_spread()),
        study.summary.criterion
    );
    if let Some(control) = &study.control {
        println!(
            "  control {} ratio_spread={} ({})",
            if control.pass() { "PASS" } else { "FAIL" },
            sig12(control.ratio_spread()),
            control.summary.criterion
        );
    }
    let manifest_base = args.out_dir.join(id.as_str());
    let seed = args.seed;
    write_manifest(
        &manifest_base,
        "verify",
        Command::Verify(args),
        Some(seed),
        started,
        vec![csv_path, json_path],
    )?;
    Ok(if study.pass() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_table(args: TableArgs) -> CliResult<i32> {
    let started = Instant::now();
    let m: OrliczFunction = parse_spec(&args.m_function, "Orlicz function")?;
    if !(args.s_min > 0.0 && args.s_max > args.s_min && args.count >= 2) {
        return Err(CliError::Domain(Error::Domain(
            "need 0 < s-min < s-max and count >= 2".into(),
        )));
    }
    let grid: Vec<f64> = match args.spacing {
        Spacing::Linear => linear_grid(args.s_min, args.s_max, args.count),
        Spacing::Log => linear_grid(args.s_min.ln(), args.s_max.ln(), args.count)
            .into_iter()
            .map(f64::exp)
            .collect(),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["s", "M"])
        .map_err(|e| input(e.to_string()))?;
    for s in grid {
        w.write_record([sig17(s), sig17(m.try_eval(s)?)])
            .map_err(|e| input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| input(e.to_string()))?;
    let body = String::from_utf8(bytes).map_err(|e| input(e.to_string()))?;
    match args.out.clone() {
        Some(out) => {
            write_file(&out, &body)?;
            write_manifest(
                &out,
                "table",
                Command::Table(args),
                None,
                started,
                vec![out.clone()],
            )?;
        }
        None => print!("{body}"),
    }
    Ok(EXIT_OK)
}

fn cmd_replay(args: &ReplayArgs) -> CliResult<i32> {
    let text = fs::read_to_string(&args.manifest)
        .map_err(|e| input(format!("cannot read {}: {e}", args.manifest.display())))?;
    let manifest: RunManifest = serde_json::from_str(&text)
        .map_err(|e| input(format!("{}: not a manifest: {e}", args.manifest.display())))?;
    let relocate = |path: &Path| match &args.out_dir {
        Some(dir) => dir.join(path.file_name().unwrap_or(path.as_os_str())),
        None => path.to_path_buf(),
    };
    let command = match manifest.parameters {
        Command::Estimate(mut a) => {
            if let Some(w) = args.workers {
                a.mc.workers = w;
            }
            a.out = a.out.as_deref().map(relocate);
            Command::Estimate(a)
        }
        Command::Verify(mut a) => {
            if let Some(w) = args.workers {
                a.mc.workers = w;
            }
            if let Some(dir) = &args.out_dir {
                a.out_dir = dir.clone();
            }
            Command::Verify(a)
        }
        Command::Table(mut a) => {
            a.out = a.out.as_deref().map(relocate);
            Command::Table(a)
        }
        other => other,
    };
    execute(command)
}

fn write_file(path: &Path, body: &str) -> CliResult<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)
            .map_err(|e| input(format!("cannot create {}: {e}", dir.display())))?;
    }
    fs::write(path, body).map_err(|e| input(format!("cannot write {}: {e}", path.display())))
}

/// Writes `<output>.manifest.json`.
fn write_manifest(
    output: &Path,
    name: &str,
    parameters: Command,
    master_seed: Option<u64>,
    started: Instant,
    outputs: Vec<PathBuf>,
) -> CliResult<()> {
    let manifest = RunManifest {
        command: name.to_string(),
        parameters,
        master_seed,
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        wall_clock_seconds: started.elapsed().as_secs_f64(),
        outputs,
    };
    let mut path = output.as_os_str().to_owned();
    path.push(".manifest.json");
    let body = serde_json::to_string_pretty(&manifest).map_err(|e| input(e.to_string()))?;
    write_file(Path::new(&path), &(body + "\n"))
}
