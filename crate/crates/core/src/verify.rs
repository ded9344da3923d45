//! Bounded-ratio experiments for the order equivalences
//! `E max |…| ∼ ‖·‖`.
//!
//! Each study sweeps configurations, divides a Monte Carlo estimate (or, for
//! the function-level studies, one Orlicz function) by the matching norm (or
//! the other function), and summarizes the spread `max ratio / min ratio`
//! against a threshold fixed in advance.
//!
//! Index binding for the product studies. Rows of the coefficient matrix are
//! the index `i` and carry the inner norm; columns are `j` and carry the outer
//! `ℓ_p` norm:
//!
//! | study | ξ_i (rows)        | η_j (columns)     | norm                         |
//! |-------|-------------------|-------------------|------------------------------|
//! | T2    | q-stable          | p-stable          | `ℓ_p^m(ℓ_q^n)`               |
//! | T3    | standard Gaussian | p-stable          | `ℓ_p^m(ℓ_{M_gauss}^n)`       |
//! | T5    | log-gamma(1, 2)   | p-stable          | `ℓ_p^m(ℓ_2^n)`               |
//! | T6    | standard Gaussian | log-gamma(1, 2)   | `ℓ_2^m(ℓ_{M_gauss}^n)`       |

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distributions::{DistributionModel, Law, RngStream};
use crate::error::{domain, parse_error, Error, Result};
use crate::mc::{product_in_pool, single_in_pool, McConfig, McEstimate};
use crate::numerics::QuadratureSpec;
use crate::orlicz::{
    lp_norm, luxemburg_norm, mixed_norm, power_composed, CoefficientMatrix, InnerNorm,
    OrliczFunction,
};

/// Seed of the coefficient ensembles. Kept apart from the Monte Carlo seed so
/// that changing `--seed` only changes the sampling noise.
pub const DEFAULT_ENSEMBLE_SEED: u64 = 0x0c0e_ff1c_1e27;

pub const THM1_LOGGAMMA_THRESHOLD: f64 = 2.5;
pub const THM1_STABLE_THRESHOLD: f64 = 4.0;
pub const GAUSSIAN_CONTROL_THRESHOLD: f64 = 3.0;
pub const PRODUCT_THRESHOLD: f64 = 4.0;
pub const GAUSS_NOT_L2_MAX_DROP: f64 = 0.5;
pub const FUNC_T2_MAX_RATIO: f64 = 3.0;
pub const FUNC_T3_THRESHOLD: f64 = 50.0;
/// Function studies skip `s` below this, where both sides underflow.
pub const FUNC_MIN_S: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "t1")]
    T1,
    #[serde(rename = "t2")]
    T2,
    #[serde(rename = "t3")]
    T3,
    #[serde(rename = "corollary")]
    Corollary,
    #[serde(rename = "t5")]
    T5,
    #[serde(rename = "t6")]
    T6,
    #[serde(rename = "gauss-not-l2")]
    GaussNotL2,
    #[serde(rename = "gauss-m-control")]
    GaussControl,
    #[serde(rename = "func-t2")]
    FuncEquivT2,
    #[serde(rename = "func-t3")]
    FuncEquivT3,
}

impl TheoremId {
    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::T1 => "t1",
            TheoremId::T2 => "t2",
            TheoremId::T3 => "t3",
            TheoremId::Corollary => "corollary",
            TheoremId::T5 => "t5",
            TheoremId::T6 => "t6",
            TheoremId::GaussNotL2 => "gauss-not-l2",
            TheoremId::GaussControl => "gauss-m-control",
            TheoremId::FuncEquivT2 => "func-t2",
            TheoremId::FuncEquivT3 => "func-t3",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "t1" => TheoremId::T1,
            "t2" => TheoremId::T2,
            "t3" => TheoremId::T3,
            "corollary" => TheoremId::Corollary,
            "t5" => TheoremId::T5,
            "t6" => TheoremId::T6,
            "gauss-not-l2" => TheoremId::GaussNotL2,
            "func-t2" => TheoremId::FuncEquivT2,
            "func-t3" => TheoremId::FuncEquivT3,
            _ => return Err(parse_error(format!("unknown theorem `{s}`"))),
        })
    }
}

/// Pass rule of a study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Criterion {
    /// `ratio_max / ratio_min ≤ threshold`.
    SpreadAtMost { threshold: f64 },
    /// `ratio_max ≤ threshold`.
    MaxAtMost { threshold: f64 },
    /// Ratios strictly decrease along the rows and `last / first ≤ threshold`.
    DecreasingWithDrop { threshold: f64 },
}

impl Criterion {
    pub fn threshold(&self) -> f64 {
        match *self {
            Criterion::SpreadAtMost { threshold }
            | Criterion::MaxAtMost { threshold }
            | Criterion::DecreasingWithDrop { threshold } => threshold,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::SpreadAtMost { threshold } => write!(f, "ratio_spread <= {threshold}"),
            Criterion::MaxAtMost { threshold } => write!(f, "ratio_max <= {threshold}"),
            Criterion::DecreasingWithDrop { threshold } => {
                write!(f, "strictly decreasing with last/first <= {threshold}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub theorem_id: TheoremId,
    pub config: String,
    pub n: usize,
    pub m: usize,
    pub p: Option<f64>,
    pub q: Option<f64>,
    pub mc_value: f64,
    pub mc_spread: f64,
    pub norm_value: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub ratio_min: f64,
    pub ratio_max: f64,
    pub ratio_spread: f64,
    pub pass: bool,
    pub threshold: f64,
    pub criterion: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioStudy {
    pub theorem_id: TheoremId,
    pub rows: Vec<RatioRow>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub control: Option<Box<RatioStudy>>,
}

impl RatioStudy {
    fn new(theorem_id: TheoremId, rows: Vec<RatioRow>, criterion: Criterion) -> Result<Self> {
        if rows.is_empty() {
            return Err(domain("a study needs at least one row"));
        }
        let ratios: Vec<f64> = rows.iter().map(|r| r.ratio).collect();
        let ratio_min = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let ratio_max = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let ratio_spread = ratio_max / ratio_min;
        let valid = ratio_min > 0.0 && ratio_max.is_finite();
        let pass = valid
            && match criterion {
                Criterion::SpreadAtMost { threshold } => ratio_spread <= threshold,
                Criterion::MaxAtMost { threshold } => ratio_max <= threshold,
                Criterion::DecreasingWithDrop { threshold } => {
                    ratios.windows(2).all(|w| w[1] < w[0])
                        && ratios[ratios.len() - 1] / ratios[0] <= threshold
                }
            };
        Ok(Self {
            theorem_id,
            rows,
            summary: Summary {
                ratio_min,
                ratio_max,
                ratio_spread,
                pass,
                threshold: criterion.threshold(),
                criterion: criterion.to_string(),
            },
            control: None,
        })
    }

    pub fn ratio_min(&self) -> f64 {
        self.summary.ratio_min
    }

    pub fn ratio_max(&self) -> f64 {
        self.summary.ratio_max
    }

    pub fn ratio_spread(&self) -> f64 {
        self.summary.ratio_spread
    }

    /// Passes its own criterion and that of its control, if any.
    pub fn pass(&self) -> bool {
        self.summary.pass && self.control.as_ref().is_none_or(|c| c.pass())
    }

    /// CSV with one row per configuration; control rows follow the main rows.
    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record([
                "theorem_id",
                "config",
                "n",
                "m",
                "p",
                "q",
                "mc_value",
                "mc_spread",
                "norm_value",
                "ratio",
            ])
            .map_err(csv_error)?;
        let rows = self
            .rows
            .iter()
            .chain(self.control.iter().flat_map(|c| c.rows.iter()));
        for row in rows {
            let opt = |v: Option<f64>| v.map(sig17).unwrap_or_default();
            writer
                .write_record([
                    row.theorem_id.as_str().to_string(),
                    row.config.clone(),
                    row.n.to_string(),
                    row.m.to_string(),
                    opt(row.p),
                    opt(row.q),
                    sig17(row.mc_value),
                    sig17(row.mc_spread),
                    sig17(row.norm_value),
                    sig17(row.ratio),
                ])
                .map_err(csv_error)?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| domain(format!("csv: {e}")))?;
        String::from_utf8(bytes).map_err(|e| domain(format!("csv: {e}")))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| domain(format!("json: {e}")))
    }
}

/// A float with 17 significant digits.
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

fn csv_error(e: csv::Error) -> Error {
    domain(format!("csv: {e}"))
}

/// Monte Carlo settings plus the coefficient ensemble used by a study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    pub mc: McConfig,
    pub ensemble_seed: u64,
    /// Multiplies every generated coefficient.
    pub coefficient_scale: f64,
}

impl From<McConfig> for StudyConfig {
    fn from(mc: McConfig) -> Self {
        Self {
            mc,
            ensemble_seed: DEFAULT_ENSEMBLE_SEED,
            coefficient_scale: 1.0,
        }
    }
}

impl StudyConfig {
    /// Monte Carlo settings for row `k`: its own master seed, derived from the
    /// study seed and the row position only.
    fn row_mc(&self, k: usize) -> McConfig {
        self.mc
            .with_seed(splitmix64(self.mc.master_seed ^ splitmix64(k as u64 + 1)))
    }

    fn coefficient_rng(&self, k: usize) -> RngStream {
        RngStream::new(
            splitmix64(self.ensemble_seed ^ splitmix64(k as u64 + 1)),
            1 << 63,
        )
    }
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The three stressed coefficient families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// iid uniform on `(0.1, 1)`.
    Uniform,
    /// `0.5^k`, randomly permuted and rescaled.
    Geometric,
    /// One entry equal to 1, the rest uniform on `(0, 0.05)`.
    SpikeNoise,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Uniform, Family::Geometric, Family::SpikeNoise];

    fn name(&self) -> &'static str {
        match self {
            Family::Uniform => "uniform",
            Family::Geometric => "geometric",
            Family::SpikeNoise => "spike",
        }
    }

    pub fn generate(&self, len: usize, rng: &mut RngStream) -> Vec<f64> {
        match self {
            Family::Uniform => (0..len).map(|_| rng.uniform_range(0.1, 1.0)).collect(),
            Family::Geometric => {
                let scale = rng.uniform_range(0.5, 2.0);
                let mut v: Vec<f64> = (0..len).map(|k| scale * 0.5f64.powi(k as i32)).collect();
                for k in (1..len).rev() {
                    v.swap(k, rng.index(k + 1));
                }
                v
            }
            Family::SpikeNoise => {
                let mut v: Vec<f64> = (0..len).map(|_| rng.uniform_range(0.0, 0.05)).collect();
                let spike = rng.index(len);
                v[spike] = 1.0;
                v
            }
        }
    }
}

struct Job {
    config: String,
    n: usize,
    m: usize,
    coefficients: CoefficientMatrix,
}

/// The jobs of a sweep over `shapes × trials × families`, in row order.
fn ensemble(cfg: &StudyConfig, shapes: &[(usize, usize)], trials: usize) -> Result<Vec<Job>> {
    if trials == 0 {
        return Err(domain("need at least one trial"));
    }
    let mut jobs = Vec::new();
    for &(n, m) in shapes {
        if n == 0 || m == 0 {
            return Err(domain("shapes must be positive"));
        }
        for trial in 0..trials {
            for family in Family::ALL {
                let mut rng = cfg.coefficient_rng(jobs.len());
                let entries: Vec<f64> = family
                    .generate(n * m, &mut rng)
                    .into_iter()
                    .map(|v| v * cfg.coefficient_scale)
                    .collect();
                let shape = if m == 1 {
                    format!("n={n}")
                } else {
                    format!("n={n} m={m}")
                };
                jobs.push(Job {
                    config: format!("{shape} family={} trial={trial}", family.name()),
                    n,
                    m,
                    coefficients: CoefficientMatrix::new(n, m, entries)?,
                });
            }
        }
    }
    Ok(jobs)
}

fn run_rows<F>(cfg: &StudyConfig, jobs: Vec<Job>, row: F) -> Result<Vec<RatioRow>>
where
    F: Fn(usize, &Job, &McConfig) -> Result<RatioRow> + Sync,
{
    cfg.mc.validate()?;
    let pool = cfg.mc.thread_pool()?;
    pool.install(|| {
        jobs.par_iter()
            .enumerate()
            .map(|(k, job)| row(k, job, &cfg.row_mc(k)))
            .collect::<Result<Vec<_>>>()
    })
}

fn make_row(
    theorem_id: TheoremId,
    job: &Job,
    p: Option<f64>,
    q: Option<f64>,
    est: &McEstimate,
    norm: f64,
) -> RatioRow {
    RatioRow {
        theorem_id,
        config: job.config.clone(),
        n: job.n,
        m: job.m,
        p,
        q,
        mc_value: est.value,
        mc_spread: est.spread,
        norm_value: norm,
        ratio: est.value / norm,
    }
}

fn thm1_threshold(model: &DistributionModel) -> f64 {
    match model.kind() {
        Law::LogGamma1p => THM1_LOGGAMMA_THRESHOLD,
        Law::SymmetricStable => THM1_STABLE_THRESHOLD,
        Law::StandardGaussian => GAUSSIAN_CONTROL_THRESHOLD,
    }
}

fn thm1_study(
    id: TheoremId,
    model: &DistributionModel,
    m: &OrliczFunction,
    ns: &[usize],
    trials: usize,
    cfg: &StudyConfig,
) -> Result<RatioStudy> {
    let shapes: Vec<(usize, usize)> = ns.iter().map(|&n| (n, 1)).collect();
    let jobs = ensemble(cfg, &shapes, trials)?;
    let p = Some(model.p());
    let rows = run_rows(cfg, jobs, |_, job, mc| {
        let a = job.coefficients.entries();
        let est = single_in_pool(model, a, mc)?;
        Ok(make_row(id, job, p, None, &est, luxemburg_norm(m, a)?))
    })?;
    RatioStudy::new(
        id,
        rows,
        Criterion::SpreadAtMost {
            threshold: thm1_threshold(model),
        },
    )
}

/// `E max_i |a_i ξ_i|` against `‖a‖_M` over random coefficient vectors.
pub fn study_thm1(
    model: &DistributionModel,
    m: &OrliczFunction,
    ns: &[usize],
    trials: usize,
    cfg: &StudyConfig,
) -> Result<RatioStudy> {
    thm1_study(TheoremId::T1, model, m, ns, trials, cfg)
}

/// log-gamma(1, 2) weights against the plain `ℓ_2` norm.
pub fn study_corollary(ns: &[usize], trials: usize, cfg: &StudyConfig) -> Result<RatioStudy> {
    let model = DistributionModel::log_gamma(2.0)?;
    let l2 = OrliczFunction::power(2.0)?;
    thm1_study(TheoremId::Corollary, &model, &l2, ns, trials, cfg)
}

/// The product-space statements, with their parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "theorem", rename_all = "snake_case")]
pub enum ProductTheorem {
    T2 { p: f64, q: f64 },
    T3 { p: f64 },
    T5 { p: f64 },
    T6,
}

/// Laws and norm of a product study, following the binding table above.
pub struct ProductSetup {
    pub xi: DistributionModel,
    pub eta: DistributionModel,
    pub outer_p: f64,
    pub inner: InnerNorm,
}

impl ProductTheorem {
    pub fn id(&self) -> TheoremId {
        match self {
            ProductTheorem::T2 { .. } => TheoremId::T2,
            ProductTheorem::T3 { .. } => TheoremId::T3,
            ProductTheorem::T5 { .. } => TheoremId::T5,
            ProductTheorem::T6 => TheoremId::T6,
        }
    }

    fn pq(&self) -> (Option<f64>, Option<f64>) {
        match *self {
            ProductTheorem::T2 { p, q } => (Some(p), Some(q)),
            ProductTheorem::T3 { p } | ProductTheorem::T5 { p } => (Some(p), None),
            ProductTheorem::T6 => (None, None),
        }
    }

    pub fn setup(&self) -> Result<ProductSetup> {
        let in_unit_range = |p: f64| p > 1.0 && p < 2.0;
        match *self {
            ProductTheorem::T2 { p, q } => {
                if !(in_unit_range(p) && in_unit_range(q) && p < q) {
                    return Err(domain(format!("t2 requires 1< p < q<2, got p={p}, q={q}")));
                }
                Ok(ProductSetup {
                    xi: DistributionModel::stable(q)?,
                    eta: DistributionModel::stable(p)?,
                    outer_p: p,
                    inner: InnerNorm::Lq(q),
                })
            }
            ProductTheorem::T3 { p } => {
                if !in_unit_range(p) {
                    return Err(domain(format!("t3 requires 1 < p < 2, got p={p}")));
                }
                Ok(ProductSetup {
                    xi: DistributionModel::gaussian(),
                    eta: DistributionModel::stable(p)?,
                    outer_p: p,
                    inner: InnerNorm::Orlicz(OrliczFunction::gaussian()),
                })
            }
            ProductTheorem::T5 { p } => {
                if !in_unit_range(p) {
                    return Err(domain(format!("t5 requires 1 < p < 2, got p={p}")));
                }
                Ok(ProductSetup {
                    xi: DistributionModel::log_gamma(2.0)?,
                    eta: DistributionModel::stable(p)?,
                    outer_p: p,
                    inner: InnerNorm::Lq(2.0),
                })
            }
            ProductTheorem::T6 => Ok(ProductSetup {
                xi: DistributionModel::gaussian(),
                eta: DistributionModel::log_gamma(2.0)?,
                outer_p: 2.0,
                inner: InnerNorm::Orlicz(OrliczFunction::gaussian()),
            }),
        }
    }
}

/// `E_{Ω1} E_{Ω2} max_{i,j} |a_ij ξ_i η_j|` against the mixed norm over random
/// `n × m` coefficient matrices.
pub fn study_product(
    theorem: ProductTheorem,
    shapes: &[(usize, usize)],
    trials: usize,
    cfg: &StudyConfig,
) -> Result<RatioStudy> {
    let setup = theorem.setup()?;
    let id = theorem.id();
    let (p, q) = theorem.pq();
    let jobs = ensemble(cfg, shapes, trials)?;
    let rows = run_rows(cfg, jobs, |_, job, mc| {
        let est = product_in_pool(&setup.xi, &setup.eta, &job.coefficients, mc)?;
        let norm = mixed_norm(&job.coefficients, setup.outer_p, &setup.inner)?;
        Ok(make_row(id, job, p, q, &est, norm))
    })?;
    RatioStudy::new(
        id,
        rows,
        Criterion::SpreadAtMost {
            threshold: PRODUCT_THRESHOLD,
        },
    )
}

/// Unit-weight Gaussian maxima against `√n`; the ratio has to fall with `n`.
/// The control divides the same estimates by the norm of the Gaussian Orlicz
/// function instead.
pub fn study_gaussian_not_l2(ns: &[usize], cfg: &StudyConfig) -> Result<RatioStudy> {
    if ns.is_empty() || ns.windows(2).any(|w| w[1] <= w[0]) || ns[0] == 0 {
        return Err(domain("ns must be positive and strictly increasing"));
    }
    let gaussian = DistributionModel::gaussian();
    let m = OrliczFunction::gaussian();
    let jobs = ns
        .iter()
        .map(|&n| {
            Ok(Job {
                config: format!("n={n} unit weights"),
                n,
                m: 1,
                coefficients: CoefficientMatrix::vector(vec![1.0; n])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let estimates = run_rows(cfg, jobs, |_, job, mc| {
        let a = job.coefficients.entries();
        let est = single_in_pool(&gaussian, a, mc)?;
        Ok(make_row(
            TheoremId::GaussNotL2,
            job,
            Some(2.0),
            None,
            &est,
            lp_norm(a, 2.0)?,
        ))
    })?;
    let control_rows = estimates
        .iter()
        .map(|row| {
            let norm = luxemburg_norm(&m, &vec![1.0; row.n])?;
            Ok(RatioRow {
                theorem_id: TheoremId::GaussControl,
                config: row.config.clone(),
                p: None,
                norm_value: norm,
                ratio: row.mc_value / norm,
                ..row.clone()
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let control = RatioStudy::new(
        TheoremId::GaussControl,
        control_rows,
        Criterion::SpreadAtMost {
            threshold: GAUSSIAN_CONTROL_THRESHOLD,
        },
    )?;
    let mut study = RatioStudy::new(
        TheoremId::GaussNotL2,
        estimates,
        Criterion::DecreasingWithDrop {
            threshold: GAUSS_NOT_L2_MAX_DROP,
        },
    )?;
    study.control = Some(Box::new(control));
    Ok(study)
}

/// Function-level equivalences used inside the product proofs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FunctionEquivalence {
    /// `M_{ξ^p}(s)` built from the q-stable tail bound `y^{-q}`, against `s^{q/p}`.
    T2Proof { p: f64, q: f64 },
    /// `M_{ξ^p}(s^p)` against `M_ξ(s)` for Gaussian `ξ`, both by quadrature.
    T3Proof { p: f64 },
}

/// Pointwise ratios of the two sides of a function equivalence over `s_grid`.
pub fn study_function_equiv(kind: FunctionEquivalence, s_grid: &[f64]) -> Result<RatioStudy> {
    if s_grid.iter().any(|&s| !(s > 0.0 && s <= 10.0)) {
        return Err(domain("grid points must lie in (0, 10]"));
    }
    let grid: Vec<f64> = s_grid
        .iter()
        .copied()
        .filter(|&s| s >= FUNC_MIN_S)
        .collect();
    match kind {
        FunctionEquivalence::T2Proof { p, q } => {
            if !(p > 1.0 && q > p && q < 2.0) {
                return Err(domain(format!(
                    "func-t2 requires 1< p < q<2, got p={p}, q={q}"
                )));
            }
            let composed = power_composed(&OrliczFunction::power(q)?, p)?;
            let rows = grid
                .par_iter()
                .map(|&s| {
                    let lhs = composed.try_eval(s)?;
                    let rhs = s.powf(q / p);
                    Ok(function_row(
                        TheoremId::FuncEquivT2,
                        s,
                        Some(p),
                        Some(q),
                        lhs,
                        rhs,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            RatioStudy::new(
                TheoremId::FuncEquivT2,
                rows,
                Criterion::MaxAtMost {
                    threshold: FUNC_T2_MAX_RATIO,
                },
            )
        }
        FunctionEquivalence::T3Proof { p } => {
            if !(p > 1.0 && p < 2.0) {
                return Err(domain(format!("func-t3 requires 1 < p < 2, got p={p}")));
            }
            let composed = power_composed(&OrliczFunction::gaussian(), p)?;
            let base = OrliczFunction::quadrature(
                DistributionModel::gaussian(),
                QuadratureSpec::default(),
            )?;
            let rows = grid
                .par_iter()
                .map(|&s| {
                    let lhs = composed.try_eval(s.powf(p))?;
                    let rhs = base.try_eval(s)?;
                    Ok(function_row(
                        TheoremId::FuncEquivT3,
                        s,
                        Some(p),
                        None,
                        lhs,
                        rhs,
                    ))
                })
                .collect::<Result<Vec<_>>>()?;
            RatioStudy::new(
                TheoremId::FuncEquivT3,
                rows,
                Criterion::SpreadAtMost {
                    threshold: FUNC_T3_THRESHOLD,
                },
            )
        }
    }
}

fn function_row(
    id: TheoremId,
    s: f64,
    p: Option<f64>,
    q: Option<f64>,
    lhs: f64,
    rhs: f64,
) -> RatioRow {
    RatioRow {
        theorem_id: id,
        config: format!("s={s}"),
        n: 0,
        m: 0,
        p,
        q,
        mc_value: lhs,
        mc_spread: 0.0,
        norm_value: rhs,
        ratio: lhs / rhs,
    }
}

/// `count` points spaced evenly from `lo` to `hi`.
pub fn linear_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count)
            .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
            .collect(),
    }
}
