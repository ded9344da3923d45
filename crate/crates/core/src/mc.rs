//! Monte Carlo estimates of `E max_i |a_i ξ_i|` and
//! `E_{Ω1} E_{Ω2} max_{i,j} |a_ij ξ_i η_j|`.
//!
//! Work is split into replicates. Replicate `r` draws from the stream
//! `(master_seed, r)` and the replicate means are folded in index order, so the
//! result does not depend on how many worker threads run them.

use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};
use serde::{Deserialize, Serialize};

use crate::distributions::{DistributionModel, RngStream};
use crate::error::{domain, Result};
use crate::orlicz::CoefficientMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    Mean,
    MedianOfMeans,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    /// Samples per replicate.
    pub samples: usize,
    /// Number of replicates; odd so the median is a single replicate mean.
    pub replicates: usize,
    pub master_seed: u64,
    pub workers: usize,
    pub estimator: Estimator,
}

impl Default for McConfig {
    fn default() -> Self {
        Self {
            samples: 100_000,
            replicates: 15,
            master_seed: 0,
            workers: 1,
            estimator: Estimator::MedianOfMeans,
        }
    }
}

impl McConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples < 100 {
            return Err(domain(format!(
                "need at least 100 samples per replicate, got {}",
                self.samples
            )));
        }
        if self.replicates == 0 || self.replicates.is_multiple_of(2) {
            return Err(domain(format!(
                "replicates must be odd and positive, got {}",
                self.replicates
            )));
        }
        if self.workers == 0 {
            return Err(domain("workers must be at least 1"));
        }
        Ok(())
    }

    pub fn with_seed(mut self, master_seed: u64) -> Self {
        self.master_seed = master_seed;
        self
    }

    /// A thread pool with `workers` threads.
    pub fn thread_pool(&self) -> Result<ThreadPool> {
        ThreadPoolBuilder::new()
            .num_threads(self.workers.max(1))
            .build()
            .map_err(|e| domain(format!("could not start worker pool: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    /// Half-width uncertainty from the interquartile range of replicate means.
    pub spread: f64,
    pub samples_total: usize,
    pub estimator: Estimator,
    pub replicate_means: Vec<f64>,
}

impl McEstimate {
    fn zero(cfg: &McConfig) -> Self {
        Self {
            value: 0.0,
            spread: 0.0,
            samples_total: cfg.samples * cfg.replicates,
            estimator: cfg.estimator,
            replicate_means: vec![0.0; cfg.replicates],
        }
    }

    fn from_replicates(cfg: &McConfig, means: Vec<f64>) -> Self {
        let mut sorted = means.clone();
        sorted.sort_by(f64::total_cmp);
        let value = match cfg.estimator {
            Estimator::MedianOfMeans => quantile(&sorted, 0.5),
            Estimator::Mean => means.iter().sum::<f64>() / means.len() as f64,
        };
        Self {
            value,
            spread: iqr_spread(&sorted),
            samples_total: cfg.samples * cfg.replicates,
            estimator: cfg.estimator,
            replicate_means: means,
        }
    }
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Standard error of the median of `R` roughly normal replicate means, with the
/// replicate standard deviation taken as `IQR / 1.349`.
fn iqr_spread(sorted: &[f64]) -> f64 {
    if sorted.len() < 2 {
        return 0.0;
    }
    let iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);
    let sigma = iqr / 1.349;
    1.2533 * sigma / (sorted.len() as f64).sqrt()
}

/// Runs `replicates` independent batches of `samples` draws of `statistic` in
/// the current rayon pool.
fn run<S>(cfg: &McConfig, statistic: S) -> Vec<f64>
where
    S: Fn(&mut RngStream, &mut Vec<f64>) -> f64 + Sync,
{
    (0..cfg.replicates)
        .into_par_iter()
        .map(|r| {
            let mut rng = RngStream::new(cfg.master_seed, r as u64);
            let mut scratch = Vec::new();
            let mut sum = 0.0;
            for _ in 0..cfg.samples {
                sum += statistic(&mut rng, &mut scratch);
            }
            sum / cfg.samples as f64
        })
        .collect()
}

pub(crate) fn single_in_pool(
    model: &DistributionModel,
    a: &[f64],
    cfg: &McConfig,
) -> Result<McEstimate> {
    cfg.validate()?;
    if a.is_empty() {
        return Err(domain("coefficient vector must not be empty"));
    }
    if a.iter().any(|v| !v.is_finite()) {
        return Err(domain("coefficients must be finite"));
    }
    if a.iter().all(|&v| v == 0.0) {
        return Ok(McEstimate::zero(cfg));
    }
    let weights: Vec<f64> = a.iter().map(|v| v.abs()).collect();
    let n = weights.len();
    let means = run(cfg, |rng, xi| {
        xi.resize(n, 0.0);
        model.sample_into(rng, xi);
        weights
            .iter()
            .zip(xi.iter())
            .fold(0.0f64, |acc, (w, x)| acc.max(w * x.abs()))
    });
    Ok(McEstimate::from_replicates(cfg, means))
}

pub(crate) fn product_in_pool(
    model1: &DistributionModel,
    model2: &DistributionModel,
    a: &CoefficientMatrix,
    cfg: &McConfig,
) -> Result<McEstimate> {
    cfg.validate()?;
    if a.is_zero() {
        return Ok(McEstimate::zero(cfg));
    }
    let (n, m) = (a.n(), a.m());
    let weights: Vec<f64> = a.entries().iter().map(|v| v.abs()).collect();
    let means = run(cfg, |rng, buf| {
        buf.resize(n + m, 0.0);
        let (xi, eta) = buf.split_at_mut(n);
        model1.sample_into(rng, xi);
        model2.sample_into(rng, eta);
        let mut best = 0.0f64;
        for (j, e) in eta.iter().enumerate() {
            let mut column = 0.0f64;
            for (i, x) in xi.iter().enumerate() {
                column = column.max(weights[i * m + j] * x.abs());
            }
            best = best.max(column * e.abs());
        }
        best
    });
    Ok(McEstimate::from_replicates(cfg, means))
}

/// Estimates `E max_i |a_i ξ_i|` for iid `ξ_i` drawn from `model`.
pub fn expected_max_single(
    model: &DistributionModel,
    a: &[f64],
    cfg: &McConfig,
) -> Result<McEstimate> {
    cfg.validate()?;
    cfg.thread_pool()?.install(|| single_in_pool(model, a, cfg))
}

/// Estimates `E_{Ω1} E_{Ω2} max_{i,j} |a_ij ξ_i η_j|` with `ξ ∈ R^n` from `model1`
/// (rows, index `i`) and `η ∈ R^m` from `model2` (columns, index `j`).
///
/// Each sample draws one `ξ` vector and one `η` vector, so the `nm` products are
/// dependent exactly as in the double expectation.
pub fn expected_max_product(
    model1: &DistributionModel,
    model2: &DistributionModel,
    a: &CoefficientMatrix,
    cfg: &McConfig,
) -> Result<McEstimate> {
    cfg.validate()?;
    cfg.thread_pool()?
        .install(|| product_in_pool(model1, model2, a, cfg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg(seed: u64) -> McConfig {
        McConfig {
            samples: 20_000,
            ..McConfig::default()
        }
        .with_seed(seed)
    }

    #[test]
    fn config_validation() {
        assert!(McConfig {
            samples: 99,
            ..McConfig::default()
        }
        .validate()
        .is_err());
        assert!(McConfig {
            replicates: 4,
            ..McConfig::default()
        }
        .validate()
        .is_err());
        assert!(McConfig {
            workers: 0,
            ..McConfig::default()
        }
        .validate()
        .is_err());
        assert!(McConfig::default().validate().is_ok());
    }

    #[test]
    fn zero_coefficients_give_exact_zero() {
        let g = DistributionModel::gaussian();
        let est = expected_max_single(&g, &[0.0, 0.0], &cfg(1)).unwrap();
        assert_eq!(est.value, 0.0);
        assert_eq!(est.spread, 0.0);
        let zero = CoefficientMatrix::zeros(2, 3).unwrap();
        assert_eq!(
            expected_max_product(&g, &g, &zero, &cfg(1)).unwrap().value,
            0.0
        );
    }

    #[test]
    fn single_gaussian_weight() {
        let g = DistributionModel::gaussian();
        let est = expected_max_single(&g, &[2.0], &cfg(2)).unwrap();
        let exact = 2.0 * (2.0 / PI).sqrt();
        assert!(
            (est.value - exact).abs() < 4.0 * est.spread.max(1e-3),
            "{est:?}"
        );
    }

    #[test]
    fn gaussian_atom_product() {
        let g = DistributionModel::gaussian();
        let mut entries = vec![0.0; 6];
        entries[0] = 1.0;
        let atom = CoefficientMatrix::new(2, 3, entries).unwrap();
        let est = expected_max_product(&g, &g, &atom, &cfg(3)).unwrap();
        assert!(
            (est.value - 2.0 / PI).abs() < 4.0 * est.spread.max(1e-3),
            "{est:?}"
        );
    }

    #[test]
    fn dimension_of_product_buffers() {
        let g = DistributionModel::gaussian();
        let a = CoefficientMatrix::new(3, 1, vec![1.0, 0.5, 0.25]).unwrap();
        let b = a.transpose();
        let ea = expected_max_product(&g, &g, &a, &cfg(4)).unwrap();
        let eb = expected_max_product(&g, &g, &b, &cfg(4)).unwrap();
        // Same law on both sides: transposing only relabels which draws are used.
        assert!((ea.value - eb.value).abs() < 5.0 * (ea.spread + eb.spread));
    }

    #[test]
    fn quantiles_and_spread() {
        let sorted = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(quantile(&sorted, 0.5), 3.0);
        assert_eq!(quantile(&sorted, 0.25), 2.0);
        assert_eq!(iqr_spread(&[7.0]), 0.0);
        assert!(iqr_spread(&sorted) > 0.0);
    }

    #[test]
    fn mean_estimator_averages_replicates() {
        let g = DistributionModel::gaussian();
        let c = McConfig {
            estimator: Estimator::Mean,
            ..cfg(5)
        };
        let est = expected_max_single(&g, &[1.0, 1.0], &c).unwrap();
        let avg = est.replicate_means.iter().sum::<f64>() / est.replicate_means.len() as f64;
        assert_eq!(est.value, avg);
    }
}
