//! Random-variable models: log-gamma(1, p) (a Pareto law on `[1, ∞)`), the
//! standard Gaussian and the symmetric p-stable law.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{domain, parse_error, Error, Result};
use crate::numerics::{regularized_upper_gamma, TailDecay};

/// Size of the cached sample behind the empirical stable tail.
pub const STABLE_CALIBRATION_SAMPLES: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Law {
    LogGamma1p,
    StandardGaussian,
    SymmetricStable,
}

/// A law `ξ` together with its shape index `p`.
///
/// `LogGamma1p` needs `p > 1`; `SymmetricStable` needs `p ∈ (1, 2)` and uses the
/// standardization with characteristic function `exp(-|θ|^p)`. For the Gaussian
/// `p` is fixed at 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionModel {
    kind: Law,
    p: f64,
}

/// A tail probability `P(|ξ| ≥ y)`, flagged when it comes from a finite sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailProbability {
    pub value: f64,
    pub approximate: bool,
}

impl DistributionModel {
    pub fn log_gamma(p: f64) -> Result<Self> {
        if !(p > 1.0) || !p.is_finite() {
            return Err(domain(format!("log-gamma(1, p) needs p > 1, got {p}")));
        }
        Ok(Self {
            kind: Law::LogGamma1p,
            p,
        })
    }

    pub fn gaussian() -> Self {
        Self {
            kind: Law::StandardGaussian,
            p: 2.0,
        }
    }

    pub fn stable(p: f64) -> Result<Self> {
        if !(p > 1.0 && p < 2.0) {
            return Err(domain(format!(
                "symmetric p-stable law needs 1 < p < 2, got {p}"
            )));
        }
        Ok(Self {
            kind: Law::SymmetricStable,
            p,
        })
    }

    pub fn kind(&self) -> Law {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    /// Decay class of `y ↦ P(|ξ| ≥ y)`, used to truncate tail integrals.
    pub fn tail_class(&self) -> TailDecay {
        match self.kind {
            Law::LogGamma1p | Law::SymmetricStable => TailDecay::PowerLaw { exponent: self.p },
            Law::StandardGaussian => TailDecay::Gaussian,
        }
    }

    /// Points where the tail function has a kink.
    pub fn tail_breakpoints(&self) -> &'static [f64] {
        match self.kind {
            Law::LogGamma1p => &[1.0],
            _ => &[],
        }
    }

    /// `P(|ξ| ≥ y)` when it is known in closed form.
    pub fn exact_tail(&self, y: f64) -> Option<f64> {
        match self.kind {
            Law::LogGamma1p => Some(if y <= 1.0 { 1.0 } else { y.powf(-self.p) }),
            Law::StandardGaussian => {
                if y <= 0.0 {
                    Some(1.0)
                } else {
                    Some(regularized_upper_gamma(0.5, 0.5 * y * y).expect("valid arguments"))
                }
            }
            Law::SymmetricStable => None,
        }
    }

    /// `P(|ξ| ≥ y)`. The stable law has no closed-form tail; its value comes from
    /// the cached calibration sample and is flagged as approximate.
    pub fn tail(&self, y: f64) -> TailProbability {
        match self.exact_tail(y) {
            Some(value) => TailProbability {
                value,
                approximate: false,
            },
            None => {
                let sample = stable_calibration(self.p);
                let below = sample.partition_point(|&v| v < y);
                TailProbability {
                    value: (sample.len() - below) as f64 / sample.len() as f64,
                    approximate: true,
                }
            }
        }
    }

    pub fn density(&self, x: f64) -> Result<f64> {
        match self.kind {
            Law::LogGamma1p => Ok(if x < 1.0 {
                0.0
            } else {
                self.p * x.powf(-self.p - 1.0)
            }),
            Law::StandardGaussian => Ok((-0.5 * x * x).exp() / (2.0 * PI).sqrt()),
            Law::SymmetricStable => Err(Error::Unsupported(
                "the symmetric stable density has no closed form".into(),
            )),
        }
    }

    /// `E|ξ|`.
    pub fn mean_abs(&self) -> f64 {
        match self.kind {
            Law::LogGamma1p => self.p / (self.p - 1.0),
            Law::StandardGaussian => (2.0 / PI).sqrt(),
            // E|X| = (2/π) Γ(1 - 1/p) under the exp(-|θ|^p) standardization.
            Law::SymmetricStable => 2.0 / PI * gamma(1.0 - 1.0 / self.p),
        }
    }

    /// Fills `out` with iid draws.
    pub fn sample_into(&self, rng: &mut RngStream, out: &mut [f64]) {
        match self.kind {
            Law::LogGamma1p => {
                let inv = -1.0 / self.p;
                for v in out.iter_mut() {
                    *v = rng.open01().powf(inv);
                }
            }
            Law::StandardGaussian => {
                let mut chunks = out.chunks_exact_mut(2);
                for pair in &mut chunks {
                    let (a, b) = rng.polar_pair();
                    pair[0] = a;
                    pair[1] = b;
                }
                if let [last] = chunks.into_remainder() {
                    *last = rng.polar_pair().0;
                }
            }
            Law::SymmetricStable => {
                for v in out.iter_mut() {
                    *v = chambers_mallows_stuck(self.p, rng);
                }
            }
        }
    }

    pub fn sample(&self, rng: &mut RngStream, count: usize) -> Vec<f64> {
        let mut out = vec![0.0; count];
        self.sample_into(rng, &mut out);
        out
    }
}

impl fmt::Display for DistributionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Law::LogGamma1p => write!(f, "loggamma:{}", self.p),
            Law::StandardGaussian => write!(f, "gaussian"),
            Law::SymmetricStable => write!(f, "stable:{}", self.p),
        }
    }
}

impl FromStr for DistributionModel {
    type Err = Error;

    /// Parses `gaussian`, `loggamma:<p>` or `stable:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, arg) = match s.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (s, None),
        };
        let index = || -> Result<f64> {
            arg.ok_or_else(|| {
                parse_error(format!("`{name}` needs a shape index, e.g. `{name}:1.5`"))
            })?
            .trim()
            .parse::<f64>()
            .map_err(|e| parse_error(format!("bad shape index in `{s}`: {e}")))
        };
        match name {
            "gaussian" | "normal" => Ok(Self::gaussian()),
            "loggamma" | "pareto" => Self::log_gamma(index()?),
            "stable" => Self::stable(index()?),
            _ => Err(parse_error(format!("unknown distribution `{s}`"))),
        }
    }
}

/// Chambers–Mallows–Stuck draw of a symmetric stable variable with
/// characteristic function `exp(-|θ|^α)`.
fn chambers_mallows_stuck(alpha: f64, rng: &mut RngStream) -> f64 {
    let v = PI * (rng.open01() - 0.5);
    let w = -rng.open01().ln();
    let cos_v = v.cos();
    (alpha * v).sin() / cos_v.powf(1.0 / alpha)
        * (((1.0 - alpha) * v).cos() / w).powf((1.0 - alpha) / alpha)
}

fn stable_calibration(p: f64) -> Arc<Vec<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().expect("calibration cache poisoned");
    guard
        .entry(p.to_bits())
        .or_insert_with(|| {
            let mut rng = RngStream::new(0x5ab1e, u64::MAX);
            let mut sample = vec![0.0; STABLE_CALIBRATION_SAMPLES];
            for v in sample.iter_mut() {
                *v = chambers_mallows_stuck(p, &mut rng).abs();
            }
            sample.sort_unstable_by(f64::total_cmp);
            Arc::new(sample)
        })
        .clone()
}

/// A reproducible random stream: ChaCha8 keyed by `seed`, with `stream_id`
/// selecting one of its 2^64 independent streams.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform on `(0, 1]`.
    pub fn open01(&mut self) -> f64 {
        1.0 - self.rng.random::<f64>()
    }

    pub fn uniform_range(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    /// Two independent standard normals by Marsaglia's polar method.
    fn polar_pair(&mut self) -> (f64, f64) {
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let factor = (-2.0 * s.ln() / s).sqrt();
                return (u * factor, v * factor);
            }
        }
    }
}
