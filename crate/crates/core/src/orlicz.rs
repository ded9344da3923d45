//! Orlicz functions and the norms they generate.
//!
//! The Orlicz function generated by a random variable `ξ` with finite first
//! moment is
//!
//! ```text
//! M_ξ(s) = ∫_0^s [ (1/t) P(|ξ| ≥ 1/t) + ∫_{1/t}^∞ P(|ξ| ≥ u) du ] dt
//! ```
//!
//! and is evaluated here by nested quadrature over the tail function. Closed
//! forms are provided for the standard Gaussian, for log-gamma(1, p) and for
//! the power functions `s^p` that stand in for p-stable laws.

use std::cell::RefCell;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use crate::distributions::{DistributionModel, Law};
use crate::error::{domain, parse_error, Error, Result};
use crate::numerics::{
    bisect_monotone, integrate, integrate_to_infinity, QuadratureSpec, TailDecay,
};

/// Closed-form Orlicz function of the standard Gaussian:
/// `e^{-3/(2s²)}` on `(0, 1)` and `e^{-3/2}(3s - 2)` for `s ≥ 1`.
pub fn gaussian_m(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else if s < 1.0 {
        (-1.5 / (s * s)).exp()
    } else {
        (-1.5f64).exp() * (3.0 * s - 2.0)
    }
}

/// Closed-form Orlicz function of log-gamma(1, p):
/// `s^p / (p - 1)` for `s ≤ 1` and `p s / (p - 1) - 1` above.
pub fn loggamma_m(p: f64, s: f64) -> Result<f64> {
    if !(p > 1.0) {
        return Err(domain(format!(
            "log-gamma Orlicz function needs p > 1, got {p}"
        )));
    }
    if s <= 0.0 {
        return Ok(0.0);
    }
    Ok(if s <= 1.0 {
        s.powf(p) / (p - 1.0)
    } else {
        p / (p - 1.0) * s - 1.0
    })
}

/// Evaluates `M_ξ(s)` for a law with a closed-form tail by nested quadrature.
pub fn orlicz_from_tail(model: &DistributionModel, s: f64, spec: &QuadratureSpec) -> Result<f64> {
    let tail = TailFn::from_model(model)?;
    tail.orlicz(s, spec)
}

/// Which representation backs an [`OrliczFunction`].
#[derive(Debug, Clone, PartialEq)]
pub enum OrliczForm {
    ClosedGaussian,
    ClosedLogGamma {
        p: f64,
    },
    /// `s ↦ s^p`; generates the `ℓ_p` norm.
    Power {
        p: f64,
    },
    /// The tail-integral representation for a law with an exact tail.
    QuadratureBacked {
        model: DistributionModel,
        spec: QuadratureSpec,
    },
    /// `M_{ξ^p}`: the tail-integral representation for `|ξ|^p`, where `ξ` is the
    /// law behind `base`. A `Power { r }` base stands for the tail bound `y^{-r}`.
    PowerComposed {
        base: Box<OrliczForm>,
        p: f64,
        spec: QuadratureSpec,
    },
}

/// A convex `M: [0, ∞) → [0, ∞)` with `M(0) = 0`.
#[derive(Debug, Clone)]
pub struct OrliczFunction {
    form: OrliczForm,
    table: Arc<OnceLock<Option<Table>>>,
}

impl PartialEq for OrliczFunction {
    fn eq(&self, other: &Self) -> bool {
        self.form == other.form
    }
}

impl OrliczFunction {
    fn from_form(form: OrliczForm) -> Self {
        Self {
            form,
            table: Arc::new(OnceLock::new()),
        }
    }

    pub fn gaussian() -> Self {
        Self::from_form(OrliczForm::ClosedGaussian)
    }

    pub fn log_gamma(p: f64) -> Result<Self> {
        loggamma_m(p, 1.0)?;
        Ok(Self::from_form(OrliczForm::ClosedLogGamma { p }))
    }

    /// `s^p`, allowed for any `p ≥ 1`.
    pub fn power(p: f64) -> Result<Self> {
        if !(p >= 1.0) || !p.is_finite() {
            return Err(domain(format!(
                "power Orlicz function needs p >= 1, got {p}"
            )));
        }
        Ok(Self::from_form(OrliczForm::Power { p }))
    }

    pub fn quadrature(model: DistributionModel, spec: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        TailFn::from_model(&model)?;
        Ok(Self::from_form(OrliczForm::QuadratureBacked {
            model,
            spec,
        }))
    }

    /// The function generated by a law for use in norm studies: the closed form
    /// where one exists, `s^p` for p-stable laws.
    pub fn generated_by(model: &DistributionModel) -> Self {
        match model.kind() {
            Law::LogGamma1p => Self::from_form(OrliczForm::ClosedLogGamma { p: model.p() }),
            Law::StandardGaussian => Self::gaussian(),
            Law::SymmetricStable => Self::from_form(OrliczForm::Power { p: model.p() }),
        }
    }

    pub fn form(&self) -> &OrliczForm {
        &self.form
    }

    /// `M(s)`, propagating quadrature failures.
    pub fn try_eval(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0) {
            return Err(domain(format!(
                "Orlicz functions are defined on [0, inf), got {s}"
            )));
        }
        match &self.form {
            OrliczForm::ClosedGaussian => Ok(gaussian_m(s)),
            OrliczForm::ClosedLogGamma { p } => loggamma_m(*p, s),
            OrliczForm::Power { p } => Ok(s.powf(*p)),
            OrliczForm::QuadratureBacked { spec, .. } | OrliczForm::PowerComposed { spec, .. } => {
                TailFn::from_form(&self.form)?.orlicz(s, spec)
            }
        }
    }

    /// `M(s)`. Quadrature that stops short of its tolerance yields its best
    /// estimate; any other failure yields NaN.
    pub fn eval(&self, s: f64) -> f64 {
        match self.try_eval(s) {
            Ok(v) => v,
            Err(Error::Accuracy { estimate, .. }) => estimate,
            Err(_) => f64::NAN,
        }
    }

    /// `M(s)` through the memo table for quadrature-backed forms, exact otherwise.
    pub fn eval_cached(&self, s: f64) -> f64 {
        if !self.is_quadrature() {
            return self.eval(s);
        }
        let table = self.table.get_or_init(|| Table::build(self).ok());
        match table.as_ref().and_then(|t| t.interpolate(s)) {
            Some(v) => v,
            None => self.eval(s),
        }
    }

    fn is_quadrature(&self) -> bool {
        matches!(
            self.form,
            OrliczForm::QuadratureBacked { .. } | OrliczForm::PowerComposed { .. }
        )
    }

    /// The `s` with `M(s) = level`, by bisection.
    pub fn inverse(&self, level: f64) -> Result<f64> {
        if !(level > 0.0) || !level.is_finite() {
            return Err(domain(format!(
                "inverse needs a positive finite level, got {level}"
            )));
        }
        let m = |s: f64| self.eval_cached(s);
        let (lo, hi) = bracket_level(&m, level)?;
        bisect_monotone(|s| m(s) - level, lo, hi, 1e-14)
    }
}

impl fmt::Display for OrliczFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn write_form(form: &OrliczForm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match form {
                OrliczForm::ClosedGaussian => write!(f, "gaussian"),
                OrliczForm::ClosedLogGamma { p } => write!(f, "loggamma:{p}"),
                OrliczForm::Power { p } => write!(f, "power:{p}"),
                OrliczForm::QuadratureBacked { model, .. } => write!(f, "quad:{model}"),
                OrliczForm::PowerComposed { base, p, .. } => {
                    write!(f, "composed:{p}:")?;
                    write_form(base, f)
                }
            }
        }
        write_form(&self.form, f)
    }
}

impl FromStr for OrliczFunction {
    type Err = Error;

    /// Parses `gaussian`, `loggamma:<p>`, `power:<p>`, `quad:<distribution>` or
    /// `composed:<p>:<base>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let number = |text: &str| {
            text.trim()
                .parse::<f64>()
                .map_err(|e| parse_error(format!("bad number `{text}` in `{s}`: {e}")))
        };
        match name {
            "gaussian" if rest.is_empty() => Ok(Self::gaussian()),
            "loggamma" => Self::log_gamma(number(rest)?),
            "power" => Self::power(number(rest)?),
            "quad" => Self::quadrature(rest.parse()?, QuadratureSpec::default()),
            "composed" => {
                let (p, base) = rest
                    .split_once(':')
                    .ok_or_else(|| parse_error(format!("`{s}`: expected composed:<p>:<base>")))?;
                power_composed(&base.parse()?, number(p)?)
            }
            _ => Err(parse_error(format!("unknown Orlicz function `{s}`"))),
        }
    }
}

/// `M_{ξ^p}` for the law behind `base`, evaluated by quadrature of the tail of
/// `|ξ|^p`, namely `u ↦ P(|ξ| ≥ u^{1/p})`.
pub fn power_composed(base: &OrliczFunction, p: f64) -> Result<OrliczFunction> {
    if !(p > 0.0) || !p.is_finite() {
        return Err(domain(format!(
            "composition power must be positive, got {p}"
        )));
    }
    let spec = match &base.form {
        OrliczForm::QuadratureBacked { spec, .. } | OrliczForm::PowerComposed { spec, .. } => *spec,
        _ => QuadratureSpec::default(),
    };
    let form = OrliczForm::PowerComposed {
        base: Box::new(base.form.clone()),
        p,
        spec,
    };
    TailFn::from_form(&form)?;
    Ok(OrliczFunction::from_form(form))
}

type Tail = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A tail function `u ↦ P(|X| ≥ u)` with its kinks and decay class.
#[derive(Clone)]
struct TailFn {
    tail: Tail,
    breakpoints: Vec<f64>,
    decay: TailDecay,
}

impl TailFn {
    fn from_model(model: &DistributionModel) -> Result<Self> {
        if model.exact_tail(1.0).is_none() {
            return Err(Error::Unsupported(format!(
                "{model} has no closed-form tail; use the power function s^p instead"
            )));
        }
        let m = *model;
        Ok(Self {
            tail: Arc::new(move |u| m.exact_tail(u).expect("exact tail checked above")),
            breakpoints: model.tail_breakpoints().to_vec(),
            decay: model.tail_class(),
        })
    }

    fn from_form(form: &OrliczForm) -> Result<Self> {
        match form {
            OrliczForm::ClosedGaussian => Self::from_model(&DistributionModel::gaussian()),
            OrliczForm::ClosedLogGamma { p } => {
                Self::from_model(&DistributionModel::log_gamma(*p)?)
            }
            OrliczForm::QuadratureBacked { model, .. } => Self::from_model(model),
            OrliczForm::Power { p } => {
                if !(*p > 1.0) {
                    return Err(domain(format!("tail bound y^-{p} is not integrable")));
                }
                let p = *p;
                Ok(Self {
                    tail: Arc::new(move |u: f64| u.powf(-p)),
                    breakpoints: Vec::new(),
                    decay: TailDecay::PowerLaw { exponent: p },
                })
            }
            OrliczForm::PowerComposed { base, p, .. } => {
                let inner = Self::from_form(base)?;
                let decay = match inner.decay {
                    TailDecay::PowerLaw { exponent } => {
                        if !(exponent / p > 1.0) {
                            return Err(domain(format!(
                                "|ξ|^{p} has tail exponent {} <= 1 and no finite mean",
                                exponent / p
                            )));
                        }
                        TailDecay::PowerLaw {
                            exponent: exponent / p,
                        }
                    }
                    _ => TailDecay::Auto,
                };
                let root = 1.0 / p;
                let base_tail = inner.tail.clone();
                Ok(Self {
                    tail: Arc::new(move |u: f64| base_tail(u.powf(root))),
                    breakpoints: inner.breakpoints.iter().map(|b| b.powf(*p)).collect(),
                    decay,
                })
            }
        }
    }

    fn inner_spec(spec: &QuadratureSpec, decay: TailDecay) -> QuadratureSpec {
        QuadratureSpec {
            rel_tol: (spec.rel_tol * 1e-2).max(1e-14),
            abs_tol: (spec.abs_tol * 1e-2).max(1e-300),
            max_subdivisions: spec.max_subdivisions,
            tail_decay: decay,
        }
    }

    /// `∫_a^∞ P(|X| ≥ u) du`.
    fn tail_integral(&self, a: f64, spec: &QuadratureSpec) -> Result<f64> {
        let inner = Self::inner_spec(spec, self.decay);
        let tail = &*self.tail;
        let mut lo = a;
        let mut total = 0.0;
        for &b in self.breakpoints.iter().filter(|&&b| b > a) {
            total += integrate(tail, lo, b, &inner)?;
            lo = b;
        }
        Ok(total + integrate_to_infinity(tail, lo, &inner)?)
    }

    /// The integrand `(1/t) P(|X| ≥ 1/t) + ∫_{1/t}^∞ P(|X| ≥ u) du`, i.e. `M'(t)`.
    fn derivative(&self, t: f64, spec: &QuadratureSpec) -> Result<f64> {
        if t <= 0.0 {
            return Ok(0.0);
        }
        let a = 1.0 / t;
        Ok((self.tail)(a) / t + self.tail_integral(a, spec)?)
    }

    /// `∫_lo^hi M'(t) dt`.
    fn integral(&self, lo: f64, hi: f64, spec: &QuadratureSpec) -> Result<f64> {
        let failure: RefCell<Option<Error>> = RefCell::new(None);
        let g = |t: f64| match self.derivative(t, spec) {
            Ok(v) => v,
            Err(e) => {
                failure.borrow_mut().get_or_insert(e);
                f64::NAN
            }
        };
        let mut cuts: Vec<f64> = self
            .breakpoints
            .iter()
            .map(|b| 1.0 / b)
            .filter(|&c| c > lo && c < hi)
            .collect();
        cuts.sort_by(f64::total_cmp);
        let mut total = 0.0;
        let mut a = lo;
        for c in cuts.into_iter().chain(std::iter::once(hi)) {
            match integrate(g, a, c, spec) {
                Ok(v) => total += v,
                Err(e) => return Err(failure.into_inner().unwrap_or(e)),
            }
            if let Some(e) = failure.borrow_mut().take() {
                return Err(e);
            }
            a = c;
        }
        Ok(total)
    }

    fn orlicz(&self, s: f64, spec: &QuadratureSpec) -> Result<f64> {
        if !(s >= 0.0) || !s.is_finite() {
            return Err(domain(format!(
                "Orlicz functions are defined on [0, inf), got {s}"
            )));
        }
        if s == 0.0 {
            return Ok(0.0);
        }
        self.integral(0.0, s, spec)
    }
}

/// Geometric `s`-grid memo of a quadrature-backed `M`, interpolated by cubic
/// Hermite polynomials in `(ln s, ln M)` using the exact derivative `M'`.
#[derive(Debug, Clone)]
struct Table {
    ln_s: Vec<f64>,
    ln_m: Vec<f64>,
    slope: Vec<f64>,
}

impl Table {
    const S_MIN: f64 = 1e-3;
    const S_MAX: f64 = 1e4;
    const PER_DECADE: usize = 96;

    fn build(m: &OrliczFunction) -> Result<Self> {
        let (spec, tail) = match &m.form {
            OrliczForm::QuadratureBacked { spec, .. } | OrliczForm::PowerComposed { spec, .. } => {
                (*spec, TailFn::from_form(&m.form)?)
            }
            _ => return Err(Error::Unsupported("closed forms are not tabulated".into())),
        };
        let decades = (Self::S_MAX / Self::S_MIN).log10().round() as usize;
        let count = decades * Self::PER_DECADE + 1;
        let step = 10f64.ln() / Self::PER_DECADE as f64;
        let mut ln_s = Vec::with_capacity(count);
        let mut ln_m = Vec::with_capacity(count);
        let mut slope = Vec::with_capacity(count);
        let mut prev_s = 0.0;
        let mut value = 0.0;
        for k in 0..count {
            let x = Self::S_MIN.ln() + step * k as f64;
            let s = x.exp();
            value += tail.integral(prev_s, s, &spec)?;
            prev_s = s;
            let d = tail.derivative(s, &spec)?;
            ln_s.push(x);
            ln_m.push(value.ln());
            slope.push(if value > 0.0 { s * d / value } else { f64::NAN });
        }
        Ok(Self { ln_s, ln_m, slope })
    }

    fn interpolate(&self, s: f64) -> Option<f64> {
        if s == 0.0 {
            return Some(0.0);
        }
        let x = s.ln();
        let first = *self.ln_s.first()?;
        let last = *self.ln_s.last()?;
        if !(x >= first && x <= last) {
            return None;
        }
        let step = self.ln_s[1] - self.ln_s[0];
        let k = (((x - first) / step) as usize).min(self.ln_s.len() - 2);
        let (y0, y1) = (self.ln_m[k], self.ln_m[k + 1]);
        let (d0, d1) = (self.slope[k], self.slope[k + 1]);
        if !(y0.is_finite() && y1.is_finite() && d0.is_finite() && d1.is_finite()) {
            return None;
        }
        let u = (x - self.ln_s[k]) / step;
        let h00 = (1.0 + 2.0 * u) * (1.0 - u) * (1.0 - u);
        let h10 = u * (1.0 - u) * (1.0 - u);
        let h01 = u * u * (3.0 - 2.0 * u);
        let h11 = u * u * (u - 1.0);
        Some((h00 * y0 + h10 * step * d0 + h01 * y1 + h11 * step * d1).exp())
    }
}

impl fmt::Debug for TailFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TailFn")
            .field("breakpoints", &self.breakpoints)
            .field("decay", &self.decay)
            .finish()
    }
}

/// Finds `[lo, hi]` with `m(lo) ≤ level ≤ m(hi)` by doubling and halving from 1.
fn bracket_level<F: Fn(f64) -> f64>(m: &F, level: f64) -> Result<(f64, f64)> {
    let mut hi = 1.0;
    while m(hi) < level {
        hi *= 2.0;
        if hi > 1e300 {
            return Err(domain("Orlicz function stays below the requested level"));
        }
    }
    let mut lo = hi;
    while m(lo) > level {
        lo *= 0.5;
        if lo < 1e-300 {
            return Err(domain("Orlicz function stays above the requested level"));
        }
    }
    Ok((lo, hi))
}

/// A real `n × m` coefficient matrix `(a_ij)`. Rows are the index `i` (paired
/// with `ξ_i`), columns the index `j` (paired with `η_j`); a vector is `n × 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl CoefficientMatrix {
    /// Row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(domain(
                "coefficient matrix needs at least one row and one column",
            ));
        }
        if entries.len() != rows * cols {
            return Err(domain(format!(
                "expected {rows} x {cols} = {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|v| !v.is_finite()) {
            return Err(domain(format!("coefficients must be finite, found {bad}")));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn vector(entries: Vec<f64>) -> Result<Self> {
        let n = entries.len();
        Self::new(n, 1, entries)
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(domain("all matrix rows must have the same length"));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        Self::new(rows, cols, vec![0.0; rows * cols])
    }

    /// Number of rows, the range of `i`.
    pub fn n(&self) -> usize {
        self.rows
    }

    /// Number of columns, the range of `j`.
    pub fn m(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|v| v * factor).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            entries.extend((0..self.rows).map(|i| self.get(i, j)));
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0.0)
    }
}

/// `(Σ |x_i|^p)^{1/p}`, computed relative to `max |x_i|` to avoid overflow.
pub fn lp_norm(x: &[f64], p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(domain(format!("l_p norm needs p >= 1, got {p}")));
    }
    let max = x.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if max == 0.0 || !max.is_finite() {
        return Ok(max);
    }
    if p.is_infinite() {
        return Ok(max);
    }
    let sum: f64 = x.iter().map(|v| (v.abs() / max).powf(p)).sum();
    Ok(max * sum.powf(1.0 / p))
}

/// The Luxemburg norm `inf { t > 0 : Σ M(|x_i| / t) ≤ 1 }`.
pub fn luxemburg_norm(m: &OrliczFunction, x: &[f64]) -> Result<f64> {
    if let Some(bad) = x.iter().find(|v| !v.is_finite()) {
        return Err(domain(format!(
            "vector entries must be finite, found {bad}"
        )));
    }
    let nonzero: Vec<f64> = x.iter().map(|v| v.abs()).filter(|&v| v > 0.0).collect();
    match nonzero.len() {
        0 => return Ok(0.0),
        1 => return Ok(nonzero[0] / m.inverse(1.0)?),
        _ => {}
    }
    if let OrliczForm::Power { p } = m.form {
        return lp_norm(&nonzero, p);
    }
    let eval = |s: f64| m.eval_cached(s);
    let n = nonzero.len() as f64;
    let x_max = nonzero.iter().copied().fold(0.0, f64::max);
    let (_, s_hi) = bracket_level(&eval, 1.0)?;
    let (s_lo, _) = bracket_level(&eval, 1.0 / n)?;
    let residual = |t: f64| nonzero.iter().map(|&v| eval(v / t)).sum::<f64>() - 1.0;
    bisect_monotone(residual, x_max / s_hi, x_max / s_lo, 1e-13)
}

/// The inner norm of a mixed norm.
#[derive(Debug, Clone, PartialEq)]
pub enum InnerNorm {
    Lq(f64),
    Orlicz(OrliczFunction),
}

impl InnerNorm {
    pub fn norm(&self, x: &[f64]) -> Result<f64> {
        match self {
            InnerNorm::Lq(q) => lp_norm(x, *q),
            InnerNorm::Orlicz(m) => luxemburg_norm(m, x),
        }
    }
}

impl fmt::Display for InnerNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerNorm::Lq(q) => write!(f, "lq:{q}"),
            InnerNorm::Orlicz(m) => write!(f, "orlicz:{m}"),
        }
    }
}

impl FromStr for InnerNorm {
    type Err = Error;

    /// Parses `lq:<q>` or `orlicz:<M>`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().split_once(':') {
            Some(("lq", q)) => {
                let q: f64 = q
                    .parse()
                    .map_err(|e| parse_error(format!("bad q in `{s}`: {e}")))?;
                if !(q >= 1.0) {
                    return Err(domain(format!("inner l_q needs q >= 1, got {q}")));
                }
                Ok(InnerNorm::Lq(q))
            }
            Some(("orlicz", m)) => Ok(InnerNorm::Orlicz(m.parse()?)),
            _ => Err(parse_error(format!(
                "unknown inner norm `{s}`, expected lq:<q> or orlicz:<M>"
            ))),
        }
    }
}

/// `‖ ( ‖(a_ij)_{i=1}^n‖_inner )_{j=1}^m ‖_{outer_p}`: the inner norm runs down each
/// column (over `i`), the outer `ℓ_p` norm across columns (over `j`).
pub fn mixed_norm(a: &CoefficientMatrix, outer_p: f64, inner: &InnerNorm) -> Result<f64> {
    if !(outer_p >= 1.0) {
        return Err(domain(format!("outer l_p needs p >= 1, got {outer_p}")));
    }
    let column_norms = (0..a.m())
        .map(|j| inner.norm(&a.column(j)))
        .collect::<Result<Vec<f64>>>()?;
    lp_norm(&column_norms, outer_p)
}
