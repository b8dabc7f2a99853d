//! Norms on the generalized Fock spaces `F^p_{alpha,A}`.
//!
//! `||f||^p = int_C |f(z) e^{-alpha |z|^A}|^p dA(z)`. Monomials have a
//! closed form through the Gamma function; arbitrary truncated series are
//! integrated by a product rule: a radial Gauss rule for `e^{-p alpha r^A} r dr`
//! (see [`quadrature`]) times the equispaced trapezoid rule in the angle.
//!
//! Every accumulation runs in the log domain. `||z^60||^4` in
//! `F^4_{1/2,1}` is about `e^{919}`, far past `f64::MAX`.

pub(crate) mod quadrature;

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use serde::Serialize;

use crate::error::{FockError, Result};
use crate::series::TruncatedSeries;
use crate::volterra::PolynomialSymbol;

pub use quadrature::ln_gamma as log_gamma;

/// Relative half-width of the band around `|b/lambda| = alpha` reported as
/// [`MembershipVerdict::CriticalCircle`].
pub const CRITICAL_BAND: f64 = 1e-9;

/// The triple `(p, alpha, A)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FockParams {
    pub p: f64,
    pub alpha: f64,
    #[serde(rename = "A")]
    pub big_a: f64,
}

impl FockParams {
    pub fn new(p: f64, alpha: f64, big_a: f64) -> Result<Self> {
        if !(p.is_finite() && p >= 1.0) {
            return Err(FockError::InvalidParams(format!("p must be >= 1, got {p}")));
        }
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(FockError::InvalidParams(format!("alpha must be > 0, got {alpha}")));
        }
        if !(big_a.is_finite() && big_a > 0.0) {
            return Err(FockError::InvalidParams(format!("A must be > 0, got {big_a}")));
        }
        Ok(Self { p, alpha, big_a })
    }

    /// Same `(alpha, A)` with `p = 2`.
    pub fn hilbert(&self) -> Self {
        Self { p: 2.0, ..*self }
    }

    pub fn is_hilbert(&self) -> bool {
        self.p == 2.0
    }

    /// `A` as an integer when it is one.
    pub fn integer_a(&self) -> Option<u32> {
        (self.big_a.fract() == 0.0 && self.big_a <= u32::MAX as f64).then_some(self.big_a as u32)
    }
}

/// `ln ||z^n||_{p,alpha,A}`.
pub fn log_monomial_norm(n: usize, params: &FockParams) -> f64 {
    let FockParams { p, alpha, big_a } = *params;
    let s = (n as f64 * p + 2.0) / big_a;
    ((2.0 * PI / big_a).ln() - s * (p * alpha).ln() + log_gamma(s)) / p
}

/// `||z^n||_{p,alpha,A} = [(2 pi / A) (p alpha)^{-(np+2)/A} Gamma((np+2)/A)]^{1/p}`.
pub fn monomial_norm(n: usize, params: &FockParams) -> f64 {
    log_monomial_norm(n, params).exp()
}

/// Product rule: radial Gauss nodes for `e^{-p alpha r^A} r dr` and an
/// equispaced angular grid.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureScheme {
    params: FockParams,
    radii: Vec<f64>,
    ln_weights: Vec<f64>,
    angular_count: usize,
}

impl QuadratureScheme {
    pub const DEFAULT_RADIAL_NODES: usize = 128;

    pub fn new(params: FockParams, radial_count: usize, angular_count: usize) -> Result<Self> {
        if angular_count < 8 || angular_count % 2 != 0 {
            return Err(FockError::InvalidScheme(format!(
                "angular count must be even and >= 8, got {angular_count}"
            )));
        }
        let rule = quadrature::freud_rule(params.big_a, radial_count)?;
        let c = params.p * params.alpha;
        let r_scale = c.powf(-1.0 / params.big_a);
        let ln_shift = -2.0 / params.big_a * c.ln();
        Ok(Self {
            params,
            radii: rule.nodes.iter().map(|s| s * r_scale).collect(),
            ln_weights: rule.ln_weights.iter().map(|w| w + ln_shift).collect(),
            angular_count,
        })
    }

    /// The smallest adequate scheme for series up to `degree`, with at least
    /// [`Self::DEFAULT_RADIAL_NODES`] radial nodes.
    pub fn for_degree(params: FockParams, degree: usize) -> Result<Self> {
        Self::new(
            params,
            Self::required_radial(degree, params.p).max(Self::DEFAULT_RADIAL_NODES),
            Self::required_angular(degree, params.p),
        )
    }

    /// Twice the radial and angular resolution.
    pub fn refined(&self) -> Result<Self> {
        Self::new(self.params, 2 * self.radii.len(), 2 * self.angular_count)
    }

    /// The radial rule is exact for polynomials of degree `2N - 1` in `r`,
    /// and `|f|^p` has radial degree `deg * p`.
    pub fn required_radial(degree: usize, p: f64) -> usize {
        (degree as f64 * p / 2.0).ceil() as usize + 32
    }

    /// `4 deg + 16` (at least `ceil(p) deg + 16` so `|f|^p` for even `p` is
    /// resolved), doubled when `p` is not an even integer.
    pub fn required_angular(degree: usize, p: f64) -> usize {
        let base = (4 * degree + 16).max(p.ceil() as usize * degree + 16);
        let base = base + base % 2;
        let even = p.fract() == 0.0 && (p as u64) % 2 == 0;
        if even {
            base
        } else {
            2 * base
        }
    }

    pub fn params(&self) -> &FockParams {
        &self.params
    }

    pub fn radial_count(&self) -> usize {
        self.radii.len()
    }

    pub fn angular_count(&self) -> usize {
        self.angular_count
    }

    /// `(r_i, w_i)` with `int_0^inf F(r) e^{-p alpha r^A} r dr ~ sum w_i F(r_i)`.
    /// Tail weights can underflow here; the integrators use log-weights.
    pub fn radial_nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.radii.iter().zip(&self.ln_weights).map(|(r, lw)| (*r, lw.exp()))
    }

    pub(crate) fn log_nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.radii.iter().copied().zip(self.ln_weights.iter().copied())
    }

    pub(crate) fn check(&self, params: &FockParams, degree: usize) -> Result<()> {
        if self.params != *params {
            return Err(FockError::InvalidScheme(format!(
                "scheme built for {:?}, used with {:?}",
                self.params, params
            )));
        }
        let radial = Self::required_radial(degree, params.p);
        if self.radii.len() < radial {
            return Err(FockError::InadequateScheme {
                degree,
                what: "radial nodes",
                required: radial,
                available: self.radii.len(),
            });
        }
        let angular = Self::required_angular(degree, params.p);
        if self.angular_count < angular {
            return Err(FockError::InadequateScheme {
                degree,
                what: "angles",
                required: angular,
                available: self.angular_count,
            });
        }
        Ok(())
    }
}

/// Streaming `ln sum e^{x_i}`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LogSum {
    max: f64,
    sum: f64,
}

impl LogSum {
    pub fn new() -> Self {
        Self {
            max: f64::NEG_INFINITY,
            sum: 0.0,
        }
    }

    pub fn add(&mut self, x: f64) {
        if x == f64::NEG_INFINITY || x.is_nan() {
            return;
        }
        if x > self.max {
            self.sum = self.sum * (self.max - x).exp() + 1.0;
            self.max = x;
        } else {
            self.sum += (x - self.max).exp();
        }
    }

    pub fn value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.sum.ln()
        }
    }
}

/// Samples `ln |f|` on a circle at `m` equispaced angles `2 pi j / m` with one
/// FFT per radius. Coefficients are scaled by their largest term first so
/// nothing overflows.
pub(crate) struct CircleSampler {
    m: usize,
    fft: Arc<dyn Fft<f64>>,
    buf: Vec<Complex64>,
    scratch: Vec<Complex64>,
    out: Vec<f64>,
}

impl CircleSampler {
    pub fn new(m: usize) -> Self {
        let fft = FftPlanner::new().plan_fft_inverse(m);
        let scratch = vec![Complex64::default(); fft.get_inplace_scratch_len()];
        Self {
            m,
            fft,
            buf: vec![Complex64::default(); m],
            scratch,
            out: vec![0.0; m],
        }
    }

    pub fn angle(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.m as f64
    }

    pub fn log_abs(&mut self, f: &TruncatedSeries, r: f64) -> &[f64] {
        let coeffs = f.coeffs();
        if r == 0.0 {
            let v = coeffs[0].norm().ln();
            self.out.iter_mut().for_each(|x| *x = v);
            return &self.out;
        }
        let ln_r = r.ln();
        let lead = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() > 0.0)
            .map(|(k, c)| c.norm().ln() + k as f64 * ln_r)
            .fold(f64::NEG_INFINITY, f64::max);
        if lead == f64::NEG_INFINITY {
            self.out.iter_mut().for_each(|x| *x = f64::NEG_INFINITY);
            return &self.out;
        }
        self.buf.iter_mut().for_each(|b| *b = Complex64::default());
        for (k, c) in coeffs.iter().enumerate() {
            let a = c.norm();
            if a == 0.0 {
                continue;
            }
            let mag = (a.ln() + k as f64 * ln_r - lead).exp();
            self.buf[k % self.m] += c / a * mag;
        }
        self.fft.process_with_scratch(&mut self.buf, &mut self.scratch);
        for (o, b) in self.out.iter_mut().zip(&self.buf) {
            *o = b.norm().ln() + lead;
        }
        &self.out
    }
}

/// `ln [ (2 pi / m) sum_i sum_j w_i |f(r_i e^{i theta_j})|^p e^{extra(r_i, theta_j)} ]`
/// for log-weighted radial nodes `(r_i, ln w_i)`.
pub(crate) fn log_product_integral(
    f: &TruncatedSeries,
    p: f64,
    nodes: impl Iterator<Item = (f64, f64)>,
    angular_count: usize,
    extra: impl Fn(f64, f64) -> f64,
) -> f64 {
    let mut sampler = CircleSampler::new(angular_count);
    let angles: Vec<f64> = (0..angular_count).map(|j| sampler.angle(j)).collect();
    let mut total = LogSum::new();
    for (r, ln_w) in nodes {
        let la = sampler.log_abs(f, r);
        for (j, &l) in la.iter().enumerate() {
            total.add(p * l + ln_w + extra(r, angles[j]));
        }
    }
    total.value() + (2.0 * PI / angular_count as f64).ln()
}

/// `ln ||f||_{p,alpha,A}` by quadrature; `-inf` for the zero series.
pub fn log_series_norm(f: &TruncatedSeries, params: &FockParams, scheme: &QuadratureScheme) -> Result<f64> {
    let Some(degree) = f.degree() else {
        return Ok(f64::NEG_INFINITY);
    };
    scheme.check(params, degree)?;
    let ln_int = log_product_integral(f, params.p, scheme.log_nodes(), scheme.angular_count, |_, _| 0.0);
    Ok(ln_int / params.p)
}

pub fn series_norm(f: &TruncatedSeries, params: &FockParams, scheme: &QuadratureScheme) -> Result<f64> {
    Ok(log_series_norm(f, params, scheme)?.exp())
}

/// `ln M_{p,R}(f)^p = ln int_0^{2 pi} |f(R e^{i theta})|^p d theta`.
pub fn log_integral_mean_p(f: &TruncatedSeries, p: f64, radius: f64, angular_count: usize) -> Result<f64> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(FockError::InvalidArgument(format!(
            "radius must be positive, got {radius}"
        )));
    }
    if angular_count == 0 {
        return Err(FockError::InvalidArgument("angular count must be positive".into()));
    }
    let mut sampler = CircleSampler::new(angular_count);
    let mut acc = LogSum::new();
    for &l in sampler.log_abs(f, radius) {
        acc.add(p * l);
    }
    Ok(acc.value() + (2.0 * PI / angular_count as f64).ln())
}

/// `M_{p,R}(f) = (int_0^{2 pi} |f(R e^{i theta})|^p d theta)^{1/p}` by the
/// trapezoid rule.
pub fn integral_means(f: &TruncatedSeries, p: f64, radius: f64, angular_count: usize) -> Result<f64> {
    Ok((log_integral_mean_p(f, p, radius, angular_count)? / p).exp())
}

/// `ln` of the Littlewood-Paley side
/// `(|f(0)|^p + int |f'|^p e^{-p alpha |z|^A} (1+|z|)^{-p(A-1)} dA)^{1/p}`.
pub fn log_lp_rhs(f: &TruncatedSeries, params: &FockParams, scheme: &QuadratureScheme) -> Result<f64> {
    let p = params.p;
    let df = f.differentiate();
    let mut acc = LogSum::new();
    acc.add(p * f.coeff(0).norm().ln());
    if let Some(degree) = df.degree() {
        scheme.check(params, degree)?;
        let shift = -p * (params.big_a - 1.0);
        acc.add(log_product_integral(
            &df,
            p,
            scheme.log_nodes(),
            scheme.angular_count,
            |r, _| shift * r.ln_1p(),
        ));
    }
    Ok(acc.value() / p)
}

pub fn lp_rhs(f: &TruncatedSeries, params: &FockParams, scheme: &QuadratureScheme) -> Result<f64> {
    Ok(log_lp_rhs(f, params, scheme)?.exp())
}

/// Whether `e^{g/lambda}` lies in `F^p_{alpha,A}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MembershipVerdict {
    Member,
    NonMember,
    /// `|b/lambda|` within [`CRITICAL_BAND`] (relative) of `alpha`; left undecided.
    CriticalCircle,
}

impl MembershipVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Member => "member",
            Self::NonMember => "non_member",
            Self::CriticalCircle => "critical_circle",
        }
    }
}

/// Growth comparison of `e^{g/lambda}` against the weight `e^{-alpha |z|^A}`:
/// degree below `A` always fits, degree above never does, and at degree `A`
/// the leading coefficient decides through `|b/lambda|` versus `alpha`.
pub fn exp_membership(g: &PolynomialSymbol, lambda: Complex64, params: &FockParams) -> Result<MembershipVerdict> {
    if lambda == Complex64::default() {
        return Err(FockError::ZeroLambda);
    }
    let d = g.degree() as f64;
    if d < params.big_a {
        return Ok(MembershipVerdict::Member);
    }
    if d > params.big_a {
        return Ok(MembershipVerdict::NonMember);
    }
    let q = (g.leading() / lambda).norm() / params.alpha;
    Ok(if (q - 1.0).abs() <= CRITICAL_BAND {
        MembershipVerdict::CriticalCircle
    } else if q < 1.0 {
        MembershipVerdict::Member
    } else {
        MembershipVerdict::NonMember
    })
}

/// `max_f |f(z0)| e^{-alpha |z0|^A} / ||f||` over the family.
pub fn point_eval_bound_check(
    family: &[TruncatedSeries],
    z0: Complex64,
    params: &FockParams,
    scheme: &QuadratureScheme,
) -> Result<f64> {
    if family.is_empty() {
        return Err(FockError::EmptyFamily);
    }
    let damp = params.alpha * z0.norm().powf(params.big_a);
    let mut best = f64::NEG_INFINITY;
    for f in family {
        let ln_norm = log_series_norm(f, params, scheme)?;
        if ln_norm == f64::NEG_INFINITY {
            return Err(FockError::ZeroNorm);
        }
        best = best.max(f.log_abs_at(z0) - damp - ln_norm);
    }
    Ok(best.exp())
}

/// Weighted integrals comparing `f` near and away from the origin, as
/// `p`-th powers (`w = e^{-p alpha |z|^A}`):
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedIntegrals {
    /// `int_C |f|^p (1+|z|)^{-p} w dA`
    pub whole: f64,
    /// `int_{|z|>1} |f|^p (1+|z|)^{-p} w dA`
    pub outer: f64,
    /// `int_{|z|>1} |f/z|^p w dA`
    pub outer_over_z: f64,
    /// `int_C |f/z|^p w dA`, only when `f(0) = 0`
    pub whole_over_z: Option<f64>,
}

const OUTER_PANELS: usize = 96;
const OUTER_PANEL_NODES: usize = 16;

/// Composite Gauss-Legendre nodes on `[1, R]` for `e^{-p alpha r^A} r dr`,
/// `R` placed where an integrand of radial degree `k` is below `e^{-60}` of its peak.
fn outer_nodes(params: &FockParams, radial_degree: f64) -> Vec<(f64, f64)> {
    let c = params.p * params.alpha;
    let beta = (radial_degree + 2.0) / params.big_a;
    let u_cut = beta + 12.0 * beta.sqrt() + 60.0;
    let r_cut = (u_cut / c).powf(1.0 / params.big_a).max(2.0);
    let (gx, gw) = quadrature::gauss_legendre(OUTER_PANEL_NODES);
    let width = (r_cut - 1.0) / OUTER_PANELS as f64;
    let mut nodes = Vec::with_capacity(OUTER_PANELS * OUTER_PANEL_NODES);
    for k in 0..OUTER_PANELS {
        let mid = 1.0 + width * (k as f64 + 0.5);
        for (x, w) in gx.iter().zip(&gw) {
            let r = mid + 0.5 * width * x;
            let ln_w = (0.5 * width * w).ln() + r.ln() - c * r.powf(params.big_a);
            nodes.push((r, ln_w));
        }
    }
    nodes
}

pub fn weighted_integrals(
    f: &TruncatedSeries,
    params: &FockParams,
    scheme: &QuadratureScheme,
) -> Result<WeightedIntegrals> {
    let degree = f.degree().ok_or(FockError::ZeroNorm)?;
    scheme.check(params, degree)?;
    let p = params.p;
    let m = scheme.angular_count;
    let whole = log_product_integral(f, p, scheme.log_nodes(), m, |r, _| -p * r.ln_1p());
    let outer_rule = outer_nodes(params, degree as f64 * p);
    let outer = log_product_integral(f, p, outer_rule.iter().copied(), m, |r, _| -p * r.ln_1p());
    let outer_over_z = log_product_integral(f, p, outer_rule.iter().copied(), m, |r, _| -p * r.ln());
    let whole_over_z = if f.coeff(0) == Complex64::default() {
        let shifted = TruncatedSeries::new(f.coeffs()[1..].to_vec())?;
        Some(log_product_integral(&shifted, p, scheme.log_nodes(), m, |_, _| 0.0).exp())
    } else {
        None
    };
    Ok(WeightedIntegrals {
        whole: whole.exp(),
        outer: outer.exp(),
        outer_over_z: outer_over_z.exp(),
        whole_over_z,
    })
}
