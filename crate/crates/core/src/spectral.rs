//! Spectrum classification and numerical experiments around it.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{FockError, Result};
use crate::fock::{
    exp_membership, log_integral_mean_p, log_lp_rhs, log_product_integral, log_series_norm, FockParams, LogSum,
    MembershipVerdict, QuadratureScheme,
};
use crate::series::TruncatedSeries;
use crate::volterra::{resolvent_apply, tg_matrix, PolynomialSymbol, StepWeights};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Integer `A`, `degree(g) = A`: the closed disk of radius `|b|/alpha`.
    TheoremII,
    /// Integer `A`, `degree(g) < A`: compact, spectrum `{0}`.
    CompactCase,
    /// Non-integer `A`: spectrum `{0}`.
    NonIntegerA,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::TheoremII => "theorem_ii",
            Provenance::CompactCase => "compact_case",
            Provenance::NonIntegerA => "non_integer_a",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectrumKind {
    Disk { radius: f64 },
    OriginOnly,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumDescription {
    pub kind: SpectrumKind,
    pub provenance: Provenance,
}

impl SpectrumDescription {
    pub fn radius(&self) -> Option<f64> {
        match self.kind {
            SpectrumKind::Disk { radius } => Some(radius),
            SpectrumKind::OriginOnly => None,
        }
    }

    pub fn contains(&self, lambda: Complex64) -> bool {
        match self.kind {
            SpectrumKind::Disk { radius } => lambda.norm() <= radius,
            SpectrumKind::OriginOnly => lambda == Complex64::default(),
        }
    }
}

/// `sigma(T_g)` on `F^p_{alpha,A}`: a disk of radius `|b|/alpha` when `A` is an
/// integer and `b` (the coefficient of `z^A`) is nonzero, `{0}` otherwise.
pub fn classify_spectrum(g: &PolynomialSymbol, params: &FockParams) -> Result<SpectrumDescription> {
    let d = g.degree();
    if d as f64 > params.big_a {
        return Err(FockError::Unbounded {
            degree: d,
            big_a: params.big_a,
        });
    }
    let (kind, provenance) = match params.integer_a() {
        None => (SpectrumKind::OriginOnly, Provenance::NonIntegerA),
        Some(a) if (d as u32) < a => (SpectrumKind::OriginOnly, Provenance::CompactCase),
        Some(_) => (
            SpectrumKind::Disk {
                radius: g.leading().norm() / params.alpha,
            },
            Provenance::TheoremII,
        ),
    };
    Ok(SpectrumDescription { kind, provenance })
}

/// `w(z) = p Re(b z^A / lambda) - p alpha |z|^A` and its `d/dzbar` derivatives.
#[derive(Debug, Clone)]
pub struct WeightField {
    b: Complex64,
    big_a: f64,
    lambda: Complex64,
    params: FockParams,
}

impl WeightField {
    /// `g` must be a monomial of degree `A`.
    pub fn new(g: &PolynomialSymbol, lambda: Complex64, params: &FockParams) -> Result<Self> {
        g.require_monomial()?;
        if lambda == Complex64::default() {
            return Err(FockError::ZeroLambda);
        }
        if g.degree() as f64 != params.big_a {
            return Err(FockError::Hypothesis(format!(
                "symbol degree {} differs from A = {}",
                g.degree(),
                params.big_a
            )));
        }
        Ok(Self {
            b: g.leading(),
            big_a: params.big_a,
            lambda,
            params: *params,
        })
    }

    fn ratio(&self) -> Complex64 {
        self.b / self.lambda
    }

    pub fn value(&self, z: Complex64) -> f64 {
        let p = self.params.p;
        p * (self.ratio() * z.powf(self.big_a)).re - p * self.params.alpha * z.norm().powf(self.big_a)
    }

    /// `dbar w = (p/2) conj(g'/lambda) - (p alpha A / 2) |z|^{A-2} z`.
    pub fn dbar(&self, z: Complex64) -> Complex64 {
        let (p, a) = (self.params.p, self.big_a);
        let dg = self.ratio() * a * z.powf(a - 1.0);
        dg.conj() * (p / 2.0) - z * (p * self.params.alpha * a / 2.0 * z.norm().powf(a - 2.0))
    }

    /// `dbar^2 w = (p/2) conj(g''/lambda) - (p alpha A (A-2) / 4) |z|^{A-4} z^2`.
    pub fn dbar2(&self, z: Complex64) -> Complex64 {
        let (p, a) = (self.params.p, self.big_a);
        let d2g = self.ratio() * (a * (a - 1.0)) * z.powf(a - 2.0);
        d2g.conj() * (p / 2.0) - z * z * (p * self.params.alpha * a * (a - 2.0) / 4.0 * z.norm().powf(a - 4.0))
    }

    /// `(p A / 2) (alpha - |b/lambda|) |z|^{A-1}`, a lower bound for `|dbar w(z)|`.
    pub fn dbar_lower_bound(&self, z: Complex64) -> Result<f64> {
        let gap = self.params.alpha - self.ratio().norm();
        if gap <= 0.0 {
            return Err(FockError::Hypothesis(format!(
                "alpha = {} must exceed |b/lambda| = {}",
                self.params.alpha,
                self.ratio().norm()
            )));
        }
        Ok(self.params.p * self.big_a / 2.0 * gap * z.norm().powf(self.big_a - 1.0))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RadiusEstimate {
    /// `max_k sequence[k-1]`.
    pub estimate: f64,
    /// `||T_g^k||^{1/k}` (truncated at `maxM`) for `k = 1..=kMax`.
    pub sequence: Vec<f64>,
}

/// `max_{k <= kMax} ||T_g^k||^{1/k}` from exact weighted-shift power norms,
/// for `g = b z^A` with integer `A` and `p = 2`.
pub fn spectral_radius_estimate(
    g: &PolynomialSymbol,
    params: &FockParams,
    k_max: usize,
    max_m: usize,
) -> Result<RadiusEstimate> {
    let a = params.integer_a().ok_or(FockError::RequiresIntegerA(params.big_a))?;
    if g.degree() != a as usize {
        return Err(FockError::Hypothesis(format!(
            "symbol degree {} differs from A = {a}",
            g.degree()
        )));
    }
    if k_max == 0 {
        return Err(FockError::InvalidArgument("kMax must be at least 1".into()));
    }
    let steps = StepWeights::new(g, params, max_m + k_max * g.degree())?;
    let sequence: Vec<f64> = (1..=k_max)
        .map(|k| (steps.log_power_norm(k, max_m) / k as f64).exp())
        .collect();
    let estimate = sequence.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(RadiusEstimate { estimate, sequence })
}

/// `max_h ||R_{lambda,g} h|| / ||h||` over the probes, with the resolvent
/// truncated at `order`.
pub fn resolvent_norm_probe(
    g: &PolynomialSymbol,
    lambda: Complex64,
    params: &FockParams,
    probes: &[TruncatedSeries],
    order: usize,
    scheme: &QuadratureScheme,
) -> Result<f64> {
    if lambda == Complex64::default() {
        return Err(FockError::ZeroLambda);
    }
    if probes.is_empty() {
        return Err(FockError::EmptyFamily);
    }
    let mut best = f64::NEG_INFINITY;
    for h in probes {
        let ln_h = log_series_norm(h, params, scheme)?;
        if ln_h == f64::NEG_INFINITY {
            return Err(FockError::ZeroNorm);
        }
        let f = resolvent_apply(g, lambda, h, order)?;
        best = best.max(log_series_norm(&f, params, scheme)? - ln_h);
    }
    Ok(best.exp())
}

pub fn membership_scan(
    g: &PolynomialSymbol,
    params: &FockParams,
    grid: &[Complex64],
) -> Result<Vec<(Complex64, MembershipVerdict)>> {
    grid.iter()
        .map(|&lambda| Ok((lambda, exp_membership(g, lambda, params)?)))
        .collect()
}

/// `(min, max)` of `lp_rhs(f) / ||f||` over the family.
pub fn lp_ratio_experiment(
    family: &[TruncatedSeries],
    params: &FockParams,
    scheme: &QuadratureScheme,
) -> Result<(f64, f64)> {
    if family.is_empty() {
        return Err(FockError::EmptyFamily);
    }
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for f in family {
        let ln_norm = log_series_norm(f, params, scheme)?;
        if ln_norm == f64::NEG_INFINITY {
            return Err(FockError::ZeroNorm);
        }
        let r = log_lp_rhs(f, params, scheme)? - ln_norm;
        lo = lo.min(r);
        hi = hi.max(r);
    }
    Ok((lo.exp(), hi.exp()))
}

fn require_space_a(big_a: u32, params: &FockParams) -> Result<()> {
    if big_a == 0 {
        return Err(FockError::InvalidArgument("A must be a positive integer".into()));
    }
    if params.big_a != big_a as f64 {
        return Err(FockError::InvalidArgument(format!(
            "A = {big_a} differs from the space parameter A = {}",
            params.big_a
        )));
    }
    Ok(())
}

/// `max_f LHS/RHS` for
/// `int |f|^p |e^{g/lambda}|^p e^{-p alpha |z|^A} dA` against
/// `|f(0)|^p + int |f'|^p |e^{g/lambda}|^p e^{-p alpha |z|^A} (1+|z|)^{-(A-1)p} dA`,
/// `g = b z^A`. Requires `alpha > |b/lambda|`. The zero function contributes 0.
pub fn weighted_lp_experiment(
    b: Complex64,
    big_a: u32,
    lambda: Complex64,
    params: &FockParams,
    family: &[TruncatedSeries],
    scheme: &QuadratureScheme,
) -> Result<f64> {
    require_space_a(big_a, params)?;
    if lambda == Complex64::default() {
        return Err(FockError::ZeroLambda);
    }
    let q = b / lambda;
    if params.alpha <= q.norm() {
        return Err(FockError::Hypothesis(format!(
            "alpha = {} must exceed |b/lambda| = {}",
            params.alpha,
            q.norm()
        )));
    }
    if family.is_empty() {
        return Err(FockError::EmptyFamily);
    }
    let p = params.p;
    let a = big_a as f64;
    let m = scheme.angular_count();
    let ln_weight = |r: f64, theta: f64| p * (q * Complex64::from_polar(r.powf(a), a * theta)).re;
    let shift = -(a - 1.0) * p;
    let mut best = 0.0f64;
    for f in family {
        let Some(degree) = f.degree() else { continue };
        scheme.check(params, degree)?;
        let lhs = log_product_integral(f, p, scheme.log_nodes(), m, ln_weight);
        let mut rhs = LogSum::new();
        rhs.add(p * f.coeff(0).norm().ln());
        let df = f.differentiate();
        if !df.is_zero() {
            rhs.add(log_product_integral(&df, p, scheme.log_nodes(), m, |r, t| {
                ln_weight(r, t) + shift * r.ln_1p()
            }));
        }
        best = best.max((lhs - rhs.value()).exp());
    }
    Ok(best)
}

/// `e^{-p alpha R^A} R^{2-A} int_0^{2 pi} |f e^{g/lambda}(R e^{i theta})|^p d theta`
/// at each `R`, `g = b z^A`, with `e^{g/lambda}` truncated at `order`.
/// Requires `e^{g/lambda}` in the space.
pub fn boundary_term_decay(
    f: &TruncatedSeries,
    b: Complex64,
    big_a: u32,
    lambda: Complex64,
    params: &FockParams,
    r_grid: &[f64],
    order: usize,
) -> Result<Vec<(f64, f64)>> {
    require_space_a(big_a, params)?;
    let g = PolynomialSymbol::monomial(b, big_a as usize)?;
    match exp_membership(&g, lambda, params)? {
        MembershipVerdict::Member => {}
        other => {
            return Err(FockError::Hypothesis(format!(
                "e^(g/lambda) is not in the space (verdict {})",
                other.as_str()
            )))
        }
    }
    if f.is_zero() {
        return Ok(r_grid.iter().map(|&r| (r, 0.0)).collect());
    }
    let e = g.to_series(order).scale(lambda.inv()).exp_series()?;
    let fe = f.multiply(&e, f.order() + order);
    let m = 4 * (fe.order() + 1);
    let a = big_a as f64;
    r_grid
        .iter()
        .map(|&r| {
            let ln_mp = log_integral_mean_p(&fe, params.p, r, m)?;
            let v = -params.p * params.alpha * r.powf(a) + (2.0 - a) * r.ln() + ln_mp;
            Ok((r, v.exp()))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Vanishing,
    Bounded,
    Diverging,
}

impl Trend {
    pub fn as_str(&self) -> &'static str {
        match self {
            Trend::Vanishing => "vanishing",
            Trend::Bounded => "bounded",
            Trend::Diverging => "diverging",
        }
    }
}

/// Tail log-log slope beyond which column norms count as decaying or growing.
pub const TREND_SLOPE_TOLERANCE: f64 = 0.02;

#[derive(Debug, Clone, PartialEq)]
pub struct BoundednessReport {
    pub trend: Trend,
    /// `||T_g e_n||` for `n = 0..=N`.
    pub sequence: Vec<f64>,
    /// `d ln a_n / d ln n` between `n = N/2` and `n = N`.
    pub tail_slope: f64,
}

/// Classifies the column norms `a_n = ||T_g e_n||` (p = 2) by their power-law
/// trend on `[N/2, N]`: decaying columns mean compact, flat means bounded,
/// growing means unbounded.
pub fn boundedness_diagnostic(g: &PolynomialSymbol, params: &FockParams, n: usize) -> Result<BoundednessReport> {
    if n < 8 {
        return Err(FockError::InvalidArgument(format!("N must be at least 8, got {n}")));
    }
    let m = tg_matrix(g, params, n + g.degree())?;
    let sequence: Vec<f64> = (0..=n).map(|k| m.column_norm(k)).collect();
    let half = n / 2;
    let tail_slope = (sequence[n] / sequence[half]).ln() / (n as f64 / half as f64).ln();
    let trend = if tail_slope < -TREND_SLOPE_TOLERANCE {
        Trend::Vanishing
    } else if tail_slope > TREND_SLOPE_TOLERANCE {
        Trend::Diverging
    } else {
        Trend::Bounded
    };
    Ok(BoundednessReport {
        trend,
        sequence,
        tail_slope,
    })
}

/// Frozen `(min, max)` of `lp_rhs(f) / ||f||` over [`lp_reference_family`]
/// at `(p, alpha, A) = (2, 1/2, 2)`.
pub const LP_RATIO_BAND: (f64, f64) = (0.5641, 0.8720);

/// Frozen bound on the weighted inequality ratio over
/// [`weighted_reference_family`] for `g = z^2`, `lambda in {4, 8, -4}` at
/// `(p, alpha, A) = (2, 1, 2)`.
pub const WEIGHTED_LP_BOUND: f64 = 1.6224;

/// `{z^n : n <= 40}` and the partial sums of `e^z`, `e^{z^2/4}` through
/// degrees 10, 20, 30, 40.
pub fn lp_reference_family() -> Vec<TruncatedSeries> {
    let mut family = monomial_family(40);
    for order in [10, 20, 30, 40] {
        family.push(exp_partial_sum(Complex64::new(1.0, 0.0), 1, order).expect("finite"));
        family.push(exp_partial_sum(Complex64::new(0.25, 0.0), 2, order).expect("finite"));
    }
    family
}

/// `{z^n : n < 20}`.
pub fn weighted_reference_family() -> Vec<TruncatedSeries> {
    monomial_family(19)
}

/// Partial sum of `e^{c z^d}` through `z^{order}`.
pub fn exp_partial_sum(c: Complex64, d: usize, order: usize) -> Result<TruncatedSeries> {
    TruncatedSeries::monomial(c, d).with_order(order).exp_series()
}

/// `{z^n : n <= max_degree}`.
pub fn monomial_family(max_degree: usize) -> Vec<TruncatedSeries> {
    (0..=max_degree)
        .map(|n| TruncatedSeries::monomial(Complex64::new(1.0, 0.0), n))
        .collect()
}
