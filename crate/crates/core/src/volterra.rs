//! The integration operator `T_g f(z) = int_0^z f g' d zeta` and its resolvent.
//!
//! For `p = 2` the monomials are orthogonal in `F^2_{alpha,A}`, so in the
//! normalized basis `e_n = z^n / w_n` (`w_n = ||z^n||`) the operator is a
//! banded strictly lower triangular matrix: `T_g e_n` only reaches
//! `e_{n+1}..e_{n+d}`. A monomial symbol gives a single band, i.e. a weighted
//! shift.

use num_complex::Complex64;

use crate::error::{FockError, Result};
use crate::fock::{log_monomial_norm, FockParams};
use crate::series::TruncatedSeries;

/// Polynomial symbol `g = b_1 z + ... + b_d z^d`. The constant term never
/// enters `T_g` (only `g'` does) and is dropped on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct PolynomialSymbol {
    /// Index = power; `coeffs[0]` is always zero.
    coeffs: Vec<Complex64>,
}

impl PolynomialSymbol {
    /// From coefficients indexed by power (index 0 is the constant term,
    /// which is discarded). Trailing zeros are trimmed.
    pub fn from_coeffs(coeffs: &[Complex64]) -> Result<Self> {
        if let Some(k) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(FockError::InvalidSymbol(format!("coefficient of z^{k} is not finite")));
        }
        let Some(d) = coeffs.iter().rposition(|c| *c != Complex64::default()) else {
            return Err(FockError::InvalidSymbol("symbol has no non-constant terms".into()));
        };
        if d == 0 {
            return Err(FockError::InvalidSymbol("symbol has no non-constant terms".into()));
        }
        let mut v = coeffs[..=d].to_vec();
        v[0] = Complex64::default();
        Ok(Self { coeffs: v })
    }

    /// `b z^d`.
    pub fn monomial(b: Complex64, d: usize) -> Result<Self> {
        if b == Complex64::default() {
            return Err(FockError::InvalidSymbol("leading coefficient must be nonzero".into()));
        }
        if d == 0 {
            return Err(FockError::InvalidSymbol("degree must be at least 1".into()));
        }
        let mut v = vec![Complex64::default(); d + 1];
        v[d] = b;
        Self::from_coeffs(&v)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `b_d`.
    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Coefficients indexed by power, constant slot zero.
    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_monomial(&self) -> bool {
        self.nonzero_terms() == 1
    }

    fn nonzero_terms(&self) -> usize {
        self.coeffs.iter().filter(|c| **c != Complex64::default()).count()
    }

    /// The same polynomial with its top coefficient only.
    pub fn leading_term(&self) -> Self {
        Self::monomial(self.leading(), self.degree()).expect("leading coefficient is nonzero")
    }

    pub fn require_monomial(&self) -> Result<()> {
        if self.is_monomial() {
            Ok(())
        } else {
            Err(FockError::NonMonomialSymbol {
                degree: self.degree(),
                terms: self.nonzero_terms(),
            })
        }
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::default(), |acc, c| acc * z + c)
    }

    /// `g` as a series padded or truncated to `order`.
    pub fn to_series(&self, order: usize) -> TruncatedSeries {
        TruncatedSeries::from_vec_unchecked(self.coeffs.clone()).with_order(order)
    }

    /// `g'`, of order `d - 1`.
    pub fn derivative(&self) -> TruncatedSeries {
        TruncatedSeries::from_vec_unchecked(self.coeffs.clone()).differentiate()
    }
}

/// `T_g f`, of order `order(f) + degree(g)`.
pub fn apply_tg(g: &PolynomialSymbol, f: &TruncatedSeries) -> TruncatedSeries {
    let order = f.order() + g.degree();
    f.multiply(&g.derivative(), order - 1).integrate_from_zero()
}

/// Coordinates `c_n w_n` of a series in the normalized basis `e_n = z^n / w_n`.
pub fn to_basis_coords(f: &TruncatedSeries, params: &FockParams) -> Result<Vec<Complex64>> {
    require_hilbert(params)?;
    Ok(f.coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c * log_monomial_norm(n, params).exp())
        .collect())
}

pub fn from_basis_coords(x: &[Complex64], params: &FockParams) -> Result<TruncatedSeries> {
    require_hilbert(params)?;
    TruncatedSeries::new(
        x.iter()
            .enumerate()
            .map(|(n, v)| v * (-log_monomial_norm(n, params)).exp())
            .collect(),
    )
}

fn require_hilbert(params: &FockParams) -> Result<()> {
    if params.is_hilbert() {
        Ok(())
    } else {
        Err(FockError::RequiresHilbert(params.p))
    }
}

/// `ln (w_{n+k} / w_n)` from log-Gamma differences.
fn log_norm_ratio(n: usize, k: usize, params: &FockParams) -> f64 {
    log_monomial_norm(n + k, params) - log_monomial_norm(n, params)
}

/// Matrix of `T_g` on `span{e_0..e_N}` in the normalized monomial basis.
///
/// `bands[k-1][n]` is the entry at `(n + k, n)`, `n = 0..=N-k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftMatrix {
    size: usize,
    bands: Vec<Vec<Complex64>>,
}

impl ShiftMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bands(&self) -> &[Vec<Complex64>] {
        &self.bands
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        if i <= j || i >= self.size {
            return Complex64::default();
        }
        self.bands
            .get(i - j - 1)
            .and_then(|band| band.get(j))
            .copied()
            .unwrap_or_default()
    }

    /// `M x`; `x` must have `size` entries.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.size, "vector length must match matrix size");
        let mut y = vec![Complex64::default(); self.size];
        for (k, band) in self.bands.iter().enumerate() {
            for (n, v) in band.iter().enumerate() {
                y[n + k + 1] += v * x[n];
            }
        }
        y
    }

    /// `||M e_n||`.
    pub fn column_norm(&self, n: usize) -> f64 {
        self.bands
            .iter()
            .filter_map(|band| band.get(n))
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

/// The `(N+1) x (N+1)` matrix of `T_g` in the basis `e_n = z^n / w_n` (p = 2).
pub fn tg_matrix(g: &PolynomialSymbol, params: &FockParams, n_max: usize) -> Result<ShiftMatrix> {
    require_hilbert(params)?;
    let d = g.degree();
    if n_max < d {
        return Err(FockError::InvalidArgument(format!(
            "matrix order {n_max} is below the symbol degree {d}"
        )));
    }
    let bands = (1..=d)
        .map(|k| {
            let kb = g.coeff(k) * k as f64;
            (0..=n_max - k)
                .map(|n| {
                    if kb == Complex64::default() {
                        return Complex64::default();
                    }
                    kb * (log_norm_ratio(n, k, params).exp() / (n + k) as f64)
                })
                .collect()
        })
        .collect();
    Ok(ShiftMatrix { size: n_max + 1, bands })
}

/// Log step weights `ln s_n` of the weighted shift `T_{b z^d}`:
/// `T e_n = s_n e_{n+d}` up to a unimodular factor, with
/// `s_n = d |b| w_{n+d} / ((n+d) w_n)`.
#[derive(Debug, Clone)]
pub(crate) struct StepWeights {
    degree: usize,
    ln_steps: Vec<f64>,
}

impl StepWeights {
    pub fn new(g: &PolynomialSymbol, params: &FockParams, count: usize) -> Result<Self> {
        g.require_monomial()?;
        require_hilbert(params)?;
        let d = g.degree();
        let ln_db = (d as f64 * g.leading().norm()).ln();
        let ln_steps = (0..count)
            .map(|n| ln_db + log_norm_ratio(n, d, params) - ((n + d) as f64).ln())
            .collect();
        Ok(Self { degree: d, ln_steps })
    }

    /// `ln max_{m <= max_m} prod_{j<k} s_{m + j d}`.
    pub fn log_power_norm(&self, k: usize, max_m: usize) -> f64 {
        (0..=max_m)
            .map(|m| (0..k).map(|j| self.ln_steps[m + j * self.degree]).sum::<f64>())
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `||T_g^k||` restricted to `e_0..e_{maxM + k d}` for a monomial `g = b z^d`
/// (p = 2): the sup over starting indices of `k` consecutive step weights.
pub fn shift_power_norm(g: &PolynomialSymbol, params: &FockParams, k: usize, max_m: usize) -> Result<f64> {
    if k == 0 {
        return Err(FockError::InvalidArgument("power k must be at least 1".into()));
    }
    let steps = StepWeights::new(g, params, max_m + k * g.degree())?;
    Ok(steps.log_power_norm(k, max_m).exp())
}

/// Default truncation order for [`resolvent_apply`].
pub fn default_resolvent_order(h: &TruncatedSeries, g: &PolynomialSymbol) -> usize {
    h.order() + 4 * g.degree() + 8
}

/// `R_{lambda,g} h = h(0) e^{g/lambda} + e^{g/lambda} int_0^z e^{-g/lambda} h'`,
/// the solution of `f - T_g f / lambda = h`, truncated to `order`.
pub fn resolvent_apply(
    g: &PolynomialSymbol,
    lambda: Complex64,
    h: &TruncatedSeries,
    order: usize,
) -> Result<TruncatedSeries> {
    if lambda == Complex64::default() {
        return Err(FockError::ZeroLambda);
    }
    if order < h.order() {
        return Err(FockError::InvalidArgument(format!(
            "resolvent order {order} is below the input order {}",
            h.order()
        )));
    }
    let g_over = g.to_series(order).scale(lambda.inv());
    let e_plus = g_over.exp_series()?;
    let e_minus = (-&g_over).exp_series()?;
    let inner = if order == 0 {
        TruncatedSeries::zero(0)
    } else {
        e_minus.multiply(&h.differentiate(), order - 1).integrate_from_zero()
    };
    let body = e_plus.multiply(&inner, order);
    Ok(&e_plus.scale(h.coeff(0)) + &body)
}
