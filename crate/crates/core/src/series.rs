//! Truncated power series with complex coefficients.
//!
//! A [`TruncatedSeries`] of order `N` stores `c_0..=c_N`, the Taylor
//! coefficients of an entire function up to `z^N`. All operations are exact
//! on the stored coefficients: products are truncated, never approximated.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{FockError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from `c_0..=c_N`. Rejects an empty list and non-finite values.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(FockError::InvalidSeries("coefficient list is empty".into()));
        }
        if let Some(k) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(FockError::InvalidSeries(format!("coefficient {k} is not finite")));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order + 1],
        }
    }

    pub fn constant(c: Complex64, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c * z^n` stored at order `n`.
    pub fn monomial(c: Complex64, n: usize) -> Self {
        let mut s = Self::zero(n);
        s.coeffs[n] = c;
        s
    }

    pub(crate) fn from_vec_unchecked(coeffs: Vec<Complex64>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    /// Index of the highest nonzero coefficient, `None` for the zero series.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| *c != Complex64::new(0.0, 0.0))
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Truncates or zero-pads to the given order.
    pub fn with_order(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Complex64::new(0.0, 0.0));
        Self { coeffs }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Largest coefficient modulus.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Cauchy product truncated to `order`.
    pub fn multiply(&self, other: &Self, order: usize) -> Self {
        let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if *a == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// Primitive vanishing at the origin; order grows by one.
    pub fn integrate_from_zero(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Complex64::new(0.0, 0.0));
        out.extend(self.coeffs.iter().enumerate().map(|(k, c)| c / (k as f64 + 1.0)));
        Self { coeffs: out }
    }

    /// Term-wise derivative; order drops by one. An order-0 input yields the
    /// zero series of order 0.
    pub fn differentiate(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero(0);
        }
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        }
    }

    /// Exponential to the same order.
    ///
    /// With `f = c_0 + f1`, computes `E = exp(f1)` from `E' = f1' E`, i.e.
    /// `k E_k = sum_{j=1..k} j a_j E_{k-j}`, then scales by `exp(c_0)`.
    pub fn exp_series(&self) -> Result<Self> {
        let n = self.order();
        let c0 = self.coeffs[0];
        if c0.re > f64::MAX.ln() {
            return Err(FockError::Range(format!("exp of constant term {c0} overflows")));
        }
        let scale = c0.exp();
        // j * a_j, the coefficients of f1'
        let da: Vec<Complex64> = self.coeffs.iter().enumerate().map(|(j, a)| a * j as f64).collect();
        let mut e = vec![Complex64::new(0.0, 0.0); n + 1];
        e[0] = Complex64::new(1.0, 0.0);
        for k in 1..=n {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                acc += da[j] * e[k - j];
            }
            e[k] = acc / k as f64;
        }
        for c in e.iter_mut() {
            *c *= scale;
        }
        if e.iter().any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(FockError::Range("exponential coefficients overflow".into()));
        }
        Ok(Self { coeffs: e })
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
    }

    /// `ln |f(z)|`, robust against overflow of the intermediate Horner sum for
    /// large `|z|`. Returns `-inf` where `f(z) = 0`.
    pub fn log_abs_at(&self, z: Complex64) -> f64 {
        let v = self.evaluate(z);
        if v.re.is_finite() && v.im.is_finite() {
            return v.norm().ln();
        }
        // f(z) = z^d * sum_j c_{d-j} z^{-j}
        let Some(d) = self.degree() else {
            return f64::NEG_INFINITY;
        };
        let w = z.inv();
        let tail = self.coeffs[..=d]
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * w + c);
        d as f64 * z.norm().ln() + tail.norm().ln()
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    /// Sum at the larger of the two orders.
    fn add(self, rhs: Self) -> TruncatedSeries {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TruncatedSeries {
            coeffs: (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: Self) -> TruncatedSeries {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TruncatedSeries {
            coeffs: (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect(),
        }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<Complex64> for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Complex64) -> TruncatedSeries {
        self.scale(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(xs: &[f64]) -> TruncatedSeries {
        TruncatedSeries::from_real(xs).unwrap()
    }

    fn exp_z(order: usize, sign: f64) -> TruncatedSeries {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = 1.0;
        for k in 0..=order {
            if k > 0 {
                term *= sign / k as f64;
            }
            coeffs.push(c(term, 0.0));
        }
        TruncatedSeries::new(coeffs).unwrap()
    }

    #[test]
    fn rejects_empty_and_non_finite() {
        assert!(TruncatedSeries::new(vec![]).is_err());
        assert!(TruncatedSeries::new(vec![c(f64::NAN, 0.0)]).is_err());
        assert!(TruncatedSeries::new(vec![c(1.0, f64::INFINITY)]).is_err());
    }

    #[test]
    fn difference_of_squares() {
        let p = real(&[1.0, 1.0]).multiply(&real(&[1.0, -1.0]), 2);
        assert_eq!(p, real(&[1.0, 0.0, -1.0]));
    }

    #[test]
    fn multiply_by_one_is_identity() {
        let f = TruncatedSeries::new(vec![c(1.0, 2.0), c(-3.0, 0.5), c(0.25, -1.0)]).unwrap();
        let one = TruncatedSeries::constant(c(1.0, 0.0), 0);
        assert_eq!(f.multiply(&one, 2), f);
    }

    #[test]
    fn exp_times_exp_neg_is_one() {
        let p = exp_z(8, 1.0).multiply(&exp_z(8, -1.0), 8);
        assert_relative_eq!(p.coeff(0).re, 1.0, epsilon = 1e-15);
        for k in 1..=8 {
            assert!(p.coeff(k).norm() < 1e-15, "c_{k} = {}", p.coeff(k));
        }
        // Oracle: the order-16 convolution agrees with the order-8 one below 9.
        let wide = exp_z(16, 1.0).multiply(&exp_z(16, -1.0), 16);
        for k in 0..=8 {
            assert_eq!(wide.coeff(k), p.coeff(k));
        }
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(real(&[1.0]).integrate_from_zero(), real(&[0.0, 1.0]));
        assert_eq!(
            real(&[0.0, 0.0, 0.0, 1.0]).integrate_from_zero(),
            real(&[0.0, 0.0, 0.0, 0.0, 0.25])
        );
        assert_eq!(
            real(&[0.0, 2.0, 3.0]).integrate_from_zero(),
            real(&[0.0, 0.0, 1.0, 1.0])
        );
    }

    #[test]
    fn differentiate_examples() {
        assert_eq!(
            real(&[0.0, 0.0, 0.0, 0.0, 0.25]).differentiate(),
            real(&[0.0, 0.0, 0.0, 1.0])
        );
        assert_eq!(real(&[5.0]).differentiate(), TruncatedSeries::zero(0));
        assert_eq!(real(&[5.0, 0.0]).differentiate(), TruncatedSeries::zero(0));
    }

    #[test]
    fn exp_examples() {
        let one = TruncatedSeries::zero(6).exp_series().unwrap();
        assert_eq!(one, TruncatedSeries::constant(c(1.0, 0.0), 6));

        // b z^3 -> sum b^k z^{3k} / k!
        let b = c(0.5, -1.5);
        let e = TruncatedSeries::monomial(b, 3).with_order(12).exp_series().unwrap();
        let mut fact = 1.0;
        for k in 0..=4 {
            if k > 0 {
                fact *= k as f64;
            }
            let want = b.powi(k as i32) / fact;
            assert_relative_eq!(e.coeff(3 * k).re, want.re, epsilon = 1e-15);
            assert_relative_eq!(e.coeff(3 * k).im, want.im, epsilon = 1e-15);
        }
        for k in (0..=12).filter(|k| k % 3 != 0) {
            assert_eq!(e.coeff(k), c(0.0, 0.0));
        }

        // z + z^2; oracle: product of exp(z) and exp(z^2) series.
        let got = real(&[0.0, 1.0, 1.0, 0.0, 0.0]).exp_series().unwrap();
        let ez2 = real(&[1.0, 0.0, 1.0, 0.0, 0.5]);
        let oracle = exp_z(4, 1.0).multiply(&ez2, 4);
        let want = [1.0, 1.0, 1.5, 7.0 / 6.0, 25.0 / 24.0];
        for (k, w) in want.iter().enumerate() {
            assert_relative_eq!(got.coeff(k).re, w, epsilon = 1e-15);
            assert_relative_eq!(oracle.coeff(k).re, w, epsilon = 1e-15);
        }
    }

    #[test]
    fn exp_with_constant_term() {
        let e = real(&[2.0, 1.0, 0.0]).exp_series().unwrap();
        let e2 = 2f64.exp();
        assert_relative_eq!(e.coeff(0).re, e2, max_relative = 1e-15);
        assert_relative_eq!(e.coeff(1).re, e2, max_relative = 1e-15);
        assert_relative_eq!(e.coeff(2).re, e2 / 2.0, max_relative = 1e-15);
    }

    #[test]
    fn exp_overflow_is_range_error() {
        let err = real(&[800.0, 1.0]).exp_series().unwrap_err();
        assert!(matches!(err, FockError::Range(_)));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(real(&[1.0, 1.0]).evaluate(c(0.0, 1.0)), c(1.0, 1.0));
        assert_eq!(real(&[0.0, 0.0, 1.0]).evaluate(c(2.0, 0.0)), c(4.0, 0.0));
        let e = real(&[0.0, 1.0]).with_order(20).exp_series().unwrap();
        assert!((e.evaluate(c(1.0, 0.0)).re - std::f64::consts::E).abs() < 1e-12);
    }

    #[test]
    fn log_abs_survives_overflow() {
        let f = TruncatedSeries::monomial(c(1.0, 0.0), 400);
        let z = c(1e3, 0.0);
        assert!(!f.evaluate(z).re.is_finite());
        assert_relative_eq!(f.log_abs_at(z), 400.0 * 1e3f64.ln(), max_relative = 1e-14);
        assert_eq!(TruncatedSeries::zero(3).log_abs_at(z), f64::NEG_INFINITY);
    }

    #[test]
    fn degree_ignores_trailing_zeros() {
        assert_eq!(real(&[0.0, 1.0, 0.0, 0.0]).degree(), Some(1));
        assert_eq!(real(&[0.0, 0.0]).degree(), None);
    }

    fn series_strategy(max_order: usize) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..=max_order + 1)
            .prop_map(|v| TruncatedSeries::new(v.into_iter().map(|(a, b)| c(a, b)).collect()).unwrap())
    }

    proptest! {
        #[test]
        fn multiply_commutes(a in series_strategy(20), b in series_strategy(20)) {
            let n = a.order().max(b.order());
            let ab = a.multiply(&b, n);
            let ba = b.multiply(&a, n);
            for k in 0..=n {
                prop_assert!((ab.coeff(k) - ba.coeff(k)).norm() <= 1e-14);
            }
        }

        #[test]
        fn multiply_associates(a in series_strategy(12), b in series_strategy(12), d in series_strategy(12)) {
            let n = 12;
            let l = a.multiply(&b, n).multiply(&d, n);
            let r = a.multiply(&b.multiply(&d, n), n);
            for k in 0..=n {
                prop_assert!((l.coeff(k) - r.coeff(k)).norm() <= 1e-13);
            }
        }

        #[test]
        fn differentiate_inverts_integrate(f in series_strategy(64)) {
            let back = f.integrate_from_zero().differentiate();
            prop_assert_eq!(back.order(), f.order());
            for k in 0..=f.order() {
                let (x, y) = (back.coeff(k), f.coeff(k));
                prop_assert!((x.re - y.re).abs() <= f64::EPSILON * y.re.abs());
                prop_assert!((x.im - y.im).abs() <= f64::EPSILON * y.im.abs());
            }
        }

        #[test]
        fn exp_of_f_times_exp_of_minus_f(f in series_strategy(64)) {
            let l1: f64 = f.coeffs().iter().map(|c| c.norm()).sum();
            let f = if l1 > 1.0 { f.scale(c(1.0 / l1, 0.0)) } else { f };
            let n = f.order();
            let p = f.exp_series().unwrap().multiply(&(-&f).exp_series().unwrap(), n);
            prop_assert!((p.coeff(0) - c(1.0, 0.0)).norm() < 1e-12);
            for k in 1..=n {
                prop_assert!(p.coeff(k).norm() < 1e-12, "c_{} = {}", k, p.coeff(k));
            }
        }
    }
}
