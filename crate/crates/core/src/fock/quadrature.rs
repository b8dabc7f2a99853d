//! Gauss rules for the radial Fock weight.
//!
//! The area integral of a radial weight reduces to
//! `int_0^inf F(r) e^{-c r^A} r dr`. With `s = c^{1/A} r` this is
//! `c^{-2/A} int_0^inf F(s c^{-1/A}) s e^{-s^A} ds`, so one Gauss rule for the
//! Freud-type weight `s e^{-s^A}` serves every `(p, alpha)`.
//!
//! The rule is exact for polynomials in `s` (hence in `r`) of degree `2N-1`.
//! That covers `|z^n|^p = r^{np}` for every integer `p`, which a
//! Gauss-Laguerre rule in `u = c r^A` does not when `np/A` is fractional.
//!
//! Construction:
//! 1. discretize the measure by the trapezoid rule in `t = ln(s^A)`, where the
//!    moment integrands `e^{(k+2)t/A - e^t}` are entire and decay doubly
//!    exponentially, so the rule is accurate to rounding;
//! 2. run the Stieltjes procedure on that discrete measure in Lanczos-vector
//!    form (`q_k(j) = sqrt(W_j) p_k(x_j)`, unit vectors), which avoids
//!    the under/overflow of raw weights and polynomial values;
//! 3. nodes are eigenvalues of the Jacobi matrix (implicit QL), polished by
//!    Newton steps on `p_N`;
//! 4. weights are Christoffel numbers `1 / sum_k p_k(x_i)^2`, accumulated with
//!    an explicit log scale so tail weights keep full relative precision.

use crate::error::{FockError, Result};

/// Nodes and log-weights of a Gauss rule on `(0, inf)`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct RadialRule {
    pub nodes: Vec<f64>,
    pub ln_weights: Vec<f64>,
}

/// Recurrence coefficients of the orthonormal polynomials of a measure:
/// `sqrt(b_{k+1}) p_{k+1} = (x - a_k) p_k - sqrt(b_k) p_{k-1}`, `b_0 = mu_0`.
#[derive(Debug, Clone)]
pub(crate) struct Recurrence {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Recurrence coefficients `a_0..a_{n-1}`, `b_0..b_n` for `s e^{-s^A} ds`.
pub(crate) fn freud_recurrence(big_a: f64, n: usize) -> Recurrence {
    // In u = s^A the mass of p_n^2 W ends near c(A) n, c(A) ~ 2/A for small A
    // and 4 at A = 1. The trapezoid step must resolve e^{-u} rotated off the
    // real axis, hence h ~ 1/sqrt(u_max).
    let u_max = 10f64.max(3.0 / big_a) * (n + 1) as f64 + 60.0;
    let t_max = u_max.ln();
    let t_min = -25.0 * big_a.max(1.0);
    let h = (0.3 / u_max.sqrt()).min(0.25);
    let m = ((t_max - t_min) / h).ceil() as usize + 1;

    // s_j = e^{t_j / A}; W_j = h e^{2 t_j / A - e^{t_j}} / A.
    let mut x = Vec::with_capacity(m);
    let mut sqrt_w = Vec::with_capacity(m);
    for j in 0..m {
        let t = t_min + j as f64 * h;
        let ln_w = h.ln() + 2.0 * t / big_a - t.exp() - big_a.ln();
        if ln_w < -1400.0 {
            continue;
        }
        x.push((t / big_a).exp());
        sqrt_w.push((0.5 * ln_w).exp());
    }

    let mu0 = (ln_gamma(2.0 / big_a) - big_a.ln()).exp();
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n + 1);
    b.push(mu0);

    let norm0 = sqrt_w.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut q_prev = vec![0.0; x.len()];
    let mut q: Vec<f64> = sqrt_w.iter().map(|v| v / norm0).collect();
    let mut sqrt_b = 0.0;
    for _ in 0..n {
        let ak: f64 = q.iter().zip(&x).map(|(qj, xj)| xj * qj * qj).sum();
        let mut next: Vec<f64> = q
            .iter()
            .zip(&q_prev)
            .zip(&x)
            .map(|((qj, pj), xj)| (xj - ak) * qj - sqrt_b * pj)
            .collect();
        let nrm = next.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in next.iter_mut() {
            *v /= nrm;
        }
        a.push(ak);
        b.push(nrm * nrm);
        sqrt_b = nrm;
        q_prev = std::mem::replace(&mut q, next);
    }
    Recurrence { a, b }
}

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `d` and
/// off-diagonal `e` (`e[i]` couples `i` and `i+1`), by implicit QL with
/// Wilkinson shifts. Returned in ascending order.
pub(crate) fn tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut d = diag.to_vec();
    let mut e = off.to_vec();
    e.resize(n, 0.0);
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            assert!(iter < 200, "QL iteration failed to converge");
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let bb = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * bb;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - bb;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|x, y| x.total_cmp(y));
    d
}

const RESCALE_ABOVE: f64 = 1e100;

/// `p_n(x) / p_n'(x)` for the orthonormal family; scale-free, so the
/// recurrence is rescaled freely to stay in range.
fn newton_ratio(rec: &Recurrence, n: usize, x: f64) -> f64 {
    let sb = |k: usize| rec.b[k].sqrt();
    let (mut p0, mut p1) = (0.0, 1.0);
    let (mut d0, mut d1) = (0.0, 0.0);
    for k in 0..n {
        let p2 = ((x - rec.a[k]) * p1 - if k > 0 { sb(k) * p0 } else { 0.0 }) / sb(k + 1);
        let d2 = (p1 + (x - rec.a[k]) * d1 - if k > 0 { sb(k) * d0 } else { 0.0 }) / sb(k + 1);
        p0 = p1;
        p1 = p2;
        d0 = d1;
        d1 = d2;
        let big = p1.abs().max(d1.abs());
        if big > RESCALE_ABOVE {
            p0 /= big;
            p1 /= big;
            d0 /= big;
            d1 /= big;
        }
    }
    p1 / d1
}

/// `ln( 1 / sum_{k<n} p_k(x)^2 )` with orthonormal `p_k`.
fn ln_christoffel(rec: &Recurrence, n: usize, x: f64) -> f64 {
    let sb = |k: usize| rec.b[k].sqrt();
    let mut p0 = 0.0;
    let mut p1 = 1.0 / sb(0);
    let mut sum = p1 * p1;
    let mut ln_scale = 0.0; // true values = stored * e^{ln_scale}
    for k in 0..n - 1 {
        let p2 = ((x - rec.a[k]) * p1 - if k > 0 { sb(k) * p0 } else { 0.0 }) / sb(k + 1);
        p0 = p1;
        p1 = p2;
        sum += p1 * p1;
        if p1.abs() > RESCALE_ABOVE {
            let f = p1.abs();
            p0 /= f;
            p1 /= f;
            sum /= f * f;
            ln_scale += f.ln();
        }
    }
    -(sum.ln() + 2.0 * ln_scale)
}

/// `n`-point Gauss rule for `s e^{-s^A} ds` on `(0, inf)`.
pub(crate) fn freud_rule(big_a: f64, n: usize) -> Result<RadialRule> {
    if !(big_a.is_finite() && big_a > 0.0) {
        return Err(FockError::InvalidParams(format!("A must be positive, got {big_a}")));
    }
    if n == 0 {
        return Err(FockError::InvalidScheme("radial node count must be positive".into()));
    }
    let rec = freud_recurrence(big_a, n);
    let off: Vec<f64> = rec.b[1..n].iter().map(|b| b.sqrt()).collect();
    let mut nodes = tridiagonal_eigenvalues(&rec.a, &off);
    for x in nodes.iter_mut() {
        for _ in 0..3 {
            let step = newton_ratio(&rec, n, *x);
            if !step.is_finite() || step.abs() > 1e-6 * x.abs().max(1e-300) {
                break;
            }
            *x -= step;
        }
    }
    let ln_weights = nodes.iter().map(|&x| ln_christoffel(&rec, n, x)).collect();
    Ok(RadialRule { nodes, ln_weights })
}

/// `n`-point Gauss-Legendre rule on `[-1, 1]` by Newton iteration on `P_n`.
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { z } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (z * pn - pm) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log_sum_exp(xs: impl Iterator<Item = f64>) -> f64 {
        let v: Vec<f64> = xs.collect();
        let m = v.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        m + v.iter().map(|x| (x - m).exp()).sum::<f64>().ln()
    }

    #[test]
    fn laguerre_recurrence_recovered() {
        // A = 1: s e^{-s} is the Laguerre weight with exponent 1,
        // monic recurrence a_k = 2k + 2, b_k = k(k + 1).
        let rec = freud_recurrence(1.0, 300);
        let mut worst = 0.0f64;
        for k in 0..300 {
            worst = worst.max((rec.a[k] / (2.0 * k as f64 + 2.0) - 1.0).abs());
        }
        for k in 1..=300 {
            worst = worst.max((rec.b[k] / (k * (k + 1)) as f64 - 1.0).abs());
        }
        assert!(worst < 1e-12, "worst relative error {worst:e}");
    }

    #[test]
    fn qr_matches_known_spectrum() {
        // Tridiagonal (2, -1) matrix: eigenvalues 2 - 2cos(k pi / (n + 1)).
        let n = 50;
        let ev = tridiagonal_eigenvalues(&vec![2.0; n], &vec![-1.0; n - 1]);
        for (k, e) in ev.iter().enumerate() {
            let want = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((e - want).abs() < 1e-13);
        }
    }

    #[test]
    fn rule_integrates_moments_exactly() {
        for &big_a in &[0.25, 0.5, 1.0, 2.0, 2.5, 3.0, 5.0] {
            let n = 152;
            let rule = freud_rule(big_a, n).unwrap();
            for k in (0..2 * n).step_by(7) {
                let got = log_sum_exp(
                    rule.nodes
                        .iter()
                        .zip(&rule.ln_weights)
                        .map(|(x, lw)| lw + k as f64 * x.ln()),
                );
                let want = ln_gamma((k as f64 + 2.0) / big_a) - big_a.ln();
                let e = (got - want).abs() / want.abs().max(1.0);
                assert!(e < 1e-12, "A={big_a} k={k}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn legendre_rule_is_exact() {
        let (x, w) = gauss_legendre(20);
        for k in 0..40 {
            let got: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(k)).sum();
            let want = if k % 2 == 0 { 2.0 / (k as f64 + 1.0) } else { 0.0 };
            assert!((got - want).abs() < 1e-14);
        }
    }
}
