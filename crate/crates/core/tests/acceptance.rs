//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::process::Command;
use std::time::Instant;

use fockspec::expr::{format_symbol, parse_coefficients, parse_symbol};
use fockspec::spectral::{
    lp_reference_family, monomial_family, weighted_reference_family, LP_RATIO_BAND, WEIGHTED_LP_BOUND,
};
use fockspec::volterra::default_resolvent_order;
use fockspec::*;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::result::Result;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn params(p: f64, alpha: f64, big_a: f64) -> FockParams {
    FockParams::new(p, alpha, big_a).expect("valid parameters")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn norm_oracle_agreement() -> Outcome {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for p in [1.0, 2.0, 4.0] {
        for alpha in [0.5, 1.0, 2.0] {
            for big_a in [1.0, 2.0, 3.0, 2.5] {
                let prm = params(p, alpha, big_a);
                let scheme = QuadratureScheme::for_degree(prm, 60).map_err(|e| e.to_string())?;
                for n in 0..=60 {
                    let f = TruncatedSeries::monomial(c(1.0, 0.0), n);
                    let lq = log_series_norm(&f, &prm, &scheme).map_err(|e| e.to_string())?;
                    let e = (lq - log_monomial_norm(n, &prm)).exp_m1().abs();
                    ensure(e <= 1e-10, || {
                        format!("p={p} alpha={alpha} A={big_a} n={n}: rel error {e:e}")
                    })?;
                    worst = worst.max(e);
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("{cases} cases, max relative error {worst:.2e}"))
}

fn resolvent_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut draw = |n: usize| -> Vec<Complex64> {
        (0..n)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    };
    let symbols: Vec<PolynomialSymbol> = (1..=3)
        .map(|d| {
            let mut v = draw(d + 1);
            v[0] = c(0.0, 0.0);
            PolynomialSymbol::from_coeffs(&v).expect("nonzero symbol")
        })
        .collect();
    let inputs: Vec<TruncatedSeries> = [0usize, 4, 8]
        .iter()
        .map(|&d| {
            let h = TruncatedSeries::new(draw(d + 1)).expect("finite");
            h.scale(c(1.0 / h.max_abs(), 0.0))
        })
        .collect();
    let lambdas = [c(0.3, 0.0), c(0.0, 1.0), c(-2.0, 0.5), c(1.0, -1.0), c(8.0, 3.0)];
    let mut worst = 0.0f64;
    let mut cases = 0;
    for g in &symbols {
        for h in &inputs {
            for &lambda in &lambdas {
                let order = default_resolvent_order(h, g);
                let f = resolvent_apply(g, lambda, h, order).map_err(|e| e.to_string())?;
                let residual = &(&f - &apply_tg(g, &f).scale(lambda.inv())) - &h.with_order(order + g.degree());
                let err = (0..=order - g.degree())
                    .map(|k| residual.coeff(k).norm())
                    .fold(0.0, f64::max);
                ensure(err <= 1e-12, || {
                    format!("deg g={} deg h={:?} lambda={lambda}: {err:e}", g.degree(), h.degree())
                })?;
                worst = worst.max(err);
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases, max residual {worst:.2e}"))
}

fn spectral_radius() -> Outcome {
    let mut notes = Vec::new();
    for (b, alpha) in [(1.0, 1.0), (2.0, 1.0), (1.0, 2.0)] {
        let g = PolynomialSymbol::monomial(c(b, 0.0), 2).expect("monomial");
        let prm = params(2.0, alpha, 2.0);
        let target = b / alpha;
        let mut prev = 0.0;
        for max_m in [32, 64, 128, 256, 512] {
            let est = spectral_radius_estimate(&g, &prm, 64, max_m)
                .map_err(|e| e.to_string())?
                .estimate;
            ensure(est >= prev, || {
                format!("b={b} alpha={alpha}: estimate fell from {prev} to {est} at maxM={max_m}")
            })?;
            prev = est;
        }
        let rel = (prev - target).abs() / target;
        ensure(rel <= 0.03, || {
            format!("b={b} alpha={alpha}: estimate {prev} vs {target}")
        })?;
        notes.push(format!("{prev:.5}/{target}"));
    }
    Ok(format!("estimates {}", notes.join(", ")))
}

fn spectrum_region() -> Outcome {
    let g = PolynomialSymbol::monomial(c(1.0, 0.0), 2).expect("monomial");
    let prm = params(2.0, 1.0, 2.0);
    let spectrum = classify_spectrum(&g, &prm).map_err(|e| e.to_string())?;
    let grid: Vec<Complex64> = [0.5, 0.9, 1.1, 2.0]
        .iter()
        .flat_map(|&r| (0..50).map(move |j| Complex64::from_polar(r, std::f64::consts::TAU * j as f64 / 50.0)))
        .collect();
    let scan = membership_scan(&g, &prm, &grid).map_err(|e| e.to_string())?;
    for (lambda, verdict) in &scan {
        let want = if spectrum.contains(*lambda) {
            MembershipVerdict::NonMember
        } else {
            MembershipVerdict::Member
        };
        ensure(*verdict == want, || {
            format!("lambda={lambda}: {verdict:?}, expected {want:?}")
        })?;
    }
    let radius = spectrum.radius().ok_or("expected a disk")?;
    Ok(format!("{} points agree with disk of radius {radius}", scan.len()))
}

fn boundedness_trichotomy() -> Outcome {
    let mut cells = Vec::new();
    for d in 1..=3usize {
        for a in 1..=3usize {
            let g = PolynomialSymbol::monomial(c(1.0, 0.0), d).expect("monomial");
            let r = boundedness_diagnostic(&g, &params(2.0, 1.0, a as f64), 400).map_err(|e| e.to_string())?;
            let want = match d.cmp(&a) {
                std::cmp::Ordering::Less => Trend::Vanishing,
                std::cmp::Ordering::Equal => Trend::Bounded,
                std::cmp::Ordering::Greater => Trend::Diverging,
            };
            ensure(r.trend == want, || {
                format!(
                    "deg={d} A={a}: {:?} (slope {}), expected {want:?}",
                    r.trend, r.tail_slope
                )
            })?;
            cells.push(format!("{d}/{a}:{}", &r.trend.as_str()[..1]));
        }
    }
    Ok(cells.join(" "))
}

fn littlewood_paley() -> Outcome {
    let prm = params(2.0, 0.5, 2.0);
    let family = lp_reference_family();
    let scheme = QuadratureScheme::for_degree(prm, 40).map_err(|e| e.to_string())?;
    let (lo, hi) = lp_ratio_experiment(&family, &prm, &scheme).map_err(|e| e.to_string())?;
    let (lo2, hi2) =
        lp_ratio_experiment(&family, &prm, &scheme.refined().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(lo >= LP_RATIO_BAND.0 && hi <= LP_RATIO_BAND.1, || {
        format!("band [{lo}, {hi}] leaves frozen {LP_RATIO_BAND:?}")
    })?;
    let (q, q2) = (hi / lo, hi2 / lo2);
    ensure(q.is_finite() && (q2 / q - 1.0).abs() <= 0.01, || {
        format!("quotient {q} vs refined {q2}")
    })?;
    Ok(format!(
        "{} functions, band [{lo:.6}, {hi:.6}], quotient {q:.6} (refined {q2:.6})",
        family.len()
    ))
}

fn weighted_inequality() -> Outcome {
    let prm = params(2.0, 1.0, 2.0);
    let family = weighted_reference_family();
    let scheme = QuadratureScheme::for_degree(prm, 19).map_err(|e| e.to_string())?;
    let fine = scheme.refined().map_err(|e| e.to_string())?;
    let mut ratios = Vec::new();
    for lambda in [4.0, 8.0, -4.0] {
        let l = c(lambda, 0.0);
        let a = weighted_lp_experiment(c(1.0, 0.0), 2, l, &prm, &family, &scheme).map_err(|e| e.to_string())?;
        let b = weighted_lp_experiment(c(1.0, 0.0), 2, l, &prm, &family, &fine).map_err(|e| e.to_string())?;
        ensure(a <= WEIGHTED_LP_BOUND, || {
            format!("lambda={lambda}: ratio {a} exceeds {WEIGHTED_LP_BOUND}")
        })?;
        ensure((b / a - 1.0).abs() <= 0.1, || {
            format!("lambda={lambda}: {a} vs refined {b}")
        })?;
        ratios.push(format!("{a:.6}"));
    }
    Ok(format!(
        "{} functions, ratios {} <= {WEIGHTED_LP_BOUND}",
        family.len(),
        ratios.join(", ")
    ))
}

fn boundary_decay() -> Outcome {
    let prm = params(2.0, 1.0, 2.0);
    let grid: Vec<f64> = (1..=6).map(f64::from).collect();
    let one = TruncatedSeries::constant(c(1.0, 0.0), 0);
    let values = boundary_term_decay(&one, c(1.0, 0.0), 2, c(4.0, 0.0), &prm, &grid, 96).map_err(|e| e.to_string())?;
    let tail: Vec<f64> = values.iter().filter(|(r, _)| *r >= 2.0).map(|(_, v)| *v).collect();
    ensure(tail.windows(2).all(|w| w[1] < w[0]), || {
        format!("not decreasing from R = 2: {values:?}")
    })?;
    let last = values.last().map(|(_, v)| *v).unwrap_or(f64::NAN);
    ensure(last < 1e-8, || format!("value {last:e} at R = 6"))?;
    Ok(format!("R=2: {:.3e}, R=6: {last:.3e}", tail[0]))
}

fn resolvent_blow_up() -> Outcome {
    let g = PolynomialSymbol::monomial(c(1.0, 0.0), 2).expect("monomial");
    let prm = params(2.0, 1.0, 2.0);
    let probes = monomial_family(24);
    let probe = |lambda: f64, order: usize| -> Result<f64, String> {
        let scheme = QuadratureScheme::for_degree(prm, order).map_err(|e| e.to_string())?;
        resolvent_norm_probe(&g, c(lambda, 0.0), &prm, &probes, order, &scheme).map_err(|e| e.to_string())
    };
    let (a, b) = (probe(0.5, 32)?, probe(0.5, 96)?);
    ensure(b >= 10.0 * a, || format!("lambda=1/2: {a} -> {b}"))?;
    let (x, y) = (probe(3.0, 64)?, probe(3.0, 128)?);
    let change = (y / x - 1.0).abs();
    ensure(change < 0.05, || format!("lambda=3: {x} -> {y}"))?;
    Ok(format!("inside x{:.3e}, outside change {change:.2e}", b / a))
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_fockspec"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("{args:?} exited with {:?}", out.status.code())
    })?;
    Ok(out.stdout)
}

/// Random string in the symbol grammar plus the coefficients it denotes.
fn generated_case(rng: &mut ChaCha8Rng) -> (String, Vec<Complex64>) {
    let ws = |rng: &mut ChaCha8Rng| if rng.gen_bool(0.3) { " " } else { "" };
    let decimal = |rng: &mut ChaCha8Rng| -> String {
        match rng.gen_range(0..3) {
            0 => rng.gen_range(0..100).to_string(),
            1 => format!("{}.{:03}", rng.gen_range(0..50), rng.gen_range(0..1000)),
            _ => format!("{}.{}", rng.gen_range(0..10), rng.gen_range(1..10)),
        }
    };
    let mut text = String::new();
    let mut coeffs = vec![c(0.0, 0.0); 8];
    let terms = rng.gen_range(1..=5);
    for t in 0..terms {
        let negative = rng.gen_bool(0.4);
        if t > 0 || negative {
            text.push_str(ws(rng));
            text.push(if negative { '-' } else { '+' });
            text.push_str(ws(rng));
        }
        let sign = if negative { -1.0 } else { 1.0 };
        let power = rng.gen_range(0..8usize);
        let implicit = power > 0 && rng.gen_bool(0.3);
        let coeff = match rng.gen_range(0..3) {
            _ if implicit => c(1.0, 0.0),
            0 | 1 => {
                let d = decimal(rng);
                text.push_str(&d);
                c(d.parse().unwrap(), 0.0)
            }
            _ => {
                let (re, im) = (decimal(rng), decimal(rng));
                let im_negative = rng.gen_bool(0.5);
                text.push_str(&format!(
                    "({re}{}{}{im}i)",
                    ws(rng),
                    if im_negative { '-' } else { '+' }
                ));
                let im: f64 = im.parse().unwrap();
                c(re.parse().unwrap(), if im_negative { -im } else { im })
            }
        };
        if power > 0 {
            if !implicit && rng.gen_bool(0.3) {
                text.push_str(&format!("{}*{}", ws(rng), ws(rng)));
            }
            text.push('z');
            if power > 1 || rng.gen_bool(0.3) {
                text.push_str(&format!("{}^{}{power}", ws(rng), ws(rng)));
            }
        }
        coeffs[power] += coeff * sign;
    }
    // guarantee a non-constant term
    text.push_str(" + 0.5z^7");
    coeffs[7] += c(0.5, 0.0);
    (text, coeffs)
}

fn determinism_and_parsing() -> Outcome {
    let invocations: [&[&str]; 3] = [
        &[
            "scan",
            "--g",
            "z^2",
            "--grid-radii",
            "0.5,2",
            "--grid-count",
            "8",
            "--order",
            "48",
        ],
        &["spectrum", "--g", "(1+2i)z^2 + z", "--alpha", "0.5"],
        &["verify", "boundary"],
    ];
    for args in invocations {
        let first = run_cli(args)?;
        let second = run_cli(args)?;
        ensure(!first.is_empty() && first == second, || {
            format!("{args:?} output differs between runs")
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for case in 0..50 {
        let (text, want) = generated_case(&mut rng);
        let parsed = parse_coefficients(&text).map_err(|e| format!("case {case} {text:?}: {e}"))?;
        let mut got = parsed.clone();
        got.resize(want.len().max(got.len()), c(0.0, 0.0));
        for (k, (a, b)) in got.iter().zip(&want).enumerate() {
            let tol = 1e-12 * b.norm().max(1.0);
            ensure((a - b).norm() <= tol, || {
                format!("case {case} {text:?}: z^{k} {a} vs {b}")
            })?;
        }
        let symbol = parse_symbol(&text).map_err(|e| e.to_string())?.symbol;
        let back = parse_symbol(&format_symbol(&symbol)).map_err(|e| e.to_string())?.symbol;
        ensure(back == symbol, || {
            format!("case {case} {text:?}: round trip changed coefficients")
        })?;
    }
    Ok("3 commands byte-identical, 50 generated expressions round-trip".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("norm oracle agreement", norm_oracle_agreement),
        ("resolvent identity", resolvent_identity),
        ("spectral radius", spectral_radius),
        ("spectrum region agreement", spectrum_region),
        ("boundedness trichotomy", boundedness_trichotomy),
        ("littlewood-paley band", littlewood_paley),
        ("weighted inequality", weighted_inequality),
        ("boundary term decay", boundary_decay),
        ("resolvent blow-up", resolvent_blow_up),
        ("determinism and parsing", determinism_and_parsing),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let (status, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "criterion {:>2} {status} {name}: {detail} [{:.2}s]",
            i + 1,
            t.elapsed().as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
