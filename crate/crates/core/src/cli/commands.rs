use std::io::Write;

use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::{Map, Value};

use super::output::{number_value, Cell, Format, Report};
use super::{exit, CliError, Command, Common, Suite};
use crate::error::FockError;
use crate::expr::{format_polynomial, format_symbol, parse_coefficients, parse_polynomial, parse_symbol};
use crate::fock::{exp_membership, log_monomial_norm, log_series_norm, FockParams, QuadratureScheme};
use crate::series::TruncatedSeries;
use crate::spectral::{
    boundary_term_decay, boundedness_diagnostic, classify_spectrum, lp_ratio_experiment, lp_reference_family,
    monomial_family, resolvent_norm_probe, weighted_lp_experiment, weighted_reference_family, SpectrumKind, Trend,
    LP_RATIO_BAND, WEIGHTED_LP_BOUND,
};
use crate::volterra::{apply_tg, resolvent_apply, PolynomialSymbol};

type Result<T> = std::result::Result<T, CliError>;

pub(super) fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Spectrum { common, g } => spectrum(&common, &g, out, err),
        Command::Scan {
            common,
            g,
            lambda,
            grid_inner,
            grid_outer,
            grid_count,
            grid_rings,
            grid_radii,
            probe_degree,
        } => {
            let grid = GridSpec {
                lambda,
                inner: grid_inner,
                outer: grid_outer,
                count: grid_count,
                rings: grid_rings,
                radii: grid_radii,
            };
            scan(&common, &g, &grid, probe_degree, out, err)
        }
        Command::Verify {
            suite,
            common,
            g,
            f,
            lambda,
            family,
            columns,
            radii,
        } => {
            let opts = VerifyOptions {
                g,
                f,
                lambda,
                family,
                columns,
                radii,
            };
            verify(suite, &common, &opts, out, err)
        }
        Command::Norm { common, f } => norm(&common, &f, out),
        Command::Apply { common, g, f } => apply(&common, &g, &f, out, err),
        Command::Resolvent { common, g, lambda, h } => resolvent(&common, &g, &lambda, &h, out, err),
    }
}

fn params(common: &Common) -> Result<FockParams> {
    Ok(FockParams::new(common.p, common.alpha, common.big_a)?)
}

fn config(command: &str, common: &Common) -> Map<String, Value> {
    let mut c = Map::new();
    c.insert("command".into(), Value::from(command));
    c.insert("p".into(), number_value(common.p));
    c.insert("alpha".into(), number_value(common.alpha));
    c.insert("A".into(), number_value(common.big_a));
    c.insert("order".into(), Value::from(common.order));
    c.insert("radial_nodes".into(), Value::from(common.radial_nodes));
    c.insert(
        "angular_count".into(),
        common.angular_count.map_or(Value::from("auto"), Value::from),
    );
    c
}

fn scheme(common: &Common, params: FockParams, degree: usize) -> Result<QuadratureScheme> {
    let radial = common
        .radial_nodes
        .max(QuadratureScheme::required_radial(degree, params.p));
    let angular = common
        .angular_count
        .unwrap_or_else(|| QuadratureScheme::required_angular(degree, params.p));
    Ok(QuadratureScheme::new(params, radial, angular)?)
}

fn symbol(flag: &'static str, text: &str, err: &mut dyn Write) -> Result<PolynomialSymbol> {
    let parsed = parse_symbol(text).map_err(|e| CliError::input(flag, text, e))?;
    if let Some(c) = parsed.dropped_constant {
        writeln!(
            err,
            "note: constant term {} dropped from {flag} (T_g depends on g' only)",
            format_polynomial(&TruncatedSeries::constant(c, 0))
        )?;
    }
    Ok(parsed.symbol)
}

fn series(flag: &'static str, text: &str) -> Result<TruncatedSeries> {
    parse_polynomial(text).map_err(|e| CliError::input(flag, text, e))
}

fn complex(flag: &'static str, text: &str) -> Result<Complex64> {
    let coeffs = parse_coefficients(text).map_err(|e| CliError::input(flag, text, e))?;
    if coeffs[1..].iter().any(|c| *c != Complex64::default()) {
        return Err(CliError::Usage(format!(
            "{flag} must be a complex constant, got '{text}'"
        )));
    }
    Ok(coeffs[0])
}

fn complex_text(c: Complex64) -> String {
    format_polynomial(&TruncatedSeries::constant(c, 0))
}

fn pick(format: Option<Format>, default: Format) -> Format {
    format.unwrap_or(default)
}

fn coefficient_rows(report: &mut Report, f: &TruncatedSeries) {
    for (k, c) in f.coeffs().iter().enumerate() {
        report.push(vec![k.into(), c.re.into(), c.im.into()]);
    }
}

fn spectrum(common: &Common, g_text: &str, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let params = params(common)?;
    let g = symbol("--g", g_text, err)?;
    let desc = classify_spectrum(&g, &params)?;
    let mut cfg = config("spectrum", common);
    cfg.insert("g".into(), Value::from(format_symbol(&g)));
    let mut report = Report::new("fockspec.spectrum/1", cfg, vec!["kind", "radius", "provenance"]);
    let (kind, radius) = match desc.kind {
        SpectrumKind::Disk { radius } => ("disk", Some(radius)),
        SpectrumKind::OriginOnly => ("origin", None),
    };
    report.summary.push(("kind", Value::from(kind)));
    if let Some(r) = radius {
        report.summary.push(("radius", number_value(r)));
    }
    report
        .summary
        .push(("provenance", Value::from(desc.provenance.as_str())));
    report.push(vec![
        kind.into(),
        radius.map_or(Cell::Text(String::new()), Cell::Num),
        desc.provenance.as_str().into(),
    ]);
    report.emit(pick(common.format, Format::Json), common.out.as_deref(), out)?;
    Ok(exit::OK)
}

struct GridSpec {
    lambda: Vec<String>,
    inner: f64,
    outer: f64,
    count: usize,
    rings: usize,
    radii: Option<String>,
}

fn parse_list(flag: &'static str, text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|s| s.trim())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Usage(format!("{flag}: '{s}' is not a finite number")))
        })
        .collect()
}

impl GridSpec {
    fn radii(&self) -> Result<Vec<f64>> {
        if let Some(text) = &self.radii {
            return parse_list("--grid-radii", text);
        }
        if self.rings == 0 {
            return Err(CliError::Usage("--grid-rings must be at least 1".into()));
        }
        if self.rings == 1 {
            return Ok(vec![self.inner]);
        }
        let step = (self.outer - self.inner) / (self.rings - 1) as f64;
        Ok((0..self.rings).map(|i| self.inner + step * i as f64).collect())
    }

    fn points(&self) -> Result<Vec<Complex64>> {
        let points = if self.lambda.is_empty() {
            if self.count == 0 {
                return Err(CliError::Usage("--grid-count must be at least 1".into()));
            }
            let radii = self.radii()?;
            if radii.is_empty() {
                return Err(CliError::Usage("the lambda grid is empty".into()));
            }
            radii
                .iter()
                .flat_map(|&r| {
                    (0..self.count).map(move |j| {
                        let t = std::f64::consts::TAU * j as f64 / self.count as f64;
                        Complex64::from_polar(r, t)
                    })
                })
                .collect()
        } else {
            self.lambda
                .iter()
                .map(|s| complex("--lambda", s))
                .collect::<Result<Vec<_>>>()?
        };
        if points.iter().any(|l| *l == Complex64::default()) {
            return Err(CliError::Usage("the lambda grid contains 0".into()));
        }
        Ok(points)
    }
}

fn scan(
    common: &Common,
    g_text: &str,
    grid: &GridSpec,
    probe_degree: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let params = params(common)?;
    let g = symbol("--g", g_text, err)?;
    let points = grid.points()?;
    if common.order < probe_degree {
        return Err(CliError::Usage(format!(
            "--order {} is below --probe-degree {probe_degree}",
            common.order
        )));
    }
    let scheme = scheme(common, params, common.order)?;
    let probes = monomial_family(probe_degree);
    let rows = points
        .par_iter()
        .map(|&lambda| {
            let verdict = exp_membership(&g, lambda, &params)?;
            let ratio = resolvent_norm_probe(&g, lambda, &params, &probes, common.order, &scheme)?;
            Ok((lambda, verdict, ratio))
        })
        .collect::<std::result::Result<Vec<_>, FockError>>()?;

    let mut cfg = config("scan", common);
    cfg.insert("g".into(), Value::from(format_symbol(&g)));
    cfg.insert("probe_degree".into(), Value::from(probe_degree));
    cfg.insert("effective_radial_nodes".into(), Value::from(scheme.radial_count()));
    cfg.insert("effective_angular_count".into(), Value::from(scheme.angular_count()));
    if grid.lambda.is_empty() {
        let radii: Vec<Value> = grid.radii()?.into_iter().map(number_value).collect();
        cfg.insert("grid_radii".into(), Value::Array(radii));
        cfg.insert("grid_count".into(), Value::from(grid.count));
    } else {
        let pts: Vec<Value> = points.iter().map(|l| Value::from(complex_text(*l))).collect();
        cfg.insert("lambda".into(), Value::Array(pts));
    }
    let mut report = Report::new(
        "fockspec.scan/1",
        cfg,
        vec!["re_lambda", "im_lambda", "verdict", "probe_ratio"],
    );
    for (lambda, verdict, ratio) in rows {
        report.push(vec![
            lambda.re.into(),
            lambda.im.into(),
            verdict.as_str().into(),
            ratio.into(),
        ]);
    }
    report.emit(pick(common.format, Format::Csv), common.out.as_deref(), out)?;
    Ok(exit::OK)
}

fn norm(common: &Common, f_text: &str, out: &mut dyn Write) -> Result<i32> {
    let params = params(common)?;
    let f = series("--f", f_text)?;
    let scheme = scheme(common, params, f.degree().unwrap_or(0))?;
    let ln = log_series_norm(&f, &params, &scheme)?;
    let mut cfg = config("norm", common);
    cfg.insert("f".into(), Value::from(format_polynomial(&f)));
    cfg.insert("effective_radial_nodes".into(), Value::from(scheme.radial_count()));
    cfg.insert("effective_angular_count".into(), Value::from(scheme.angular_count()));
    let mut report = Report::new("fockspec.norm/1", cfg, vec!["norm", "log_norm"]);
    report.push(vec![ln.exp().into(), ln.into()]);
    report.emit(pick(common.format, Format::Json), common.out.as_deref(), out)?;
    Ok(exit::OK)
}

fn apply(common: &Common, g_text: &str, f_text: &str, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let g = symbol("--g", g_text, err)?;
    let f = series("--f", f_text)?;
    let tf = apply_tg(&g, &f);
    let mut cfg = config("apply", common);
    cfg.insert("g".into(), Value::from(format_symbol(&g)));
    cfg.insert("f".into(), Value::from(format_polynomial(&f)));
    let mut report = Report::new("fockspec.apply/1", cfg, vec!["k", "re", "im"]);
    coefficient_rows(&mut report, &tf);
    report.emit(pick(common.format, Format::Json), common.out.as_deref(), out)?;
    Ok(exit::OK)
}

fn resolvent(
    common: &Common,
    g_text: &str,
    lambda_text: &str,
    h_text: &str,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let g = symbol("--g", g_text, err)?;
    let lambda = complex("--lambda", lambda_text)?;
    let h = series("--h", h_text)?;
    let f = resolvent_apply(&g, lambda, &h, common.order)?;
    let mut cfg = config("resolvent", common);
    cfg.insert("g".into(), Value::from(format_symbol(&g)));
    cfg.insert("lambda".into(), Value::from(complex_text(lambda)));
    cfg.insert("h".into(), Value::from(format_polynomial(&h)));
    let mut report = Report::new("fockspec.resolvent/1", cfg, vec!["k", "re", "im"]);
    coefficient_rows(&mut report, &f);
    report.emit(pick(common.format, Format::Json), common.out.as_deref(), out)?;
    Ok(exit::OK)
}

struct VerifyOptions {
    g: Option<String>,
    f: Option<String>,
    lambda: Vec<String>,
    family: Option<String>,
    columns: usize,
    radii: String,
}

impl VerifyOptions {
    fn symbol(&self, err: &mut dyn Write) -> Result<(PolynomialSymbol, bool)> {
        let text = self.g.as_deref().unwrap_or("z^2");
        Ok((symbol("--g", text, err)?, self.g.is_none()))
    }

    fn lambdas(&self, default: &[f64]) -> Result<(Vec<Complex64>, bool)> {
        if self.lambda.is_empty() {
            return Ok((default.iter().map(|&x| Complex64::new(x, 0.0)).collect(), true));
        }
        let v = self
            .lambda
            .iter()
            .map(|s| complex("--lambda", s))
            .collect::<Result<Vec<_>>>()?;
        Ok((v, false))
    }

    fn family(&self, reference: fn() -> Vec<TruncatedSeries>) -> Result<(Vec<TruncatedSeries>, bool)> {
        match &self.family {
            None => Ok((reference(), true)),
            Some(text) => {
                let family = text
                    .split(';')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| series("--family", s))
                    .collect::<Result<Vec<_>>>()?;
                if family.is_empty() {
                    return Err(FockError::EmptyFamily.into());
                }
                Ok((family, false))
            }
        }
    }
}

struct Outcome {
    report: Report,
    pass: bool,
    detail: String,
}

fn verify(
    suite: Suite,
    common: &Common,
    opts: &VerifyOptions,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let (name, outcome) = match suite {
        Suite::Norms => ("norms", verify_norms(common)?),
        Suite::Boundedness => ("boundedness", verify_boundedness(common, opts, err)?),
        Suite::Lp => ("lp", verify_lp(common, opts)?),
        Suite::WeightedLp => ("weighted-lp", verify_weighted(common, opts, err)?),
        Suite::Boundary => ("boundary", verify_boundary(common, opts, err)?),
    };
    let status = if outcome.pass { "PASS" } else { "FAIL" };
    let mut report = outcome.report;
    report.config.insert("suite".into(), Value::from(name));
    report.summary.push(("status", Value::from(status)));
    report.summary.push(("detail", Value::from(outcome.detail.as_str())));
    report.emit(pick(common.format, Format::Csv), common.out.as_deref(), out)?;
    writeln!(err, "verify {name}: {status} ({})", outcome.detail)?;
    Ok(if outcome.pass { exit::OK } else { exit::VERIFY_FAILED })
}

/// Relative agreement required between closed-form and quadrature norms.
const NORM_TOLERANCE: f64 = 1e-10;

fn verify_norms(common: &Common) -> Result<Outcome> {
    let mut grid = Vec::new();
    for p in [1.0, 2.0, 4.0] {
        for alpha in [0.5, 1.0, 2.0] {
            for big_a in [1.0, 2.0, 3.0, 2.5] {
                grid.push(FockParams::new(p, alpha, big_a)?);
            }
        }
    }
    let max_n = 60;
    let blocks = grid
        .par_iter()
        .map(|&prm| {
            let s = scheme(common, prm, max_n)?;
            (0..=max_n)
                .map(|n| {
                    let f = TruncatedSeries::monomial(Complex64::new(1.0, 0.0), n);
                    let lq = log_series_norm(&f, &prm, &s)?;
                    let lc = log_monomial_norm(n, &prm);
                    Ok((prm, n, lc, lq, (lq - lc).exp_m1().abs()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let mut cfg = config("verify", common);
    cfg.insert("max_degree".into(), Value::from(max_n));
    cfg.insert("tolerance".into(), number_value(NORM_TOLERANCE));
    let mut report = Report::new(
        "fockspec.verify.norms/1",
        cfg,
        vec!["p", "alpha", "A", "n", "log_closed_form", "log_quadrature", "rel_error"],
    );
    let mut worst = 0.0f64;
    for (prm, n, lc, lq, e) in blocks.into_iter().flatten() {
        worst = worst.max(e);
        report.push(vec![
            prm.p.into(),
            prm.alpha.into(),
            prm.big_a.into(),
            n.into(),
            lc.into(),
            lq.into(),
            e.into(),
        ]);
    }
    let pass = worst <= NORM_TOLERANCE;
    let detail = format!(
        "{} cases, max relative error {}",
        report.rows.len(),
        super::format_number(worst)
    );
    Ok(Outcome { report, pass, detail })
}

fn expected_trend(degree: usize, big_a: f64) -> Trend {
    let d = degree as f64;
    if d < big_a {
        Trend::Vanishing
    } else if d > big_a {
        Trend::Diverging
    } else {
        Trend::Bounded
    }
}

fn verify_boundedness(common: &Common, opts: &VerifyOptions, err: &mut dyn Write) -> Result<Outcome> {
    let params = params(common)?;
    let (g, _) = opts.symbol(err)?;
    let r = boundedness_diagnostic(&g, &params, opts.columns)?;
    let expected = expected_trend(g.degree(), params.big_a);
    let mut cfg = config("verify", common);
    cfg.insert("g".into(), Value::from(format_symbol(&g)));
    cfg.insert("columns".into(), Value::from(opts.columns));
    let mut report = Report::new("fockspec.verify.boundedness/1", cfg, vec!["n", "column_norm"]);
    for (n, a) in r.sequence.iter().enumerate() {
        report.push(vec![n.into(), (*a).into()]);
    }
    report.summary.push(("trend", Value::from(r.trend.as_str())));
    report.summary.push(("expected", Value::from(expected.as_str())));
    report.summary.push(("tail_slope", number_value(r.tail_slope)));
    let detail = format!(
        "trend {}, expected {}, tail slope {}",
        r.trend.as_str(),
        expected.as_str(),
        super::format_number(r.tail_slope)
    );
    Ok(Outcome {
        report,
        pass: r.trend == expected,
        detail,
    })
}

fn max_degree(family: &[TruncatedSeries]) -> usize {
    family.iter().filter_map(TruncatedSeries::degree).max().unwrap_or(0)
}

/// Allowed relative drift of the band quotient under refinement.
const LP_REFINEMENT_TOLERANCE: f64 = 0.01;

fn verify_lp(common: &Common, opts: &VerifyOptions) -> Result<Outcome> {
    let params = params(common)?;
    let (family, reference) = opts.family(lp_reference_family)?;
    let coarse = scheme(common, params, max_degree(&family))?;
    let fine = coarse.refined()?;
    let rows = family
        .par_iter()
        .map(|f| {
            let a = lp_ratio_experiment(std::slice::from_ref(f), &params, &coarse)?.0;
            let b = lp_ratio_experiment(std::slice::from_ref(f), &params, &fine)?.0;
            Ok((a, b))
        })
        .collect::<std::result::Result<Vec<_>, FockError>>()?;
    let mut cfg = config("verify", common);
    cfg.insert(
        "family".into(),
        Value::from(if reference { "reference" } else { "custom" }),
    );
    let mut report = Report::new(
        "fockspec.verify.lp/1",
        cfg,
        vec!["index", "function", "ratio", "ratio_refined"],
    );
    let (mut lo, mut hi, mut lo2, mut hi2) = (f64::INFINITY, 0.0f64, f64::INFINITY, 0.0f64);
    for (i, (f, (a, b))) in family.iter().zip(&rows).enumerate() {
        lo = lo.min(*a);
        hi = hi.max(*a);
        lo2 = lo2.min(*b);
        hi2 = hi2.max(*b);
        report.push(vec![i.into(), format_polynomial(f).into(), (*a).into(), (*b).into()]);
    }
    let quotient = hi / lo;
    let quotient_refined = hi2 / lo2;
    let stable = quotient.is_finite() && (quotient_refined / quotient - 1.0).abs() <= LP_REFINEMENT_TOLERANCE;
    let pinned = reference && params == FockParams::new(2.0, 0.5, 2.0)?;
    let in_band = !pinned || (lo >= LP_RATIO_BAND.0 && hi <= LP_RATIO_BAND.1);
    for (k, v) in [
        ("min", lo),
        ("max", hi),
        ("quotient", quotient),
        ("quotient_refined", quotient_refined),
    ] {
        report.summary.push((k, number_value(v)));
    }
    let detail = format!(
        "band [{}, {}], quotient {} vs refined {}{}",
        super::format_number(lo),
        super::format_number(hi),
        super::format_number(quotient),
        super::format_number(quotient_refined),
        if pinned { ", frozen band checked" } else { "" }
    );
    Ok(Outcome {
        report,
        pass: stable && in_band,
        detail,
    })
}

/// Allowed relative drift of the weighted ratio under refinement.
const WEIGHTED_REFINEMENT_TOLERANCE: f64 = 0.1;

fn verify_weighted(common: &Common, opts: &VerifyOptions, err: &mut dyn Write) -> Result<Outcome> {
    let params = params(common)?;
    let (g, default_g) = opts.symbol(err)?;
    g.require_monomial()?;
    let big_a = g.degree() as u32;
    let b = g.leading();
    let (lambdas, default_lambdas) = opts.lambdas(&[4.0, 8.0, -4.0])?;
    let (family, reference) = opts.family(weighted_reference_family)?;
    let coarse = scheme(common, params, max_degree(&family))?;
    let fine = coarse.refined()?;
    let rows = lambdas
        .par_iter()
        .map(|&l| {
            let a = weighted_lp_experiment(b, big_a, l, &params, &family, &coarse)?;
            let r = weighted_lp_experiment(b, big_a, l, &params, &family, &fine)?;
            Ok((l, a, r))
        })
        .collect::<std::result::Result<Vec<_>, FockError>>()?;
    let mut cfg = config("verify", common);
    cfg.insert("g".into(), Value::from(format_symbol(&g)));
    cfg.insert(
        "family".into(),
        Value::from(if reference { "reference" } else { "custom" }),
    );
    let mut report = Report::new(
        "fockspec.verify.weighted-lp/1",
        cfg,
        vec!["re_lambda", "im_lambda", "ratio", "ratio_refined"],
    );
    let mut bound = 0.0f64;
    let mut stable = true;
    for (l, a, r) in &rows {
        bound = bound.max(*a);
        stable &= a.is_finite() && (*a == 0.0 || (r / a - 1.0).abs() <= WEIGHTED_REFINEMENT_TOLERANCE);
        report.push(vec![l.re.into(), l.im.into(), (*a).into(), (*r).into()]);
    }
    let pinned = default_g && default_lambdas && reference && params == FockParams::new(2.0, 1.0, 2.0)?;
    let below = !pinned || bound <= WEIGHTED_LP_BOUND;
    report.summary.push(("bound", number_value(bound)));
    let detail = format!(
        "max ratio {}{}",
        super::format_number(bound),
        if pinned { ", frozen bound checked" } else { "" }
    );
    Ok(Outcome {
        report,
        pass: stable && below,
        detail,
    })
}

/// Values must fall below this by the last radius.
const BOUNDARY_FLOOR: f64 = 1e-8;
/// Allowed relative change when the truncation order doubles.
const BOUNDARY_ORDER_TOLERANCE: f64 = 0.01;

fn verify_boundary(common: &Common, opts: &VerifyOptions, err: &mut dyn Write) -> Result<Outcome> {
    let params = params(common)?;
    let (g, _) = opts.symbol(err)?;
    g.require_monomial()?;
    let f = series("--f", opts.f.as_deref().unwrap_or("1"))?;
    let (lambdas, _) = opts.lambdas(&[4.0])?;
    let radii = parse_list("--radii", &opts.radii)?;
    if radii.is_empty() {
        return Err(CliError::Usage("--radii is empty".into()));
    }
    let big_a = g.degree() as u32;
    let mut cfg = config("verify", common);
    cfg.insert("g".into(), Value::from(format_symbol(&g)));
    cfg.insert("f".into(), Value::from(format_polynomial(&f)));
    let mut report = Report::new(
        "fockspec.verify.boundary/1",
        cfg,
        vec!["re_lambda", "im_lambda", "R", "value", "value_doubled_order"],
    );
    let mut pass = true;
    for &l in &lambdas {
        let v = boundary_term_decay(&f, g.leading(), big_a, l, &params, &radii, common.order)?;
        let w = boundary_term_decay(&f, g.leading(), big_a, l, &params, &radii, 2 * common.order)?;
        for ((r, a), (_, b)) in v.iter().zip(&w) {
            report.push(vec![l.re.into(), l.im.into(), (*r).into(), (*a).into(), (*b).into()]);
            pass &= *a == *b || (b / a - 1.0).abs() <= BOUNDARY_ORDER_TOLERANCE;
        }
        let tail: Vec<f64> = v.iter().filter(|(r, _)| *r >= 2.0).map(|(_, x)| *x).collect();
        pass &= tail.windows(2).all(|w| w[1] < w[0]);
        pass &= v.last().is_some_and(|(_, x)| *x < BOUNDARY_FLOOR);
    }
    let detail = format!("{} radii x {} lambda values", radii.len(), lambdas.len());
    Ok(Outcome { report, pass, detail })
}
