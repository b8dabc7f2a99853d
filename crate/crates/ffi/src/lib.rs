//! C interface to `fockspec`.
//!
//! Objects are opaque handles created by `fs_*_new`/`fs_*_parse` and released
//! with the matching `fs_*_free`. Every call returns an [`FsStatus`]; on
//! failure [`fs_last_error`] describes the problem for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use fockspec::expr::{parse_polynomial, parse_symbol};
use fockspec::{
    FockError, FockParams, MembershipVerdict, PolynomialSymbol, Provenance, QuadratureScheme, SpectrumKind,
    TruncatedSeries,
};
use num_complex::Complex64;

/// Result code of every `fs_*` call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ParseError = 3,
    Unbounded = 4,
    Numerical = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsComplex {
    pub re: f64,
    pub im: f64,
}

/// Space parameters: exponent `p`, weight scale `alpha`, growth order `big_a`.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsParams {
    pub p: f64,
    pub alpha: f64,
    pub big_a: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsSpectrumKind {
    Disk = 0,
    OriginOnly = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsProvenance {
    TheoremII = 0,
    CompactCase = 1,
    NonIntegerA = 2,
}

/// `radius` is 0 for [`FsSpectrumKind::OriginOnly`].
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsSpectrum {
    pub kind: FsSpectrumKind,
    pub radius: f64,
    pub provenance: FsProvenance,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FsMembership {
    Member = 0,
    NonMember = 1,
    CriticalCircle = 2,
}

/// Truncated power series.
pub struct FsSeries(TruncatedSeries);

/// Polynomial symbol `g` with `g(0) = 0`.
pub struct FsSymbol(PolynomialSymbol);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(FsStatus, String);

impl From<FockError> for Failure {
    fn from(e: FockError) -> Self {
        let status = match e {
            FockError::Parse { .. } => FsStatus::ParseError,
            FockError::Unbounded { .. } => FsStatus::Unbounded,
            FockError::InvalidSeries(_)
            | FockError::InvalidParams(_)
            | FockError::InvalidScheme(_)
            | FockError::ZeroLambda
            | FockError::InvalidSymbol(_)
            | FockError::NonMonomialSymbol { .. }
            | FockError::RequiresHilbert(_)
            | FockError::RequiresIntegerA(_)
            | FockError::EmptyFamily
            | FockError::InvalidArgument(_) => FsStatus::InvalidArgument,
            FockError::InadequateScheme { .. }
            | FockError::Range(_)
            | FockError::ZeroNorm
            | FockError::Hypothesis(_) => FsStatus::Numerical,
        };
        Failure(status, e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn guard(f: impl FnOnce() -> Outcome) -> FsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error(String::new());
            FsStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            FsStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T, name: &str) -> std::result::Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(FsStatus::NullPointer, format!("{name} is null")))
}

unsafe fn put<T>(out: *mut T, value: T, name: &str) -> Outcome {
    if out.is_null() {
        return Err(Failure(FsStatus::NullPointer, format!("{name} is null")));
    }
    out.write(value);
    Ok(())
}

unsafe fn utf8<'a>(s: *const c_char) -> std::result::Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(FsStatus::NullPointer, "text is null".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(FsStatus::InvalidArgument, format!("text is not utf-8: {e}")))
}

fn params(p: &FsParams) -> std::result::Result<FockParams, Failure> {
    Ok(FockParams::new(p.p, p.alpha, p.big_a)?)
}

fn complex(z: FsComplex) -> Complex64 {
    Complex64::new(z.re, z.im)
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer is valid until the next `fs_*` call on the same thread.
#[no_mangle]
pub extern "C" fn fs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn fs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `coeffs` must point to `len` values (or be null when `len` is 0) and `out`
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn fs_series_new(coeffs: *const FsComplex, len: usize, out: *mut *mut FsSeries) -> FsStatus {
    guard(|| {
        let values: Vec<Complex64> = if len == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(get(coeffs, "coeffs")?, len)
                .iter()
                .copied()
                .map(complex)
                .collect()
        };
        let series = TruncatedSeries::new(values)?;
        put(out, boxed(FsSeries(series)), "out")
    })
}

/// Parses a polynomial such as `"1 + (0+2i)z^3"`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_series_parse(text: *const c_char, out: *mut *mut FsSeries) -> FsStatus {
    guard(|| {
        let series = parse_polynomial(utf8(text)?)?;
        put(out, boxed(FsSeries(series)), "out")
    })
}

/// # Safety
/// `series` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fs_series_free(series: *mut FsSeries) {
    if !series.is_null() {
        drop(Box::from_raw(series));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_series_order(series: *const FsSeries, out: *mut usize) -> FsStatus {
    guard(|| put(out, get(series, "series")?.0.order(), "out"))
}

/// Copies the `order + 1` coefficients into `buf`. `len_out` always receives
/// the required length; a short buffer yields `BufferTooSmall`.
///
/// # Safety
/// `buf` must hold `cap` values (may be null when `cap` is 0); `len_out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_series_coeffs(
    series: *const FsSeries,
    buf: *mut FsComplex,
    cap: usize,
    len_out: *mut usize,
) -> FsStatus {
    guard(|| {
        let coeffs = get(series, "series")?.0.coeffs();
        put(len_out, coeffs.len(), "len_out")?;
        if cap < coeffs.len() {
            return Err(Failure(
                FsStatus::BufferTooSmall,
                format!("buffer holds {cap} coefficients, {} needed", coeffs.len()),
            ));
        }
        if buf.is_null() {
            return Err(Failure(FsStatus::NullPointer, "buf is null".into()));
        }
        let dst = std::slice::from_raw_parts_mut(buf, coeffs.len());
        for (d, c) in dst.iter_mut().zip(coeffs) {
            *d = FsComplex { re: c.re, im: c.im };
        }
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_series_evaluate(series: *const FsSeries, z: FsComplex, out: *mut FsComplex) -> FsStatus {
    guard(|| {
        let w = get(series, "series")?.0.evaluate(complex(z));
        put(out, FsComplex { re: w.re, im: w.im }, "out")
    })
}

/// Parses a symbol. A nonzero constant term is dropped; `dropped_constant`
/// (nullable) receives 1 when that happened and 0 otherwise.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn fs_symbol_parse(
    text: *const c_char,
    out: *mut *mut FsSymbol,
    dropped_constant: *mut i32,
) -> FsStatus {
    guard(|| {
        let parsed = parse_symbol(utf8(text)?)?;
        if !dropped_constant.is_null() {
            dropped_constant.write(i32::from(parsed.dropped_constant.is_some()));
        }
        put(out, boxed(FsSymbol(parsed.symbol)), "out")
    })
}

/// # Safety
/// `symbol` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fs_symbol_free(symbol: *mut FsSymbol) {
    if !symbol.is_null() {
        drop(Box::from_raw(symbol));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_symbol_degree(symbol: *const FsSymbol, out: *mut usize) -> FsStatus {
    guard(|| put(out, get(symbol, "symbol")?.0.degree(), "out"))
}

/// Closed-form norm of `z^n`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_monomial_norm(n: usize, p: *const FsParams, out: *mut f64) -> FsStatus {
    guard(|| {
        let prm = params(get(p, "params")?)?;
        put(out, fockspec::monomial_norm(n, &prm), "out")
    })
}

/// Norm by quadrature with the default scheme for the series order.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_series_norm(series: *const FsSeries, p: *const FsParams, out: *mut f64) -> FsStatus {
    guard(|| {
        let f = &get(series, "series")?.0;
        let prm = params(get(p, "params")?)?;
        let scheme = QuadratureScheme::for_degree(prm, f.order())?;
        put(out, fockspec::series_norm(f, &prm, &scheme)?, "out")
    })
}

/// `T_g f` as a new series of order `order(f) + degree(g)`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_apply_tg(
    symbol: *const FsSymbol,
    series: *const FsSeries,
    out: *mut *mut FsSeries,
) -> FsStatus {
    guard(|| {
        let h = fockspec::apply_tg(&get(symbol, "symbol")?.0, &get(series, "series")?.0);
        put(out, boxed(FsSeries(h)), "out")
    })
}

/// Solves `f - T_g f / lambda = h` through coefficient `order`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_resolvent_apply(
    symbol: *const FsSymbol,
    lambda: FsComplex,
    h: *const FsSeries,
    order: usize,
    out: *mut *mut FsSeries,
) -> FsStatus {
    guard(|| {
        let f = fockspec::resolvent_apply(&get(symbol, "symbol")?.0, complex(lambda), &get(h, "h")?.0, order)?;
        put(out, boxed(FsSeries(f)), "out")
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_classify_spectrum(
    symbol: *const FsSymbol,
    p: *const FsParams,
    out: *mut FsSpectrum,
) -> FsStatus {
    guard(|| {
        let prm = params(get(p, "params")?)?;
        let desc = fockspec::classify_spectrum(&get(symbol, "symbol")?.0, &prm)?;
        let (kind, radius) = match desc.kind {
            SpectrumKind::Disk { radius } => (FsSpectrumKind::Disk, radius),
            SpectrumKind::OriginOnly => (FsSpectrumKind::OriginOnly, 0.0),
        };
        let provenance = match desc.provenance {
            Provenance::TheoremII => FsProvenance::TheoremII,
            Provenance::CompactCase => FsProvenance::CompactCase,
            Provenance::NonIntegerA => FsProvenance::NonIntegerA,
        };
        put(
            out,
            FsSpectrum {
                kind,
                radius,
                provenance,
            },
            "out",
        )
    })
}

/// Whether `e^{g / lambda}` lies in the space.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_exp_membership(
    symbol: *const FsSymbol,
    lambda: FsComplex,
    p: *const FsParams,
    out: *mut FsMembership,
) -> FsStatus {
    guard(|| {
        let prm = params(get(p, "params")?)?;
        let verdict = match fockspec::exp_membership(&get(symbol, "symbol")?.0, complex(lambda), &prm)? {
            MembershipVerdict::Member => FsMembership::Member,
            MembershipVerdict::NonMember => FsMembership::NonMember,
            MembershipVerdict::CriticalCircle => FsMembership::CriticalCircle,
        };
        put(out, verdict, "out")
    })
}

/// Spectral radius estimate for a monomial symbol of degree `A` at `p = 2`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn fs_spectral_radius_estimate(
    symbol: *const FsSymbol,
    p: *const FsParams,
    k_max: usize,
    max_m: usize,
    out: *mut f64,
) -> FsStatus {
    guard(|| {
        let prm = params(get(p, "params")?)?;
        let est = fockspec::spectral_radius_estimate(&get(symbol, "symbol")?.0, &prm, k_max, max_m)?;
        put(out, est.estimate, "out")
    })
}
