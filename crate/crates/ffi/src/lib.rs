//! C ABI over the `hyponormal` crate.
//!
//! Objects cross the boundary as opaque handles created by `hn_*_new`-style
//! constructors and released with the matching `hn_*_free`. Every fallible
//! function returns an [`HnStatus`]; on failure a message is available from
//! [`hn_last_error_message`] on the same thread until the next call.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;

use hyponormal::determinants::{det_eigenproduct, det_logseries, determining_det};
use hyponormal::experiments::theorem_inequality_eval;
use hyponormal::linalg::{self_commutator, singular_spectrum, trace, ComplexMatrix};
use hyponormal::mobius::MobiusMap;
use hyponormal::principal::principal_value_at;
use hyponormal::shift::ShiftModel;
use hyponormal::{parse_config, run_experiment, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HnStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    Singular = 4,
    SpectrumHit = 5,
    NotRankOne = 6,
    Domain = 7,
    ConfigError = 8,
    InvalidUtf8 = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HnComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for HnComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<HnComplex> for Complex64 {
    fn from(z: HnComplex) -> Self {
        Complex64::new(z.re, z.im)
    }
}

/// Dense complex square matrix.
pub struct HnMatrix(ComplexMatrix);

/// Weighted shift model.
pub struct HnShiftModel(ShiftModel);

/// Disc automorphism `beta (z - a)/(1 - conj(a) z)`.
pub struct HnMobius(MobiusMap);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

fn status_of(e: &Error) -> HnStatus {
    match e {
        Error::DimensionMismatch { .. } => HnStatus::DimensionMismatch,
        Error::SingularResolvent { .. } | Error::SingularInput { .. } => HnStatus::Singular,
        Error::SpectrumHit { .. } | Error::OnEssentialSpectrum { .. } | Error::PoleHit { .. } => HnStatus::SpectrumHit,
        Error::NotRankOne(_) | Error::VectorMismatch(_) => HnStatus::NotRankOne,
        Error::InvalidDimension { .. }
        | Error::NonFinite
        | Error::InvalidWeights(_)
        | Error::InvalidMobius(_)
        | Error::NonHermitianInput { .. }
        | Error::NotPsd { .. }
        | Error::NotAContraction { .. }
        | Error::DimensionTooSmall { .. } => HnStatus::InvalidArgument,
        _ => HnStatus::Domain,
    }
}

struct Failure(HnStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(HnStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> HnStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HnStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            HnStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next `hn_*` call on the same thread.
#[no_mangle]
pub extern "C" fn hn_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a `dim x dim` matrix from `dim * dim` row-major entries.
///
/// # Safety
/// `entries` must point to `dim * dim` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_matrix_new(dim: usize, entries: *const HnComplex, out: *mut *mut HnMatrix) -> HnStatus {
    guard(|| {
        if entries.is_null() && dim > 0 {
            return Err(null("entries"));
        }
        let count =
            dim.checked_mul(dim).ok_or_else(|| Failure(HnStatus::InvalidArgument, "dimension overflows".into()))?;
        let values: Vec<Complex64> = if dim == 0 {
            Vec::new()
        } else {
            std::slice::from_raw_parts(entries, count).iter().map(|&z| z.into()).collect()
        };
        let m = ComplexMatrix::from_row_major(dim, &values)?;
        write(out, boxed(HnMatrix(m)), "out")
    })
}

/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hn_matrix_free(m: *mut HnMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hn_matrix_dim(m: *const HnMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.dim())
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_matrix_get(m: *const HnMatrix, row: usize, col: usize, out: *mut HnComplex) -> HnStatus {
    guard(|| {
        let m = &deref(m, "matrix")?.0;
        if row >= m.dim() || col >= m.dim() {
            return Err(Failure(
                HnStatus::InvalidArgument,
                format!("index ({row}, {col}) out of range for dimension {}", m.dim()),
            ));
        }
        write(out, m[(row, col)].into(), "out")
    })
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_matrix_trace(m: *const HnMatrix, out: *mut HnComplex) -> HnStatus {
    guard(|| write(out, trace(&deref(m, "matrix")?.0).into(), "out"))
}

/// Sum of singular values.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_matrix_trace_norm(m: *const HnMatrix, out: *mut f64) -> HnStatus {
    guard(|| write(out, singular_spectrum(&deref(m, "matrix")?.0).trace_norm(), "out"))
}

/// `M* M - M M*` as a new handle.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_matrix_self_commutator(m: *const HnMatrix, out: *mut *mut HnMatrix) -> HnStatus {
    guard(|| write(out, boxed(HnMatrix(self_commutator(&deref(m, "matrix")?.0))), "out"))
}

/// `det(I + K)` as a product over eigenvalues.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_det_eigenproduct(k: *const HnMatrix, out: *mut HnComplex) -> HnStatus {
    guard(|| write(out, det_eigenproduct(&deref(k, "matrix")?.0).into(), "out"))
}

/// `det(I + K)` from the log series; needs trace norm below 1.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_det_logseries(k: *const HnMatrix, out: *mut HnComplex) -> HnStatus {
    guard(|| write(out, det_logseries(&deref(k, "matrix")?.0)?.into(), "out"))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_shift_unilateral(out: *mut *mut HnShiftModel) -> HnStatus {
    guard(|| write(out, boxed(HnShiftModel(ShiftModel::unilateral())), "out"))
}

/// `w_n = (n + 1)/(n + lambda)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_shift_rational(lambda: f64, out: *mut *mut HnShiftModel) -> HnStatus {
    guard(|| write(out, boxed(HnShiftModel(ShiftModel::rational(lambda)?)), "out"))
}

/// Weights from a table; `has_limit` selects whether `limit` is used.
///
/// # Safety
/// `weights` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_shift_tabulated(
    weights: *const f64,
    len: usize,
    has_limit: bool,
    limit: f64,
    out: *mut *mut HnShiftModel,
) -> HnStatus {
    guard(|| {
        if weights.is_null() && len > 0 {
            return Err(null("weights"));
        }
        let w = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(weights, len).to_vec() };
        let model = ShiftModel::tabulated(w, has_limit.then_some(limit))?;
        write(out, boxed(HnShiftModel(model)), "out")
    })
}

/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hn_shift_free(m: *mut HnShiftModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// `dim x dim` truncation as a new matrix handle.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_shift_materialize(
    model: *const HnShiftModel,
    dim: usize,
    out: *mut *mut HnMatrix,
) -> HnStatus {
    guard(|| write(out, boxed(HnMatrix(deref(model, "model")?.0.materialize(dim)?)), "out"))
}

/// `tr [T*, T]` of the infinite model.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_shift_exact_trace(model: *const HnShiftModel, out: *mut f64) -> HnStatus {
    guard(|| write(out, deref(model, "model")?.0.exact_trace()?, "out"))
}

/// Determining function `1 - <(T* - conj w)^{-1} x, (T* - conj z)^{-1} x>` on a
/// `dim` truncation, for models with a rank-one self-commutator.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_determining_det(
    model: *const HnShiftModel,
    z: HnComplex,
    w: HnComplex,
    dim: usize,
    out: *mut HnComplex,
) -> HnStatus {
    guard(|| {
        let model = &deref(model, "model")?.0;
        let x = model.rank_one_vector(dim)?;
        write(out, determining_det(model, &x, z.into(), w.into(), dim)?.into(), "out")
    })
}

/// Principal function value `g(lambda)` from the winding of the symbol.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_principal_value(model: *const HnShiftModel, lambda: HnComplex, out: *mut i64) -> HnStatus {
    guard(|| write(out, principal_value_at(&deref(model, "model")?.0, lambda.into())?.g_value, "out"))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_mobius_new(beta: HnComplex, a: HnComplex, out: *mut *mut HnMobius) -> HnStatus {
    guard(|| write(out, boxed(HnMobius(MobiusMap::new(beta.into(), a.into())?)), "out"))
}

/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hn_mobius_free(m: *mut HnMobius) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_mobius_eval(m: *const HnMobius, z: HnComplex, out: *mut HnComplex) -> HnStatus {
    guard(|| write(out, deref(m, "mobius")?.0.eval(z.into())?.into(), "out"))
}

/// `phi(T)` for a contraction `T`, as a new matrix handle.
///
/// # Safety
/// Handles must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_mobius_apply(m: *const HnMobius, t: *const HnMatrix, out: *mut *mut HnMatrix) -> HnStatus {
    guard(|| {
        let phi = &deref(m, "mobius")?.0;
        let t = &deref(t, "matrix")?.0;
        write(out, boxed(HnMatrix(phi.apply_to_operator(t)?)), "out")
    })
}

/// `lhs = 1 - c/r^2`, `rhs = (1 - 1/r^2)^c`.
///
/// # Safety
/// `lhs` and `rhs` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_theorem_inequality(c: f64, r: f64, lhs: *mut f64, rhs: *mut f64) -> HnStatus {
    guard(|| {
        if lhs.is_null() || rhs.is_null() {
            return Err(null("output"));
        }
        let p = theorem_inequality_eval(c, r)?;
        write(lhs, p.lhs, "lhs")?;
        write(rhs, p.rhs, "rhs")
    })
}

/// Runs a JSON experiment config. On success `*report_json` receives the
/// report (free with [`hn_string_free`]) and `*all_pass` its verdict. A
/// config error returns `ConfigError` and writes no report.
///
/// # Safety
/// `config_json` must be a nul-terminated string; outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn hn_run_experiment_json(
    config_json: *const c_char,
    report_json: *mut *mut c_char,
    all_pass: *mut bool,
) -> HnStatus {
    guard(|| {
        if config_json.is_null() {
            return Err(null("config_json"));
        }
        if report_json.is_null() || all_pass.is_null() {
            return Err(null("output"));
        }
        let text = CStr::from_ptr(config_json).to_str().map_err(|e| Failure(HnStatus::InvalidUtf8, e.to_string()))?;
        let config = parse_config(text).map_err(|e| Failure(HnStatus::ConfigError, e.to_string()))?;
        let report = run_experiment(&config);
        let json = CString::new(report.to_json()).map_err(|e| Failure(HnStatus::Domain, e.to_string()))?;
        write(all_pass, report.all_pass, "all_pass")?;
        write(report_json, json.into_raw(), "report_json")
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hn_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
