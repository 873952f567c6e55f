//! C ABI over `rg-lie`: opaque model handles, status codes and a
//! thread-local last-error message.
//!
//! Strings returned through `char **` out-parameters are owned by the caller
//! and must be released with [`rg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use rg_lie::cli::{parse_suites, run_suite};
use rg_lie::coord::load_quadruple;
use rg_lie::graded::{build_model, GradedModel};
use rg_lie::report::Report;
use rg_lie::rootsys::{generate, Family};
use rg_lie::Error;

/// Result of every call. Zero means success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Config = 3,
    Parse = 4,
    Domain = 5,
    TypeMismatch = 6,
    Bound = 7,
    Validation = 8,
    Uniform = 9,
    Internal = 10,
    Io = 11,
    Panic = 12,
}

/// A built graded model.
pub struct RgModel {
    inner: GradedModel,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> RgStatus {
    match e {
        Error::Config(_) => RgStatus::Config,
        Error::Parse(_) | Error::Json(_) => RgStatus::Parse,
        Error::Domain(_) | Error::Shape(_) | Error::Degenerate(_) => RgStatus::Domain,
        Error::TypeMismatch(_) => RgStatus::TypeMismatch,
        Error::Bound(_) => RgStatus::Bound,
        Error::Validation { .. } => RgStatus::Validation,
        Error::Uniform(_) => RgStatus::Uniform,
        Error::Internal(_) | Error::Decomposition(_) => RgStatus::Internal,
        Error::Io(_) => RgStatus::Io,
    }
}

enum Failure {
    Status(RgStatus, String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Runs `f`, translating errors and panics into a status and the last-error slot.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RgStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RgStatus::Ok,
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside rg-lie".into());
            RgStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure::Status(RgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::Status(RgStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write<T>(out: *mut T, v: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(v);
    Ok(())
}

unsafe fn model<'a>(m: *const RgModel) -> Result<&'a GradedModel, Failure> {
    m.as_ref().map(|m| &m.inner).ok_or_else(|| null("model"))
}

fn to_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure::Status(RgStatus::Internal, "output contains a nul byte".into()))
}

/// Message of the last failed call on this thread, or null. Valid until the
/// next call on the same thread.
#[no_mangle]
pub extern "C" fn rg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn rg_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Number of nonzero roots of the family's root system of rank `n`.
///
/// # Safety
/// `family` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rg_root_count(
    family: *const c_char,
    n: usize,
    out: *mut usize,
) -> RgStatus {
    guard(|| {
        let f: Family = read_str(family, "family")?.parse()?;
        let r = generate(f, n)?;
        write(out, r.nonzero().count(), "out")
    })
}

/// Builds the model of `family` at truncation `n` and level `ell` from a
/// preset string or quadruple file path, with 𝒦 = {0}. On success `*out`
/// holds a handle to release with [`rg_model_free`].
///
/// # Safety
/// `family` and `source` must be valid C strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rg_model_build(
    family: *const c_char,
    n: usize,
    ell: usize,
    source: *const c_char,
    override_bounds: bool,
    out: *mut *mut RgModel,
) -> RgStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let f: Family = read_str(family, "family")?.parse()?;
        let q = load_quadruple(read_str(source, "source")?)?;
        let inner = build_model(f, n, ell, &q, &[], override_bounds)?;
        out.write(Box::into_raw(Box::new(RgModel { inner })));
        Ok(())
    })
}

/// Releases a model. Null is ignored.
///
/// # Safety
/// `m` must come from [`rg_model_build`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rg_model_free(m: *mut RgModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Total dimension of the model.
///
/// # Safety
/// `m` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rg_model_dim(m: *const RgModel, out: *mut usize) -> RgStatus {
    guard(|| write(out, model(m)?.dim(), "out"))
}

/// Dimensions of the 𝒢⊗𝒜, 𝒮⊗ℬ, 𝒱⊗𝒞 and D summands, written to `out[0..4]`.
///
/// # Safety
/// `m` must be a live handle and `out` must point to four `size_t`.
#[no_mangle]
pub unsafe extern "C" fn rg_model_component_dims(m: *const RgModel, out: *mut usize) -> RgStatus {
    guard(|| {
        let dims = model(m)?.component_dims();
        if out.is_null() {
            return Err(null("out"));
        }
        ptr::copy_nonoverlapping(dims.as_ptr(), out, 4);
        Ok(())
    })
}

/// Bracket of basis elements `i` and `j` as JSON `{"label": "coefficient"}`.
///
/// # Safety
/// `m` must be a live handle and `out_json` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn rg_model_bracket_json(
    m: *const RgModel,
    i: usize,
    j: usize,
    out_json: *mut *mut c_char,
) -> RgStatus {
    guard(|| {
        let m = model(m)?;
        if i >= m.dim() || j >= m.dim() {
            return Err(Failure::Status(
                RgStatus::Domain,
                format!("basis index out of range 0..{}", m.dim()),
            ));
        }
        if out_json.is_null() {
            return Err(null("out_json"));
        }
        let v: serde_json::Map<String, serde_json::Value> = m
            .basis_bracket(i, j)
            .iter()
            .map(|(k, c)| (m.labels()[k].clone(), c.to_string().into()))
            .collect();
        out_json.write(to_c_string(serde_json::Value::Object(v).to_string())?);
        Ok(())
    })
}

/// Runs the comma-separated `suites` (null for the default suite) and writes
/// the JSON report to `*out_json` and the overall verdict to `*all_pass`.
/// `samples = 0` selects exhaustive Jacobi.
///
/// # Safety
/// `m` must be a live handle, `suites` null or a valid C string, and both
/// out-pointers valid.
#[no_mangle]
pub unsafe extern "C" fn rg_model_verify(
    m: *const RgModel,
    suites: *const c_char,
    samples: usize,
    seed: u64,
    out_json: *mut *mut c_char,
    all_pass: *mut bool,
) -> RgStatus {
    guard(|| {
        let m = model(m)?;
        if out_json.is_null() || all_pass.is_null() {
            return Err(null("output pointer"));
        }
        let raw = if suites.is_null() {
            None
        } else {
            Some(
                read_str(suites, "suites")?
                    .split(',')
                    .map(str::to_string)
                    .collect(),
            )
        };
        let mut checks = Vec::new();
        for s in parse_suites(&raw)? {
            checks.extend(run_suite(m, s, samples, Some(seed))?);
        }
        let report = Report::new(checks);
        all_pass.write(report.all_pass());
        out_json.write(to_c_string(report.to_json())?);
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
