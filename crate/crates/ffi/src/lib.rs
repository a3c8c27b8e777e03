//! C ABI over the formwell engine.
//!
//! Handles are opaque and owned by the caller once returned; free them with the
//! matching `*_free`. Every fallible call returns an `FwStatus`; on failure the
//! message is available from `fw_last_error` on the same thread until the next call.
//! Strings returned through out-parameters must be released with `fw_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use formwell::hodge::{star, Metric, MetricKind};
use formwell::lang::{parse_form, parse_problem, ProblemSpec};
use formwell::maxwell::{verify_vacuum, DualityClass, MaxwellError, VerificationReport};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    ComputeError = 4,
    InternalError = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FwMetric {
    Euclidean = 0,
    Minkowski = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FwDuality {
    SelfDual = 0,
    AntiSelfDual = 1,
    Both = 2,
    Neither = 3,
}

/// A parsed problem file.
pub struct FwProblem(ProblemSpec);

/// A vacuum-solution report.
pub struct FwReport(VerificationReport);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    // Interior NULs cannot occur in our messages, but never panic on them.
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> Result<(), (FwStatus, String)>) -> FwStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FwStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside formwell");
            FwStatus::Panic
        }
    }
}

fn null() -> (FwStatus, String) {
    (FwStatus::NullPointer, "null pointer argument".to_string())
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, (FwStatus, String)> {
    if s.is_null() {
        return Err(null());
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| (FwStatus::InvalidUtf8, "input is not valid UTF-8".to_string()))
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).unwrap_or_default().into_raw()
}

fn maxwell_status(e: MaxwellError) -> (FwStatus, String) {
    let status = match e {
        MaxwellError::Internal(_) => FwStatus::InternalError,
        _ => FwStatus::ComputeError,
    };
    (status, e.to_string())
}

/// Parses a problem file from a NUL-terminated UTF-8 string.
///
/// # Safety
/// `text` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_problem_parse(text: *const c_char, out: *mut *mut FwProblem) -> FwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let text = read_str(text)?;
        let spec = parse_problem(text).map_err(|e| {
            let (line, col) = e.position().unwrap_or((1, 1));
            (FwStatus::ParseError, format!("{line}:{col}: {e}"))
        })?;
        *out = Box::into_raw(Box::new(FwProblem(spec)));
        Ok(())
    })
}

/// # Safety
/// `p` must come from `fw_problem_parse` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fw_problem_free(p: *mut FwProblem) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Runs the full vacuum-solution check under the problem's metric.
///
/// # Safety
/// `p` must be a live problem handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_verify(p: *const FwProblem, out: *mut *mut FwReport) -> FwStatus {
    guard(|| {
        if out.is_null() || p.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let spec = &(*p).0;
        let r = verify_vacuum(&spec.potential, Metric::of(spec.metric)).map_err(maxwell_status)?;
        *out = Box::into_raw(Box::new(FwReport(r)));
        Ok(())
    })
}

/// # Safety
/// `r` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_report_is_vacuum(r: *const FwReport, out: *mut bool) -> FwStatus {
    guard(|| {
        if out.is_null() || r.is_null() {
            return Err(null());
        }
        *out = (*r).0.is_vacuum_solution;
        Ok(())
    })
}

/// # Safety
/// `r` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_report_duality(r: *const FwReport, out: *mut FwDuality) -> FwStatus {
    guard(|| {
        if out.is_null() || r.is_null() {
            return Err(null());
        }
        *out = match (*r).0.duality {
            DualityClass::SelfDual => FwDuality::SelfDual,
            DualityClass::AntiSelfDual => FwDuality::AntiSelfDual,
            DualityClass::Both => FwDuality::Both,
            DualityClass::Neither => FwDuality::Neither,
        };
        Ok(())
    })
}

/// The report as compact JSON with the same keys as `formwell verify --json`.
///
/// # Safety
/// `r` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_report_to_json(r: *const FwReport, out: *mut *mut c_char) -> FwStatus {
    guard(|| {
        if out.is_null() || r.is_null() {
            return Err(null());
        }
        *out = to_c((*r).0.to_json().to_string());
        Ok(())
    })
}

/// # Safety
/// `r` must come from `fw_verify` and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fw_report_free(r: *mut FwReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}

/// Hodge star of a form given in the form syntax, rendered back to text.
///
/// # Safety
/// `form` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn fw_star(metric: FwMetric, form: *const c_char, out: *mut *mut c_char) -> FwStatus {
    guard(|| {
        if out.is_null() {
            return Err(null());
        }
        *out = ptr::null_mut();
        let f = parse_form(read_str(form)?).map_err(|e| {
            let (line, col) = e.position().unwrap_or((1, 1));
            (FwStatus::ParseError, format!("{line}:{col}: {e}"))
        })?;
        let kind = match metric {
            FwMetric::Euclidean => MetricKind::Euclidean,
            FwMetric::Minkowski => MetricKind::Minkowski,
        };
        *out = to_c(star(&f, Metric::of(kind)).to_string());
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn fw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Owned by the library.
#[no_mangle]
pub extern "C" fn fw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static C string.
#[no_mangle]
pub extern "C" fn fw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
