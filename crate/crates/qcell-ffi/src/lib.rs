//! C interface to `qcell`.
//!
//! Every function returns a [`QcellStatus`]. Results come back through out-pointers;
//! handles and strings allocated here must be released with the matching `_free` call.
//! On failure, [`qcell_last_error`] describes what went wrong on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qcell::rigidity::{analyze, diff_against_reference, enumerate_prop_cases, AnalyzeOptions, Conclusion, EnumerateOptions, RigidityReport};
use qcell::rootsys::{theta_degrees, CartanType};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcellStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    ComputationFailed = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QcellConclusion {
    DiagonalOnDegreeOne = 0,
    Partial = 1,
    ManualStepRequired = 2,
}

/// Opaque analysis result.
pub struct QcellReport {
    inner: RigidityReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn guard(f: impl FnOnce() -> Result<(), (QcellStatus, String)>) -> QcellStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QcellStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside qcell");
            QcellStatus::Panic
        }
    }
}

fn null(what: &str) -> (QcellStatus, String) {
    (QcellStatus::NullPointer, format!("{what} is null"))
}

unsafe fn parse_case(ty: *const c_char, j: *const u32, j_len: usize) -> Result<(CartanType, Vec<usize>), (QcellStatus, String)> {
    if ty.is_null() {
        return Err(null("type"));
    }
    if j.is_null() && j_len > 0 {
        return Err(null("j"));
    }
    let s = CStr::from_ptr(ty)
        .to_str()
        .map_err(|_| (QcellStatus::InvalidArgument, "type is not UTF-8".to_string()))?;
    let ty: CartanType = s.parse().map_err(|e| (QcellStatus::InvalidArgument, format!("{e}")))?;
    let j: Vec<usize> = if j_len == 0 { Vec::new() } else { std::slice::from_raw_parts(j, j_len).iter().map(|&x| x as usize).collect() };
    Ok((ty, j))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).map(CString::into_raw).unwrap_or(ptr::null_mut())
}

/// Message for the last failed call on this thread, or null. Valid until the next call.
#[no_mangle]
pub extern "C" fn qcell_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn qcell_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Analyze `(type, J)`; `j` holds `j_len` simple-root indices.
///
/// # Safety
/// `ty` must be a NUL-terminated string, `j` must point to `j_len` values, and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcell_analyze(ty: *const c_char, j: *const u32, j_len: usize, out: *mut *mut QcellReport) -> QcellStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let (ty, j) = parse_case(ty, j, j_len)?;
        let inner = analyze(ty, &j, AnalyzeOptions::default()).map_err(|e| (QcellStatus::ComputationFailed, e.to_string()))?;
        *out = Box::into_raw(Box::new(QcellReport { inner }));
        Ok(())
    })
}

/// # Safety
/// `report` must come from [`qcell_analyze`] and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qcell_report_free(report: *mut QcellReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcell_report_conclusion(report: *const QcellReport, out: *mut QcellConclusion) -> QcellStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = match r.inner.conclusion {
            Conclusion::DiagonalOnDegreeOne => QcellConclusion::DiagonalOnDegreeOne,
            Conclusion::Partial => QcellConclusion::Partial,
            Conclusion::ManualStepRequired => QcellConclusion::ManualStepRequired,
        };
        Ok(())
    })
}

/// Number of degree-one roots and how many of them are separated.
///
/// # Safety
/// `report` must be a live handle; both out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcell_report_separation(report: *const QcellReport, degree_one: *mut usize, separated: *mut usize) -> QcellStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        *degree_one.as_mut().ok_or_else(|| null("degree_one"))? = r.inner.degree_one_roots.len();
        *separated.as_mut().ok_or_else(|| null("separated"))? = r.inner.separated_roots.len();
        Ok(())
    })
}

/// The report as JSON; release with [`qcell_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcell_report_json(report: *const QcellReport, out: *mut *mut c_char) -> QcellStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = into_c_string(r.inner.to_json());
        Ok(())
    })
}

/// The automorphism-group descriptor, e.g. `(K^×)^2`; release with [`qcell_string_free`].
///
/// # Safety
/// `report` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn qcell_report_descriptor(report: *const QcellReport, out: *mut *mut c_char) -> QcellStatus {
    guard(|| {
        let r = report.as_ref().ok_or_else(|| null("report"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = into_c_string(r.inner.aut_descriptor.clone());
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn qcell_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Theta degrees of `(type, J)` written to `buf`; `len` receives the count.
///
/// When `cap` is too small, `len` still receives the required count and
/// `QCELL_STATUS_BUFFER_TOO_SMALL` is returned.
///
/// # Safety
/// `ty` must be a NUL-terminated string, `j` must point to `j_len` values,
/// `buf` to `cap` writable values (or be null with `cap == 0`), and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn qcell_theta_degrees(
    ty: *const c_char,
    j: *const u32,
    j_len: usize,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> QcellStatus {
    guard(|| {
        let len = len.as_mut().ok_or_else(|| null("len"))?;
        let (ty, j) = parse_case(ty, j, j_len)?;
        let d = theta_degrees(ty, &j).map_err(|e| (QcellStatus::InvalidArgument, e.to_string()))?;
        *len = d.len();
        if d.len() > cap {
            return Err((QcellStatus::BufferTooSmall, format!("need {} slots, have {cap}", d.len())));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        std::slice::from_raw_parts_mut(buf, d.len()).copy_from_slice(&d);
        Ok(())
    })
}

/// Enumerate cases up to `max_rank`; `out` receives JSON `{cases, missing, extra}`.
///
/// # Safety
/// `out` must be writable. Release the string with [`qcell_string_free`].
#[no_mangle]
pub unsafe extern "C" fn qcell_enumerate_json(max_rank: usize, out: *mut *mut c_char) -> QcellStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let e = enumerate_prop_cases(max_rank, EnumerateOptions::default()).map_err(|e| (QcellStatus::InvalidArgument, e.to_string()))?;
        let diff = diff_against_reference(&e);
        let v = serde_json::json!({ "cases": e.cases, "missing": diff.missing, "extra": diff.extra });
        *out = into_c_string(v.to_string());
        Ok(())
    })
}
