//! C ABI over `sumset-core`.
//!
//! Every fallible function returns a [`SumsetStatus`]; on failure the message
//! is available from [`sumset_last_error`] on the same thread. Handles are
//! opaque and must be released with their matching `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sumset_core::bounds::{audit, bound_value, BoundId};
use sumset_core::inverse::classify_extremal;
use sumset_core::kernel::{sumset, Engine};
use sumset_core::{Error, FiniteIntSet, SumsetKind, SumsetResult};

/// Result codes. Zero is success.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumsetStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidSet = 3,
    InvalidFold = 4,
    Overflow = 5,
    DomainViolation = 6,
    NotApplicable = 7,
    TheoremViolation = 8,
    EngineMismatch = 9,
    BufferTooSmall = 10,
    Internal = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumsetKindCode {
    Unrestricted = 0,
    Restricted = 1,
    Signed = 2,
    RestrictedSigned = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumsetEngineCode {
    Layered = 0,
    Naive = 1,
}

/// Opaque finite integer set.
pub struct SumsetSet(FiniteIntSet);

/// Opaque sorted sumset values.
pub struct SumsetValues(SumsetResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn status_of(e: &Error) -> SumsetStatus {
    match e {
        Error::InvalidSet(_) | Error::Parse { .. } | Error::NotNormalizable(_) => SumsetStatus::InvalidSet,
        Error::InvalidFold { .. } => SumsetStatus::InvalidFold,
        Error::Overflow { .. } | Error::RangeTooLarge { .. } => SumsetStatus::Overflow,
        Error::DomainViolation(_) | Error::Degenerate | Error::EmptySpace(_) => SumsetStatus::DomainViolation,
        Error::NotApplicable { .. } => SumsetStatus::NotApplicable,
        Error::TheoremViolation { .. } => SumsetStatus::TheoremViolation,
        Error::EngineMismatch { .. } => SumsetStatus::EngineMismatch,
        Error::InvalidDilation | Error::InvalidFamily(_) => SumsetStatus::InvalidArgument,
        Error::Worker { .. } | Error::Io(_) => SumsetStatus::Internal,
    }
}

struct Failure(SumsetStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(SumsetStatus::NullPointer, format!("{what} is null"))
}

/// Runs `body`, clearing the last error on success and recording it on
/// failure or panic.
fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SumsetStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            SumsetStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SumsetStatus::Internal
        }
    }
}

unsafe fn set_ref<'a>(set: *const SumsetSet) -> Result<&'a FiniteIntSet, Failure> {
    set.as_ref().map(|s| &s.0).ok_or_else(|| null("set"))
}

unsafe fn copy_out(src: &[i64], buf: *mut i64, cap: usize, written: *mut usize) -> Result<(), Failure> {
    if !written.is_null() {
        *written = src.len();
    }
    if cap < src.len() {
        return Err(Failure(
            SumsetStatus::BufferTooSmall,
            format!("buffer holds {cap} values, {} needed", src.len()),
        ));
    }
    if src.is_empty() {
        return Ok(());
    }
    if buf.is_null() {
        return Err(null("buffer"));
    }
    ptr::copy_nonoverlapping(src.as_ptr(), buf, src.len());
    Ok(())
}

unsafe fn write_json(value: impl serde::Serialize, out: *mut *mut c_char) -> Result<(), Failure> {
    let text = serde_json::to_string(&value).map_err(|e| Failure(SumsetStatus::Internal, e.to_string()))?;
    *out = CString::new(text).expect("JSON has no nul bytes").into_raw();
    Ok(())
}

/// Message of the last failure on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sumset_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a set from `len` values, sorting and dropping duplicates.
///
/// # Safety
/// `values` must point to `len` readable integers; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sumset_set_new(values: *const i64, len: usize, out: *mut *mut SumsetSet) -> SumsetStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        if values.is_null() && len > 0 {
            return Err(null("values"));
        }
        let raw = if len == 0 { &[][..] } else { std::slice::from_raw_parts(values, len) };
        let set = FiniteIntSet::new(raw)?;
        *out = Box::into_raw(Box::new(SumsetSet(set)));
        Ok(())
    })
}

/// # Safety
/// `set` must be null or a handle from [`sumset_set_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sumset_set_free(set: *mut SumsetSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Cardinality of `set`, or 0 for null.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sumset_set_len(set: *const SumsetSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// Copies the sorted elements into `buf`. `written` receives the element
/// count even when `cap` is too small.
///
/// # Safety
/// `set` must be a live handle; `buf` must hold `cap` integers; `written`
/// may be null.
#[no_mangle]
pub unsafe extern "C" fn sumset_set_elements(
    set: *const SumsetSet,
    buf: *mut i64,
    cap: usize,
    written: *mut usize,
) -> SumsetStatus {
    guard(|| copy_out(set_ref(set)?.elements(), buf, cap, written))
}

/// Computes the `h`-fold sumset of `kind`.
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sumset_compute(
    set: *const SumsetSet,
    h: usize,
    kind: SumsetKindCode,
    engine: SumsetEngineCode,
    out: *mut *mut SumsetValues,
) -> SumsetStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let kind = match kind {
            SumsetKindCode::Unrestricted => SumsetKind::Unrestricted,
            SumsetKindCode::Restricted => SumsetKind::Restricted,
            SumsetKindCode::Signed => SumsetKind::Signed,
            SumsetKindCode::RestrictedSigned => SumsetKind::RestrictedSigned,
        };
        let engine = match engine {
            SumsetEngineCode::Layered => Engine::Layered,
            SumsetEngineCode::Naive => Engine::Naive,
        };
        let result = sumset(set_ref(set)?, h, kind, engine)?;
        *out = Box::into_raw(Box::new(SumsetValues(result)));
        Ok(())
    })
}

/// # Safety
/// `values` must be null or a handle from [`sumset_compute`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sumset_values_free(values: *mut SumsetValues) {
    if !values.is_null() {
        drop(Box::from_raw(values));
    }
}

/// Number of distinct sums, or 0 for null.
///
/// # Safety
/// `values` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sumset_values_len(values: *const SumsetValues) -> usize {
    values.as_ref().map_or(0, |v| v.0.cardinality())
}

/// Copies the sorted sums into `buf`, as [`sumset_set_elements`] does.
///
/// # Safety
/// `values` must be a live handle; `buf` must hold `cap` integers;
/// `written` may be null.
#[no_mangle]
pub unsafe extern "C" fn sumset_values_copy(
    values: *const SumsetValues,
    buf: *mut i64,
    cap: usize,
    written: *mut usize,
) -> SumsetStatus {
    guard(|| {
        let v = values.as_ref().ok_or_else(|| null("values"))?;
        copy_out(&v.0.values, buf, cap, written)
    })
}

/// Evaluates the bound named `id` (for example `"T2_1"`) at `k`, `h`.
///
/// # Safety
/// `id` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sumset_bound_value(id: *const c_char, k: usize, h: usize, out: *mut i64) -> SumsetStatus {
    guard(|| {
        if id.is_null() {
            return Err(null("id"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let id = CStr::from_ptr(id)
            .to_str()
            .map_err(|_| Failure(SumsetStatus::InvalidArgument, "id is not UTF-8".into()))?;
        let id: BoundId = id.parse()?;
        *out = bound_value(id, k, h)?;
        Ok(())
    })
}

/// Bound audit of `set` at `h` as a JSON string; release with
/// [`sumset_string_free`].
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sumset_audit_json(set: *const SumsetSet, h: usize, out: *mut *mut c_char) -> SumsetStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        write_json(audit(set_ref(set)?, h)?, out)
    })
}

/// Extremal classification of `set` at `h` as a JSON string; release with
/// [`sumset_string_free`].
///
/// # Safety
/// `set` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sumset_classify_json(set: *const SumsetSet, h: usize, out: *mut *mut c_char) -> SumsetStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        write_json(classify_extremal(set_ref(set)?, h)?, out)
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sumset_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
