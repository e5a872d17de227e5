//! C ABI over the robustip solver.
//!
//! Every entry point returns a [`RipStatus`]. On failure a message is kept in
//! thread-local storage until the next call on the same thread; read it with
//! [`rip_last_error_message`]. Handles are opaque and owned by the caller,
//! who releases them with the matching `*_free` function. Strings returned
//! through `char **` out-parameters are released with [`rip_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use robustip::format::{instance_fingerprint, read_graver, read_instance, write_graver, write_result, ResultFile};
use robustip::graver::CompletionLimits;
use robustip::instances::Instance;
use robustip::robust::{dual_profit_variant, solve, RobustCaps, StartPoint};
use robustip::{compute_graver, Error, GraverBasis, IntVector, RobustReport, Variant};

/// Status codes. Values 0 to 3 agree with the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RipStatus {
    Ok = 0,
    Invalid = 1,
    Infeasible = 2,
    CapExceeded = 3,
    Parse = 5,
    Dimension = 6,
    Overflow = 7,
    Io = 8,
    NullPointer = 9,
    /// A string argument is not valid UTF-8.
    Utf8 = 10,
    /// The output buffer is shorter than the required length.
    BufferTooSmall = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RipVariant {
    /// `min_x max_c` over a box of costs.
    MinMaxBox = 0,
    /// `max_c min_x` over a list of costs.
    MaxMinList = 1,
    /// `min_x max_c` over a list of costs, by enumeration of the feasible set.
    MinMaxList = 2,
    /// `max_c min_x` over a box of costs, by enumeration of the box.
    MaxMinBox = 3,
}

impl From<RipVariant> for Variant {
    fn from(v: RipVariant) -> Self {
        match v {
            RipVariant::MinMaxBox => Variant::MinMaxBox,
            RipVariant::MaxMinList => Variant::MaxMinList,
            RipVariant::MinMaxList => Variant::MinMaxList,
            RipVariant::MaxMinBox => Variant::MaxMinBox,
        }
    }
}

/// A feasible set with its cost model.
pub struct RipInstance {
    inner: Instance,
}

/// A Graver basis tied to one constraint matrix.
pub struct RipGraver {
    inner: GraverBasis,
}

/// The outcome of one robust solve.
pub struct RipReport {
    inner: RobustReport,
    fingerprint: String,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure {
    status: RipStatus,
    message: String,
}

impl Failure {
    fn new(status: RipStatus, message: impl Into<String>) -> Self {
        Failure { status, message: message.into() }
    }

    fn null(arg: &str) -> Self {
        Failure::new(RipStatus::NullPointer, format!("{arg} is null"))
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Dimension(_) => RipStatus::Dimension,
            Error::Overflow(_) => RipStatus::Overflow,
            Error::Invalid(_) => RipStatus::Invalid,
            Error::Infeasible(_) => RipStatus::Infeasible,
            Error::CapExceeded { .. } => RipStatus::CapExceeded,
            Error::Parse(_) => RipStatus::Parse,
            Error::Io(_) => RipStatus::Io,
        };
        Failure::new(status, e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn guard(f: impl FnOnce() -> Outcome) -> RipStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RipStatus::Ok,
        Ok(Err(fail)) => {
            set_last_error(fail.message);
            fail.status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(format!("panic: {msg}"));
            RipStatus::Panic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, arg: &str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::null(arg));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Failure::new(RipStatus::Utf8, format!("{arg}: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, arg: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| Failure::null(arg))
}

unsafe fn emit<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

fn owned_string(s: String) -> *mut c_char {
    CString::new(s).expect("serialized JSON has no nul bytes").into_raw()
}

unsafe fn copy_vector(v: &IntVector, buf: *mut i64, len: usize, out_len: *mut usize) -> Outcome {
    if !out_len.is_null() {
        *out_len = v.len();
    }
    if len < v.len() {
        return Err(Failure::new(RipStatus::BufferTooSmall, format!("buffer holds {len}, need {}", v.len())));
    }
    if v.is_empty() {
        return Ok(());
    }
    if buf.is_null() {
        return Err(Failure::null("buf"));
    }
    ptr::copy_nonoverlapping(v.as_slice().as_ptr(), buf, v.len());
    Ok(())
}

/// The message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn rip_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn rip_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and must not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rip_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an instance document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rip_instance_from_json(json: *const c_char, out: *mut *mut RipInstance) -> RipStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let inner = read_instance(text(json, "json")?)?;
        emit(out, RipInstance { inner });
        Ok(())
    })
}

/// Number of variables, or 0 for a null handle.
///
/// # Safety
/// `inst` must be null or a live instance handle.
#[no_mangle]
pub unsafe extern "C" fn rip_instance_dim(inst: *const RipInstance) -> usize {
    inst.as_ref().map_or(0, |i| i.inner.set.dim())
}

/// # Safety
/// `inst` must be null or a live instance handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rip_instance_free(inst: *mut RipInstance) {
    if !inst.is_null() {
        drop(Box::from_raw(inst));
    }
}

/// Computes the Graver basis of the instance's matrix. A zero limit keeps
/// the default.
///
/// # Safety
/// `inst` must be a live instance handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rip_graver_compute(
    inst: *const RipInstance,
    max_elements: u64,
    max_pair_reductions: u64,
    out: *mut *mut RipGraver,
) -> RipStatus {
    guard(|| {
        let inst = handle(inst, "inst")?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let mut limits = CompletionLimits::default();
        if max_elements > 0 {
            limits.max_elements = max_elements;
        }
        if max_pair_reductions > 0 {
            limits.max_pair_reductions = max_pair_reductions;
        }
        let inner = compute_graver(inst.inner.set.matrix(), limits)?;
        emit(out, RipGraver { inner });
        Ok(())
    })
}

/// Parses a Graver basis document.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rip_graver_from_json(json: *const c_char, out: *mut *mut RipGraver) -> RipStatus {
    guard(|| {
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let inner = read_graver(text(json, "json")?)?;
        emit(out, RipGraver { inner });
        Ok(())
    })
}

/// Serializes the basis into a new string owned by the caller.
///
/// # Safety
/// `g` must be a live basis handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rip_graver_to_json(g: *const RipGraver, out: *mut *mut c_char) -> RipStatus {
    guard(|| {
        let g = handle(g, "g")?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        *out = owned_string(write_graver(&g.inner));
        Ok(())
    })
}

/// Number of stored elements, one per `±` pair, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live basis handle.
#[no_mangle]
pub unsafe extern "C" fn rip_graver_len(g: *const RipGraver) -> usize {
    g.as_ref().map_or(0, |g| g.inner.len())
}

/// Length of each element, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live basis handle.
#[no_mangle]
pub unsafe extern "C" fn rip_graver_dim(g: *const RipGraver) -> usize {
    g.as_ref().map_or(0, |g| g.inner.dim())
}

/// Copies element `index` into `buf`. `out_len`, when not null, receives the
/// element length even if the buffer is too small.
///
/// # Safety
/// `g` must be a live basis handle; `buf` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn rip_graver_element(
    g: *const RipGraver,
    index: usize,
    buf: *mut i64,
    len: usize,
    out_len: *mut usize,
) -> RipStatus {
    guard(|| {
        let g = handle(g, "g")?;
        let e = g.inner.elements().get(index).ok_or_else(|| {
            Failure::new(RipStatus::Invalid, format!("index {index} out of range for {} elements", g.inner.len()))
        })?;
        copy_vector(e, buf, len, out_len)
    })
}

/// # Safety
/// `g` must be null or a live basis handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rip_graver_free(g: *mut RipGraver) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Solves `variant` on the instance. With `profit` set the cost model is
/// read as profits. `g` may be null; the instance's stored basis is then
/// used, and variants that need one fail with `Invalid` when it is absent.
///
/// # Safety
/// `inst` must be a live instance handle, `g` null or a live basis handle,
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn rip_solve(
    inst: *const RipInstance,
    g: *const RipGraver,
    variant: RipVariant,
    profit: bool,
    out: *mut *mut RipReport,
) -> RipStatus {
    guard(|| {
        let inst = &handle(inst, "inst")?.inner;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let set = &inst.set;
        let stored;
        let basis = match g.as_ref() {
            Some(g) if !g.inner.matches(set.matrix()) => {
                return Err(Failure::new(RipStatus::Invalid, "the Graver basis belongs to a different matrix"));
            }
            Some(g) => Some(&g.inner),
            None => match &inst.known_graver {
                Some(elems) => {
                    stored = GraverBasis::for_matrix(set.matrix(), elems.clone())?;
                    Some(&stored)
                }
                None => None,
            },
        };
        let start = inst.feasible_hint.clone().map_or(StartPoint::Search, StartPoint::Hint);
        let caps = RobustCaps::default();
        let variant = Variant::from(variant);
        let report = if profit {
            dual_profit_variant(variant, set, basis, &inst.costs, &start, &caps)?
        } else {
            solve(variant, set, basis, &inst.costs, &start, &caps)?
        };
        let fingerprint = instance_fingerprint(set, &inst.costs);
        emit(out, RipReport { inner: report, fingerprint });
        Ok(())
    })
}

/// Writes the robust value into `value`.
///
/// # Safety
/// `r` must be a live report handle; `value` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rip_report_value(r: *const RipReport, value: *mut i64) -> RipStatus {
    guard(|| {
        let r = handle(r, "r")?;
        if value.is_null() {
            return Err(Failure::null("value"));
        }
        *value = r.inner.value;
        Ok(())
    })
}

/// Copies the optimizer: the point for min-max variants, the cost for
/// max-min variants.
///
/// # Safety
/// `r` must be a live report handle; `buf` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn rip_report_optimizer(
    r: *const RipReport,
    buf: *mut i64,
    len: usize,
    out_len: *mut usize,
) -> RipStatus {
    guard(|| copy_vector(&handle(r, "r")?.inner.optimizer, buf, len, out_len))
}

/// Copies the witness: the attaining cost for min-max variants, the
/// attaining point for max-min variants.
///
/// # Safety
/// `r` must be a live report handle; `buf` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn rip_report_witness(
    r: *const RipReport,
    buf: *mut i64,
    len: usize,
    out_len: *mut usize,
) -> RipStatus {
    guard(|| copy_vector(&handle(r, "r")?.inner.witness, buf, len, out_len))
}

/// Serializes the report as a result document.
///
/// # Safety
/// `r` must be a live report handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rip_report_to_json(r: *const RipReport, out: *mut *mut c_char) -> RipStatus {
    guard(|| {
        let r = handle(r, "r")?;
        if out.is_null() {
            return Err(Failure::null("out"));
        }
        let file = ResultFile { instance_fingerprint: r.fingerprint.clone(), report: r.inner.clone(), wall_time_ms: None };
        *out = owned_string(write_result(&file));
        Ok(())
    })
}

/// # Safety
/// `r` must be null or a live report handle, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn rip_report_free(r: *mut RipReport) {
    if !r.is_null() {
        drop(Box::from_raw(r));
    }
}
