//! C ABI for the `urfs` library.
//!
//! Objects cross the boundary as opaque handles created by `*_from_json`
//! constructors and released by the matching `*_free`. Every fallible call
//! returns a [`UrfsStatus`]; on failure a message is available from
//! [`urfs_last_error`] until the next call on the same thread. Strings
//! returned through `char **` out-parameters are owned by the caller and
//! must be released with [`urfs_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use urfs::conjugacy::{chain_invariant, g_equivalent, Budget, Verdict};
use urfs::error::Error;
use urfs::fixtures::tate_pair;
use urfs::io::{
    chain_invariant_to_json, log_module_from_json, pair_from_json, pair_to_json, parse_document,
    phi_n_to_json, report_to_json, verdict_to_json,
};
use urfs::isocrystal::{special_fiber, validate_log_module, wd_from_phi_n, LogModule};
use urfs::wd::{validate_pair, WDPair};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UrfsStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// A document could not be parsed or decoded.
    Parse = 3,
    /// The input was well formed but mathematically unusable.
    InvalidInput = 4,
    /// A search ran out of budget without an answer.
    BudgetExhausted = 5,
    /// The library panicked; the handle arguments should be discarded.
    Internal = 6,
}

/// Outcome of a conjugacy check.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UrfsVerdict {
    Equivalent = 0,
    Inequivalent = 1,
    Unknown = 2,
}

/// A Weil–Deligne pair `(s, N)` in a linear algebraic group.
pub struct UrfsPair(WDPair);

/// A truncated log connection with Frobenius.
pub struct UrfsLogModule(LogModule);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> UrfsStatus {
    match e {
        Error::Parse(_) => UrfsStatus::Parse,
        Error::BudgetExhausted(_) | Error::NotFound(_) => UrfsStatus::BudgetExhausted,
        _ => UrfsStatus::InvalidInput,
    }
}

/// Runs `f`, recording any error or panic for [`urfs_last_error`].
fn guard(f: impl FnOnce() -> Result<(), (UrfsStatus, String)>) -> UrfsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => UrfsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(msg);
            status
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_last_error(format!("internal error: {msg}"));
            UrfsStatus::Internal
        }
    }
}

fn lib<T>(r: urfs::error::Result<T>) -> Result<T, (UrfsStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (UrfsStatus, String) {
    (UrfsStatus::NullPointer, format!("{what} is NULL"))
}

/// # Safety
/// `p` is NULL or a NUL-terminated string valid for reads.
unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (UrfsStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| (UrfsStatus::InvalidUtf8, format!("{what}: {e}")))
}

/// # Safety
/// `p` is NULL or a live handle created by this library.
unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, (UrfsStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

/// # Safety
/// `out` is NULL or valid for a pointer-sized write.
unsafe fn put<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// # Safety
/// `out` is valid for a pointer-sized write.
unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), (UrfsStatus, String)> {
    let c = CString::new(s).map_err(|e| (UrfsStatus::Internal, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string(v).unwrap_or_default()
}

/// The library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn urfs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message describing the most recent failure on this thread, or NULL.
/// The pointer stays valid until the next library call on this thread.
#[no_mangle]
pub extern "C" fn urfs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` is NULL or a string obtained from this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn urfs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Decodes a pair from its JSON document.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn urfs_pair_from_json(
    json: *const c_char,
    out: *mut *mut UrfsPair,
) -> UrfsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let pair = lib(parse_document(text, "json").and_then(|v| pair_from_json(&v)))?;
        put(out, UrfsPair(pair));
        Ok(())
    })
}

/// The Tate-curve pair `(diag(1, q), E₂₁)` in GL₂ over Q.
///
/// # Safety
/// `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn urfs_pair_tate(q: u64, out: *mut *mut UrfsPair) -> UrfsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        put(out, UrfsPair(lib(tate_pair(q))?));
        Ok(())
    })
}

/// Releases a pair.
///
/// # Safety
/// `pair` is NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn urfs_pair_free(pair: *mut UrfsPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

/// Dimension of the underlying representation, or 0 for NULL.
///
/// # Safety
/// `pair` is NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn urfs_pair_dim(pair: *const UrfsPair) -> usize {
    pair.as_ref().map_or(0, |p| p.0.dim())
}

/// Encodes a pair as JSON.
///
/// # Safety
/// `pair` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn urfs_pair_to_json(
    pair: *const UrfsPair,
    out: *mut *mut c_char,
) -> UrfsStatus {
    guard(|| {
        let p = handle(pair, "pair")?;
        if out.is_null() {
            return Err(null("out"));
        }
        put_string(out, json_text(&pair_to_json(&p.0)))
    })
}

/// Checks every invariant of a pair. `valid` receives the overall result;
/// if `report` is not NULL it receives the per-check JSON report.
///
/// # Safety
/// `pair` is a live handle; `valid` is valid for writes; `report` is NULL
/// or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn urfs_pair_validate(
    pair: *const UrfsPair,
    valid: *mut bool,
    report: *mut *mut c_char,
) -> UrfsStatus {
    guard(|| {
        let p = handle(pair, "pair")?;
        if valid.is_null() {
            return Err(null("valid"));
        }
        let r = validate_pair(&p.0);
        *valid = r.ok();
        if !report.is_null() {
            put_string(report, json_text(&report_to_json(&r)))?;
        }
        Ok(())
    })
}

/// The complete GL-conjugacy invariant of a URFS pair, as JSON.
///
/// # Safety
/// `pair` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn urfs_pair_canonical_form(
    pair: *const UrfsPair,
    out: *mut *mut c_char,
) -> UrfsStatus {
    guard(|| {
        let p = handle(pair, "pair")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = lib(chain_invariant(&p.0))?;
        put_string(out, json_text(&chain_invariant_to_json(&c)))
    })
}

/// Decides conjugacy of two pairs in their group with the default budget.
/// If `detail` is not NULL it receives the verdict document (witness,
/// certificate or reason) as JSON.
///
/// # Safety
/// `a`, `b` are live handles; `verdict` is valid for writes; `detail` is
/// NULL or valid for writes.
#[no_mangle]
pub unsafe extern "C" fn urfs_pair_check_equiv(
    a: *const UrfsPair,
    b: *const UrfsPair,
    verdict: *mut UrfsVerdict,
    detail: *mut *mut c_char,
) -> UrfsStatus {
    guard(|| {
        let (a, b) = (handle(a, "a")?, handle(b, "b")?);
        if verdict.is_null() {
            return Err(null("verdict"));
        }
        let v = lib(g_equivalent(&a.0, &b.0, &Budget::default()))?;
        *verdict = match v {
            Verdict::Equivalent(_) => UrfsVerdict::Equivalent,
            Verdict::Inequivalent(_) => UrfsVerdict::Inequivalent,
            Verdict::Unknown(_) => UrfsVerdict::Unknown,
        };
        if !detail.is_null() {
            put_string(detail, json_text(&verdict_to_json(&v)))?;
        }
        Ok(())
    })
}

/// Decodes a log module; a non-zero `order` overrides the document's
/// truncation order.
///
/// # Safety
/// `json` is a NUL-terminated string; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn urfs_log_module_from_json(
    json: *const c_char,
    order: usize,
    out: *mut *mut UrfsLogModule,
) -> UrfsStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let text = read_str(json, "json")?;
        let m = lib(parse_document(text, "json")
            .and_then(|v| log_module_from_json(&v, (order > 0).then_some(order))))?;
        put(out, UrfsLogModule(m));
        Ok(())
    })
}

/// Releases a log module.
///
/// # Safety
/// `module` is NULL or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn urfs_log_module_free(module: *mut UrfsLogModule) {
    if !module.is_null() {
        drop(Box::from_raw(module));
    }
}

/// Whether the module passes every check (shapes, nilpotent residue,
/// compatibility with Frobenius).
///
/// # Safety
/// `module` is a live handle; `valid` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn urfs_log_module_validate(
    module: *const UrfsLogModule,
    valid: *mut bool,
) -> UrfsStatus {
    guard(|| {
        let m = handle(module, "module")?;
        if valid.is_null() {
            return Err(null("valid"));
        }
        *valid = validate_log_module(&m.0).ok();
        Ok(())
    })
}

/// The special fiber `(φ₀, N)` as JSON.
///
/// # Safety
/// `module` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn urfs_log_module_special_fiber(
    module: *const UrfsLogModule,
    out: *mut *mut c_char,
) -> UrfsStatus {
    guard(|| {
        let m = handle(module, "module")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let d = lib(special_fiber(&m.0))?;
        put_string(out, json_text(&phi_n_to_json(&d)))
    })
}

/// The Weil–Deligne pair `(φ₀^(−s_deg), N)` with `q = p^s_deg` attached to
/// the special fiber.
///
/// # Safety
/// `module` is a live handle; `out` is valid for writes.
#[no_mangle]
pub unsafe extern "C" fn urfs_log_module_to_pair(
    module: *const UrfsLogModule,
    s_deg: u32,
    out: *mut *mut UrfsPair,
) -> UrfsStatus {
    guard(|| {
        let m = handle(module, "module")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let d = lib(special_fiber(&m.0))?;
        put(out, UrfsPair(lib(wd_from_phi_n(&d, s_deg))?));
        Ok(())
    })
}
