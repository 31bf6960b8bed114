//! The C ABI exercised from Rust: ownership, status codes and error text.

use std::ffi::{c_char, CStr, CString};
use std::ptr;

use urfs_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_owned();
    unsafe { urfs_string_free(s) };
    out
}

fn last_error() -> String {
    let p = urfs_last_error();
    assert!(!p.is_null(), "an error message is recorded");
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn tate(q: u64) -> *mut UrfsPair {
    let mut p = ptr::null_mut();
    assert_eq!(unsafe { urfs_pair_tate(q, &mut p) }, UrfsStatus::Ok);
    p
}

#[test]
fn version_is_the_crate_version() {
    let v = unsafe { CStr::from_ptr(urfs_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn pair_round_trips_through_json() {
    let p = tate(3);
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { urfs_pair_to_json(p, &mut text) }, UrfsStatus::Ok);
    let json = CString::new(take(text)).unwrap();
    let mut q = ptr::null_mut();
    assert_eq!(
        unsafe { urfs_pair_from_json(json.as_ptr(), &mut q) },
        UrfsStatus::Ok
    );
    assert_eq!(unsafe { urfs_pair_dim(q) }, 2);
    let (mut verdict, mut detail) = (UrfsVerdict::Unknown, ptr::null_mut());
    assert_eq!(
        unsafe { urfs_pair_check_equiv(p, q, &mut verdict, &mut detail) },
        UrfsStatus::Ok
    );
    assert_eq!(verdict, UrfsVerdict::Equivalent);
    assert!(take(detail).contains("\"witness\""));
    unsafe {
        urfs_pair_free(p);
        urfs_pair_free(q);
    }
}

#[test]
fn monodromy_distinguishes_pairs_and_residue_sizes_must_agree() {
    let a = tate(2);
    let unramified = CString::new(r#"{"group": {"variant": "GL", "n": 2}, "s": [["1", "0"], ["0", "2"]], "N": [["0", "0"], ["0", "0"]], "q": "2"}"#).unwrap();
    let mut b = ptr::null_mut();
    assert_eq!(
        unsafe { urfs_pair_from_json(unramified.as_ptr(), &mut b) },
        UrfsStatus::Ok
    );
    let (mut verdict, mut detail) = (UrfsVerdict::Unknown, ptr::null_mut());
    assert_eq!(
        unsafe { urfs_pair_check_equiv(a, b, &mut verdict, &mut detail) },
        UrfsStatus::Ok
    );
    assert_eq!(verdict, UrfsVerdict::Inequivalent);
    assert!(take(detail).contains("\"certificate\""));
    let c = tate(3);
    assert_eq!(
        unsafe { urfs_pair_check_equiv(a, c, &mut verdict, ptr::null_mut()) },
        UrfsStatus::InvalidInput
    );
    assert!(!last_error().is_empty());
    unsafe {
        urfs_pair_free(a);
        urfs_pair_free(b);
        urfs_pair_free(c);
    }
}

#[test]
fn validation_and_canonical_form() {
    let p = tate(2);
    let (mut ok, mut report) = (false, ptr::null_mut());
    assert_eq!(
        unsafe { urfs_pair_validate(p, &mut ok, &mut report) },
        UrfsStatus::Ok
    );
    assert!(ok);
    assert!(take(report).contains("\"ok\":true"));
    let mut form = ptr::null_mut();
    assert_eq!(
        unsafe { urfs_pair_canonical_form(p, &mut form) },
        UrfsStatus::Ok
    );
    assert!(take(form).contains("chain (1, 2) m[0,1]=1"));
    unsafe { urfs_pair_free(p) };
}

#[test]
fn errors_carry_status_and_message() {
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { urfs_pair_tate(1, &mut p) },
        UrfsStatus::InvalidInput
    );
    assert!(p.is_null());
    assert!(!last_error().is_empty());

    let bad = CString::new("{\"group\": [").unwrap();
    assert_eq!(
        unsafe { urfs_pair_from_json(bad.as_ptr(), &mut p) },
        UrfsStatus::Parse
    );
    assert!(last_error().contains("line 1"), "{}", last_error());

    assert_eq!(
        unsafe { urfs_pair_from_json(ptr::null(), &mut p) },
        UrfsStatus::NullPointer
    );
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { urfs_pair_from_json(invalid.as_ptr().cast(), &mut p) },
        UrfsStatus::InvalidUtf8
    );

    let mut ok = false;
    assert_eq!(
        unsafe { urfs_pair_validate(ptr::null(), &mut ok, ptr::null_mut()) },
        UrfsStatus::NullPointer
    );
    // a successful call clears the message
    let q = tate(2);
    assert!(urfs_last_error().is_null());
    unsafe {
        urfs_pair_free(q);
        urfs_pair_free(ptr::null_mut());
        urfs_string_free(ptr::null_mut());
    }
}

#[test]
fn log_module_fiber_and_pair() {
    let doc = CString::new(r#"{"p": 2, "order": 3, "A": [[["0"], ["0"]], [["-1"], ["0"]]], "Phi": [[["1"], ["0"]], [["0"], ["1/2"]]]}"#).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(
        unsafe { urfs_log_module_from_json(doc.as_ptr(), 0, &mut m) },
        UrfsStatus::Ok
    );
    let mut ok = false;
    assert_eq!(
        unsafe { urfs_log_module_validate(m, &mut ok) },
        UrfsStatus::Ok
    );
    assert!(ok);
    let mut fiber = ptr::null_mut();
    assert_eq!(
        unsafe { urfs_log_module_special_fiber(m, &mut fiber) },
        UrfsStatus::Ok
    );
    assert!(take(fiber).contains("\"N\":[[[\"0/1\"],[\"0/1\"]],[[\"1/1\"],[\"0/1\"]]]"));
    let mut p = ptr::null_mut();
    assert_eq!(
        unsafe { urfs_log_module_to_pair(m, 1, &mut p) },
        UrfsStatus::Ok
    );
    let mut valid = false;
    assert_eq!(
        unsafe { urfs_pair_validate(p, &mut valid, ptr::null_mut()) },
        UrfsStatus::Ok
    );
    assert!(valid);
    unsafe {
        urfs_pair_free(p);
        urfs_log_module_free(m);
    }
}
