use std::ffi::{CStr, CString};
use std::ptr;

use charsub_ffi::*;
use serde_json::Value;

fn shape(p: u64, ks: &[u32]) -> *mut CharsubShape {
    let mut out = ptr::null_mut();
    let st = unsafe { charsub_shape_new(p, ks.as_ptr(), ks.len(), &mut out) };
    assert_eq!(st, CharsubStatus::Ok);
    assert!(!out.is_null());
    out
}

fn take_json(s: *mut std::ffi::c_char) -> Value {
    let v = serde_json::from_str(unsafe { CStr::from_ptr(s) }.to_str().unwrap()).unwrap();
    unsafe { charsub_string_free(s) };
    v
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(charsub_last_error()) }
        .to_string_lossy()
        .into_owned()
}

#[test]
fn shape_lifecycle_and_order() {
    let s = shape(2, &[3, 1]);
    let mut order = 0;
    assert_eq!(
        unsafe { charsub_shape_order(s, &mut order) },
        CharsubStatus::Ok
    );
    assert_eq!(order, 16);
    unsafe { charsub_shape_free(s) };
    unsafe { charsub_shape_free(ptr::null_mut()) };
}

#[test]
fn invalid_arguments_set_status_and_message() {
    let mut out = ptr::null_mut();
    let st = unsafe { charsub_shape_new(4, [1u32].as_ptr(), 1, &mut out) };
    assert_eq!(st, CharsubStatus::InvalidArgument);
    assert!(out.is_null());
    assert_eq!(last_error(), "4 is not prime");
    let st = unsafe { charsub_shape_new(2, ptr::null(), 1, &mut out) };
    assert_eq!(st, CharsubStatus::NullPointer);
    let st = unsafe { charsub_shape_new(2, [40u32].as_ptr(), 1, &mut out) };
    assert_eq!(st, CharsubStatus::CapExceeded);
    assert!(last_error().contains("cap"));
    let s = shape(2, &[1]);
    let mut order = 0;
    assert_eq!(
        unsafe { charsub_shape_order(s, &mut order) },
        CharsubStatus::Ok
    );
    assert_eq!(last_error(), "");
    unsafe { charsub_shape_free(s) };
}

#[test]
fn classify_returns_verdict_json() {
    let s = shape(2, &[1, 3]);
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { charsub_classify_json(s, &mut out) },
        CharsubStatus::Ok
    );
    let v = take_json(out);
    assert_eq!(v["is_ifi"], false);
    assert_eq!(v["char_eq_fi"], false);
    unsafe { charsub_shape_free(s) };
}

#[test]
fn enumerate_kinds() {
    let s = shape(2, &[1, 3]);
    for (kind, n) in [
        (CharsubKind::All, 11),
        (CharsubKind::Characteristic, 7),
        (CharsubKind::FullyInvariant, 6),
    ] {
        let mut out = ptr::null_mut();
        assert_eq!(
            unsafe { charsub_enumerate_json(s, kind, &mut out) },
            CharsubStatus::Ok
        );
        assert_eq!(take_json(out).as_array().unwrap().len(), n);
    }
    unsafe { charsub_shape_free(s) };
}

#[test]
fn subgroup_predicates() {
    let s = shape(2, &[1, 3]);
    let gens = [1i64, 2];
    let (mut ch, mut fi) = (false, true);
    assert_eq!(
        unsafe { charsub_is_characteristic(s, gens.as_ptr(), 1, &mut ch) },
        CharsubStatus::Ok
    );
    assert_eq!(
        unsafe { charsub_is_fully_invariant(s, gens.as_ptr(), 1, &mut fi) },
        CharsubStatus::Ok
    );
    assert!(ch && !fi);
    // The trivial subgroup.
    assert_eq!(
        unsafe { charsub_is_fully_invariant(s, ptr::null(), 0, &mut fi) },
        CharsubStatus::Ok
    );
    assert!(fi);
    unsafe { charsub_shape_free(s) };
}

#[test]
fn verify_returns_reports() {
    let claims = CString::new("prop-2.26,thm-2.5-i").unwrap();
    let mut out = ptr::null_mut();
    let st = unsafe { charsub_verify_json(2, 64, claims.as_ptr(), 1, &mut out) };
    assert_eq!(st, CharsubStatus::Ok);
    let v = take_json(out);
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert!(reports.iter().all(|r| r["status"] == "pass"));
    let bad = CString::new("no-such").unwrap();
    let st = unsafe { charsub_verify_json(2, 64, bad.as_ptr(), 1, &mut out) };
    assert_eq!(st, CharsubStatus::InvalidArgument);
}

#[test]
fn null_handles_are_rejected() {
    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { charsub_classify_json(ptr::null(), &mut out) },
        CharsubStatus::NullPointer
    );
    let s = shape(2, &[1]);
    assert_eq!(
        unsafe { charsub_classify_json(s, ptr::null_mut()) },
        CharsubStatus::NullPointer
    );
    unsafe { charsub_shape_free(s) };
}

#[test]
fn version_is_set() {
    let v = unsafe { CStr::from_ptr(charsub_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_the_api() {
    let header = include_str!("../include/charsub.h");
    for name in [
        "charsub_shape_new",
        "charsub_shape_free",
        "charsub_classify_json",
        "charsub_enumerate_json",
        "charsub_verify_json",
        "charsub_string_free",
        "charsub_last_error",
        "CHARSUB_STATUS_CAP_EXCEEDED",
        "typedef struct CharsubShape CharsubShape",
    ] {
        assert!(header.contains(name), "{name}");
    }
}
