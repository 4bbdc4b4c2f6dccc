use std::ffi::{c_char, CStr, CString};
use std::ptr;

use renhance_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { renhance_string_free(s) };
    out
}

fn last_error() -> String {
    let p = renhance_last_error();
    assert!(!p.is_null(), "expected an error message");
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

fn catalog(id: &str, bindings: Option<&str>) -> *mut RenhanceMatrix {
    let id = CString::new(id).unwrap();
    let b = bindings.map(|s| CString::new(s).unwrap());
    let mut h = ptr::null_mut();
    let st = unsafe {
        renhance_matrix_from_catalog(
            id.as_ptr(),
            b.as_ref().map_or(ptr::null(), |c| c.as_ptr()),
            &mut h,
        )
    };
    assert_eq!(st, RenhanceStatus::Ok);
    h
}

#[test]
fn check_enhance_verify_invariant() {
    let r = catalog("7", Some("p=2/3"));
    let mut verdict = ptr::null_mut();
    assert_eq!(
        unsafe { renhance_check(r, &mut verdict) },
        RenhanceStatus::Ok
    );
    assert!(take(verdict).starts_with("enhanced"));

    let mut pair = ptr::null_mut();
    assert_eq!(
        unsafe { renhance_enhance(r, 0, &mut pair) },
        RenhanceStatus::Ok
    );
    assert_eq!(unsafe { renhance_verify(pair) }, RenhanceStatus::Ok);

    let braid = CString::new("strands=1").unwrap();
    let mut value = ptr::null_mut();
    let st = unsafe { renhance_invariant(pair, braid.as_ptr(), 0, &mut value) };
    assert_eq!(st, RenhanceStatus::Ok);
    assert_eq!(take(value), "q^-1 + q");

    let mut quad = ptr::null_mut();
    assert_eq!(
        unsafe { renhance_enhance(r, 1, &mut quad) },
        RenhanceStatus::Ok
    );
    assert_eq!(unsafe { renhance_verify(quad) }, RenhanceStatus::Ok);

    unsafe {
        renhance_matrix_free(quad);
        renhance_matrix_free(pair);
        renhance_matrix_free(r);
    }
}

#[test]
fn invariant_of_an_r_matrix_enhances_first() {
    let r = catalog("7", None);
    let braid = CString::new("strands=2 s1 s1 s1").unwrap();
    let mut value = ptr::null_mut();
    let st = unsafe { renhance_invariant(r, braid.as_ptr(), 0, &mut value) };
    assert_eq!(st, RenhanceStatus::Ok);
    assert_eq!(take(value), "-q^-9 + q^-5 + q^-3 + q^-1");
    unsafe { renhance_matrix_free(r) };
}

#[test]
fn json_round_trip() {
    let r = catalog("2", None);
    let mut json = ptr::null_mut();
    assert_eq!(
        unsafe { renhance_matrix_to_json(r, &mut json) },
        RenhanceStatus::Ok
    );
    let text = take(json);
    let c = CString::new(text.clone()).unwrap();
    let mut back = ptr::null_mut();
    assert_eq!(
        unsafe { renhance_matrix_from_json(c.as_ptr(), &mut back) },
        RenhanceStatus::Ok
    );
    let mut again = ptr::null_mut();
    assert_eq!(
        unsafe { renhance_matrix_to_json(back, &mut again) },
        RenhanceStatus::Ok
    );
    assert_eq!(take(again), text);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["n"], 2);
    unsafe {
        renhance_matrix_free(back);
        renhance_matrix_free(r);
    }
}

#[test]
fn negatives_and_input_errors() {
    let r = catalog("5", None);
    let mut verdict = ptr::null_mut();
    assert_eq!(
        unsafe { renhance_check(r, &mut verdict) },
        RenhanceStatus::Negative
    );
    assert_eq!(take(verdict), "not biinvertible");
    let mut pair = ptr::null_mut();
    assert_eq!(
        unsafe { renhance_enhance(r, 0, &mut pair) },
        RenhanceStatus::Negative
    );
    assert!(pair.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { renhance_verify(r) }, RenhanceStatus::Input);
    assert!(last_error().contains("mu"));
    unsafe { renhance_matrix_free(r) };

    let bad = CString::new("{\"n\": 2}").unwrap();
    let mut h = ptr::null_mut();
    assert_eq!(
        unsafe { renhance_matrix_from_json(bad.as_ptr(), &mut h) },
        RenhanceStatus::Input
    );
    assert!(h.is_null());

    let id = CString::new("6").unwrap();
    assert_eq!(
        unsafe { renhance_matrix_from_catalog(id.as_ptr(), ptr::null(), &mut h) },
        RenhanceStatus::Input
    );
    let id = CString::new("7").unwrap();
    let b = CString::new("t=2").unwrap();
    assert_eq!(
        unsafe { renhance_matrix_from_catalog(id.as_ptr(), b.as_ptr(), &mut h) },
        RenhanceStatus::Input
    );
    assert!(last_error().contains("'t'"));
}

#[test]
fn resource_cap_and_null_pointers() {
    let r = catalog("7", Some("p=2/3,q=3/2"));
    let braid = CString::new("strands=3 s1 s2").unwrap();
    let mut value = ptr::null_mut();
    let st = unsafe { renhance_invariant(r, braid.as_ptr(), 2, &mut value) };
    assert_eq!(st, RenhanceStatus::ResourceCap);
    assert!(value.is_null());

    assert_eq!(
        unsafe { renhance_verify(ptr::null()) },
        RenhanceStatus::NullPointer
    );
    assert!(last_error().contains("null"));
    assert_eq!(
        unsafe { renhance_invariant(r, ptr::null(), 0, &mut value) },
        RenhanceStatus::NullPointer
    );
    let mut verdict = ptr::null_mut();
    assert_eq!(
        unsafe { renhance_check(r, &mut verdict) },
        RenhanceStatus::Ok
    );
    assert!(renhance_last_error().is_null());
    take(verdict);
    unsafe {
        renhance_matrix_free(r);
        renhance_matrix_free(ptr::null_mut());
        renhance_string_free(ptr::null_mut());
    }
}
