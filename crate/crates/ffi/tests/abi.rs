use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;

use euclid_lab_ffi::*;

fn take(s: *mut c_char) -> String {
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { el_string_free(s) };
    out
}

fn monoid(spec: &str) -> *mut ELMonoid {
    let spec = CString::new(spec).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { el_monoid_parse(spec.as_ptr(), &mut m) }, ELStatus::Ok);
    m
}

fn element(m: *const ELMonoid, literal: &str) -> *mut ELElement {
    let literal = CString::new(literal).unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { el_element_parse(m, literal.as_ptr(), &mut e) }, ELStatus::Ok);
    e
}

fn render(e: *const ELElement) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { el_element_render(e, &mut s) }, ELStatus::Ok);
    take(s)
}

#[test]
fn quadratic_example_through_handles() {
    let m = monoid("quadratic 2");
    let (seven, a, b, c) = (element(m, "7"), element(m, "5+2*sqrt(2)"), element(m, "(3,8)"), element(m, "1+2*sqrt(2)"));
    let (mut p1, mut p2) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(el_element_mul(seven, a, &mut p1), ELStatus::Ok);
        assert_eq!(el_element_mul(b, c, &mut p2), ELStatus::Ok);
    }
    assert_eq!(render(p1), "(35,14)");
    assert_eq!(render(p2), "(35,14)");

    let mut irreducible = false;
    for e in [seven, a, b, c] {
        assert_eq!(unsafe { el_element_is_irreducible(e, &mut irreducible) }, ELStatus::Ok);
        assert!(irreducible);
    }
    let (mut q, mut none) = (ptr::null_mut(), ptr::null_mut());
    unsafe {
        assert_eq!(el_element_try_divide(p1, seven, &mut q), ELStatus::Ok);
        assert_eq!(el_element_try_divide(seven, a, &mut none), ELStatus::Ok);
    }
    assert_eq!(render(q), "(5,2)");
    assert!(none.is_null());

    let mut spec = ptr::null_mut();
    assert_eq!(unsafe { el_monoid_render(m, &mut spec) }, ELStatus::Ok);
    assert_eq!(take(spec), "quadratic 2");
    unsafe {
        for e in [seven, a, b, c, p1, p2, q] {
            el_element_free(e);
        }
        el_monoid_free(m);
    }
}

#[test]
fn error_codes() {
    let bad = CString::new("congruence 2 mod 3").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { el_monoid_parse(bad.as_ptr(), &mut m) }, ELStatus::NotClosed);
    let message = unsafe { CStr::from_ptr(el_last_error()) }.to_str().unwrap();
    assert!(message.contains("product 4 has residue 1"), "{message}");

    let syntax = CString::new("congruence 1 modulo 3").unwrap();
    assert_eq!(unsafe { el_monoid_parse(syntax.as_ptr(), &mut m) }, ELStatus::Syntax);
    assert_eq!(unsafe { el_monoid_parse(ptr::null(), &mut m) }, ELStatus::NullPointer);

    let c = monoid("congruence 1 mod 3");
    let five = CString::new("5").unwrap();
    let mut e = ptr::null_mut();
    assert_eq!(unsafe { el_element_parse(c, five.as_ptr(), &mut e) }, ELStatus::NotAMember);

    let q = monoid("quadratic 2");
    let (x, y) = (element(c, "4"), element(q, "7"));
    assert_eq!(unsafe { el_element_mul(x, y, &mut e) }, ELStatus::Mismatch);
    unsafe {
        el_element_free(x);
        el_element_free(y);
        el_monoid_free(c);
        el_monoid_free(q);
    }
}

#[test]
fn bezout_words() {
    let (mut g, mut s, mut t) = (0u64, 0i64, 0i64);
    assert_eq!(unsafe { el_bezout_u64(240, 46, &mut g, &mut s, &mut t) }, ELStatus::Ok);
    assert_eq!((g, s, t), (2, -9, 47));
    assert_eq!(unsafe { el_bezout_u64(u64::MAX, u64::MAX - 1, &mut g, &mut s, &mut t) }, ELStatus::Ok);
    assert_eq!(
        s as i128 * u64::MAX as i128 + t as i128 * (u64::MAX - 1) as i128,
        g as i128
    );
    assert_eq!(unsafe { el_bezout_u64(0, 5, &mut g, &mut s, &mut t) }, ELStatus::InvalidInput);
}

#[test]
fn run_returns_report_and_status() {
    let args: Vec<CString> = ["proportion", "--vii19", "4", "10", "10", "25", "--monoid", "congruence 1 mod 3", "--json"]
        .iter()
        .map(|a| CString::new(*a).unwrap())
        .collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut out, mut status): (*mut c_char, c_int) = (ptr::null_mut(), -1);
    assert_eq!(unsafe { el_run(ptrs.as_ptr(), ptrs.len(), &mut out, &mut status) }, ELStatus::Ok);
    assert_eq!(status, 1);
    let report: serde_json::Value = serde_json::from_str(&take(out)).unwrap();
    assert_eq!(report["payload"]["frac"], true);
    assert_eq!(report["payload"]["pyth"], false);

    let bad = [CString::new("frobnicate").unwrap()];
    let ptrs: Vec<*const c_char> = bad.iter().map(|a| a.as_ptr()).collect();
    assert_eq!(unsafe { el_run(ptrs.as_ptr(), 1, &mut out, &mut status) }, ELStatus::Ok);
    assert_eq!(status, 2);
    assert!(!take(out).is_empty());
}
