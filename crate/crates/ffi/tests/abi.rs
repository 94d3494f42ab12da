use std::ffi::{c_char, CStr, CString};
use std::ptr;

use aqcdga_ffi::*;

const S2: &str = "algebra S2 { generator x : 2; generator y : 3; d y = x^2; }\n\
                  algebra L { generator x : 2; }\n\
                  morphism id : S2 -> S2 { x |-> x; y |-> y; }";

fn last_error() -> String {
    let p = aq_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn load(src: &str) -> *mut AqModel {
    let c = CString::new(src).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { aq_model_load(c.as_ptr(), &mut m) }, AqStatus::AQ_OK);
    m
}

#[test]
fn model_queries() {
    let m = load(S2);
    let mut n = 0usize;
    assert_eq!(unsafe { aq_model_algebra_count(m, &mut n) }, AqStatus::AQ_OK);
    assert_eq!(n, 2);
    let name = CString::new("S2").unwrap();
    let dims: Vec<usize> = (0..5)
        .map(|k| {
            let mut d = 99;
            assert_eq!(unsafe { aq_cohomology_dim(m, name.as_ptr(), k, &mut d) }, AqStatus::AQ_OK);
            d
        })
        .collect();
    assert_eq!(dims, [1, 0, 1, 0, 0]);
    unsafe { aq_model_free(m) };
}

#[test]
fn aq_routes_agree() {
    let m = load(S2);
    let l = CString::new("L").unwrap();
    let id = CString::new("id").unwrap();
    for route in [AqRoute::AQ_ROUTE_DER, AqRoute::AQ_ROUTE_HARRISON] {
        let mut dims = [9usize; 5];
        let s = unsafe { aq_aq_dims(m, l.as_ptr(), ptr::null(), -1, -4, 0, route, dims.as_mut_ptr(), 5) };
        assert_eq!(s, AqStatus::AQ_OK);
        assert_eq!(dims, [0, 0, 1, 0, 0]);
        let mut dims = [9usize; 2];
        let s = unsafe { aq_aq_dims(m, ptr::null(), id.as_ptr(), 8, -1, 0, route, dims.as_mut_ptr(), 2) };
        assert_eq!(s, AqStatus::AQ_OK);
        assert_eq!(dims, [0, 1]);
    }
    let mut small = [0usize; 1];
    let s = unsafe { aq_aq_dims(m, l.as_ptr(), ptr::null(), -1, -4, 0, AqRoute::AQ_ROUTE_DER, small.as_mut_ptr(), 1) };
    assert_eq!(s, AqStatus::AQ_ERR_BUFFER);
    let mut dims = [0usize; 2];
    let s =
        unsafe { aq_aq_dims(m, ptr::null(), id.as_ptr(), -1, -1, 0, AqRoute::AQ_ROUTE_HARRISON, dims.as_mut_ptr(), 2) };
    assert_eq!(s, AqStatus::AQ_ERR_REFUSED);
    assert!(last_error().contains("unbounded"), "{}", last_error());
    unsafe { aq_model_free(m) };
}

#[test]
fn parse_errors_carry_positions() {
    let src = CString::new("algebra A {\n  generator x 2; }").unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { aq_document_parse(src.as_ptr(), &mut d) }, AqStatus::AQ_ERR_INPUT);
    assert!(d.is_null());
    assert!(last_error().starts_with("2:15:"), "{}", last_error());

    let src = CString::new("algebra A { generator x : 2; generator y : 3; d y = x^3; }").unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { aq_model_load(src.as_ptr(), &mut m) }, AqStatus::AQ_ERR_INPUT);
    assert!(last_error().contains("degree of d y must be 4"), "{}", last_error());
}

#[test]
fn document_round_trip() {
    let src = CString::new(S2).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { aq_document_parse(src.as_ptr(), &mut d) }, AqStatus::AQ_OK);
    let mut text: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { aq_document_print(d, &mut text) }, AqStatus::AQ_OK);
    let printed = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_string();
    unsafe { aq_string_free(text) };
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { aq_document_elaborate(d, &mut m) }, AqStatus::AQ_OK);
    unsafe {
        aq_model_free(m);
        aq_document_free(d);
    }
    let again = CString::new(printed.clone()).unwrap();
    let mut d2 = ptr::null_mut();
    assert_eq!(unsafe { aq_document_parse(again.as_ptr(), &mut d2) }, AqStatus::AQ_OK);
    let mut text2: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { aq_document_print(d2, &mut text2) }, AqStatus::AQ_OK);
    assert_eq!(unsafe { CStr::from_ptr(text2) }.to_str().unwrap(), printed);
    unsafe {
        aq_string_free(text2);
        aq_document_free(d2);
    }
}

#[test]
fn null_arguments_are_rejected() {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { aq_model_load(ptr::null(), &mut m) }, AqStatus::AQ_ERR_NULL);
    let mut n = 0usize;
    assert_eq!(unsafe { aq_model_algebra_count(ptr::null(), &mut n) }, AqStatus::AQ_ERR_NULL);
    let bad = [0xffu8, 0];
    assert_eq!(unsafe { aq_model_load(bad.as_ptr().cast(), &mut m) }, AqStatus::AQ_ERR_UTF8);
    unsafe {
        aq_model_free(ptr::null_mut());
        aq_string_free(ptr::null_mut());
    }
}

#[test]
fn cli_through_the_abi() {
    let args: Vec<CString> =
        ["--format", "json", "pi", "catalog:sphere(2)", "--n", "3"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    let (mut out, mut code) = (ptr::null_mut(), -1);
    assert_eq!(unsafe { aq_cli_run(ptrs.as_ptr(), ptrs.len(), &mut out, &mut code) }, AqStatus::AQ_OK);
    assert_eq!(code, 0);
    let json = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { aq_string_free(out) };
    assert!(json.contains("\"dimension\": 1"), "{json}");

    let args: Vec<CString> = ["catalog", "nonsense"].iter().map(|s| CString::new(*s).unwrap()).collect();
    let ptrs: Vec<*const c_char> = args.iter().map(|a| a.as_ptr()).collect();
    assert_eq!(unsafe { aq_cli_run(ptrs.as_ptr(), ptrs.len(), &mut out, &mut code) }, AqStatus::AQ_OK);
    assert_eq!(code, 1);
    unsafe { aq_string_free(out) };
    assert!(!last_error().is_empty());
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(aq_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
