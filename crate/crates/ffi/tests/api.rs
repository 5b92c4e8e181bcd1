use std::ffi::{CStr, CString};
use std::process::Command;
use std::ptr;

use bergman_ffi::*;

fn generate(spec: &str) -> *mut BergmanMatroid {
    let spec = CString::new(spec).unwrap();
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { bergman_matroid_generate(spec.as_ptr(), &mut m) }, BergmanStatus::Ok);
    assert!(!m.is_null());
    m
}

fn last_error() -> String {
    let p = bergman_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn a3_through_the_c_surface() {
    let m = generate("example:A3");
    let (mut size, mut rank) = (0, 0);
    unsafe {
        assert_eq!(bergman_matroid_size(m, &mut size), BergmanStatus::Ok);
        assert_eq!(bergman_matroid_rank(m, &mut rank), BergmanStatus::Ok);
    }
    assert_eq!((size, rank), (6, 3));

    // labels 1, 2, 5 form a triangle
    let mut r = 0;
    let tri = [0usize, 1, 4];
    assert_eq!(unsafe { bergman_matroid_rank_of(m, tri.as_ptr(), 3, &mut r) }, BergmanStatus::Ok);
    assert_eq!(r, 2);
    assert_eq!(unsafe { bergman_matroid_rank_of(m, ptr::null(), 0, &mut r) }, BergmanStatus::Ok);
    assert_eq!(r, 0);

    let mut count = 0;
    assert_eq!(unsafe { bergman_cremona_count(m, 40, &mut count) }, BergmanStatus::Ok);
    assert_eq!(count, 4);

    let (mut v, mut e) = (0, 0);
    assert_eq!(unsafe { bergman_ray_graph_size(m, &mut v, &mut e) }, BergmanStatus::Ok);
    assert_eq!((v, e), (10, 15));
    unsafe { bergman_matroid_free(m) };
}

#[test]
fn json_round_trip() {
    let m = generate("fano");
    let mut text = ptr::null_mut();
    assert_eq!(unsafe { bergman_matroid_to_json(m, &mut text) }, BergmanStatus::Ok);
    let mut back = ptr::null_mut();
    assert_eq!(unsafe { bergman_matroid_from_json(text, &mut back) }, BergmanStatus::Ok);
    let mut rank = 0;
    assert_eq!(unsafe { bergman_matroid_rank(back, &mut rank) }, BergmanStatus::Ok);
    assert_eq!(rank, 3);
    unsafe {
        bergman_string_free(text);
        bergman_matroid_free(back);
        bergman_matroid_free(m);
    }
}

#[test]
fn error_codes() {
    let mut m = ptr::null_mut();
    let bad = CString::new("Q7").unwrap();
    assert_eq!(unsafe { bergman_matroid_generate(bad.as_ptr(), &mut m) }, BergmanStatus::InvalidInput);
    assert!(m.is_null());
    assert!(last_error().contains("Q7"));

    let junk = CString::new("{\"elements\": 3}").unwrap();
    assert_eq!(unsafe { bergman_matroid_from_json(junk.as_ptr(), &mut m) }, BergmanStatus::InvalidInput);
    assert_eq!(unsafe { bergman_matroid_from_json(ptr::null(), &mut m) }, BergmanStatus::NullPointer);

    let mut n = 0;
    assert_eq!(unsafe { bergman_matroid_size(ptr::null(), &mut n) }, BergmanStatus::NullPointer);

    let e6 = generate("E6");
    assert_eq!(unsafe { bergman_cremona_count(e6, 20, &mut n) }, BergmanStatus::BudgetExceeded);
    let out_of_range = [99usize];
    assert_eq!(unsafe { bergman_matroid_rank_of(e6, out_of_range.as_ptr(), 1, &mut n) }, BergmanStatus::InvalidInput);
    unsafe { bergman_matroid_free(e6) };

    // a successful call clears the message
    let k4 = generate("K4");
    assert_eq!(unsafe { bergman_matroid_size(k4, &mut n) }, BergmanStatus::Ok);
    assert!(bergman_last_error().is_null());
    unsafe { bergman_matroid_free(k4) };
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(bergman_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let header = concat!(env!("CARGO_MANIFEST_DIR"), "/include/bergman.h");
    let Ok(out) = Command::new("cc").args(["-fsyntax-only", "-x", "c", header]).output() else {
        eprintln!("no C compiler; skipping header check");
        return;
    };
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}
