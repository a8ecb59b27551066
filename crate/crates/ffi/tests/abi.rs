use std::ffi::{CStr, CString};
use std::ptr;

use weylrank_ffi::*;

fn last_error() -> String {
    unsafe {
        let n = wr_last_error_message(ptr::null_mut(), 0);
        let mut buf = vec![0 as std::ffi::c_char; n];
        wr_last_error_message(buf.as_mut_ptr(), n);
        CStr::from_ptr(buf.as_ptr()).to_string_lossy().into_owned()
    }
}

#[test]
fn datum_handle_round_trip() {
    let spec = CString::new("A3").unwrap();
    let mut datum = ptr::null_mut();
    unsafe {
        assert_eq!(wr_datum_new(spec.as_ptr(), &mut datum), WrStatus::Ok);
        let mut order = 0u64;
        assert_eq!(wr_datum_weyl_order(datum, &mut order), WrStatus::Ok);
        assert_eq!(order, 24);
        let mut roots = 0u64;
        assert_eq!(wr_datum_positive_root_count(datum, &mut roots), WrStatus::Ok);
        assert_eq!(roots, 6);
        let mut chambers = 0u64;
        assert_eq!(wr_datum_chamber_count(datum, &mut chambers), WrStatus::Ok);
        assert_eq!(chambers, 24);
        wr_datum_free(datum);
    }
}

#[test]
fn bad_datum_sets_message() {
    let spec = CString::new("Q7").unwrap();
    let mut datum = ptr::null_mut();
    unsafe {
        assert_eq!(wr_datum_new(spec.as_ptr(), &mut datum), WrStatus::Validation);
        assert!(datum.is_null());
        assert_eq!(wr_datum_new(ptr::null(), &mut datum), WrStatus::NullPointer);
    }
    assert!(!last_error().is_empty());
}

#[test]
fn torus_ranks_through_abi() {
    let name = CString::new("torus").unwrap();
    let mut complex = ptr::null_mut();
    unsafe {
        assert_eq!(wr_complex_load_bundled(name.as_ptr(), &mut complex), WrStatus::Ok);
        let mut buf = [0usize; 4];
        let mut len = 0usize;
        for system in [WrSystem::Rt, WrSystem::Zw] {
            assert_eq!(wr_complex_rational_ranks(complex, system, 1729, buf.as_mut_ptr(), 4, &mut len), WrStatus::Ok);
            assert_eq!(&buf[..len], &[1, 2, 1]);
        }
        assert_eq!(wr_complex_betti(complex, buf.as_mut_ptr(), 1, &mut len), WrStatus::BufferTooSmall);
        assert_eq!(len, 3);
        assert_eq!(wr_complex_betti(complex, buf.as_mut_ptr(), 4, &mut len), WrStatus::Ok);
        assert_eq!(&buf[..len], &[1, 2, 1]);
        wr_complex_free(complex);
    }
}

#[test]
fn json_document_and_rejection() {
    let good = CString::new(weylrank::bredon::library::circle().to_json()).unwrap();
    let bad = CString::new("{\"schema\":\"wcw/1\"}").unwrap();
    let mut complex = ptr::null_mut();
    unsafe {
        assert_eq!(wr_complex_load_json(good.as_ptr(), &mut complex), WrStatus::Ok);
        wr_complex_free(complex);
        complex = ptr::null_mut();
        assert_eq!(wr_complex_load_json(bad.as_ptr(), &mut complex), WrStatus::Validation);
        assert!(complex.is_null());
    }
}

#[test]
fn steinberg_table_string() {
    let datum = CString::new("A2").unwrap();
    let family = CString::new("chain").unwrap();
    let mut out = ptr::null_mut();
    unsafe {
        assert_eq!(wr_steinberg_table(datum.as_ptr(), family.as_ptr(), &mut out), WrStatus::Ok);
        let text = CStr::from_ptr(out).to_str().unwrap().to_owned();
        wr_string_free(out);
        assert!(text.contains("2\t{}\ts1s2s1\t2\t-1,-1:1\t-1,-1:1"));
    }
}

#[test]
fn inertia_rank_abi() {
    let betti = [1usize];
    let mut out = 0u64;
    unsafe {
        assert_eq!(wr_inertia_rank(3, 2, betti.as_ptr(), 1, &mut out), WrStatus::Ok);
    }
    assert_eq!(out, 64);
}

#[test]
fn header_declares_every_export() {
    let header = include_str!("../include/weylrank.h");
    for name in [
        "wr_last_error_message",
        "wr_version",
        "wr_string_free",
        "wr_datum_new",
        "wr_datum_free",
        "wr_datum_weyl_order",
        "wr_datum_positive_root_count",
        "wr_datum_chamber_count",
        "wr_steinberg_table",
        "wr_complex_load_json",
        "wr_complex_load_bundled",
        "wr_complex_free",
        "wr_complex_rational_ranks",
        "wr_complex_betti",
        "wr_inertia_rank",
    ] {
        assert!(header.contains(&format!("{name}(")), "{name} missing from header");
    }
    assert!(unsafe { CStr::from_ptr(wr_version()) }.to_str().unwrap().starts_with("0."));
}
