use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::ptr;

use hopfinv_ffi::*;
use serde_json::Value;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

unsafe fn take(s: *mut c_char) -> Value {
    assert!(!s.is_null());
    let v = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
    hi_string_free(s);
    v
}

unsafe fn last_error() -> String {
    let p = hi_last_error();
    assert!(!p.is_null());
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

const SIGN: &str = r#"{"rank": 1, "coaction": {"dense": [["1"], ["-1"]]}}"#;

#[test]
fn matrix_smith() {
    unsafe {
        let mut m = ptr::null_mut();
        let json = c(r#"{"dense": [["2", "4"], ["6", "8"]]}"#);
        assert_eq!(hi_matrix_from_json(json.as_ptr(), &mut m), HiStatus::Ok);
        let (mut r, mut k) = (0, 0);
        assert_eq!(hi_matrix_shape(m, &mut r, &mut k), HiStatus::Ok);
        assert_eq!((r, k), (2, 2));
        let mut out = ptr::null_mut();
        assert_eq!(hi_matrix_smith_json(m, &mut out), HiStatus::Ok);
        let v = take(out);
        assert_eq!(v["rank"], 2);
        assert_eq!(v["invariant_factors"], serde_json::json!(["2", "4"]));
        hi_matrix_free(m);
    }
}

#[test]
fn big_entries_survive() {
    unsafe {
        let big = "1180591620717411303424";
        let json = c(&format!(r#"{{"rows": 1, "cols": 1, "entries": [[0, 0, "{big}"]]}}"#));
        let mut m = ptr::null_mut();
        assert_eq!(hi_matrix_from_json(json.as_ptr(), &mut m), HiStatus::Ok);
        let mut out = ptr::null_mut();
        hi_matrix_smith_json(m, &mut out);
        assert_eq!(take(out)["invariant_factors"][0], big);
        hi_matrix_free(m);
    }
}

#[test]
fn hopf_handles() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(hi_hopf_builtin(c("mu_3").as_ptr(), &mut h), HiStatus::Ok);
        let mut rank = 0;
        assert_eq!(hi_hopf_rank(h, &mut rank), HiStatus::Ok);
        assert_eq!(rank, 3);
        let mut out = ptr::null_mut();
        assert_eq!(hi_hopf_check_json(h, &mut out), HiStatus::Ok);
        let v = take(out);
        assert!(v["checks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
        hi_hopf_free(h);

        let mut bad = ptr::null_mut();
        assert_eq!(hi_hopf_builtin(c("mu_x").as_ptr(), &mut bad), HiStatus::BadInput);
        assert!(bad.is_null());
        assert!(last_error().contains("mu_x"));
    }
}

#[test]
fn sign_representation_end_to_end() {
    unsafe {
        let mut h = ptr::null_mut();
        hi_hopf_builtin(c("const_Z2").as_ptr(), &mut h);
        let mut m = ptr::null_mut();
        assert_eq!(hi_comodule_from_json(c(SIGN).as_ptr(), h, &mut m), HiStatus::Ok);
        hi_hopf_free(h);

        let mut out = ptr::null_mut();
        assert_eq!(hi_comodule_invariants_json(m, &mut out), HiStatus::Ok);
        assert_eq!(take(out)["invariants"]["text"], "0");

        assert_eq!(hi_comodule_cobar_json(m, 3, &mut out), HiStatus::Ok);
        let v = take(out);
        let h: Vec<&str> = v["cohomology"].as_array().unwrap().iter().map(|x| x["text"].as_str().unwrap()).collect();
        assert_eq!(h, vec!["0", "Z/2", "0"]);

        assert_eq!(hi_ucs_check_json(m, c("f2").as_ptr(), &mut out), HiStatus::Ok);
        let v = take(out);
        assert_eq!(v["exact"], true);
        assert_eq!(v["rho"]["surjective"], false);

        assert_eq!(hi_ucs_check_json(m, c("f1").as_ptr(), &mut out), HiStatus::BadInput);
        hi_comodule_free(m);
    }
}

#[test]
fn comodule_needs_a_hopf_algebra() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(hi_comodule_from_json(c(SIGN).as_ptr(), ptr::null(), &mut m), HiStatus::BadInput);
        let typo = c(r#"{"hopf": "const_Z2", "rank": 1, "coactionn": {"dense": [["1"], ["-1"]]}}"#);
        assert_eq!(hi_comodule_from_json(typo.as_ptr(), ptr::null(), &mut m), HiStatus::BadInput);
        assert!(last_error().contains("coactionn"));
    }
}

#[test]
fn null_pointers_are_reported() {
    unsafe {
        let mut m = ptr::null_mut();
        assert_eq!(hi_matrix_from_json(ptr::null(), &mut m), HiStatus::NullPointer);
        assert_eq!(hi_matrix_from_json(c("{}").as_ptr(), ptr::null_mut()), HiStatus::NullPointer);
        let mut out = ptr::null_mut();
        assert_eq!(hi_matrix_smith_json(ptr::null(), &mut out), HiStatus::NullPointer);
        hi_matrix_free(ptr::null_mut());
        hi_string_free(ptr::null_mut());
        let bytes = [0xffu8, 0];
        assert_eq!(hi_hopf_builtin(bytes.as_ptr().cast(), &mut ptr::null_mut()), HiStatus::InvalidUtf8);
    }
}

#[test]
fn run_matches_cli_exit_codes() {
    unsafe {
        let mut out = ptr::null_mut();
        let args = c(r#"["fft-check", "--m", "1", "--n", "1", "--r", "1", "--s", "1", "--t", "1", "--dmax", "2"]"#);
        assert_eq!(hi_run_json(args.as_ptr(), &mut out), HiStatus::Ok);
        assert_eq!(take(out)["verdict"], "pass");
        let args = c(r#"["hopf-check", "--hopf", "nope"]"#);
        assert_eq!(hi_run_json(args.as_ptr(), &mut out), HiStatus::BadInput);
        assert_eq!(take(out)["verdict"], "error");
        assert_eq!(hi_run_json(c(r#"["--bogus"]"#).as_ptr(), &mut out), HiStatus::BadInput);
    }
}

#[test]
fn version_and_header() {
    let v = unsafe { CStr::from_ptr(hi_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hopfinv.h")).unwrap();
    let src = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/src/lib.rs")).unwrap();
    let exported: Vec<&str> = src
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exported.len() >= 15);
    for f in exported {
        assert!(header.contains(&format!(" {f}(")) || header.contains(&format!("*{f}(")), "{f} missing from header");
    }
    assert!(header.contains("typedef struct HiMatrix HiMatrix;"));
}
