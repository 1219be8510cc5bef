use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use modlat_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(modlat_last_error()) }.to_string_lossy().into_owned()
}

unsafe fn take_string(s: *mut std::ffi::c_char) -> String {
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    modlat_string_free(s);
    out
}

const M3: &str = r#"{"names": ["0","a","b","c","1"], "covers": [[0,1],[0,2],[0,3],[1,4],[2,4],[3,4]]}"#;

#[test]
fn lattice_handle_lifecycle() {
    unsafe {
        let json = CString::new(M3).unwrap();
        let mut l = ptr::null_mut();
        assert_eq!(modlat_lattice_from_json(json.as_ptr(), &mut l), ModlatStatus::Ok);
        let mut n = 0usize;
        assert_eq!(modlat_lattice_size(l, &mut n), ModlatStatus::Ok);
        assert_eq!(n, 5);
        let mut modular = false;
        assert_eq!(modlat_lattice_is_modular(l, &mut modular), ModlatStatus::Ok);
        assert!(modular);
        let mut count = 0u64;
        assert_eq!(modlat_lattice_closed_ideal_count(l, &mut count), ModlatStatus::Ok);
        assert_eq!(count, 5);
        let mut ok = false;
        assert_eq!(modlat_lattice_roundtrip(l, &mut ok), ModlatStatus::Ok);
        assert!(ok);
        let mut s = ptr::null_mut();
        assert_eq!(modlat_lattice_params_json(l, &mut s), ModlatStatus::Ok);
        let params: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(params["j"], 3);
        assert_eq!(params["acyclic"], true);
        assert_eq!(modlat_lattice_to_json(l, &mut s), ModlatStatus::Ok);
        let back: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(back["covers"].as_array().unwrap().len(), 6);
        assert_eq!(modlat_lattice_to_dot(l, &mut s), ModlatStatus::Ok);
        assert!(take_string(s).starts_with("digraph"));
        assert_eq!(modlat_lattice_bol_json(l, &mut s), ModlatStatus::Ok);
        let bol: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        assert_eq!(bol["lines"], serde_json::json!([[1, 2, 3]]));
        modlat_lattice_free(l);
    }
}

#[test]
fn group_lattice_and_pls() {
    unsafe {
        let factors = [2u64, 2, 2];
        let mut l = ptr::null_mut();
        assert_eq!(modlat_lattice_from_group(factors.as_ptr(), 3, &mut l), ModlatStatus::Ok);
        let mut p = ptr::null_mut();
        assert_eq!(modlat_lattice_canonical_pls(l, &mut p), ModlatStatus::Ok);
        let mut r = 0usize;
        assert_eq!(modlat_pls_rstar(p, &mut r), ModlatStatus::Ok);
        assert_eq!(r, 8);
        let mut acyclic = true;
        assert_eq!(modlat_pls_is_acyclic(p, &mut acyclic), ModlatStatus::Ok);
        assert!(!acyclic);
        let mut c = 0usize;
        assert_eq!(modlat_pls_num_components(p, &mut c), ModlatStatus::Ok);
        assert_eq!(c, 1);
        let mut s = ptr::null_mut();
        assert_eq!(modlat_pls_to_json(p, &mut s), ModlatStatus::Ok);
        let json = CString::new(take_string(s)).unwrap();
        let mut q = ptr::null_mut();
        assert_eq!(modlat_pls_from_json(json.as_ptr(), &mut q), ModlatStatus::Ok);
        modlat_pls_free(q);
        modlat_pls_free(p);
        modlat_lattice_free(l);
    }
}

#[test]
fn enumerate_worked_example() {
    let poset = CString::new(
        r#"{"names": ["p1","p2","p3","p4","p5","p6","p7"], "covers": [[0,3],[1,4],[1,5],[2,6]]}"#,
    )
    .unwrap();
    let lines = CString::new(r#"[["p1","p2","p3"],["p1","p5","p6"],["p4","p6","p7"]]"#).unwrap();
    unsafe {
        let mut s = ptr::null_mut();
        assert_eq!(
            modlat_enumerate_json(poset.as_ptr(), lines.as_ptr(), &mut s),
            ModlatStatus::Ok
        );
        let rows: serde_json::Value = serde_json::from_str(&take_string(s)).unwrap();
        let total: u64 = rows["rows"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["count"].as_str().map(|c| c.parse::<u64>().unwrap()).or(r["count"].as_u64()).unwrap())
            .sum();
        assert_eq!(total, 13);
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut l = ptr::null_mut();
        assert_eq!(modlat_lattice_from_json(ptr::null(), &mut l), ModlatStatus::NullPointer);
        assert!(!last_error().is_empty());
        let bad = CString::new("{not json").unwrap();
        assert_eq!(modlat_lattice_from_json(bad.as_ptr(), &mut l), ModlatStatus::ParseError);
        let n5 = CString::new(r#"{"names": ["0","a","b","c","1"], "covers": [[0,1],[1,2],[2,4],[0,3],[3,4]]}"#)
            .unwrap();
        assert_eq!(modlat_lattice_from_json(n5.as_ptr(), &mut l), ModlatStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(modlat_lattice_params_json(l, &mut s), ModlatStatus::NotModular);
        assert_eq!(modlat_lattice_bol_json(l, &mut s), ModlatStatus::NotModular);
        modlat_lattice_free(l);
        let mut n = 0usize;
        assert_eq!(modlat_lattice_size(ptr::null(), &mut n), ModlatStatus::NullPointer);
        let zero = [1u64];
        assert_eq!(modlat_lattice_from_group(zero.as_ptr(), 1, &mut l), ModlatStatus::InvalidInput);
        let json = CString::new(r#"{"names": ["0"], "covers": []}"#).unwrap();
        assert_eq!(modlat_lattice_from_json(json.as_ptr(), &mut l), ModlatStatus::Ok);
        assert!(last_error().is_empty());
        modlat_lattice_free(l);
        modlat_string_free(ptr::null_mut());
        modlat_lattice_free(ptr::null_mut());
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(modlat_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_is_valid_c() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/modlat.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for f in ["modlat_lattice_from_json", "modlat_pls_rstar", "modlat_last_error", "MODLAT_STATUS_NOT_MODULAR"] {
        assert!(text.contains(f), "{f} missing from header");
    }
    let Ok(status) = Command::new("cc")
        .args(["-std=c99", "-fsyntax-only", "-x", "c"])
        .arg(&header)
        .status()
    else {
        return;
    };
    assert!(status.success());
}
