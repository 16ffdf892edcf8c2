use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use sphvar_ffi::*;

fn from_catalog(key: &str) -> *mut SphvarDatum {
    let k = CString::new(key).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { sphvar_datum_from_catalog(k.as_ptr(), &mut d) }, SphvarStatus::Ok);
    assert!(!d.is_null());
    d
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sphvar_last_error()) }.to_str().unwrap().to_string()
}

fn check(d: *const SphvarDatum, which: SphvarCheck) -> (SphvarStatus, bool) {
    let mut v = false;
    let s = unsafe { sphvar_check(d, which, &mut v) };
    (s, v)
}

#[test]
fn datum_lifecycle_and_checks() {
    let d = from_catalog("u-sl3");
    let mut r = 0usize;
    assert_eq!(unsafe { sphvar_datum_rank(d, &mut r) }, SphvarStatus::Ok);
    assert_eq!(r, 2);
    assert_eq!(check(d, SphvarCheck::Wavefront), (SphvarStatus::Ok, true));
    assert_eq!(check(d, SphvarCheck::Induced), (SphvarStatus::Ok, true));
    assert_eq!(check(d, SphvarCheck::Affine).0, SphvarStatus::Ok);
    unsafe { sphvar_datum_free(d) };

    let d = from_catalog("a1-gl1");
    assert_eq!(check(d, SphvarCheck::Induced), (SphvarStatus::Ok, false));
    assert_eq!(last_error(), "");
    unsafe { sphvar_datum_free(d) };
    unsafe { sphvar_datum_free(ptr::null_mut()) };
}

#[test]
fn datum_from_json_matches_catalog() {
    let src = CString::new(sphvar::catalog::source("pp-gl3-21").unwrap()).unwrap();
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { sphvar_datum_from_json(src.as_ptr(), &mut d) }, SphvarStatus::Ok);
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sphvar_basic_function_json(d, 2, 1, &mut out) }, SphvarStatus::Ok);
    let text = unsafe { CStr::from_ptr(out) }.to_str().unwrap().to_string();
    unsafe { sphvar_string_free(out) };
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema"], 1);
    let rows = v["rows"].as_array().unwrap();
    assert!(rows.iter().any(|r| r["lambda"] == serde_json::json!([-1, 1]) && r["value"] == "1"));
    assert_eq!(unsafe { sphvar_basic_function_json(d, 2, 0, &mut out) }, SphvarStatus::Input);
    assert!(out.is_null());
    unsafe { sphvar_datum_free(d) };
}

#[test]
fn error_codes() {
    let mut d = ptr::null_mut();
    assert_eq!(unsafe { sphvar_datum_from_json(ptr::null(), &mut d) }, SphvarStatus::NullPointer);
    let bad = CString::new("{\"schema\": 1}").unwrap();
    assert_eq!(unsafe { sphvar_datum_from_json(bad.as_ptr(), &mut d) }, SphvarStatus::Input);
    assert!(d.is_null());
    assert!(!last_error().is_empty());
    let invalid = [0xffu8, 0xfe, 0];
    assert_eq!(unsafe { sphvar_datum_from_catalog(invalid.as_ptr().cast(), &mut d) }, SphvarStatus::InvalidUtf8);
    let nokey = CString::new("no-such-key").unwrap();
    assert_eq!(unsafe { sphvar_datum_from_catalog(nokey.as_ptr(), &mut d) }, SphvarStatus::Input);
    assert_eq!(check(ptr::null(), SphvarCheck::Wavefront).0, SphvarStatus::NullPointer);
    let t = from_catalog("tensor-4");
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { sphvar_basic_function_json(t, 2, 1, &mut out) }, SphvarStatus::Input);
    unsafe { sphvar_datum_free(t) };
}

fn header() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include/sphvar.h")
}

#[test]
fn header_declares_the_api() {
    let h = std::fs::read_to_string(header()).unwrap();
    for name in [
        "sphvar_last_error",
        "sphvar_datum_from_json",
        "sphvar_datum_from_catalog",
        "sphvar_datum_free",
        "sphvar_datum_rank",
        "sphvar_check",
        "sphvar_basic_function_json",
        "sphvar_string_free",
        "SPHVAR_STATUS_MATH",
        "typedef struct SphvarDatum SphvarDatum",
    ] {
        assert!(h.contains(name), "{name}");
    }
}

/// Builds and runs a C program against the static library when a C compiler
/// and the archive are present.
#[test]
fn c_program_links_and_runs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let target = std::env::var_os("CARGO_TARGET_DIR").map(PathBuf::from).unwrap_or_else(|| dir.join("../../target"));
    let lib = target.join("debug/libsphvar_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler or {}", lib.display());
        return;
    }
    let exe = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("sphvar_smoke");
    let st = Command::new("cc")
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(st.success());
    let out = Command::new(&exe).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
