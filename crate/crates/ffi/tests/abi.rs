use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use multhopf_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { mh_string_free(s) };
    out
}

#[test]
fn instance_round_trip() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { mh_instance_new(c("dual(K(Z3))").as_ptr(), &mut h) }, MhStatus::Ok);
    let mut dim = 0usize;
    assert_eq!(unsafe { mh_instance_dim(h, &mut dim) }, MhStatus::Ok);
    assert_eq!(dim, 3);
    assert!(take(unsafe { mh_instance_id(h) }).contains("Z3"));

    let mut r = ptr::null_mut();
    assert_eq!(unsafe { mh_instance_verify_axioms(h, 5, &mut r) }, MhStatus::Ok);
    assert!(unsafe { mh_report_all_passed(r) });
    assert_eq!(unsafe { mh_report_failures(r) }, 0);
    let lines = take(unsafe { mh_report_json(r) });
    assert_eq!(lines.lines().count(), unsafe { mh_report_len(r) });
    unsafe {
        mh_report_free(r);
        mh_instance_free(h);
    }
}

#[test]
fn countable_dimension_is_an_error_code() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { mh_instance_new(c("C[Z]").as_ptr(), &mut h) }, MhStatus::Ok);
    let mut dim = 0usize;
    assert_eq!(unsafe { mh_instance_dim(h, &mut dim) }, MhStatus::InfiniteDimensional);
    let msg = unsafe { CStr::from_ptr(mh_last_error()) }.to_str().unwrap();
    assert!(msg.starts_with("InfiniteDimensional"), "{}", msg);
    unsafe { mh_instance_free(h) };
}

#[test]
fn errors_map_to_codes() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { mh_instance_new(c("K(Q8)").as_ptr(), &mut h) }, MhStatus::UnknownInstance);
    assert!(h.is_null());
    assert!(!mh_last_error().is_null());
    assert_eq!(unsafe { mh_instance_new(ptr::null(), &mut h) }, MhStatus::NullPointer);

    let mut r = ptr::null_mut();
    let status = unsafe { mh_run_suite(c("everything").as_ptr(), ptr::null(), ptr::null(), 5, 0, &mut r) };
    assert_eq!(status, MhStatus::MalformedSpec);
    let bad_utf8 = [0xffu8, 0];
    let status = unsafe { mh_instance_new(bad_utf8.as_ptr().cast(), &mut h) };
    assert_eq!(status, MhStatus::InvalidUtf8);
}

#[test]
fn success_clears_last_error() {
    let mut h = ptr::null_mut();
    unsafe { mh_instance_new(c("nope").as_ptr(), &mut h) };
    assert!(!mh_last_error().is_null());
    assert_eq!(unsafe { mh_instance_new(c("K(Z2)").as_ptr(), &mut h) }, MhStatus::Ok);
    assert!(mh_last_error().is_null());
    unsafe { mh_instance_free(h) };
}

#[test]
fn suite_through_the_boundary() {
    let mut r = ptr::null_mut();
    let status = unsafe { mh_run_suite(c("pairing").as_ptr(), ptr::null(), c("Z2").as_ptr(), 5, 0, &mut r) };
    assert_eq!(status, MhStatus::Ok);
    assert!(unsafe { mh_report_len(r) } > 0);
    assert!(unsafe { mh_report_all_passed(r) });
    unsafe { mh_report_free(r) };
}

#[test]
fn null_handles_are_tolerated() {
    unsafe {
        mh_instance_free(ptr::null_mut());
        mh_report_free(ptr::null_mut());
        mh_string_free(ptr::null_mut());
        assert_eq!(mh_report_len(ptr::null()), 0);
        assert!(!mh_report_all_passed(ptr::null()));
        assert!(mh_report_json(ptr::null()).is_null());
    }
}

#[test]
fn header_declares_the_abi() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/multhopf.h")).unwrap();
    for sym in [
        "typedef struct MhInstance MhInstance;",
        "typedef struct MhReport MhReport;",
        "MH_STATUS_UNKNOWN_INSTANCE = 28",
        "mh_instance_new(",
        "mh_run_suite(",
        "mh_report_json(",
        "mh_string_free(",
        "mh_last_error(",
    ] {
        assert!(header.contains(sym), "header lacks {}", sym);
    }
}

/// Compiles the C smoke program against the generated header and the static
/// library produced for this build.
#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let profile_dir = tmp.parent().unwrap().join(if cfg!(debug_assertions) { "debug" } else { "release" });
    let lib = profile_dir.join("libmulthopf_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let exe = tmp.join("multhopf_smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success());
    let out = Command::new(&exe).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("ok "));
}
