use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qcell_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

#[test]
fn analyze_g2_round_trip() {
    let ty = cstr("G2");
    let j = [1u32];
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(qcell_analyze(ty.as_ptr(), j.as_ptr(), 1, &mut r), QcellStatus::Ok);
        assert!(!r.is_null());
        let mut c = QcellConclusion::Partial;
        assert_eq!(qcell_report_conclusion(r, &mut c), QcellStatus::Ok);
        assert_eq!(c, QcellConclusion::DiagonalOnDegreeOne);
        let (mut ones, mut sep) = (0, 0);
        assert_eq!(qcell_report_separation(r, &mut ones, &mut sep), QcellStatus::Ok);
        assert_eq!((ones, sep), (2, 2));
        let mut s = ptr::null_mut();
        assert_eq!(qcell_report_json(r, &mut s), QcellStatus::Ok);
        let json: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        assert_eq!(json["type"], "G2");
        assert_eq!(json["theta_degrees"], serde_json::json!([4, 6]));
        qcell_string_free(s);
        let mut d = ptr::null_mut();
        assert_eq!(qcell_report_descriptor(r, &mut d), QcellStatus::Ok);
        assert_eq!(CStr::from_ptr(d).to_str().unwrap(), "(K^×)^2");
        qcell_string_free(d);
        qcell_report_free(r);
    }
}

#[test]
fn errors_are_reported() {
    let j = [1u32];
    let mut r = ptr::null_mut();
    unsafe {
        assert_eq!(qcell_analyze(ptr::null(), j.as_ptr(), 1, &mut r), QcellStatus::NullPointer);
        assert!(!qcell_last_error().is_null());
        let bad = cstr("Z4");
        assert_eq!(qcell_analyze(bad.as_ptr(), j.as_ptr(), 1, &mut r), QcellStatus::InvalidArgument);
        assert!(r.is_null());
        let msg = CStr::from_ptr(qcell_last_error()).to_str().unwrap();
        assert!(msg.contains("Z4"), "{msg}");
        let ty = cstr("A3");
        let j = [7u32];
        assert_eq!(qcell_analyze(ty.as_ptr(), j.as_ptr(), 1, &mut r), QcellStatus::ComputationFailed);
        assert_eq!(qcell_report_conclusion(ptr::null(), ptr::null_mut()), QcellStatus::NullPointer);
        qcell_report_free(ptr::null_mut());
        qcell_string_free(ptr::null_mut());
    }
}

#[test]
fn theta_degrees_buffer() {
    let ty = cstr("B6");
    let j = [2u32, 5];
    let mut buf = [0i64; 6];
    let mut len = 0;
    unsafe {
        assert_eq!(qcell_theta_degrees(ty.as_ptr(), j.as_ptr(), 2, buf.as_mut_ptr(), 3, &mut len), QcellStatus::BufferTooSmall);
        assert_eq!(len, 6);
        assert_eq!(qcell_theta_degrees(ty.as_ptr(), j.as_ptr(), 2, buf.as_mut_ptr(), 6, &mut len), QcellStatus::Ok);
    }
    assert_eq!(buf, [4, 8, 10, 12, 14, 7]);
}

#[test]
fn enumerate_rank_two() {
    let mut s = ptr::null_mut();
    unsafe {
        assert_eq!(qcell_enumerate_json(2, &mut s), QcellStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(CStr::from_ptr(s).to_str().unwrap()).unwrap();
        qcell_string_free(s);
        let cases: Vec<String> = v["cases"].as_array().unwrap().iter().map(|c| format!("{}{:?}", c["type"].as_str().unwrap(), c["j"].as_array().unwrap())).collect();
        assert!(cases.contains(&"G2[Number(1)]".to_string()), "{cases:?}");
        assert!(v["missing"].as_array().unwrap().is_empty());
        assert_eq!(qcell_enumerate_json(1, &mut s), QcellStatus::InvalidArgument);
    }
}

#[test]
fn version_is_static() {
    let v = unsafe { CStr::from_ptr(qcell_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn header_declares_api() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/qcell.h")).unwrap();
    for f in ["qcell_analyze", "qcell_report_free", "qcell_theta_degrees", "qcell_last_error", "typedef struct QcellReport QcellReport"] {
        assert!(h.contains(f), "{f} missing from header");
    }
}

/// Compile and run the C smoke program against the static library, when a C compiler is present.
#[test]
fn c_program_links() {
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libqcell_ffi.a");
    if !lib.exists() || Command::new("cc").arg("--version").output().is_err() {
        eprintln!("skipping: static library or cc unavailable");
        return;
    }
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let out = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("qcell_smoke");
    let status = Command::new("cc")
        .arg(manifest.join("tests/c/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&out).output().unwrap();
    assert!(run.status.success(), "exit {:?}", run.status);
    let stdout = String::from_utf8(run.stdout).unwrap();
    assert_eq!(stdout, "(K^×)^2\n4 8 10 12 14 7 \n");
}
