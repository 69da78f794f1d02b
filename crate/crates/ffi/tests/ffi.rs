use std::ffi::{c_char, CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use purebraid_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(pb_last_error()) }.to_string_lossy().into_owned()
}

fn parse(text: &str, alphabet: &str) -> *mut PbWord {
    let mut out = ptr::null_mut();
    let status = unsafe { pb_word_parse(c(text).as_ptr(), c(alphabet).as_ptr(), &mut out) };
    assert_eq!(status, PbStatus::Ok, "{}", last_error());
    out
}

fn render(w: *const PbWord) -> String {
    let mut s: *mut c_char = ptr::null_mut();
    assert_eq!(unsafe { pb_word_to_string(w, &mut s) }, PbStatus::Ok);
    let text = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { pb_string_free(s) };
    text
}

#[test]
fn word_arithmetic() {
    let x = parse("x y", "free:2");
    let y = parse("y^-1 x", "free:2");
    let mut product = ptr::null_mut();
    assert_eq!(unsafe { pb_word_multiply(x, y, &mut product) }, PbStatus::Ok);
    assert_eq!(render(product), "x^2");
    let mut len = 0;
    assert_eq!(unsafe { pb_word_length(product, &mut len) }, PbStatus::Ok);
    assert_eq!(len, 2);
    let mut inverse = ptr::null_mut();
    assert_eq!(unsafe { pb_word_invert(x, &mut inverse) }, PbStatus::Ok);
    assert_eq!(render(inverse), "y^-1 x^-1");
    unsafe {
        pb_word_free(x);
        pb_word_free(y);
        pb_word_free(product);
        pb_word_free(inverse);
    }
}

#[test]
fn error_codes() {
    let mut out = ptr::null_mut();
    let status = unsafe { pb_word_parse(c("x z").as_ptr(), c("free:2").as_ptr(), &mut out) };
    assert_eq!(status, PbStatus::Parse);
    assert!(out.is_null());
    assert!(last_error().contains("unknown generator"));

    assert_eq!(unsafe { pb_word_parse(ptr::null(), c("free:2").as_ptr(), &mut out) }, PbStatus::NullPointer);
    let bytes = [0xffu8, 0];
    let status = unsafe { pb_word_parse(bytes.as_ptr().cast(), c("free:2").as_ptr(), &mut out) };
    assert_eq!(status, PbStatus::InvalidUtf8);

    let free = parse("x", "free:2");
    let sigma = parse("s1", "sigma:3");
    assert_eq!(unsafe { pb_word_multiply(free, sigma, &mut out) }, PbStatus::AlphabetMismatch);
    let mut flag = false;
    assert_eq!(unsafe { pb_braid_is_identity(free, &mut flag) }, PbStatus::AlphabetMismatch);
    assert_eq!(unsafe { pb_word_invert(free, ptr::null_mut()) }, PbStatus::NullPointer);

    // success clears the message
    assert_eq!(unsafe { pb_braid_is_identity(sigma, &mut flag) }, PbStatus::Ok);
    assert_eq!(last_error(), "");
    unsafe {
        pb_word_free(free);
        pb_word_free(sigma);
        pb_word_free(ptr::null_mut());
        pb_string_free(ptr::null_mut());
    }
}

#[test]
fn braids_and_maps() {
    let relator = parse("s1 s2 s1 s2^-1 s1^-1 s2^-1", "sigma:3");
    let mut trivial = false;
    assert_eq!(unsafe { pb_braid_is_identity(relator, &mut trivial) }, PbStatus::Ok);
    assert!(trivial);

    let a = parse("A[1,2] A[2,3]", "pure:4");
    let subset = [1usize, 2, 3];
    let mut image = ptr::null_mut();
    assert_eq!(unsafe { pb_apply_f(4, subset.as_ptr(), 3, a, &mut image) }, PbStatus::Ok);
    assert_eq!(render(image), "x y^-1 x^-1");

    let bad = [1usize, 2];
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { pb_apply_f(4, bad.as_ptr(), 2, a, &mut out) }, PbStatus::InvalidArgument);
    assert_eq!(unsafe { pb_apply_f(5, subset.as_ptr(), 3, a, &mut out) }, PbStatus::AlphabetMismatch);
    unsafe {
        pb_word_free(relator);
        pb_word_free(a);
        pb_word_free(image);
    }
}

#[test]
fn resonance_and_checks() {
    let mut member = true;
    let a12 = [1i64, 0, 0, 0, 0, 0];
    assert_eq!(unsafe { pb_in_r1(4, a12.as_ptr(), 6, &mut member) }, PbStatus::Ok);
    assert!(!member);
    assert_eq!(unsafe { pb_in_r1(4, a12.as_ptr(), 3, &mut member) }, PbStatus::InvalidArgument);

    let mut json: *mut c_char = ptr::null_mut();
    let mut failed = usize::MAX;
    let status = unsafe { pb_run_checks(c("tables.*").as_ptr(), 4, 1, &mut json, &mut failed) };
    assert_eq!(status, PbStatus::Ok, "{}", last_error());
    assert_eq!(failed, 0);
    let report: &str = unsafe { CStr::from_ptr(json) }.to_str().unwrap();
    assert!(report.contains("\"tables.xi\""));
    unsafe { pb_string_free(json) };

    let status = unsafe { pb_run_checks(c("nonexistent").as_ptr(), 5, 1, &mut json, &mut failed) };
    assert_eq!(status, PbStatus::InvalidArgument);
}

/// Compiles the C smoke test against the static library and the generated header.
#[test]
fn c_smoke_test() {
    let Ok(cc) = which_cc() else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // tests run from target/<profile>/deps
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libpurebraid_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());
    let exe = profile_dir.join("purebraid_ffi_smoke");
    let status = Command::new(&cc)
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
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), "ok\n");
}

fn which_cc() -> Result<String, ()> {
    for cc in ["cc", "gcc", "clang"] {
        if Command::new(cc).arg("--version").output().is_ok() {
            return Ok(cc.to_string());
        }
    }
    Err(())
}
