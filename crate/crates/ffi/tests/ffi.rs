use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use loopclass_ffi::*;

unsafe fn take(s: *mut std::ffi::c_char) -> String {
    assert!(!s.is_null());
    let out = CStr::from_ptr(s).to_str().unwrap().to_string();
    lc_string_free(s);
    out
}

#[test]
fn brussel_round_trip() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(lc_mumford_new([5i64].as_ptr(), 1, &mut h), LcStatus::Ok);
        assert_eq!(lc_mumford_degree(h), 5);
        let (mut num, mut den) = (0, 0);
        assert_eq!(lc_mumford_pairing(h, [1, 0].as_ptr(), [0, 3].as_ptr(), 2, &mut num, &mut den), LcStatus::Ok);
        assert_eq!((num, den), (3, 5));

        let tuple = CString::new("a;3b").unwrap();
        let mut f = ptr::null_mut();
        assert_eq!(lc_brussel_normal_form(h, tuple.as_ptr(), &mut f), LcStatus::Ok);
        assert_eq!(lc_brussel_form_r1(f), 2);
        assert_eq!(take(lc_brussel_form_label(f)), "A(2,5)");
        lc_brussel_form_free(f);

        let bad = CString::new("a;2a").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(lc_brussel_normal_form(h, bad.as_ptr(), &mut g), LcStatus::NotGenerating);
        assert!(g.is_null());
        assert!(!take(lc_last_error()).is_empty());
        lc_mumford_free(h);
    }
}

#[test]
fn errors_and_nulls() {
    unsafe {
        let mut h = ptr::null_mut();
        assert_eq!(lc_mumford_new([2i64, 3].as_ptr(), 2, &mut h), LcStatus::InvalidInput);
        assert!(take(lc_last_error()).contains("chain"));
        assert_eq!(lc_mumford_new(ptr::null(), 0, &mut h), LcStatus::NullPointer);
        assert_eq!(lc_mumford_degree(ptr::null()), 0);
        assert!(lc_brussel_form_label(ptr::null()).is_null());
        lc_mumford_free(ptr::null_mut());
        lc_brussel_form_free(ptr::null_mut());
        lc_string_free(ptr::null_mut());
        let mut n = 0usize;
        let bad = CString::new("E9").unwrap();
        assert_eq!(lc_nullity2_count(bad.as_ptr(), 0, &mut n), LcStatus::InvalidInput);
        assert_eq!(lc_nullity2_count(ptr::null(), 0, &mut n), LcStatus::NullPointer);
    }
}

#[test]
fn counts_and_commands() {
    unsafe {
        let d4 = CString::new("D4").unwrap();
        let mut n = 0usize;
        assert_eq!(lc_nullity2_count(d4.as_ptr(), 0, &mut n), LcStatus::Ok);
        assert_eq!(n, 12);
        assert_eq!(lc_nullity2_count(d4.as_ptr(), 1, &mut n), LcStatus::Ok);
        assert_eq!(n, 5);

        let args: Vec<CString> = ["quadforms", "--dim", "2", "-n", "1", "--count"].iter().map(|s| CString::new(*s).unwrap()).collect();
        let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
        let (mut out, mut err) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(lc_run(ptrs.as_ptr(), ptrs.len(), &mut out, &mut err), 0);
        assert_eq!(take(out).lines().nth(1), Some("2\t1\ttrue"));
        assert_eq!(take(err), "");

        let bogus = CString::new("frobnicate").unwrap();
        assert_eq!(lc_run([bogus.as_ptr()].as_ptr(), 1, ptr::null_mut(), ptr::null_mut()), 2);
        assert!(!CStr::from_ptr(lc_version()).to_str().unwrap().is_empty());
    }
}

/// Compiles and runs a small C program against the generated header and
/// the static library, when a C compiler is available.
#[test]
fn c_program_links_and_runs() {
    let Ok(cc) = Command::new("cc").arg("--version").output() else { return };
    if !cc.status.success() {
        return;
    }
    let crate_dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let profile_dir = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let lib = profile_dir.join("libloopclass_ffi.a");
    if !lib.exists() {
        return;
    }
    let tmp = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let src = tmp.join("smoke.c");
    let exe = tmp.join("smoke");
    std::fs::write(
        &src,
        r#"#include <stdio.h>
#include <string.h>
#include "loopclass.h"
int main(void) {
    int64_t chain[1] = {5};
    LcMumford *h = NULL;
    if (lc_mumford_new(chain, 1, &h) != LC_STATUS_OK) return 1;
    LcBrusselForm *f = NULL;
    if (lc_brussel_normal_form(h, "2a;b", &f) != LC_STATUS_OK) return 2;
    char *label = lc_brussel_form_label(f);
    int ok = strcmp(label, "A(2,5)") == 0;
    printf("%s\n", label);
    lc_string_free(label);
    lc_brussel_form_free(f);
    lc_mumford_free(h);
    return ok ? 0 : 3;
}
"#,
    )
    .unwrap();
    let status = Command::new("cc")
        .arg(&src)
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");
    let run = Command::new(&exe).output().unwrap();
    assert_eq!(run.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&run.stdout).trim(), "A(2,5)");
}
