//! C ABI for loopclass. Objects are opaque heap handles released by their
//! `_free` function; strings returned to the caller are released with
//! `lc_string_free`. Every fallible call returns an `LcStatus` and records a
//! message retrievable with `lc_last_error`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::ptr;
use std::slice;

use loopclass::azumaya::{brussel_normal_form, parse_tuple, BrusselForm, MumfordDatum};
use loopclass::catalog::SimpleType;
use loopclass::nullity2::{classify_k, classify_r2};
use loopclass::Error;

/// Result codes of the C API.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    NotGenerating = 4,
    Unsupported = 5,
    Invariant = 6,
    Panic = 7,
}

/// A Mumford subgroup `H(s_1, ..., s_l)` with its commutator pairing.
pub struct LcMumford(MumfordDatum);

/// A normal form `A(r_1, s_1, 1, s_2, ...)`.
pub struct LcBrusselForm(BrusselForm);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn status_of(e: &Error) -> LcStatus {
    match e {
        Error::NotGenerating => LcStatus::NotGenerating,
        Error::Invariant(_) => LcStatus::Invariant,
        Error::Infinite | Error::DegreeOutOfRange { .. } => LcStatus::Unsupported,
        _ => LcStatus::InvalidInput,
    }
}

fn fail(e: Error) -> LcStatus {
    set_error(e.to_string());
    status_of(&e)
}

/// Runs `f`, converting panics into `LcStatus::Panic`.
fn guard(f: impl FnOnce() -> LcStatus) -> LcStatus {
    match std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            LcStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, LcStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(LcStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        LcStatus::InvalidUtf8
    })
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

/// Message of the most recent failure on this thread, or NULL. The caller
/// owns the returned string.
#[no_mangle]
pub extern "C" fn lc_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |s| s.clone().into_raw()))
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn lc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn lc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds `H(chain)` from a divisor chain of length `len`.
///
/// # Safety
/// `chain` must point to `len` readable integers and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_mumford_new(chain: *const i64, len: usize, out: *mut *mut LcMumford) -> LcStatus {
    guard(|| {
        if chain.is_null() || out.is_null() {
            set_error("null argument");
            return LcStatus::NullPointer;
        }
        match MumfordDatum::new(slice::from_raw_parts(chain, len)) {
            Ok(d) => {
                *out = Box::into_raw(Box::new(LcMumford(d)));
                LcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `h` must be NULL or a live handle from `lc_mumford_new`.
#[no_mangle]
pub unsafe extern "C" fn lc_mumford_free(h: *mut LcMumford) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Degree `d = prod s_j` of the irreducible representation; 0 for NULL.
///
/// # Safety
/// `h` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lc_mumford_degree(h: *const LcMumford) -> i64 {
    h.as_ref().map_or(0, |h| h.0.degree())
}

/// Commutator pairing of two elements given as `2l` coordinates on
/// `a_1, b_1, ..., a_l, b_l`, written as the reduced fraction `num / den`
/// in `[0, 1)`.
///
/// # Safety
/// `x` and `y` must point to `len` integers; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lc_mumford_pairing(
    h: *const LcMumford,
    x: *const i64,
    y: *const i64,
    len: usize,
    num: *mut i64,
    den: *mut i64,
) -> LcStatus {
    guard(|| {
        let Some(h) = h.as_ref() else {
            set_error("null handle");
            return LcStatus::NullPointer;
        };
        if x.is_null() || y.is_null() || num.is_null() || den.is_null() {
            set_error("null argument");
            return LcStatus::NullPointer;
        }
        match h.0.pairing(slice::from_raw_parts(x, len), slice::from_raw_parts(y, len)) {
            Ok(p) => {
                *num = p.numer();
                *den = p.denom();
                LcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Normal form of the cocycle sending `t_i` to the i-th entry of `tuple`,
/// written as semicolon-separated words such as `"a;3b"` or `"a1;b1;a2;b2"`.
///
/// # Safety
/// `h` must be a live handle, `tuple` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lc_brussel_normal_form(
    h: *const LcMumford,
    tuple: *const c_char,
    out: *mut *mut LcBrusselForm,
) -> LcStatus {
    guard(|| {
        let Some(h) = h.as_ref() else {
            set_error("null handle");
            return LcStatus::NullPointer;
        };
        if out.is_null() {
            set_error("null output pointer");
            return LcStatus::NullPointer;
        }
        let text = match read_str(tuple) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let result = parse_tuple(text, h.0.blocks()).and_then(|t| brussel_normal_form(&h.0, &t));
        match result {
            Ok(f) => {
                *out = Box::into_raw(Box::new(LcBrusselForm(f)));
                LcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// # Safety
/// `f` must be NULL or a live handle from `lc_brussel_normal_form`.
#[no_mangle]
pub unsafe extern "C" fn lc_brussel_form_free(f: *mut LcBrusselForm) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// The sign-normalized twist `r_1`; 0 for NULL.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lc_brussel_form_r1(f: *const LcBrusselForm) -> i64 {
    f.as_ref().map_or(0, |f| f.0.r1)
}

/// Label such as `A(2,5)`; NULL for NULL. The caller owns the string.
///
/// # Safety
/// `f` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lc_brussel_form_label(f: *const LcBrusselForm) -> *mut c_char {
    f.as_ref().map_or(ptr::null_mut(), |f| into_c_string(f.0.to_string()))
}

/// Number of nullity-2 loop forms of the given type (e.g. `"D4"`), over
/// the Laurent polynomial ring when `over_base_field` is 0 and up to
/// base change when it is nonzero.
///
/// # Safety
/// `type_name` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lc_nullity2_count(type_name: *const c_char, over_base_field: c_int, out: *mut usize) -> LcStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return LcStatus::NullPointer;
        }
        let name = match read_str(type_name) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let count = name.parse::<SimpleType>().and_then(|t| {
            if over_base_field != 0 {
                classify_k(t).map(|c| c.len())
            } else {
                classify_r2(t).map(|c| c.len())
            }
        });
        match count {
            Ok(n) => {
                *out = n;
                LcStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Runs a command-line invocation in process (`argv` excludes the program
/// name) and returns its exit status. Standard output and error are
/// returned as owned strings when the corresponding pointer is non-NULL.
///
/// # Safety
/// `argv` must point to `argc` NUL-terminated strings.
#[no_mangle]
pub unsafe extern "C" fn lc_run(
    argv: *const *const c_char,
    argc: usize,
    out_stdout: *mut *mut c_char,
    out_stderr: *mut *mut c_char,
) -> c_int {
    let mut args = vec!["loopclass".to_string()];
    if argc > 0 {
        if argv.is_null() {
            set_error("null argv");
            return 2;
        }
        for &p in slice::from_raw_parts(argv, argc) {
            match read_str(p) {
                Ok(s) => args.push(s.to_string()),
                Err(_) => return 2,
            }
        }
    }
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| {
        loopclass::cli::run(&args, &mut stdout, &mut stderr)
    }))
    .unwrap_or(3);
    if !out_stdout.is_null() {
        *out_stdout = into_c_string(String::from_utf8_lossy(&stdout).into_owned());
    }
    if !out_stderr.is_null() {
        *out_stderr = into_c_string(String::from_utf8_lossy(&stderr).into_owned());
    }
    code
}
