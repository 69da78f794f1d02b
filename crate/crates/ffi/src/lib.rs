//! C ABI for `purebraid`.
//!
//! Words cross the boundary as opaque `PbWord` handles. Every function returns
//! a `PbStatus`; on failure `pb_last_error` describes the problem. Strings
//! returned through out-parameters are owned by the caller and must be released
//! with `pb_string_free`, handles with `pb_word_free`. Panics are caught and
//! reported as `PB_STATUS_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use purebraid::braid::{self, BraidWord, PureBraidWord};
use purebraid::cli::checks::{run_checks, RunOptions};
use purebraid::cli::parse::{parse_alphabet, parse_word};
use purebraid::hom::f_subset;
use purebraid::linalg::{rat, RatVector};
use purebraid::os::OsAlgebra2;
use purebraid::{Alphabet, ReducedWord};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    AlphabetMismatch = 4,
    InvalidArgument = 5,
    Compute = 6,
    Panic = 7,
}

/// A freely reduced word together with its alphabet.
pub struct PbWord {
    word: ReducedWord,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: impl Into<String>) {
    let text = message.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).expect("no interior nul"));
}

struct Failure(PbStatus, String);

impl Failure {
    fn new(status: PbStatus, message: impl ToString) -> Self {
        Failure(status, message.to_string())
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> PbStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => PbStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            PbStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(PbStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure::new(PbStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn read_word<'a>(p: *const PbWord, what: &str) -> Result<&'a ReducedWord, Failure> {
    p.as_ref()
        .map(|w| &w.word)
        .ok_or_else(|| Failure::new(PbStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(PbStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

// the out-pointer is checked before allocating so nothing leaks on a null
unsafe fn write_handle(out: *mut *mut PbWord, word: ReducedWord) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(PbStatus::NullPointer, "output pointer is null"));
    }
    out.write(Box::into_raw(Box::new(PbWord { word })));
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, text: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(PbStatus::NullPointer, "output pointer is null"));
    }
    out.write(CString::new(text).expect("no interior nul").into_raw());
    Ok(())
}

/// Message for the most recent failure on this thread; empty after a success.
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn pb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses `text` over `alphabet` (`free:K`, `sigma:N` or `pure:N`).
///
/// # Safety
/// `text` and `alphabet` must be nul-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_word_parse(
    text: *const c_char,
    alphabet: *const c_char,
    out: *mut *mut PbWord,
) -> PbStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let alphabet = parse_alphabet(read_str(alphabet, "alphabet")?).map_err(|e| Failure::new(PbStatus::Parse, e))?;
        let word = parse_word(text, alphabet).map_err(|e| Failure::new(PbStatus::Parse, e.diagnostic(text)))?;
        write_handle(out, word)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `word` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pb_word_free(word: *mut PbWord) {
    if !word.is_null() {
        drop(Box::from_raw(word));
    }
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Writes the word in the textual syntax accepted by `pb_word_parse`
/// (the identity prints as `1`).
///
/// # Safety
/// `word` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_word_to_string(word: *const PbWord, out: *mut *mut c_char) -> PbStatus {
    guard(|| {
        let w = read_word(word, "word")?;
        write_string(out, w.to_string())
    })
}

/// Number of letters of the reduced word.
///
/// # Safety
/// `word` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_word_length(word: *const PbWord, out: *mut usize) -> PbStatus {
    guard(|| write_out(out, read_word(word, "word")?.len()))
}

/// `a · b`. Both words must share an alphabet.
///
/// # Safety
/// `a` and `b` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_word_multiply(a: *const PbWord, b: *const PbWord, out: *mut *mut PbWord) -> PbStatus {
    guard(|| {
        let product = read_word(a, "a")?
            .multiply(read_word(b, "b")?)
            .map_err(|e| Failure::new(PbStatus::AlphabetMismatch, e))?;
        write_handle(out, product)
    })
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_word_invert(a: *const PbWord, out: *mut *mut PbWord) -> PbStatus {
    guard(|| write_handle(out, read_word(a, "a")?.invert()))
}

/// Decides whether a σ-word or an A-word is the trivial braid.
///
/// # Safety
/// `word` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_braid_is_identity(word: *const PbWord, out: *mut bool) -> PbStatus {
    guard(|| {
        let w = read_word(word, "word")?;
        let compute = |e: braid::BraidError| Failure::new(PbStatus::Compute, e);
        let trivial = match w.alphabet() {
            Alphabet::Sigma(n) => braid::is_identity(&BraidWord::new(n, w.clone()).map_err(compute)?),
            Alphabet::Pure(n) => braid::is_identity_pure(&PureBraidWord::new(n, w.clone()).map_err(compute)?),
            other => {
                return Err(Failure::new(
                    PbStatus::AlphabetMismatch,
                    format!("expected a braid alphabet, got {other}"),
                ))
            }
        }
        .map_err(compute)?;
        write_out(out, trivial)
    })
}

/// Applies `f_I: P_n → F_2` to an A-word over `pure:n`.
///
/// # Safety
/// `subset` must point to `subset_len` readable values; `word` must be a live
/// handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_apply_f(
    n: usize,
    subset: *const usize,
    subset_len: usize,
    word: *const PbWord,
    out: *mut *mut PbWord,
) -> PbStatus {
    guard(|| {
        if subset.is_null() {
            return Err(Failure::new(PbStatus::NullPointer, "subset is null"));
        }
        let subset = std::slice::from_raw_parts(subset, subset_len);
        let w = read_word(word, "word")?;
        if w.alphabet() != Alphabet::Pure(n) {
            return Err(Failure::new(
                PbStatus::AlphabetMismatch,
                format!("expected pure:{n}, got {}", w.alphabet()),
            ));
        }
        let f = f_subset(n, subset).map_err(|e| Failure::new(PbStatus::InvalidArgument, e))?;
        let image = f.apply(w).map_err(|e| Failure::new(PbStatus::Compute, e))?;
        write_handle(out, image)
    })
}

/// Whether the degree-one element with integer coordinates `coefficients`
/// (order `a_12, a_13, …`) lies in the first resonance variety of `P_n`.
///
/// # Safety
/// `coefficients` must point to `len` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_in_r1(n: usize, coefficients: *const i64, len: usize, out: *mut bool) -> PbStatus {
    guard(|| {
        if !(2..=10).contains(&n) {
            return Err(Failure::new(PbStatus::InvalidArgument, format!("n = {n} out of range 2..=10")));
        }
        if coefficients.is_null() && len > 0 {
            return Err(Failure::new(PbStatus::NullPointer, "coefficients is null"));
        }
        let raw = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(coefficients, len)
        };
        let a: RatVector = raw.iter().map(|&c| rat(c)).collect();
        let member = OsAlgebra2::build(n)
            .in_r1(&a)
            .map_err(|e| Failure::new(PbStatus::InvalidArgument, e))?;
        write_out(out, member)
    })
}

/// Runs the verification checks matching `filter` (all when null) and writes the
/// JSON report. `failed` receives the number of failing checks.
///
/// # Safety
/// `filter` must be null or a nul-terminated string; `json` and `failed` must be writable.
#[no_mangle]
pub unsafe extern "C" fn pb_run_checks(
    filter: *const c_char,
    n_max: usize,
    seed: u64,
    json: *mut *mut c_char,
    failed: *mut usize,
) -> PbStatus {
    guard(|| {
        let filter = if filter.is_null() {
            None
        } else {
            Some(read_str(filter, "filter")?)
        };
        if json.is_null() || failed.is_null() {
            return Err(Failure::new(PbStatus::NullPointer, "output pointer is null"));
        }
        let options = RunOptions {
            n_max,
            seed,
            timings: false,
        };
        let report = run_checks(filter, options).map_err(|e| Failure::new(PbStatus::InvalidArgument, e))?;
        write_out(failed, report.failed())?;
        write_string(json, report.to_json())
    })
}
