//! C ABI for the insdel-lab workbench.
//!
//! Conventions:
//! - Every fallible call returns an [`IldcStatus`]; results come back through
//!   out-pointers.
//! - Codes and channels are opaque handles created by `*_new` constructors
//!   and released by their `*_free` functions.
//! - Bit strings cross the boundary as NUL-terminated ASCII of '0'/'1'.
//!   Strings returned by the library are owned by the caller and must be
//!   released with [`ildc_string_free`].
//! - On any non-OK status, [`ildc_last_error_message`] returns a description
//!   of the most recent failure on the calling thread.

use insdel_lab::bits::{BitWord, PadPolicy};
use insdel_lab::channels::{
    corrupt_with, make_oblivious_spec, DeletionChannel, IidDeletionChannel, LayeredChannel,
    TwoQueryChannel, Type1Channel,
};
use insdel_lab::codes::SpacedHadamardCode;
use insdel_lab::experiments::{self, ExperimentConfig};
use insdel_lab::quadratic::{parse_polynomial, symplectic_rank, zero_probability};
use insdel_lab::rng::seed_rng;
use libc::c_char;
use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::ptr;

/// Status codes returned by every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IldcStatus {
    Ok = 0,
    /// A pointer argument was null or a parameter failed validation.
    InvalidArgument = 1,
    /// Text input (bit string, polynomial, config) failed to parse.
    ParseError = 2,
    /// The request exceeds a brute-force size limit.
    SizeLimit = 3,
    /// Internal failure; see the last error message.
    Internal = 4,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(message: &str) {
    let sanitized = message.replace('\0', " ");
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap_or_default();
    });
}

fn status_of(err: &insdel_lab::Error) -> IldcStatus {
    set_error(&err.to_string());
    match err {
        insdel_lab::Error::Parse(_) => IldcStatus::ParseError,
        insdel_lab::Error::SizeLimit(_) => IldcStatus::SizeLimit,
        _ => IldcStatus::InvalidArgument,
    }
}

fn invalid(message: &str) -> IldcStatus {
    set_error(message);
    IldcStatus::InvalidArgument
}

/// # Safety
/// `ptr` must be null or a valid NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, IldcStatus> {
    if ptr.is_null() {
        return Err(invalid(&format!("{what}: null pointer")));
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error(&format!("{what}: not valid UTF-8"));
        IldcStatus::ParseError
    })
}

unsafe fn read_word(ptr: *const c_char, what: &str) -> Result<BitWord, IldcStatus> {
    let s = read_str(ptr, what)?;
    s.parse::<BitWord>().map_err(|e| {
        set_error(&format!("{what}: {e}"));
        IldcStatus::ParseError
    })
}

fn give_string(out: *mut *mut c_char, value: String) -> IldcStatus {
    match CString::new(value) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            IldcStatus::Ok
        }
        Err(_) => invalid("output contained an interior NUL"),
    }
}

/// Library version as a static string; do not free.
#[no_mangle]
pub extern "C" fn ildc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message describing the most recent failure on this thread. The pointer is
/// valid until the next failing call on the same thread; do not free.
#[no_mangle]
pub extern "C" fn ildc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer previously returned through an out-string of
/// this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ildc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Insertion/deletion edit distance between two bit strings.
///
/// # Safety
/// `a` and `b` must be valid NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ildc_edit_distance(
    a: *const c_char,
    b: *const c_char,
    out: *mut u64,
) -> IldcStatus {
    if out.is_null() {
        return invalid("out: null pointer");
    }
    let wa = match read_word(a, "a") {
        Ok(w) => w,
        Err(s) => return s,
    };
    let wb = match read_word(b, "b") {
        Ok(w) => w,
        Err(s) => return s,
    };
    *out = insdel_lab::edit_distance(&wa, &wb) as u64;
    IldcStatus::Ok
}

// ---------------------------------------------------------------------------
// Spaced Hadamard code handle.

/// Opaque handle to a spaced Hadamard code.
pub struct IldcSpacedCode {
    inner: SpacedHadamardCode,
}

/// Create a spaced Hadamard code for message length `n` and spacing `t`
/// (codeword length `2^(t n)`).
///
/// # Safety
/// `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ildc_spaced_code_new(
    n: usize,
    t: usize,
    out: *mut *mut IldcSpacedCode,
) -> IldcStatus {
    if out.is_null() {
        return invalid("out: null pointer");
    }
    match SpacedHadamardCode::new(n, t) {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(IldcSpacedCode { inner }));
            IldcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// # Safety
/// `code` must be null or a handle from [`ildc_spaced_code_new`], not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn ildc_spaced_code_free(code: *mut IldcSpacedCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Codeword length of the code.
///
/// # Safety
/// `code` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ildc_spaced_code_len(code: *const IldcSpacedCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.m())
}

/// Encode a message; the codeword is returned as a fresh bit string.
///
/// # Safety
/// `code` must be a live handle, `x` a valid string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ildc_spaced_code_encode(
    code: *const IldcSpacedCode,
    x: *const c_char,
    out: *mut *mut c_char,
) -> IldcStatus {
    let Some(code) = code.as_ref() else {
        return invalid("code: null handle");
    };
    if out.is_null() {
        return invalid("out: null pointer");
    }
    let word = match read_word(x, "x") {
        Ok(w) => w,
        Err(s) => return s,
    };
    if word.len() != code.inner.n() {
        return invalid(&format!(
            "message length {} does not match code n = {}",
            word.len(),
            code.inner.n()
        ));
    }
    give_string(out, code.inner.encode(&word).to_string())
}

/// Decode message bit `i` (0-based) from a received word with the two-query
/// decoder, using `seed` for the address draw. The decoded bit lands in
/// `out` as 0 or 1.
///
/// # Safety
/// `code` must be a live handle, `y` a valid string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ildc_spaced_code_decode(
    code: *const IldcSpacedCode,
    y: *const c_char,
    i: usize,
    seed: u64,
    out: *mut u8,
) -> IldcStatus {
    let Some(code) = code.as_ref() else {
        return invalid("code: null handle");
    };
    if out.is_null() {
        return invalid("out: null pointer");
    }
    if i >= code.inner.n() {
        return invalid(&format!(
            "index {i} out of range for n = {}",
            code.inner.n()
        ));
    }
    let word = match read_word(y, "y") {
        Ok(w) => w,
        Err(s) => return s,
    };
    match code.inner.decode(&word, i, &mut seed_rng(seed)) {
        Ok(bit) => {
            *out = u8::from(bit);
            IldcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

// ---------------------------------------------------------------------------
// Deletion channel handle.

/// Opaque handle to a samplable deletion channel.
pub struct IldcChannel {
    inner: Box<dyn DeletionChannel + Send>,
}

unsafe fn give_channel(
    out: *mut *mut IldcChannel,
    channel: Result<Box<dyn DeletionChannel + Send>, insdel_lab::Error>,
) -> IldcStatus {
    if out.is_null() {
        return invalid("out: null pointer");
    }
    match channel {
        Ok(inner) => {
            *out = Box::into_raw(Box::new(IldcChannel { inner }));
            IldcStatus::Ok
        }
        Err(e) => status_of(&e),
    }
}

/// The two-step deletion process over `[2m]`: an i.i.d. layer at a rate
/// uniform on `[delta/8, delta/4]`, then a random prefix deletion.
///
/// # Safety
/// `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ildc_channel_two_query(
    m: usize,
    delta: f64,
    out: *mut *mut IldcChannel,
) -> IldcStatus {
    give_channel(
        out,
        TwoQueryChannel::new(m, delta).map(|c| Box::new(c) as Box<dyn DeletionChannel + Send>),
    )
}

/// The oblivious layered process with dyadic block sizes.
///
/// # Safety
/// `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ildc_channel_oblivious(
    m: usize,
    delta: f64,
    out: *mut *mut IldcChannel,
) -> IldcStatus {
    give_channel(
        out,
        make_oblivious_spec(m, delta)
            .map(|s| Box::new(LayeredChannel::new(s)) as Box<dyn DeletionChannel + Send>),
    )
}

/// Type-1 errors: delete the first `e` bits and pad at the end.
///
/// # Safety
/// `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ildc_channel_type1(
    m: usize,
    e: usize,
    out: *mut *mut IldcChannel,
) -> IldcStatus {
    give_channel(
        out,
        Type1Channel::new(m, e).map(|c| Box::new(c) as Box<dyn DeletionChannel + Send>),
    )
}

/// Plain i.i.d. deletions at rate `alpha` with the length restored by
/// padding.
///
/// # Safety
/// `out` must be a writable pointer slot.
#[no_mangle]
pub unsafe extern "C" fn ildc_channel_iid(
    n: usize,
    alpha: f64,
    out: *mut *mut IldcChannel,
) -> IldcStatus {
    give_channel(
        out,
        IidDeletionChannel::new(n, alpha).map(|c| Box::new(c) as Box<dyn DeletionChannel + Send>),
    )
}

/// # Safety
/// `channel` must be null or a live channel handle, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ildc_channel_free(channel: *mut IldcChannel) {
    if !channel.is_null() {
        drop(Box::from_raw(channel));
    }
}

/// Corrupt a word: augment with uniform padding, sample the deletion process
/// at `seed`, truncate. The corrupted word goes to `out_word`; the number of
/// deleted positions to `out_deletions` (pass null to skip either).
///
/// # Safety
/// `channel` must be a live handle and `word` a valid string; non-null out
/// pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ildc_channel_corrupt(
    channel: *const IldcChannel,
    word: *const c_char,
    seed: u64,
    out_word: *mut *mut c_char,
    out_deletions: *mut u64,
) -> IldcStatus {
    let Some(channel) = channel.as_ref() else {
        return invalid("channel: null handle");
    };
    let w = match read_word(word, "word") {
        Ok(w) => w,
        Err(s) => return s,
    };
    match corrupt_with(
        channel.inner.as_ref(),
        &w,
        PadPolicy::Uniform,
        &mut seed_rng(seed),
    ) {
        Ok(sample) => {
            if !out_deletions.is_null() {
                *out_deletions = sample.deletions.len() as u64;
            }
            if out_word.is_null() {
                IldcStatus::Ok
            } else {
                give_string(out_word, sample.corrupted.to_string())
            }
        }
        Err(e) => status_of(&e),
    }
}

// ---------------------------------------------------------------------------
// Quadratic polynomials and experiments.

/// Analyze a quadratic polynomial given as text (e.g. "x1*x2 + x3 + 1"):
/// symplectic rank to `out_rank`, exact zero probability as a "num/den"
/// string to `out_zero_probability`.
///
/// # Safety
/// `text` must be a valid string; non-null out pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn ildc_quadratic_analyze(
    text: *const c_char,
    out_rank: *mut u32,
    out_zero_probability: *mut *mut c_char,
) -> IldcStatus {
    let s = match read_str(text, "polynomial") {
        Ok(s) => s,
        Err(status) => return status,
    };
    let poly = match parse_polynomial(s, None) {
        Ok(p) => p,
        Err(e) => return status_of(&e),
    };
    if !out_rank.is_null() {
        *out_rank = symplectic_rank(&poly) as u32;
    }
    if out_zero_probability.is_null() {
        IldcStatus::Ok
    } else {
        give_string(out_zero_probability, zero_probability(&poly).to_string())
    }
}

/// Run an experiment from a JSON config (the same schema the CLI accepts).
/// The human-readable summary and the CSV content come back as strings; the
/// status reports only transport errors, so inspect the summary for
/// assertion outcomes, or `out_all_passed`.
///
/// # Safety
/// `config_json` must be a valid string; non-null out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn ildc_experiment_run(
    config_json: *const c_char,
    out_summary: *mut *mut c_char,
    out_csv: *mut *mut c_char,
    out_all_passed: *mut u8,
) -> IldcStatus {
    let text = match read_str(config_json, "config") {
        Ok(s) => s,
        Err(status) => return status,
    };
    let config = match ExperimentConfig::from_json(text) {
        Ok(c) => c,
        Err(e) => return status_of(&e),
    };
    let report = match experiments::run(&config) {
        Ok(r) => r,
        Err(e) => return status_of(&e),
    };
    if !out_all_passed.is_null() {
        *out_all_passed = u8::from(report.all_passed());
    }
    if !out_summary.is_null() {
        let status = give_string(out_summary, report.summary());
        if status != IldcStatus::Ok {
            return status;
        }
    }
    if !out_csv.is_null() {
        let status = give_string(out_csv, report.csv_string());
        if status != IldcStatus::Ok {
            if !out_summary.is_null() {
                ildc_string_free(*out_summary);
                *out_summary = ptr::null_mut();
            }
            return status;
        }
    }
    IldcStatus::Ok
}
