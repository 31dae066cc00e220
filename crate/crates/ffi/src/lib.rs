//! C ABI over the `b3lab` library.
//!
//! Braids live behind an opaque `B3Braid` handle. Every fallible call
//! returns a [`B3Status`]; on failure `b3_last_error` describes the problem
//! for the calling thread. Strings handed out must be released with
//! `b3_string_free`, handles with `b3_braid_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use b3lab::garside::{self, NTClassification};
use b3lab::sl2::{self, SL2Matrix};
use b3lab::words::{parse_word, BraidWord};
use b3lab::Error;

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum B3Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed word, tuple or matrix.
    Parse = 3,
    /// Well-formed input outside the domain of the operation.
    Domain = 4,
    /// The input is periodic, so the requested quantity does not exist.
    Periodic = 5,
    Panic = 6,
}

/// Opaque braid handle.
pub struct B3Braid {
    word: BraidWord,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> B3Status {
    match e {
        Error::UnknownCharacter { .. }
        | Error::GeneratorOutOfRange { .. }
        | Error::MixedSyntax { .. }
        | Error::MalformedTuple { .. }
        | Error::MalformedMatrix { .. }
        | Error::MalformedLuWord { .. } => B3Status::Parse,
        Error::Periodic(_) => B3Status::Periodic,
        _ => B3Status::Domain,
    }
}

fn fail(e: Error) -> B3Status {
    let s = status_of(&e);
    set_error(e.to_string());
    s
}

fn guard(f: impl FnOnce() -> B3Status) -> B3Status {
    set_error("");
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        B3Status::Panic
    })
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, B3Status> {
    if p.is_null() {
        set_error("null pointer");
        return Err(B3Status::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("input is not valid UTF-8");
        B3Status::InvalidUtf8
    })
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> B3Status {
    if out.is_null() {
        set_error("null output pointer");
        return B3Status::NullPointer;
    }
    *out = CString::new(s).expect("no interior NUL").into_raw();
    B3Status::Ok
}

unsafe fn braid<'a>(b: *const B3Braid) -> Result<&'a B3Braid, B3Status> {
    b.as_ref().ok_or_else(|| {
        set_error("null braid handle");
        B3Status::NullPointer
    })
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn b3_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn b3_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn b3_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a word (`aBD`, `1 -2`) or a tuple (`(0; 1; 1,1)`) into a new handle.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn b3_braid_parse(text: *const c_char, out: *mut *mut B3Braid) -> B3Status {
    guard(|| {
        let text = tri!(read_str(text));
        if out.is_null() {
            set_error("null output pointer");
            return B3Status::NullPointer;
        }
        let parsed = if text.trim_start().starts_with('(') {
            text.parse::<garside::GarsideTuple>().map(|t| garside::decode_tuple(&t).to_word())
        } else {
            parse_word(text)
        };
        match parsed {
            Ok(word) => {
                *out = Box::into_raw(Box::new(B3Braid { word }));
                B3Status::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `b` must come from `b3_braid_parse` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn b3_braid_free(b: *mut B3Braid) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Compact word text of the braid.
///
/// # Safety
/// `b` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn b3_braid_word(b: *const B3Braid, out: *mut *mut c_char) -> B3Status {
    guard(|| {
        let b = tri!(braid(b));
        write_string(out, b.word.to_string())
    })
}

/// Left normal form, e.g. `D^-1 . b . ba`.
///
/// # Safety
/// `b` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn b3_braid_normal_form(b: *const B3Braid, out: *mut *mut c_char) -> B3Status {
    guard(|| {
        let b = tri!(braid(b));
        write_string(out, garside::normalize(&b.word).to_string())
    })
}

/// Garside tuple `(s; i; p1,q1,...)` of the normal form.
///
/// # Safety
/// `b` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn b3_braid_tuple(b: *const B3Braid, out: *mut *mut c_char) -> B3Status {
    guard(|| {
        let b = tri!(braid(b));
        write_string(out, garside::tuple_of(&garside::normalize(&b.word)).to_string())
    })
}

/// Classification as JSON (`type`, `murasugi`, and per type `root_power`,
/// `side`, `matrix`, `trace`, `dilatation`). `max_cycling` of 0 selects the default.
///
/// # Safety
/// `b` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn b3_braid_classify_json(b: *const B3Braid, max_cycling: usize, out: *mut *mut c_char) -> B3Status {
    guard(|| {
        let b = tri!(braid(b));
        let cap = (max_cycling > 0).then_some(max_cycling);
        match garside::classify(&b.word, cap) {
            Ok(c) => write_string(out, serde_json::to_string(&c).expect("serializable")),
            Err(e) => fail(e),
        }
    })
}

fn pseudo_anosov(b: &B3Braid) -> Result<NTClassification, B3Status> {
    match garside::classify(&b.word, None) {
        Ok(c @ NTClassification::PseudoAnosov { .. }) => Ok(c),
        Ok(c) => {
            set_error(format!("braid {} is {}", b.word, c.kind()));
            Err(if c.kind() == "periodic" { B3Status::Periodic } else { B3Status::Domain })
        }
        Err(e) => Err(fail(e)),
    }
}

/// Dilatation factor of a pseudo-Anosov braid as a double.
///
/// # Safety
/// `b` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn b3_braid_dilatation(b: *const B3Braid, out: *mut f64) -> B3Status {
    guard(|| {
        let b = tri!(braid(b));
        if out.is_null() {
            set_error("null output pointer");
            return B3Status::NullPointer;
        }
        match tri!(pseudo_anosov(b)) {
            NTClassification::PseudoAnosov { dilatation, .. } => {
                *out = dilatation.to_f64();
                B3Status::Ok
            }
            _ => unreachable!(),
        }
    })
}

/// Matrix of the braid's Murasugi representative, `[[a,b],[c,d]]`.
///
/// # Safety
/// `b` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn b3_braid_matrix(b: *const B3Braid, out: *mut *mut c_char) -> B3Status {
    guard(|| {
        let b = tri!(braid(b));
        if garside::is_periodic(&b.word) {
            return fail(Error::Periodic(b.word.to_string()));
        }
        let m = garside::murasugi_rep(&b.word, None).and_then(|t| sl2::lu_of_tuple(&t)).map(|lu| sl2::matrix_of_lu(&lu));
        match m {
            Ok(m) => write_string(out, m.to_string()),
            Err(e) => fail(e),
        }
    })
}

/// Conjugacy test, optionally modulo the centre.
///
/// # Safety
/// `a`, `b` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn b3_braid_is_conjugate(a: *const B3Braid, b: *const B3Braid, mod_delta2: bool, out: *mut bool) -> B3Status {
    guard(|| {
        let (a, b) = (tri!(braid(a)), tri!(braid(b)));
        if out.is_null() {
            set_error("null output pointer");
            return B3Status::NullPointer;
        }
        let r = if mod_delta2 {
            garside::is_conjugate_mod_delta2(&a.word, &b.word, None)
        } else {
            garside::is_conjugate(&a.word, &b.word, None)
        };
        match r {
            Ok(v) => {
                *out = v;
                B3Status::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// LU-word of a determinant-one non-negative matrix.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn b3_matrix_decompose(m11: u64, m12: u64, m21: u64, m22: u64, out: *mut *mut c_char) -> B3Status {
    guard(|| match SL2Matrix::from_u64(m11, m12, m21, m22).and_then(|m| sl2::lu_decompose(&m)) {
        Ok(lu) => write_string(out, lu.to_string()),
        Err(e) => fail(e),
    })
}
