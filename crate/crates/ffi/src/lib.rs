//! C ABI over `gbb`.
//!
//! Objects cross the boundary as opaque handles created by `*_new`/`*_from_*`
//! functions and released by the matching `*_free`. Every fallible call
//! returns a [`GbbStatus`]; on failure `gbb_last_error` describes the error
//! on the calling thread. Strings returned through `char **` are owned by the
//! caller and released with [`gbb_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use gbb::covers::CoverFile;
use gbb::cubical::{hyperplanes, specialness, QuotientCubeComplex};
use gbb::dehn::{dehn_reduce, format_word, parse_word, CyclicPresentation, ExponentSetFile};
use gbb::gbbcore::{FiniteQuotient, GbbPresentation, QuotientFile};
use gbb::intsets::PeriodicSet;
use gbb::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Invalid = 4,
    Precondition = 5,
    WindowInsufficient = 6,
    Unsupported = 7,
    VerificationFailed = 8,
    UnknownFixture = 9,
    Internal = 10,
    Panic = 11,
}

impl From<&Error> for GbbStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => GbbStatus::Parse,
            Error::Precondition(_) | Error::DisconnectedCover { .. } => GbbStatus::Precondition,
            Error::WindowInsufficient { .. } => GbbStatus::WindowInsufficient,
            Error::Unsupported(_) => GbbStatus::Unsupported,
            Error::VerificationFailed(_) | Error::NotAHomomorphism(_) | Error::RSetMismatch { .. } => {
                GbbStatus::VerificationFailed
            }
            Error::UnknownFixture(_) => GbbStatus::UnknownFixture,
            Error::Internal(_) => GbbStatus::Internal,
            _ => GbbStatus::Invalid,
        }
    }
}

/// A finite quotient of a generalized Bestvina-Brady group.
pub struct GbbQuotient(FiniteQuotient);

/// A wrapped cube complex built from a quotient.
pub struct GbbComplex(QuotientCubeComplex);

/// A cyclic presentation `<a1..al | a1^n ... al^n, n in T>`.
pub struct GbbCyclicPresentation(CyclicPresentation);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Fail {
    Status(GbbStatus, String),
    Gbb(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Gbb(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GbbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GbbStatus::Ok,
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(msg);
            s
        }
        Ok(Err(Fail::Gbb(e))) => {
            set_error(e.to_string());
            GbbStatus::from(&e)
        }
        Err(_) => {
            set_error("panic inside gbb".into());
            GbbStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail::Status(GbbStatus::NullPointer, format!("{what} is null"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Status(GbbStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn gbb_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failed call on this thread; valid until the next call.
#[no_mangle]
pub extern "C" fn gbb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn gbb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Loads the default quotient of a built-in fixture.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn gbb_quotient_from_fixture(name: *const c_char, out: *mut *mut GbbQuotient) -> GbbStatus {
    guard(|| {
        let name = str_arg(name, "name")?;
        let out = out_arg(out, "out")?;
        *out = Box::into_raw(Box::new(GbbQuotient(gbb::fixtures::quotient(name)?)));
        Ok(())
    })
}

/// Builds a quotient from a cover file, the set `S` (e.g. `2Z`) and a
/// quotient file, each given as JSON text.
///
/// # Safety
/// String arguments must be NUL-terminated; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbb_quotient_from_json(
    cover_json: *const c_char,
    s: *const c_char,
    quotient_json: *const c_char,
    out: *mut *mut GbbQuotient,
) -> GbbStatus {
    guard(|| {
        let cover: CoverFile = serde_json::from_str(str_arg(cover_json, "cover_json")?).map_err(Error::from)?;
        let s: PeriodicSet = str_arg(s, "s")?.parse()?;
        let file: QuotientFile = serde_json::from_str(str_arg(quotient_json, "quotient_json")?).map_err(Error::from)?;
        let out = out_arg(out, "out")?;
        let pres = Arc::new(GbbPresentation::new(cover.build()?, s)?);
        *out = Box::into_raw(Box::new(GbbQuotient(file.build(pres)?)));
        Ok(())
    })
}

/// # Safety
/// `q` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn gbb_quotient_free(q: *mut GbbQuotient) {
    if !q.is_null() {
        drop(Box::from_raw(q));
    }
}

/// Whether the verification certificate passed.
///
/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gbb_quotient_certificate_passed(q: *const GbbQuotient, out: *mut bool) -> GbbStatus {
    guard(|| {
        let q = handle(q, "quotient")?;
        *out_arg(out, "out")? = q.0.certificate().passed();
        Ok(())
    })
}

/// Whether every `ρ_j` with `j ∉ S` is injective.
///
/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gbb_quotient_kernel_torsion_free(q: *const GbbQuotient, out: *mut bool) -> GbbStatus {
    guard(|| {
        let q = handle(q, "quotient")?;
        *out_arg(out, "out")? = q.0.kernel_torsion_free()?.torsion_free;
        Ok(())
    })
}

/// The quotient in its JSON file form.
///
/// # Safety
/// `q` must be a live handle and `out` writable; free the result with [`gbb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gbb_quotient_to_json(q: *const GbbQuotient, out: *mut *mut c_char) -> GbbStatus {
    guard(|| {
        let q = handle(q, "quotient")?;
        let text = serde_json::to_string(&q.0.to_file()).map_err(Error::from)?;
        *out_arg(out, "out")? = c_string(text);
        Ok(())
    })
}

/// Builds the complex at `wrap`; 0 picks the least valid wrap.
///
/// # Safety
/// `q` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gbb_complex_build(q: *const GbbQuotient, wrap: usize, out: *mut *mut GbbComplex) -> GbbStatus {
    guard(|| {
        let q = handle(q, "quotient")?;
        let out = out_arg(out, "out")?;
        let wrap = if wrap == 0 { gbb::cubical::minimal_wrap(&q.0) } else { wrap };
        *out = Box::into_raw(Box::new(GbbComplex(QuotientCubeComplex::build(&q.0, wrap)?)));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn gbb_complex_free(c: *mut GbbComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Numbers of vertices, edges and squares; any output pointer may be null.
///
/// # Safety
/// `c` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbb_complex_counts(
    c: *const GbbComplex,
    vertices: *mut usize,
    edges: *mut usize,
    squares: *mut usize,
) -> GbbStatus {
    guard(|| {
        let c = &handle(c, "complex")?.0;
        for (p, v) in [(vertices, c.vertex_count()), (edges, c.edge_count()), (squares, c.square_count())] {
            if let Some(p) = p.as_mut() {
                *p = v;
            }
        }
        Ok(())
    })
}

/// Hyperplane count and specialness verdict; either output may be null.
///
/// # Safety
/// `c` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn gbb_complex_specialness(c: *const GbbComplex, hyperplane_count: *mut usize, special: *mut bool) -> GbbStatus {
    guard(|| {
        let c = &handle(c, "complex")?.0;
        let h = hyperplanes(c);
        let report = specialness(c, &h);
        if let Some(p) = hyperplane_count.as_mut() {
            *p = h.len();
        }
        if let Some(p) = special.as_mut() {
            *p = report.special;
        }
        Ok(())
    })
}

/// The full specialness report with witnesses as JSON.
///
/// # Safety
/// `c` must be a live handle and `out` writable; free the result with [`gbb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gbb_complex_specialness_json(c: *const GbbComplex, out: *mut *mut c_char) -> GbbStatus {
    guard(|| {
        let c = &handle(c, "complex")?.0;
        let report = specialness(c, &hyperplanes(c));
        *out_arg(out, "out")? = c_string(serde_json::to_string(&report).map_err(Error::from)?);
        Ok(())
    })
}

/// `⟨a1..al | a1^n ⋯ al^n, n ∈ T⟩` with `T` given as an exponent-set JSON
/// document (`{"modulus":2,"residues":[0]}` or `{"kind":"godel","S":[0,2]}`).
///
/// # Safety
/// `t_json` must be NUL-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn gbb_cyclic_presentation_new(
    l: usize,
    t_json: *const c_char,
    out: *mut *mut GbbCyclicPresentation,
) -> GbbStatus {
    guard(|| {
        let file: ExponentSetFile = serde_json::from_str(str_arg(t_json, "t_json")?).map_err(Error::from)?;
        let out = out_arg(out, "out")?;
        *out = Box::into_raw(Box::new(GbbCyclicPresentation(CyclicPresentation::new(l, file.build()?)?)));
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn gbb_cyclic_presentation_free(p: *mut GbbCyclicPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Runs Dehn's algorithm on a word such as `"a1^2 a2^-1"`. `is_identity`
/// and `reduced` may be null.
///
/// # Safety
/// `p` must be a live handle, `word` NUL-terminated, non-null outputs
/// writable; free `*reduced` with [`gbb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gbb_dehn_reduce(
    p: *const GbbCyclicPresentation,
    word: *const c_char,
    is_identity: *mut bool,
    reduced: *mut *mut c_char,
) -> GbbStatus {
    guard(|| {
        let p = &handle(p, "presentation")?.0;
        let w = parse_word(p.l(), str_arg(word, "word")?)?;
        let r = dehn_reduce(p, &w)?;
        if let Some(out) = is_identity.as_mut() {
            *out = r.is_empty();
        }
        if let Some(out) = reduced.as_mut() {
            *out = c_string(format_word(&r));
        }
        Ok(())
    })
}
