//! C ABI over `sphvar`. Data lives behind opaque handles; every call returns
//! a [`SphvarStatus`], and the message of the last failure on the calling
//! thread is available from [`sphvar_last_error`].
//!
//! Strings returned through `char **` belong to the caller and are released
//! with [`sphvar_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use sphvar::catalog;
use sphvar::document::InputDocument;
use sphvar::spherical::{is_affine, is_wavefront, negligible_orbit_check, parabolic_induction, validate_colored_cone, SphericalDatum};
use sphvar::unramified::table;
use sphvar::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphvarStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Input = 3,
    /// A mathematical precondition failed (not a character, not quasi-affine, ...).
    Math = 4,
    UnsupportedRank = 5,
    Precision = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphvarCheck {
    ColoredCone = 0,
    Affine = 1,
    Wavefront = 2,
    Induced = 3,
    Negligible = 4,
}

/// Opaque spherical datum with the document it came from.
pub struct SphvarDatum {
    doc: InputDocument,
    datum: SphericalDatum,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SphvarStatus {
    match e {
        Error::Input(_) => SphvarStatus::Input,
        Error::UnsupportedRank(_) => SphvarStatus::UnsupportedRank,
        Error::Precision(_) => SphvarStatus::Precision,
        Error::NotACharacter(_) | Error::NotSl2Character(_) | Error::NotQuasiAffine(_) | Error::HypothesisNotMet(_) => SphvarStatus::Math,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (SphvarStatus, String)>) -> SphvarStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            SphvarStatus::Ok
        }
        Ok(Err((s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            SphvarStatus::Panic
        }
    }
}

fn lib<T>(r: sphvar::Result<T>) -> Result<T, (SphvarStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (SphvarStatus, String)> {
    if p.is_null() {
        return Err((SphvarStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(p).to_str().map_err(|_| (SphvarStatus::InvalidUtf8, "string is not UTF-8".into()))
}

fn null(what: &str) -> (SphvarStatus, String) {
    (SphvarStatus::NullPointer, format!("null {what}"))
}

fn build(doc: InputDocument) -> Result<*mut SphvarDatum, (SphvarStatus, String)> {
    let datum = lib(doc.to_datum())?;
    Ok(Box::into_raw(Box::new(SphvarDatum { doc, datum })))
}

fn give_string(s: String, out: *mut *mut c_char) -> Result<(), (SphvarStatus, String)> {
    let c = CString::new(s).map_err(|_| (SphvarStatus::Input, "output contains NUL".into()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn sphvar_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parse a JSON input document.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sphvar_datum_from_json(json: *const c_char, out: *mut *mut SphvarDatum) -> SphvarStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = ptr::null_mut();
        let text = read_str(json)?;
        *out = build(lib(InputDocument::parse(text))?)?;
        Ok(())
    })
}

/// Load a catalog fixture by key.
///
/// # Safety
/// `key` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sphvar_datum_from_catalog(key: *const c_char, out: *mut *mut SphvarDatum) -> SphvarStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = ptr::null_mut();
        let key = read_str(key)?;
        *out = build(lib(InputDocument::parse(lib(catalog::source(key))?))?)?;
        Ok(())
    })
}

/// # Safety
/// `d` must come from this library and not be used afterwards. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn sphvar_datum_free(d: *mut SphvarDatum) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Rank of the weight lattice.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sphvar_datum_rank(d: *const SphvarDatum, out: *mut usize) -> SphvarStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("datum"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = d.datum.rank();
        Ok(())
    })
}

/// Run a combinatorial check; `*out` is the verdict. A negligibility check
/// whose hypothesis fails reports `Math`.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sphvar_check(d: *const SphvarDatum, which: SphvarCheck, out: *mut bool) -> SphvarStatus {
    guard(|| {
        let d = &d.as_ref().ok_or_else(|| null("datum"))?.datum;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let cc = || d.colored_cone.as_ref().ok_or_else(|| (SphvarStatus::Input, "document has no colored_cone".to_string()));
        *out = match which {
            SphvarCheck::ColoredCone => lib(validate_colored_cone(d, cc()?))?.ok,
            SphvarCheck::Affine => lib(is_affine(d, cc()?))?.affine,
            SphvarCheck::Wavefront => is_wavefront(d),
            SphvarCheck::Induced => lib(parabolic_induction(d))?.is_some(),
            SphvarCheck::Negligible => lib(negligible_orbit_check(d))?.ok,
        };
        Ok(())
    })
}

/// Basic-function table up to `height` as a JSON string with symbolic `q`.
/// `kappa` is the grading sign, 1 or -1.
///
/// # Safety
/// `d` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sphvar_basic_function_json(d: *const SphvarDatum, height: u32, kappa: i32, out: *mut *mut c_char) -> SphvarStatus {
    guard(|| {
        let d = d.as_ref().ok_or_else(|| null("datum"))?;
        if out.is_null() {
            return Err(null("output pointer"));
        }
        *out = ptr::null_mut();
        if kappa != 1 && kappa != -1 {
            return Err((SphvarStatus::Input, "kappa must be 1 or -1".into()));
        }
        let t = lib(table(&d.doc, None, height, kappa))?;
        give_string(t.to_json(None).to_string(), out)
    })
}

/// # Safety
/// `s` must come from this library and not be used afterwards. Null is a no-op.
#[no_mangle]
pub unsafe extern "C" fn sphvar_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
