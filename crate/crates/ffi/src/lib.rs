//! C interface to `arrlab`.
//!
//! Arrangements live behind an opaque `ArrlabArrangement` handle. Every
//! fallible call returns an [`ArrlabStatus`]; on failure a message is kept
//! per thread and can be read with [`arrlab_last_error_message`]. Strings
//! handed out by this library must be released with [`arrlab_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use arrlab::cone::{project_point_with_tol, ConeFile};
use arrlab::rational;
use arrlab::verify::{self, GeneratorSpec, VerifyOptions};
use arrlab::{Arrangement, IntersectionLattice};

/// Status codes returned by every fallible function.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrlabStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Computation = 5,
    BufferTooSmall = 6,
    Panic = 7,
}

/// Opaque arrangement handle.
pub struct ArrlabArrangement {
    inner: Arrangement,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

struct Failure(ArrlabStatus, String);

impl Failure {
    fn new(status: ArrlabStatus, err: impl std::fmt::Display) -> Failure {
        Failure(status, err.to_string())
    }
}

/// Runs `f`, records any error or panic, and returns its status.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ArrlabStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            ArrlabStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_string());
            set_error(format!("panic: {msg}"));
            ArrlabStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::new(ArrlabStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Failure::new(ArrlabStatus::InvalidUtf8, e))
}

unsafe fn handle<'a>(arr: *const ArrlabArrangement) -> Result<&'a Arrangement, Failure> {
    arr.as_ref().map(|a| &a.inner).ok_or_else(|| Failure::new(ArrlabStatus::NullPointer, "null arrangement handle"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(ArrlabStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure::new(ArrlabStatus::Computation, e))?;
    write_out(out, c.into_raw())
}

fn into_handle(inner: Arrangement) -> *mut ArrlabArrangement {
    Box::into_raw(Box::new(ArrlabArrangement { inner }))
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn arrlab_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn arrlab_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses an arrangement from JSON text (`{"dim": d, "hyperplanes": [...]}`).
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn arrlab_arrangement_from_json(json: *const c_char, out: *mut *mut ArrlabArrangement) -> ArrlabStatus {
    guard(|| {
        let text = read_str(json)?;
        let arr = Arrangement::from_json(text).map_err(|e| Failure::new(ArrlabStatus::Parse, e))?;
        write_out(out, into_handle(arr))
    })
}

/// Builds a named arrangement such as `"braid:3"` or `"random:m=5,d=3,seed=7"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn arrlab_arrangement_from_generator(spec: *const c_char, out: *mut *mut ArrlabArrangement) -> ArrlabStatus {
    guard(|| {
        let spec: GeneratorSpec = read_str(spec)?.parse().map_err(|e| Failure::new(ArrlabStatus::Parse, e))?;
        let arr = verify::generate(&spec).map_err(|e| Failure::new(ArrlabStatus::InvalidArgument, e))?;
        write_out(out, into_handle(arr))
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `arr` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn arrlab_arrangement_free(arr: *mut ArrlabArrangement) {
    if !arr.is_null() {
        drop(Box::from_raw(arr));
    }
}

/// # Safety
/// `arr` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arrlab_arrangement_dim(arr: *const ArrlabArrangement, out: *mut usize) -> ArrlabStatus {
    guard(|| write_out(out, handle(arr)?.dim()))
}

/// # Safety
/// `arr` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arrlab_arrangement_rank(arr: *const ArrlabArrangement, out: *mut usize) -> ArrlabStatus {
    guard(|| write_out(out, handle(arr)?.rank()))
}

/// Number of distinct hyperplanes after canonicalization.
///
/// # Safety
/// `arr` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arrlab_arrangement_num_hyperplanes(arr: *const ArrlabArrangement, out: *mut usize) -> ArrlabStatus {
    guard(|| write_out(out, handle(arr)?.len()))
}

/// Number of regions, by direct enumeration.
///
/// # Safety
/// `arr` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn arrlab_arrangement_region_count(arr: *const ArrlabArrangement, out: *mut usize) -> ArrlabStatus {
    guard(|| write_out(out, arrlab::arrangement::enumerate_regions(handle(arr)?).len()))
}

/// Characteristic polynomial coefficients, highest degree first.
///
/// Always stores the number of coefficients in `len`. Returns
/// `ARRLAB_STATUS_BUFFER_TOO_SMALL` if `cap` is less than that; `buf` may
/// be NULL when `cap` is 0.
///
/// # Safety
/// `buf` must have room for `cap` values and `len` must be writable.
#[no_mangle]
pub unsafe extern "C" fn arrlab_arrangement_charpoly(
    arr: *const ArrlabArrangement,
    buf: *mut i64,
    cap: usize,
    len: *mut usize,
) -> ArrlabStatus {
    guard(|| {
        let chi = IntersectionLattice::build(handle(arr)?).characteristic_polynomial();
        let coeffs = chi
            .highest_first()
            .iter()
            .map(|c| rational::to_i64(c).ok_or_else(|| Failure::new(ArrlabStatus::Computation, "coefficient exceeds i64")))
            .collect::<Result<Vec<i64>, _>>()?;
        write_out(len, coeffs.len())?;
        if cap < coeffs.len() {
            return Err(Failure::new(ArrlabStatus::BufferTooSmall, format!("need {} slots, got {cap}", coeffs.len())));
        }
        if buf.is_null() {
            return Err(Failure::new(ArrlabStatus::NullPointer, "null coefficient buffer"));
        }
        ptr::copy_nonoverlapping(coeffs.as_ptr(), buf, coeffs.len());
        Ok(())
    })
}

/// Lattice, Möbius values, characteristic polynomial and regions as JSON.
///
/// # Safety
/// `arr` must be a live handle and `out` writable. Free `*out` with
/// [`arrlab_string_free`].
#[no_mangle]
pub unsafe extern "C" fn arrlab_arrangement_analyze_json(
    arr: *const ArrlabArrangement,
    zonotope: bool,
    out: *mut *mut c_char,
) -> ArrlabStatus {
    guard(|| {
        let report = verify::analyze(handle(arr)?, zonotope, false).map_err(|e| Failure::new(ArrlabStatus::Computation, e))?;
        write_string(out, report.to_json())
    })
}

/// Runs the volume-sum verification and returns its JSON report.
///
/// `samples` is per region; `tol` is the tightness tolerance and `zmax`
/// the largest accepted `|z|`. `pass` may be NULL.
///
/// # Safety
/// `arr` must be a live handle and `out` writable. Free `*out` with
/// [`arrlab_string_free`].
#[no_mangle]
pub unsafe extern "C" fn arrlab_arrangement_verify_json(
    arr: *const ArrlabArrangement,
    samples: u64,
    seed: u64,
    tol: f64,
    zmax: f64,
    out: *mut *mut c_char,
    pass: *mut bool,
) -> ArrlabStatus {
    guard(|| {
        let opts = VerifyOptions { samples, seed, tol, zmax, ..VerifyOptions::default() };
        let report = verify::verify_main_theorem(handle(arr)?, &opts).map_err(|e| Failure::new(ArrlabStatus::Computation, e))?;
        if !pass.is_null() {
            pass.write(report.pass);
        }
        write_string(out, report.to_json())
    })
}

/// Projects `z` onto the cone described by `cone_json`
/// (`{"dim": d, "inequalities": [...]}`), writing the projection into
/// `out_point` and the dimension of the face it lands in into `face_dim`.
///
/// # Safety
/// `z` and `out_point` must each hold `dim` doubles; `face_dim` may be NULL.
#[no_mangle]
pub unsafe extern "C" fn arrlab_project_point(
    cone_json: *const c_char,
    z: *const f64,
    dim: usize,
    tol: f64,
    out_point: *mut f64,
    face_dim: *mut usize,
) -> ArrlabStatus {
    guard(|| {
        let cone = ConeFile::parse(read_str(cone_json)?).and_then(|f| f.to_cone()).map_err(|e| Failure::new(ArrlabStatus::Parse, e))?;
        if z.is_null() || out_point.is_null() {
            return Err(Failure::new(ArrlabStatus::NullPointer, "null point buffer"));
        }
        let z = std::slice::from_raw_parts(z, dim);
        let r = project_point_with_tol(&cone, z, tol).map_err(|e| Failure::new(ArrlabStatus::InvalidArgument, e))?;
        ptr::copy_nonoverlapping(r.point.as_ptr(), out_point, dim);
        if !face_dim.is_null() {
            face_dim.write(r.face_dim);
        }
        Ok(())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn arrlab_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
