//! C ABI over `k3lat`.
//!
//! Lattices are opaque handles. Every fallible call returns a [`K3latStatus`];
//! the message of the most recent failure on the calling thread is available
//! from [`k3lat_last_error`]. Strings returned through `char **` out-parameters
//! are owned by the caller and released with [`k3lat_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use k3lat::cli::{fiber_json, lattice_info, parse_params, resolve_lattice};
use k3lat::lattice::{find_isometry, IsometryOutcome, Lattice};
use k3lat::verify::{verify_all, VerifyOptions};
use k3lat::Error;
use serde_json::json;

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K3latStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    UnknownName = 5,
    /// A mathematical failure: not a K3 point, not isometric, a failed check.
    Domain = 6,
    Io = 7,
    Panic = 8,
}

/// Opaque lattice handle.
pub struct K3latLattice {
    inner: Lattice,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> K3latStatus {
    match e {
        Error::Parse(_) => K3latStatus::Parse,
        Error::Io(_) => K3latStatus::Io,
        Error::UnknownName(_) => K3latStatus::UnknownName,
        Error::NotSymmetric | Error::Dimension(_) | Error::ZeroTwist | Error::Degenerate => K3latStatus::InvalidInput,
        _ => K3latStatus::Domain,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (K3latStatus, String)>) -> K3latStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            K3latStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            K3latStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (K3latStatus, String) {
    (status_of(&e), e.to_string())
}

fn null_err(what: &str) -> (K3latStatus, String) {
    (K3latStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (K3latStatus, String)> {
    if p.is_null() {
        return Err(null_err(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (K3latStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (K3latStatus, String)> {
    if out.is_null() {
        return Err(null_err("out"));
    }
    let c = CString::new(s).map_err(|_| (K3latStatus::Parse, "interior NUL in output".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn handle<'a>(h: *const K3latLattice, what: &str) -> Result<&'a Lattice, (K3latStatus, String)> {
    h.as_ref().map(|l| &l.inner).ok_or_else(|| null_err(what))
}

unsafe fn emit(out: *mut *mut K3latLattice, l: Lattice) -> Result<(), (K3latStatus, String)> {
    if out.is_null() {
        return Err(null_err("out"));
    }
    *out = Box::into_raw(Box::new(K3latLattice { inner: l }));
    Ok(())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn k3lat_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn k3lat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn k3lat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"label"?, "gram": [[...]]}` or a bare Gram matrix.
///
/// # Safety
/// `json` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k3lat_lattice_from_json(json: *const c_char, out: *mut *mut K3latLattice) -> K3latStatus {
    guard(|| {
        let text = read_str(json, "json")?.trim();
        if !(text.starts_with('{') || text.starts_with('[')) {
            return Err((K3latStatus::Parse, "expected a JSON object or matrix".into()));
        }
        emit(out, resolve_lattice(text).map_err(lib_err)?)
    })
}

/// A catalog entry or root lattice by name (`A0`, `B1'`, `E8`, `U`, ...),
/// twisted by `twist` (1 for none).
///
/// # Safety
/// `name` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k3lat_lattice_from_name(
    name: *const c_char,
    twist: i64,
    out: *mut *mut K3latLattice,
) -> K3latStatus {
    guard(|| {
        let name = read_str(name, "name")?;
        let l = resolve_lattice(name).map_err(lib_err)?;
        let l = if twist == 1 { l } else { l.twist(twist).map_err(lib_err)? };
        emit(out, l)
    })
}

/// # Safety
/// `h` must come from this library and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn k3lat_lattice_free(h: *mut K3latLattice) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k3lat_lattice_rank(h: *const K3latLattice, out: *mut usize) -> K3latStatus {
    guard(|| {
        let l = handle(h, "lattice")?;
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        *out = l.rank();
        Ok(())
    })
}

/// Writes `(positive, negative, zero)` into `out[0..3]`.
///
/// # Safety
/// `h` must be a live handle; `out` must point to three writable `size_t`.
#[no_mangle]
pub unsafe extern "C" fn k3lat_lattice_signature(h: *const K3latLattice, out: *mut usize) -> K3latStatus {
    guard(|| {
        let l = handle(h, "lattice")?;
        if out.is_null() {
            return Err(null_err("out"));
        }
        let s = l.signature().as_array();
        ptr::copy_nonoverlapping(s.as_ptr(), out, 3);
        Ok(())
    })
}

/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k3lat_lattice_is_even(h: *const K3latLattice, out: *mut bool) -> K3latStatus {
    guard(|| {
        let l = handle(h, "lattice")?;
        let out = out.as_mut().ok_or_else(|| null_err("out"))?;
        *out = l.is_even();
        Ok(())
    })
}

/// Determinant as a decimal string.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k3lat_lattice_det(h: *const K3latLattice, out: *mut *mut c_char) -> K3latStatus {
    guard(|| {
        let l = handle(h, "lattice")?;
        write_string(out, l.det().to_string())
    })
}

/// Signature, determinant, parity and discriminant group as JSON.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k3lat_lattice_info_json(h: *const K3latLattice, out: *mut *mut c_char) -> K3latStatus {
    guard(|| {
        let l = handle(h, "lattice")?;
        let mut v = lattice_info(l).map_err(lib_err)?;
        v["schema"] = json!(1);
        write_string(out, v.to_string())
    })
}

/// Searches for `P` with `PᵀGP = H`. Returns `Ok` with `{"result": "isometric", "P": ...}`,
/// or `Domain` with the JSON still written when not isometric or undecided.
///
/// # Safety
/// `left`/`right` must be live handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k3lat_find_isometry_json(
    left: *const K3latLattice,
    right: *const K3latLattice,
    budget: u64,
    out: *mut *mut c_char,
) -> K3latStatus {
    guard(|| {
        let (g, h) = (handle(left, "left")?, handle(right, "right")?);
        let outcome = find_isometry(g.gram(), h.gram(), budget).map_err(lib_err)?;
        let (v, found) = match &outcome {
            IsometryOutcome::Found(p) => (json!({"schema": 1, "result": "isometric", "P": p}), true),
            IsometryOutcome::NotIsometric(r) => (json!({"schema": 1, "result": "not-isometric", "reason": r}), false),
            IsometryOutcome::Unknown(r) => (json!({"schema": 1, "result": "unknown", "reason": r}), false),
        };
        write_string(out, v.to_string())?;
        if found {
            Ok(())
        } else {
            Err((K3latStatus::Domain, v["reason"].as_str().unwrap_or_default().to_string()))
        }
    })
}

/// Singular-fiber configuration of a parameter point given as `{"a": [...]}`,
/// a JSON array, or seven comma-separated rationals.
///
/// # Safety
/// `params` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k3lat_fibers_classify_json(params: *const c_char, out: *mut *mut c_char) -> K3latStatus {
    guard(|| {
        let a = parse_params(read_str(params, "params")?).map_err(lib_err)?;
        let mut v = fiber_json(&a).map_err(lib_err)?;
        v["schema"] = json!(1);
        write_string(out, v.to_string())
    })
}

/// Runs the full verification suite. Returns `Domain` if any check fails;
/// the report is written either way.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn k3lat_verify_all_json(seed: u64, out: *mut *mut c_char) -> K3latStatus {
    guard(|| {
        let report = verify_all(&VerifyOptions { seed, ..VerifyOptions::default() }).map_err(lib_err)?;
        let text = serde_json::to_string(&report).map_err(|e| (K3latStatus::Parse, e.to_string()))?;
        write_string(out, text)?;
        if report.passed() {
            Ok(())
        } else {
            Err((K3latStatus::Domain, format!("failing checks: {}", report.failing_ids().join(", "))))
        }
    })
}
