//! C ABI for `modlat`.
//!
//! Handles are opaque and owned by the caller, who releases them with the
//! matching `*_free` function. Functions return a [`ModlatStatus`]; on
//! failure [`modlat_last_error`] describes the problem. Strings returned
//! through out-parameters are released with [`modlat_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use modlat::algebra::{Group, DEFAULT_GROUP_CAP};
use modlat::bol::canonical_bol;
use modlat::rebuild::roundtrip_check;
use modlat::wildcard::{enumerate, rowset_to_json};
use modlat::{io, Lattice, LatticeError, Pls};

/// Result codes of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModlatStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NotModular = 4,
    InvalidInput = 5,
    Overflow = 6,
    Panic = 7,
}

/// A finite lattice.
pub struct ModlatLattice(Lattice);

/// A partial linear space.
pub struct ModlatPls(Pls);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).expect("no interior nul"));
}

struct Failure(ModlatStatus, String);

impl Failure {
    fn input(e: impl std::fmt::Display) -> Self {
        Failure(ModlatStatus::InvalidInput, e.to_string())
    }
}

impl From<io::IoError> for Failure {
    fn from(e: io::IoError) -> Self {
        let status = match &e {
            io::IoError::Json(_) | io::IoError::Format(_) => ModlatStatus::ParseError,
            io::IoError::Lattice(LatticeError::NotModular) => ModlatStatus::NotModular,
            _ => ModlatStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

impl From<modlat::bol::BolError> for Failure {
    fn from(e: modlat::bol::BolError) -> Self {
        let status = match e {
            modlat::bol::BolError::Lattice(LatticeError::NotModular) => ModlatStatus::NotModular,
            _ => ModlatStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> ModlatStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            ModlatStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            ModlatStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(ModlatStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|e| Failure(ModlatStatus::InvalidUtf8, e.to_string()))
}

unsafe fn read_json(s: *const c_char) -> Result<serde_json::Value, Failure> {
    serde_json::from_str(read_str(s)?).map_err(|e| Failure(ModlatStatus::ParseError, e.to_string()))
}

unsafe fn handle<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure(ModlatStatus::NullPointer, "null handle".into()))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure(ModlatStatus::NullPointer, "null output pointer".into()));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(Failure::input)?;
    put(out, c.into_raw())
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn modlat_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn modlat_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn modlat_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Lattice from `{"names": [...], "covers": [[lo, hi], ...]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn modlat_lattice_from_json(
    json: *const c_char,
    out: *mut *mut ModlatLattice,
) -> ModlatStatus {
    guard(|| {
        let l = io::lattice_from_json(&read_json(json)?)?;
        put(out, Box::into_raw(Box::new(ModlatLattice(l))))
    })
}

/// Subgroup lattice of `Z_{f0} × … × Z_{f(len-1)}`.
///
/// # Safety
/// `factors` must point to `len` values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn modlat_lattice_from_group(
    factors: *const u64,
    len: usize,
    out: *mut *mut ModlatLattice,
) -> ModlatStatus {
    guard(|| {
        if factors.is_null() && len > 0 {
            return Err(Failure(ModlatStatus::NullPointer, "null factors".into()));
        }
        let f: &[u64] = if len == 0 {
            &[]
        } else {
            std::slice::from_raw_parts(factors, len)
        };
        let g = Group::new(f, DEFAULT_GROUP_CAP).map_err(Failure::input)?;
        let (l, _) = g.subgroup_lattice().map_err(Failure::input)?;
        put(out, Box::into_raw(Box::new(ModlatLattice(l))))
    })
}

/// # Safety
/// `l` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn modlat_lattice_free(l: *mut ModlatLattice) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}

/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_lattice_size(l: *const ModlatLattice, out: *mut usize) -> ModlatStatus {
    guard(|| put(out, handle(l)?.0.len()))
}

/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_lattice_is_modular(
    l: *const ModlatLattice,
    out: *mut bool,
) -> ModlatStatus {
    guard(|| put(out, handle(l)?.0.is_modular()))
}

/// Lattice JSON of `l`.
///
/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_lattice_to_json(
    l: *const ModlatLattice,
    out: *mut *mut c_char,
) -> ModlatStatus {
    guard(|| put_string(out, io::lattice_to_json(&handle(l)?.0).to_string()))
}

/// Hasse diagram in DOT.
///
/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_lattice_to_dot(
    l: *const ModlatLattice,
    out: *mut *mut c_char,
) -> ModlatStatus {
    guard(|| put_string(out, io::lattice_to_dot(&handle(l)?.0)))
}

/// Parameter report (`j`, `delta`, `s`, `i`, `o`, `mu`, `r*`, verdicts) as
/// JSON.
///
/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_lattice_params_json(
    l: *const ModlatLattice,
    out: *mut *mut c_char,
) -> ModlatStatus {
    guard(|| {
        let l = &handle(l)?.0;
        if !l.is_modular() {
            return Err(Failure(ModlatStatus::NotModular, "lattice is not modular".into()));
        }
        let p = modlat::analysis::params(l).map_err(Failure::input)?;
        put_string(out, serde_json::to_string(&p).map_err(Failure::input)?)
    })
}

/// Canonical base of lines as JSON (`points`, `lines`, `tops`, `bottoms`).
///
/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_lattice_bol_json(
    l: *const ModlatLattice,
    out: *mut *mut c_char,
) -> ModlatStatus {
    guard(|| {
        let b = canonical_bol(&handle(l)?.0)?;
        put_string(out, io::bol_to_json(&b).to_string())
    })
}

/// Point-line space of the canonical base of lines.
///
/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_lattice_canonical_pls(
    l: *const ModlatLattice,
    out: *mut *mut ModlatPls,
) -> ModlatStatus {
    guard(|| {
        let b = canonical_bol(&handle(l)?.0)?;
        put(out, Box::into_raw(Box::new(ModlatPls(b.pls))))
    })
}

/// Number of closed ideals of the canonical base, which equals the size of
/// a modular lattice.
///
/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_lattice_closed_ideal_count(
    l: *const ModlatLattice,
    out: *mut u64,
) -> ModlatStatus {
    guard(|| {
        let l = &handle(l)?.0;
        let b = canonical_bol(l)?;
        let rows = enumerate(&b.point_poset(l), &b.lines_as_positions()).map_err(Failure::input)?;
        let n: u64 = rows
            .count()
            .try_into()
            .map_err(|_| Failure(ModlatStatus::Overflow, "count exceeds 64 bits".into()))?;
        put(out, n)
    })
}

/// Whether the lattice is rebuilt up to isomorphism from its canonical base.
///
/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_lattice_roundtrip(
    l: *const ModlatLattice,
    out: *mut bool,
) -> ModlatStatus {
    guard(|| {
        let l = &handle(l)?.0;
        if !l.is_modular() {
            return Err(Failure(ModlatStatus::NotModular, "lattice is not modular".into()));
        }
        let rt = roundtrip_check(l).map_err(Failure::input)?;
        put(out, rt.ok())
    })
}

/// Wildcard rows of the closed ideals of a poset under lines, as row-set
/// JSON. `lines_json` may be null for no lines.
///
/// # Safety
/// Nul-terminated strings and a writable output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_enumerate_json(
    poset_json: *const c_char,
    lines_json: *const c_char,
    out: *mut *mut c_char,
) -> ModlatStatus {
    guard(|| {
        let p = io::poset_from_json(&read_json(poset_json)?)?;
        let lines = if lines_json.is_null() {
            Vec::new()
        } else {
            io::lines_from_json(&read_json(lines_json)?, p.names())?
        };
        let rows = enumerate(&p, &lines).map_err(Failure::input)?;
        put_string(out, rowset_to_json(&rows).to_string())
    })
}

/// Point-line space from `{"points": [...], "lines": [[...], ...]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn modlat_pls_from_json(
    json: *const c_char,
    out: *mut *mut ModlatPls,
) -> ModlatStatus {
    guard(|| {
        let p = io::pls_from_json(&read_json(json)?)?;
        put(out, Box::into_raw(Box::new(ModlatPls(p))))
    })
}

/// # Safety
/// `p` must come from this library or be null.
#[no_mangle]
pub unsafe extern "C" fn modlat_pls_free(p: *mut ModlatPls) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_pls_rstar(p: *const ModlatPls, out: *mut usize) -> ModlatStatus {
    guard(|| put(out, handle(p)?.0.rstar()))
}

/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_pls_is_acyclic(p: *const ModlatPls, out: *mut bool) -> ModlatStatus {
    guard(|| put(out, handle(p)?.0.is_acyclic()))
}

/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_pls_num_components(
    p: *const ModlatPls,
    out: *mut usize,
) -> ModlatStatus {
    guard(|| put(out, handle(p)?.0.num_components()))
}

/// PLS JSON of `p`.
///
/// # Safety
/// Valid handle and output pointer.
#[no_mangle]
pub unsafe extern "C" fn modlat_pls_to_json(p: *const ModlatPls, out: *mut *mut c_char) -> ModlatStatus {
    guard(|| put_string(out, io::pls_to_json(&handle(p)?.0).to_string()))
}
