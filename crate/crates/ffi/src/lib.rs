//! C interface.  Objects are opaque heap handles released with the matching
//! `*_free`; every fallible call returns a [`SolenoidStatus`] and leaves a
//! message retrievable with [`solenoid_last_error`].  Strings are returned by
//! copying into caller buffers: `*needed` always receives the size including
//! the terminating NUL, and `BufferTooSmall` is returned when it exceeds `len`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use solenoid::charmap::CharMap;
use solenoid::complex::{flip_path, pentagon_cell, pentagon_pairs, relation_element};
use solenoid::{Error, ExtendedRational, MoebiusMap, Subgroup, Tessellation};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolenoidStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidSubgroup = 4,
    NotContained = 5,
    Torsion = 6,
    NotFlippable = 7,
    NoSuchOrbit = 8,
    NotAnEdge = 9,
    BudgetExhausted = 10,
    Io = 11,
    InvalidTessellation = 12,
    Internal = 13,
    Panic = 14,
    BufferTooSmall = 15,
}

/// A finite-index subgroup of PSL(2,Z).
pub struct SolenoidSubgroup(Arc<Subgroup>);

/// A tessellation with its distinguished oriented edge.
pub struct SolenoidTessellation(Tessellation);

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: String) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg);
}

fn status_of(e: &Error) -> SolenoidStatus {
    match e {
        Error::Parse(_) | Error::Json(_) | Error::DuplicatePoints | Error::NotUnimodular(_) => SolenoidStatus::Parse,
        Error::InvalidSubgroup(_) | Error::InvalidLevel(_) | Error::EnumerationLimit(_) => {
            SolenoidStatus::InvalidSubgroup
        }
        Error::NotContained => SolenoidStatus::NotContained,
        Error::Torsion => SolenoidStatus::Torsion,
        Error::NotFlippable(..) => SolenoidStatus::NotFlippable,
        Error::NoSuchOrbit(_) => SolenoidStatus::NoSuchOrbit,
        Error::NotAnEdge(_) => SolenoidStatus::NotAnEdge,
        Error::BudgetExhausted(_) => SolenoidStatus::BudgetExhausted,
        Error::Io(_) => SolenoidStatus::Io,
        Error::InvalidTessellation(_) => SolenoidStatus::InvalidTessellation,
        _ => SolenoidStatus::Internal,
    }
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), SolenoidStatus>) -> SolenoidStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SolenoidStatus::Ok,
        Ok(Err(s)) => s,
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(msg);
            SolenoidStatus::Panic
        }
    }
}

fn fail(e: Error) -> SolenoidStatus {
    set_error(e.to_string());
    status_of(&e)
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, SolenoidStatus> {
    if p.is_null() {
        set_error("null string argument".into());
        return Err(SolenoidStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not UTF-8".into());
        SolenoidStatus::InvalidUtf8
    })
}

unsafe fn obj<'a, T>(p: *const T) -> Result<&'a T, SolenoidStatus> {
    p.as_ref().ok_or_else(|| {
        set_error("null handle".into());
        SolenoidStatus::NullPointer
    })
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), SolenoidStatus> {
    if out.is_null() {
        set_error("null output pointer".into());
        return Err(SolenoidStatus::NullPointer);
    }
    out.write(v);
    Ok(())
}

unsafe fn copy_str(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> Result<(), SolenoidStatus> {
    let n = s.len() + 1;
    if !needed.is_null() {
        needed.write(n);
    }
    if buf.is_null() || len < n {
        set_error(format!("buffer of {len} bytes is too small, {n} needed"));
        return Err(SolenoidStatus::BufferTooSmall);
    }
    std::ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    buf.add(s.len()).write(0);
    Ok(())
}

/// Copies the message of the last failed call on this thread.
///
/// # Safety
/// `buf` must point to `len` writable bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn solenoid_last_error(buf: *mut c_char, len: usize, needed: *mut usize) -> SolenoidStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match copy_str(&msg, buf, len, needed) {
        Ok(()) => SolenoidStatus::Ok,
        Err(s) => s,
    }
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn solenoid_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Looks up a group by name: `gamma<N>`, `torus`, `full` or `file:<path>`.
///
/// # Safety
/// `name` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn solenoid_subgroup_named(
    name: *const c_char,
    out: *mut *mut SolenoidSubgroup,
) -> SolenoidStatus {
    guard(|| {
        let name = str_arg(name)?;
        let k = Subgroup::named(name).map_err(fail)?;
        put(out, Box::into_raw(Box::new(SolenoidSubgroup(Arc::new(k)))))
    })
}

/// # Safety
/// `k` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn solenoid_subgroup_free(k: *mut SolenoidSubgroup) {
    if !k.is_null() {
        drop(Box::from_raw(k));
    }
}

/// # Safety
/// `k` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn solenoid_subgroup_index(k: *const SolenoidSubgroup, out: *mut usize) -> SolenoidStatus {
    guard(|| put(out, obj(k)?.0.index()))
}

/// # Safety
/// `k` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn solenoid_subgroup_is_torsion_free(
    k: *const SolenoidSubgroup,
    out: *mut bool,
) -> SolenoidStatus {
    guard(|| put(out, obj(k)?.0.is_torsion_free()))
}

/// Membership of the element with matrix `[a, b; c, d]`.
///
/// # Safety
/// `k` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn solenoid_subgroup_contains(
    k: *const SolenoidSubgroup,
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    out: *mut bool,
) -> SolenoidStatus {
    guard(|| {
        let m = MoebiusMap::new(a, b, c, d).map_err(fail)?;
        put(out, obj(k)?.0.contains(&m))
    })
}

/// The Farey tessellation viewed as invariant under `k`.
///
/// # Safety
/// `k` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn solenoid_tessellation_farey(
    k: *const SolenoidSubgroup,
    out: *mut *mut SolenoidTessellation,
) -> SolenoidStatus {
    guard(|| {
        let t = Tessellation::farey_arc(obj(k)?.0.clone());
        put(out, Box::into_raw(Box::new(SolenoidTessellation(t))))
    })
}

/// # Safety
/// `t` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn solenoid_tessellation_free(t: *mut SolenoidTessellation) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// # Safety
/// `t` must be a valid handle.
#[no_mangle]
pub unsafe extern "C" fn solenoid_tessellation_label_count(
    t: *const SolenoidTessellation,
    out: *mut usize,
) -> SolenoidStatus {
    guard(|| put(out, obj(t)?.0.label_count()))
}

/// Flips the orbit `label`, returning a new handle.
///
/// # Safety
/// `t` must be a valid handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn solenoid_tessellation_flip(
    t: *const SolenoidTessellation,
    label: usize,
    out: *mut *mut SolenoidTessellation,
) -> SolenoidStatus {
    guard(|| {
        let (f, _) = obj(t)?.0.flip(label).map_err(fail)?;
        put(out, Box::into_raw(Box::new(SolenoidTessellation(f))))
    })
}

/// Whether both tessellations have the same edges.
///
/// # Safety
/// Both handles must be valid.
#[no_mangle]
pub unsafe extern "C" fn solenoid_tessellation_equals(
    a: *const SolenoidTessellation,
    b: *const SolenoidTessellation,
    out: *mut bool,
) -> SolenoidStatus {
    guard(|| put(out, obj(a)?.0.equals(&obj(b)?.0)))
}

/// # Safety
/// `t` must be a valid handle; see the module notes for the buffer contract.
#[no_mangle]
pub unsafe extern "C" fn solenoid_tessellation_to_json(
    t: *const SolenoidTessellation,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> SolenoidStatus {
    guard(|| copy_str(&obj(t)?.0.to_json(), buf, len, needed))
}

/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn solenoid_tessellation_from_json(
    json: *const c_char,
    out: *mut *mut SolenoidTessellation,
) -> SolenoidStatus {
    guard(|| {
        let t = Tessellation::from_json(str_arg(json)?).map_err(fail)?;
        put(out, Box::into_raw(Box::new(SolenoidTessellation(t))))
    })
}

/// Canonical fingerprint; equal for tessellations with the same edges and group.
///
/// # Safety
/// `t` must be a valid handle; see the module notes for the buffer contract.
#[no_mangle]
pub unsafe extern "C" fn solenoid_tessellation_fingerprint(
    t: *const SolenoidTessellation,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> SolenoidStatus {
    guard(|| copy_str(obj(t)?.0.fingerprint().as_str(), buf, len, needed))
}

/// Evaluates the characteristic map of `t` at its distinguished edge on a
/// point written `p/q`, `n` or `1/0`.
///
/// # Safety
/// `t` must be a valid handle and `x` a NUL-terminated string; see the
/// module notes for the buffer contract.
#[no_mangle]
pub unsafe extern "C" fn solenoid_charmap_eval(
    t: *const SolenoidTessellation,
    x: *const c_char,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> SolenoidStatus {
    guard(|| {
        let x: ExtendedRational = str_arg(x)?.parse().map_err(fail)?;
        let h = CharMap::distinguished(Arc::new(obj(t)?.0.clone()));
        copy_str(&h.eval(&x).to_string(), buf, len, needed)
    })
}

/// A shortest flip path from `from` to `to`.  Labels go to `labels`
/// (capacity `cap`); `*count` receives the path length.
///
/// # Safety
/// Handles must be valid; `labels` must hold `cap` entries.
#[no_mangle]
pub unsafe extern "C" fn solenoid_flip_path(
    from: *const SolenoidTessellation,
    to: *const SolenoidTessellation,
    budget: usize,
    labels: *mut usize,
    cap: usize,
    count: *mut usize,
) -> SolenoidStatus {
    guard(|| {
        let path = flip_path(&obj(from)?.0, &obj(to)?.0, budget).map_err(fail)?;
        put(count, path.len())?;
        if path.len() > cap || (labels.is_null() && !path.is_empty()) {
            set_error(format!("{} labels do not fit in {cap}", path.len()));
            return Err(SolenoidStatus::BufferTooSmall);
        }
        std::ptr::copy_nonoverlapping(path.as_ptr(), labels, path.len());
        Ok(())
    })
}

/// Builds every admissible pentagon cell of `k` and checks its relation.
///
/// # Safety
/// `k` must be a valid handle; output pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn solenoid_verify_pentagons(
    k: *const SolenoidSubgroup,
    checked: *mut usize,
    passed: *mut usize,
) -> SolenoidStatus {
    guard(|| {
        let k = obj(k)?.0.clone();
        let pairs = pentagon_pairs(&k);
        let mut ok = 0;
        for (e1, e2) in &pairs {
            let cell = pentagon_cell(&k, e1, e2).map_err(fail)?;
            if relation_element(&cell).map_err(fail)?.holds {
                ok += 1;
            }
        }
        put(checked, pairs.len())?;
        put(passed, ok)
    })
}
