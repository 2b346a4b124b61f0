//! C ABI over `kmroots`.
//!
//! Objects are opaque handles created by `km_*_new`/`km_*_parse` and
//! released with the matching `km_*_free`. Every fallible call returns a
//! [`KmStatus`]; on failure `km_last_error` describes the most recent error
//! on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use kmroots::classify::group_index;
use kmroots::dsl::parse_diagram;
use kmroots::roots::{RootSystem, RootVector};
use kmroots::subsystem::{check_star_bounded, Embedding};
use kmroots::{Error, GeneralizedCartanMatrix, TypeTag};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Syntax = 3,
    InvalidMatrix = 4,
    NotRealRoot = 5,
    NotSubsystem = 6,
    Exceeded = 7,
    Overflow = 8,
    Panic = 9,
    Other = 10,
}

/// Matrix type.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KmType {
    Finite = 0,
    Affine = 1,
    Hyperbolic = 2,
    Indefinite = 3,
}

/// A generalized Cartan matrix.
pub struct KmCartan(GeneralizedCartanMatrix);

/// A maximal rank subsystem of a root system.
pub struct KmEmbedding(Embedding);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> KmStatus {
    match err {
        Error::Syntax { .. }
        | Error::DuplicateEdge { .. }
        | Error::BadLabel { .. }
        | Error::SelfLoop { .. }
        | Error::IndexOutOfRange { .. } => KmStatus::Syntax,
        Error::InvalidMatrix(_)
        | Error::NotSymmetrizable
        | Error::UnsupportedEdge(..)
        | Error::DimensionMismatch { .. } => KmStatus::InvalidMatrix,
        Error::NotRealRoot(_) => KmStatus::NotRealRoot,
        Error::NotCrystallographic { .. }
        | Error::AcutePair { .. }
        | Error::DependentRoots
        | Error::NotHyperbolicSubtype
        | Error::NonIntegralReflection { .. } => KmStatus::NotSubsystem,
        Error::Exceeded(_) => KmStatus::Exceeded,
        Error::Overflow(_) => KmStatus::Overflow,
        _ => KmStatus::Other,
    }
}

fn guard(f: impl FnOnce() -> Result<(), KmStatus>) -> KmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => KmStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            KmStatus::Panic
        }
    }
}

fn fail(err: Error) -> KmStatus {
    let s = status_of(&err);
    set_error(err.to_string());
    s
}

fn null() -> KmStatus {
    set_error("null pointer argument".into());
    KmStatus::NullPointer
}

/// Library version as a NUL-terminated string.
#[no_mangle]
pub extern "C" fn km_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last error on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn km_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parse diagram text (see the DSL); Coxeter diagrams need labels 3/inf.
///
/// # Safety
/// `text` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn km_cartan_parse(text: *const c_char, out: *mut *mut KmCartan) -> KmStatus {
    guard(|| {
        if text.is_null() || out.is_null() {
            return Err(null());
        }
        let s = CStr::from_ptr(text).to_str().map_err(|e| {
            set_error(e.to_string());
            KmStatus::InvalidUtf8
        })?;
        let a = parse_diagram(s).and_then(|d| d.cartan()).map_err(fail)?;
        *out = Box::into_raw(Box::new(KmCartan(a)));
        Ok(())
    })
}

/// Build from `n * n` row-major entries.
///
/// # Safety
/// `entries` points to `n * n` values; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn km_cartan_new(
    n: usize,
    entries: *const i64,
    out: *mut *mut KmCartan,
) -> KmStatus {
    guard(|| {
        if entries.is_null() || out.is_null() {
            return Err(null());
        }
        let flat = std::slice::from_raw_parts(entries, n * n);
        let rows = flat.chunks(n.max(1)).map(|r| r.to_vec()).collect();
        let a = GeneralizedCartanMatrix::new(rows).map_err(fail)?;
        *out = Box::into_raw(Box::new(KmCartan(a)));
        Ok(())
    })
}

/// # Safety
/// `a` is NULL or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn km_cartan_free(a: *mut KmCartan) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` is a valid handle.
#[no_mangle]
pub unsafe extern "C" fn km_cartan_rank(a: *const KmCartan) -> usize {
    a.as_ref().map_or(0, |a| a.0.rank())
}

/// # Safety
/// `a` is a valid handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn km_cartan_classify(a: *const KmCartan, out: *mut KmType) -> KmStatus {
    guard(|| {
        let (Some(a), false) = (a.as_ref(), out.is_null()) else {
            return Err(null());
        };
        let t = a.0.classify_type().map_err(fail)?;
        *out = match t.tag {
            TypeTag::Finite => KmType::Finite,
            TypeTag::Affine => KmType::Affine,
            TypeTag::Indefinite if t.hyperbolic => KmType::Hyperbolic,
            TypeTag::Indefinite => KmType::Indefinite,
        };
        Ok(())
    })
}

/// Whether `v` (`rank` coordinates in the simple roots) is a real root.
///
/// # Safety
/// `a` is a valid handle, `v` points to `rank` values, `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn km_is_real_root(
    a: *const KmCartan,
    v: *const i64,
    out: *mut bool,
) -> KmStatus {
    guard(|| {
        let (Some(a), false, false) = (a.as_ref(), v.is_null(), out.is_null()) else {
            return Err(null());
        };
        let n = a.0.rank();
        let sys = RootSystem::new(&a.0).map_err(fail)?;
        *out = sys.is_real_root(&RootVector(std::slice::from_raw_parts(v, n).to_vec()));
        Ok(())
    })
}

/// Subsystem with simple roots given as `rank * rank` row-major
/// coordinates (one root per row).
///
/// # Safety
/// `a` is a valid handle, `roots` points to `rank * rank` values, `out` is
/// writable.
#[no_mangle]
pub unsafe extern "C" fn km_embedding_new(
    a: *const KmCartan,
    roots: *const i64,
    out: *mut *mut KmEmbedding,
) -> KmStatus {
    guard(|| {
        let (Some(a), false, false) = (a.as_ref(), roots.is_null(), out.is_null()) else {
            return Err(null());
        };
        let n = a.0.rank();
        let flat = std::slice::from_raw_parts(roots, n * n);
        let roots = flat
            .chunks(n.max(1))
            .map(|r| RootVector(r.to_vec()))
            .collect();
        let e = Embedding::new(&a.0, roots).map_err(fail)?;
        *out = Box::into_raw(Box::new(KmEmbedding(e)));
        Ok(())
    })
}

/// # Safety
/// `e` is NULL or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn km_embedding_free(e: *mut KmEmbedding) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// # Safety
/// `e` is a valid handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn km_embedding_lattice_index(
    e: *const KmEmbedding,
    out: *mut u64,
) -> KmStatus {
    guard(|| {
        let (Some(e), false) = (e.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = e.0.lattice_index();
        Ok(())
    })
}

/// Index of the reflection subgroup, by coset enumeration with at most
/// `max_cosets` live cosets.
///
/// # Safety
/// `e` is a valid handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn km_embedding_group_index(
    e: *const KmEmbedding,
    max_cosets: usize,
    out: *mut u64,
) -> KmStatus {
    guard(|| {
        let (Some(e), false) = (e.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = group_index(&e.0, max_cosets).map_err(fail)? as u64;
        Ok(())
    })
}

/// Condition (*) on roots of height at most `height`.
///
/// # Safety
/// `e` is a valid handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn km_embedding_star(
    e: *const KmEmbedding,
    height: u64,
    out: *mut bool,
) -> KmStatus {
    guard(|| {
        let (Some(e), false) = (e.as_ref(), out.is_null()) else {
            return Err(null());
        };
        *out = check_star_bounded(&e.0, height).map_err(fail)?.holds();
        Ok(())
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = CString::new("rank 3\nedge 1 2 3\nedge 2 3 inf\n").unwrap();
        let mut a = ptr::null_mut();
        unsafe {
            assert_eq!(km_cartan_parse(text.as_ptr(), &mut a), KmStatus::Ok);
            assert_eq!(km_cartan_rank(a), 3);
            let mut t = KmType::Finite;
            assert_eq!(km_cartan_classify(a, &mut t), KmStatus::Ok);
            assert_eq!(t, KmType::Hyperbolic);
            km_cartan_free(a);
        }
    }
}
