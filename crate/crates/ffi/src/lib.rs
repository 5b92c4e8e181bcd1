//! C interface to the `bergman` library.
//!
//! Matroids cross the boundary as opaque `BergmanMatroid` handles. Every
//! fallible call returns a `BergmanStatus`; on failure the message is
//! available from `bergman_last_error` until the next call on the same
//! thread. Strings returned by the library must be released with
//! `bergman_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bergman::cli::CliError;
use bergman::cremona;
use bergman::fan;
use bergman::generators::GeneratorSpec;
use bergman::{ElementSet, Matroid};

/// Result codes. Values 2, 3 and 4 match the command-line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BergmanStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    BudgetExceeded = 3,
    InvariantViolation = 4,
    Panic = 5,
}

/// Opaque matroid handle.
pub struct BergmanMatroid {
    inner: Matroid,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(e: impl Into<CliError>) -> BergmanStatus {
    let e = e.into();
    set_error(&e.message);
    match e.code {
        3 => BergmanStatus::BudgetExceeded,
        4 => BergmanStatus::InvariantViolation,
        _ => BergmanStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> BergmanStatus) -> BergmanStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("internal panic");
            BergmanStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, BergmanStatus> {
    if s.is_null() {
        set_error("null string argument");
        return Err(BergmanStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string argument is not UTF-8");
        BergmanStatus::InvalidInput
    })
}

unsafe fn handle<'a>(m: *const BergmanMatroid) -> Result<&'a Matroid, BergmanStatus> {
    if m.is_null() {
        set_error("null matroid handle");
        return Err(BergmanStatus::NullPointer);
    }
    Ok(&(*m).inner)
}

fn give(m: Matroid, out: *mut *mut BergmanMatroid) -> BergmanStatus {
    if out.is_null() {
        set_error("null output pointer");
        return BergmanStatus::NullPointer;
    }
    unsafe { *out = Box::into_raw(Box::new(BergmanMatroid { inner: m })) };
    BergmanStatus::Ok
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

macro_rules! out {
    ($p:expr, $v:expr) => {{
        if $p.is_null() {
            set_error("null output pointer");
            return BergmanStatus::NullPointer;
        }
        unsafe { *$p = $v };
        BergmanStatus::Ok
    }};
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bergman_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message of the last failed call on this thread, or NULL. Owned by the
/// library; valid until the next call.
#[no_mangle]
pub extern "C" fn bergman_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a matroid from its JSON file format.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bergman_matroid_from_json(json: *const c_char, out: *mut *mut BergmanMatroid) -> BergmanStatus {
    guard(|| {
        let text = tri!(read_str(json));
        match Matroid::from_json(text) {
            Ok(m) => give(m, out),
            Err(e) => fail(e),
        }
    })
}

/// Builds a matroid from a generator string such as `"A3"` or `"fano"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bergman_matroid_generate(spec: *const c_char, out: *mut *mut BergmanMatroid) -> BergmanStatus {
    guard(|| {
        let spec = tri!(read_str(spec));
        match spec.parse::<GeneratorSpec>().and_then(|g| g.build()) {
            Ok(m) => give(m, out),
            Err(e) => fail(e),
        }
    })
}

/// Releases a handle. NULL is ignored.
///
/// # Safety
/// `m` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bergman_matroid_free(m: *mut BergmanMatroid) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bergman_matroid_size(m: *const BergmanMatroid, out: *mut usize) -> BergmanStatus {
    guard(|| {
        let m = tri!(handle(m));
        out!(out, m.size())
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bergman_matroid_rank(m: *const BergmanMatroid, out: *mut usize) -> BergmanStatus {
    guard(|| {
        let m = tri!(handle(m));
        out!(out, m.rank())
    })
}

/// Rank of the subset given by `len` element indices.
///
/// # Safety
/// `elements` must point to `len` readable values (or be NULL when `len`
/// is 0); `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bergman_matroid_rank_of(
    m: *const BergmanMatroid,
    elements: *const usize,
    len: usize,
    out: *mut usize,
) -> BergmanStatus {
    guard(|| {
        let m = tri!(handle(m));
        let idx: &[usize] = if len == 0 {
            &[]
        } else if elements.is_null() {
            set_error("null element array");
            return BergmanStatus::NullPointer;
        } else {
            std::slice::from_raw_parts(elements, len)
        };
        let set: ElementSet = match m.set_of(idx) {
            Ok(s) => s,
            Err(e) => return fail(e),
        };
        out!(out, m.rk(set))
    })
}

/// Serializes the matroid; free the result with `bergman_string_free`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bergman_matroid_to_json(m: *const BergmanMatroid, out: *mut *mut c_char) -> BergmanStatus {
    guard(|| {
        let m = tri!(handle(m));
        let text = match m.to_json() {
            Ok(t) => t,
            Err(e) => return fail(e),
        };
        out!(out, CString::new(text).expect("JSON has no NUL").into_raw())
    })
}

/// Number of Cremona bases, refusing ground sets larger than `budget`.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bergman_cremona_count(m: *const BergmanMatroid, budget: usize, out: *mut usize) -> BergmanStatus {
    guard(|| {
        let m = tri!(handle(m));
        match cremona::enumerate_cremona_bases(m, budget) {
            Ok(b) => out!(out, b.len()),
            Err(e) => fail(e),
        }
    })
}

/// Vertex and edge counts of the ray adjacency graph.
///
/// # Safety
/// `m` must be a live handle; both outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn bergman_ray_graph_size(
    m: *const BergmanMatroid,
    vertices: *mut usize,
    edges: *mut usize,
) -> BergmanStatus {
    guard(|| {
        let m = tri!(handle(m));
        if vertices.is_null() || edges.is_null() {
            set_error("null output pointer");
            return BergmanStatus::NullPointer;
        }
        match fan::ray_adjacency_graph(m) {
            Ok(g) => {
                *vertices = g.vertices.len();
                *edges = g.edges.len();
                BergmanStatus::Ok
            }
            Err(e) => fail(e),
        }
    })
}

/// Releases a string returned by the library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bergman_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
