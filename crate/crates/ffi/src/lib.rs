//! C ABI over `weylrank`.
//!
//! Every fallible function returns a [`WrStatus`]; on failure the message is
//! available through [`wr_last_error_message`]. Handles are opaque and must be
//! released with their `_free` function. Strings returned through `char **`
//! are owned by the caller and released with [`wr_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use weylrank::bredon::{self, library, CoefficientSystem, WCWComplex, WcwDocument};
use weylrank::cli::{steinberg_table, Format};
use weylrank::ktheory::{self, Arrangement};
use weylrank::{Error, WeylGroup};

/// Result codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Validation = 3,
    Internal = 4,
    Panic = 5,
    BufferTooSmall = 6,
}

/// Coefficient system selector.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WrSystem {
    Rt = 0,
    Zw = 1,
}

/// A root datum with its Weyl group.
pub struct WrDatum {
    group: WeylGroup,
}

/// A validated W-CW complex.
pub struct WrComplex {
    complex: WCWComplex,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let clean = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(clean).unwrap_or_default());
}

fn status_of(err: &Error) -> WrStatus {
    if err.is_internal() {
        WrStatus::Internal
    } else {
        WrStatus::Validation
    }
}

fn guard(body: impl FnOnce() -> Result<(), WrStatus>) -> WrStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => WrStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("panic inside weylrank");
            WrStatus::Panic
        }
    }
}

fn fail(err: Error) -> WrStatus {
    set_error(&err.to_string());
    status_of(&err)
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, WrStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        return Err(WrStatus::NullPointer);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        WrStatus::InvalidUtf8
    })
}

fn non_null<T>(p: *const T) -> Result<(), WrStatus> {
    if p.is_null() {
        set_error("null pointer argument");
        Err(WrStatus::NullPointer)
    } else {
        Ok(())
    }
}

/// Copies the last error message into `buf` (NUL terminated) and returns
/// the buffer size it needs. Passing a null `buf` only queries the size.
///
/// # Safety
/// `buf` must be null or point to `capacity` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn wr_last_error_message(buf: *mut c_char, capacity: usize) -> usize {
    LAST_ERROR.with(|e| {
        let bytes = e.borrow();
        let bytes = bytes.as_bytes_with_nul();
        if !buf.is_null() && capacity >= bytes.len() {
            ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, bytes.len());
        }
        bytes.len()
    })
}

/// Static version string.
#[no_mangle]
pub extern "C" fn wr_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn wr_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a datum such as `"A2"` or `"A1xT1"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wr_datum_new(spec: *const c_char, out: *mut *mut WrDatum) -> WrStatus {
    guard(|| {
        non_null(out)?;
        let spec = read_str(spec)?;
        let group = WeylGroup::from_spec(spec).map_err(fail)?;
        *out = Box::into_raw(Box::new(WrDatum { group }));
        Ok(())
    })
}

/// # Safety
/// `datum` must be null or a handle from [`wr_datum_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn wr_datum_free(datum: *mut WrDatum) {
    if !datum.is_null() {
        drop(Box::from_raw(datum));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wr_datum_weyl_order(datum: *const WrDatum, out: *mut u64) -> WrStatus {
    guard(|| {
        non_null(datum)?;
        non_null(out)?;
        *out = (*datum).group.order() as u64;
        Ok(())
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wr_datum_positive_root_count(datum: *const WrDatum, out: *mut u64) -> WrStatus {
    guard(|| {
        non_null(datum)?;
        non_null(out)?;
        *out = (*datum).group.datum().positive_roots.len() as u64;
        Ok(())
    })
}

/// Number of chambers of the root arrangement.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn wr_datum_chamber_count(datum: *const WrDatum, out: *mut u64) -> WrStatus {
    guard(|| {
        non_null(datum)?;
        non_null(out)?;
        let arr = Arrangement::root_arrangement((*datum).group.datum());
        *out = u64::try_from(arr.chamber_count()).map_err(|_| {
            set_error("chamber count overflows");
            WrStatus::Validation
        })?;
        Ok(())
    })
}

/// Tab-separated Steinberg table for a family (`"chain"`, `"parabolic"`, ...).
///
/// # Safety
/// `datum_spec` and `family` must be NUL-terminated strings, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn wr_steinberg_table(
    datum_spec: *const c_char,
    family: *const c_char,
    out: *mut *mut c_char,
) -> WrStatus {
    guard(|| {
        non_null(out)?;
        let datum_spec = read_str(datum_spec)?;
        let family = read_str(family)?;
        let text = steinberg_table(datum_spec, family, Format::Tsv).map_err(fail)?;
        *out = CString::new(text).map_err(|_| WrStatus::Internal)?.into_raw();
        Ok(())
    })
}

/// Loads a `wcw/1` JSON document.
///
/// # Safety
/// `json` must be a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn wr_complex_load_json(json: *const c_char, out: *mut *mut WrComplex) -> WrStatus {
    guard(|| {
        non_null(out)?;
        let doc = WcwDocument::from_json(read_str(json)?).map_err(fail)?;
        let complex = bredon::load_wcw_complex(&doc).map_err(fail)?;
        *out = Box::into_raw(Box::new(WrComplex { complex }));
        Ok(())
    })
}

/// Loads `"point"`, `"circle"` or `"torus"`.
///
/// # Safety
/// `name` must be a NUL-terminated string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn wr_complex_load_bundled(name: *const c_char, out: *mut *mut WrComplex) -> WrStatus {
    guard(|| {
        non_null(out)?;
        let name = read_str(name)?;
        let doc = library::bundled(name).ok_or_else(|| {
            set_error(&format!("no bundled complex `{name}`"));
            WrStatus::Validation
        })?;
        let complex = bredon::load_wcw_complex(&doc).map_err(fail)?;
        *out = Box::into_raw(Box::new(WrComplex { complex }));
        Ok(())
    })
}

/// # Safety
/// `complex` must be null or a handle from a `wr_complex_load_*` function.
#[no_mangle]
pub unsafe extern "C" fn wr_complex_free(complex: *mut WrComplex) {
    if !complex.is_null() {
        drop(Box::from_raw(complex));
    }
}

unsafe fn write_sizes(values: &[usize], out: *mut usize, capacity: usize, len: *mut usize) -> Result<(), WrStatus> {
    non_null(len)?;
    *len = values.len();
    if capacity < values.len() {
        set_error("output buffer too small");
        return Err(WrStatus::BufferTooSmall);
    }
    if !values.is_empty() {
        non_null(out)?;
        ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    }
    Ok(())
}

/// Per-degree ranks over the fraction field. `*len` always receives the
/// degree count; `WR_STATUS_BUFFER_TOO_SMALL` when `capacity` is short.
///
/// # Safety
/// `out` must hold `capacity` elements; other pointers valid.
#[no_mangle]
pub unsafe extern "C" fn wr_complex_rational_ranks(
    complex: *const WrComplex,
    system: WrSystem,
    seed: u64,
    out: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> WrStatus {
    guard(|| {
        non_null(complex)?;
        let system = match system {
            WrSystem::Rt => CoefficientSystem::Rt,
            WrSystem::Zw => CoefficientSystem::Zw,
        };
        let cc = bredon::cochain_complex(&(*complex).complex, system).map_err(fail)?;
        let ranks = bredon::rational_cohomology_ranks(&cc, seed).map_err(fail)?;
        write_sizes(&ranks, out, capacity, len)
    })
}

/// Betti numbers of the underlying space.
///
/// # Safety
/// As for [`wr_complex_rational_ranks`].
#[no_mangle]
pub unsafe extern "C" fn wr_complex_betti(
    complex: *const WrComplex,
    out: *mut usize,
    capacity: usize,
    len: *mut usize,
) -> WrStatus {
    guard(|| {
        non_null(complex)?;
        let betti = (*complex).complex.expand_ordinary_complex().betti();
        write_sizes(&betti, out, capacity, len)
    })
}

/// `2^{nr} · Σ betti`.
///
/// # Safety
/// `betti` must hold `len` elements (may be null when `len == 0`).
#[no_mangle]
pub unsafe extern "C" fn wr_inertia_rank(n: u32, r: u32, betti: *const usize, len: usize, out: *mut u64) -> WrStatus {
    guard(|| {
        non_null(out)?;
        let slice = if len == 0 {
            &[][..]
        } else {
            non_null(betti)?;
            std::slice::from_raw_parts(betti, len)
        };
        let rank = ktheory::inertia_rank(n, r, slice).map_err(fail)?;
        *out = u64::try_from(rank).map_err(|_| {
            set_error("rank overflows 64 bits");
            WrStatus::Validation
        })?;
        Ok(())
    })
}
