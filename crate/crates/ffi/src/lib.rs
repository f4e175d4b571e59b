//! C interface to `averaging-core`.
//!
//! Objects cross the boundary as opaque handles created by `avg_*_new`
//! style functions and released with the matching `avg_*_free`. Every
//! fallible call returns an [`AvgStatus`]; on failure the message is kept
//! per thread and can be read with [`avg_last_error_message`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use averaging_core::averaging::{enumerate_averaging, is_averaging, Carrier, EnumerateOptions};
use averaging_core::groups::{validate_group, FiniteGroup};
use averaging_core::magma::{is_rack, FiniteMagma, SetMap};
use averaging_core::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AvgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    GuardExceeded = 3,
    NotAGroup = 4,
    OutOfBounds = 5,
    Internal = 6,
}

/// A finite magma (binary operation table).
pub struct AvgMagma(FiniteMagma);

/// A finite group.
pub struct AvgGroup(FiniteGroup);

/// A self-map of `{0, …, n-1}`.
pub struct AvgMap(SetMap);

/// An owned list of maps, as returned by enumeration.
pub struct AvgMapList(Vec<SetMap>);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> AvgStatus {
    match e {
        Error::GuardExceeded { .. } => AvgStatus::GuardExceeded,
        Error::NotAGroup(_) => AvgStatus::NotAGroup,
        Error::Internal(_) => AvgStatus::Internal,
        _ => AvgStatus::InvalidInput,
    }
}

/// Runs `f`, recording any error or panic as the thread's last error.
fn guarded(f: impl FnOnce() -> Result<(), (AvgStatus, String)>) -> AvgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AvgStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside averaging-core".into());
            AvgStatus::Internal
        }
    }
}

fn lib(e: Error) -> (AvgStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (AvgStatus, String) {
    (AvgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (AvgStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), (AvgStatus, String)> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn read_table(size: usize, table: *const usize) -> Result<Vec<Vec<usize>>, (AvgStatus, String)> {
    if size == 0 {
        return Ok(Vec::new());
    }
    if table.is_null() {
        return Err(null("table"));
    }
    let flat = std::slice::from_raw_parts(table, size * size);
    Ok(flat.chunks(size).map(<[usize]>::to_vec).collect())
}

/// Copies the last error message into `buf` (NUL-terminated, truncated to
/// `len`). Returns the full message length excluding the terminator, or 0
/// when there is no error.
///
/// # Safety
/// `buf` must be null or point to `len` writable bytes.
#[no_mangle]
pub unsafe extern "C" fn avg_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|e| match &*e.borrow() {
        None => 0,
        Some(msg) => {
            let bytes = msg.as_bytes();
            if !buf.is_null() && len > 0 {
                let n = bytes.len().min(len - 1);
                ptr::copy_nonoverlapping(bytes.as_ptr().cast::<c_char>(), buf, n);
                *buf.add(n) = 0;
            }
            bytes.len()
        }
    })
}

/// Builds a magma from a row-major `size × size` table.
///
/// # Safety
/// `table` must point to `size * size` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn avg_magma_new(size: usize, table: *const usize, out: *mut *mut AvgMagma) -> AvgStatus {
    guarded(|| {
        let rows = read_table(size, table)?;
        let m = FiniteMagma::new(rows).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(AvgMagma(m))), "out")
    })
}

/// The flip rack `x ⋄ y = n - 1 - y`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn avg_magma_flip(size: usize, out: *mut *mut AvgMagma) -> AvgStatus {
    guarded(|| {
        if size == 0 {
            return Err((AvgStatus::InvalidInput, "size must be positive".into()));
        }
        write_out(out, Box::into_raw(Box::new(AvgMagma(FiniteMagma::flip(size)))), "out")
    })
}

/// # Safety
/// `m` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn avg_magma_free(m: *mut AvgMagma) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn avg_magma_size(m: *const AvgMagma) -> usize {
    m.as_ref().map_or(0, |m| m.0.size())
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn avg_magma_op(m: *const AvgMagma, x: usize, y: usize, out: *mut usize) -> AvgStatus {
    guarded(|| {
        let m = deref(m, "magma")?;
        if x >= m.0.size() || y >= m.0.size() {
            return Err((AvgStatus::OutOfBounds, format!("({x}, {y}) outside a magma of size {}", m.0.size())));
        }
        write_out(out, m.0.op(x, y), "out")
    })
}

/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn avg_magma_is_rack(m: *const AvgMagma, out: *mut bool) -> AvgStatus {
    guarded(|| {
        let m = deref(m, "magma")?;
        write_out(out, is_rack(&m.0), "out")
    })
}

/// Builds a group from its Cayley table; fails with `NotAGroup` when the
/// table violates a group axiom.
///
/// # Safety
/// `table` must point to `size * size` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn avg_group_new(size: usize, table: *const usize, out: *mut *mut AvgGroup) -> AvgStatus {
    guarded(|| {
        let rows = read_table(size, table)?;
        let m = FiniteMagma::new(rows).map_err(lib)?;
        let g = validate_group(m).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(AvgGroup(g))), "out")
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn avg_group_free(g: *mut AvgGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn avg_group_order(g: *const AvgGroup) -> usize {
    g.as_ref().map_or(0, |g| g.0.order())
}

/// The conjugation rack `x ⋄ y = x y x⁻¹`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn avg_group_conjugation_rack(g: *const AvgGroup, out: *mut *mut AvgMagma) -> AvgStatus {
    guarded(|| {
        let g = deref(g, "group")?;
        write_out(out, Box::into_raw(Box::new(AvgMagma(g.0.conjugation_rack()))), "out")
    })
}

/// # Safety
/// `image` must point to `size` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn avg_map_new(size: usize, image: *const usize, out: *mut *mut AvgMap) -> AvgStatus {
    guarded(|| {
        let image = if size == 0 {
            Vec::new()
        } else if image.is_null() {
            return Err(null("image"));
        } else {
            std::slice::from_raw_parts(image, size).to_vec()
        };
        let a = SetMap::endo(image).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(AvgMap(a))), "out")
    })
}

/// # Safety
/// `a` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn avg_map_free(a: *mut AvgMap) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn avg_map_size(a: *const AvgMap) -> usize {
    a.as_ref().map_or(0, |a| a.0.len())
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn avg_map_get(a: *const AvgMap, x: usize, out: *mut usize) -> AvgStatus {
    guarded(|| {
        let a = deref(a, "map")?;
        if x >= a.0.len() {
            return Err((AvgStatus::OutOfBounds, format!("{x} outside a map on {} points", a.0.len())));
        }
        write_out(out, a.0.apply(x), "out")
    })
}

/// Whether `A(x) ⋄ A(y) = A(A(x) ⋄ y)` for all `x, y` in the rack `m`.
///
/// # Safety
/// `m`, `a` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn avg_is_averaging_rack(m: *const AvgMagma, a: *const AvgMap, out: *mut bool) -> AvgStatus {
    guarded(|| {
        let (m, a) = (deref(m, "magma")?, deref(a, "map")?);
        let v = is_averaging(Carrier::Rack(&m.0), &a.0).map_err(lib)?;
        write_out(out, v.holds, "out")
    })
}

/// Whether `A(x) A(y) A(x)⁻¹ = A(A(x) y A(x)⁻¹)` for all `x, y` in `g`.
///
/// # Safety
/// `g`, `a` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn avg_is_averaging_group(g: *const AvgGroup, a: *const AvgMap, out: *mut bool) -> AvgStatus {
    guarded(|| {
        let (g, a) = (deref(g, "group")?, deref(a, "map")?);
        let v = is_averaging(Carrier::Group(&g.0), &a.0).map_err(lib)?;
        write_out(out, v.holds, "out")
    })
}

/// All averaging operators on the rack `m`. `max_size` of 0 keeps the
/// library's default guard.
///
/// # Safety
/// `m` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn avg_enumerate_averaging_rack(
    m: *const AvgMagma,
    max_size: usize,
    out: *mut *mut AvgMapList,
) -> AvgStatus {
    guarded(|| {
        let m = deref(m, "magma")?;
        let mut opts = EnumerateOptions::default();
        if max_size > 0 {
            opts.max_size = max_size;
        }
        let maps = enumerate_averaging(Carrier::Rack(&m.0), opts).map_err(lib)?;
        write_out(out, Box::into_raw(Box::new(AvgMapList(maps))), "out")
    })
}

/// # Safety
/// `l` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn avg_map_list_len(l: *const AvgMapList) -> usize {
    l.as_ref().map_or(0, |l| l.0.len())
}

/// Copies entry `i` into a new map handle owned by the caller.
///
/// # Safety
/// `l` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn avg_map_list_get(l: *const AvgMapList, i: usize, out: *mut *mut AvgMap) -> AvgStatus {
    guarded(|| {
        let l = deref(l, "list")?;
        let a = l
            .0
            .get(i)
            .ok_or_else(|| (AvgStatus::OutOfBounds, format!("index {i} outside a list of {}", l.0.len())))?;
        write_out(out, Box::into_raw(Box::new(AvgMap(a.clone()))), "out")
    })
}

/// # Safety
/// `l` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn avg_map_list_free(l: *mut AvgMapList) {
    if !l.is_null() {
        drop(Box::from_raw(l));
    }
}
