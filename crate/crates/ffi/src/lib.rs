//! C ABI over `heyting_modal`.
//!
//! Algebras and nucleus lattices are opaque handles owned by the caller and
//! released with their `_free` function. Every fallible call returns an
//! [`HmStatus`]; on failure a message is available from [`hm_last_error`]
//! until the next call on the same thread. Strings returned through out
//! parameters are released with [`hm_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use heyting_modal::format::{parse_input, Input};
use heyting_modal::nuclei::{enumerate_nuclei, NucleiConfig, NucleusLattice};
use heyting_modal::presheaf::{build_presheaf, enumerate_clopen_subobjects};
use heyting_modal::verify::{verify_input, VerifyConfig};
use heyting_modal::{Error, FiniteHeytingAlgebra};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HmStatus {
    Ok = 0,
    /// A verification suite found a counterexample.
    VerificationFailed = 1,
    /// Unparseable or structurally invalid input.
    InvalidInput = 2,
    NullPointer = 3,
    /// An element or member index is out of range.
    OutOfRange = 4,
    /// A size guard was exceeded.
    TooLarge = 5,
    /// The library panicked; this is a bug.
    Panic = 6,
}

/// A finite Heyting algebra.
pub struct HmAlgebra {
    algebra: FiniteHeytingAlgebra,
}

/// The nuclei of an algebra, sorted by table.
pub struct HmNuclei {
    nuclei: NucleusLattice,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: HmStatus, msg: impl Into<String>) -> HmStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> HmStatus {
    let status = match e {
        Error::TooLarge { .. } => HmStatus::TooLarge,
        _ => HmStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

/// Clears the last error, runs `f`, and converts a panic into
/// [`HmStatus::Panic`].
fn guarded(f: impl FnOnce() -> HmStatus) -> HmStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(status) => status,
        Err(_) => fail(HmStatus::Panic, "internal panic"),
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, HmStatus> {
    if s.is_null() {
        return Err(fail(HmStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(HmStatus::InvalidInput, "string is not UTF-8"))
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes removed")
        .into_raw()
}

macro_rules! try_status {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

unsafe fn algebra_ref<'a>(a: *const HmAlgebra) -> Result<&'a FiniteHeytingAlgebra, HmStatus> {
    a.as_ref()
        .map(|a| &a.algebra)
        .ok_or_else(|| fail(HmStatus::NullPointer, "null algebra"))
}

fn element(algebra: &FiniteHeytingAlgebra, x: usize) -> Result<usize, HmStatus> {
    if x < algebra.len() {
        Ok(x)
    } else {
        Err(fail(
            HmStatus::OutOfRange,
            format!(
                "element {x} out of range for an algebra of size {}",
                algebra.len()
            ),
        ))
    }
}

unsafe fn write<T>(out: *mut T, value: T) -> HmStatus {
    match out.as_mut() {
        Some(slot) => {
            *slot = value;
            HmStatus::Ok
        }
        None => fail(HmStatus::NullPointer, "null output pointer"),
    }
}

/// Builds an algebra from a lattice document or, for a context-poset
/// document, its algebra of clopen subobjects.
///
/// # Safety
/// `json` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hm_algebra_from_json(
    json: *const c_char,
    out: *mut *mut HmAlgebra,
) -> HmStatus {
    guarded(|| {
        if out.is_null() {
            return fail(HmStatus::NullPointer, "null output pointer");
        }
        let text = try_status!(read_str(json));
        let algebra = match parse_input(text).and_then(|input| match input {
            Input::Lattice(l) => l.algebra(),
            Input::ContextPoset(p) => Ok(enumerate_clopen_subobjects(
                build_presheaf(p)?,
                &Default::default(),
            )?
            .into_algebra()),
            Input::Interpretation(_) => Err(Error::Input(
                "expected a lattice or context-poset document".into(),
            )),
        }) {
            Ok(a) => a,
            Err(e) => return from_error(e),
        };
        *out = Box::into_raw(Box::new(HmAlgebra { algebra }));
        HmStatus::Ok
    })
}

/// # Safety
/// `algebra` must be null or a handle from [`hm_algebra_from_json`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hm_algebra_free(algebra: *mut HmAlgebra) {
    if !algebra.is_null() {
        drop(Box::from_raw(algebra));
    }
}

/// Number of elements, or 0 for a null handle.
///
/// # Safety
/// `algebra` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hm_algebra_size(algebra: *const HmAlgebra) -> usize {
    algebra.as_ref().map_or(0, |a| a.algebra.len())
}

/// Index of the element named `name`.
///
/// # Safety
/// `algebra` must be a live handle, `name` a NUL-terminated string and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hm_algebra_index_of(
    algebra: *const HmAlgebra,
    name: *const c_char,
    out: *mut usize,
) -> HmStatus {
    guarded(|| {
        let a = try_status!(algebra_ref(algebra));
        let name = try_status!(read_str(name));
        match a.lattice().index_of(name) {
            Some(i) => write(out, i),
            None => fail(HmStatus::OutOfRange, format!("no element named `{name}`")),
        }
    })
}

/// Name of element `x`, to be released with [`hm_string_free`].
///
/// # Safety
/// `algebra` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hm_algebra_element_name(
    algebra: *const HmAlgebra,
    x: usize,
    out: *mut *mut c_char,
) -> HmStatus {
    guarded(|| {
        let a = try_status!(algebra_ref(algebra));
        let x = try_status!(element(a, x));
        if out.is_null() {
            return fail(HmStatus::NullPointer, "null output pointer");
        }
        *out = into_c_string(a.lattice().name(x).to_owned());
        HmStatus::Ok
    })
}

unsafe fn binary(
    algebra: *const HmAlgebra,
    x: usize,
    y: usize,
    out: *mut usize,
    op: impl FnOnce(&FiniteHeytingAlgebra, usize, usize) -> usize,
) -> HmStatus {
    guarded(|| {
        let a = try_status!(algebra_ref(algebra));
        let (x, y) = (try_status!(element(a, x)), try_status!(element(a, y)));
        write(out, op(a, x, y))
    })
}

/// # Safety
/// `algebra` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hm_algebra_meet(
    algebra: *const HmAlgebra,
    x: usize,
    y: usize,
    out: *mut usize,
) -> HmStatus {
    binary(algebra, x, y, out, |a, x, y| a.lattice().meet(x, y))
}

/// # Safety
/// `algebra` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hm_algebra_join(
    algebra: *const HmAlgebra,
    x: usize,
    y: usize,
    out: *mut usize,
) -> HmStatus {
    binary(algebra, x, y, out, |a, x, y| a.lattice().join(x, y))
}

/// `x → y`.
///
/// # Safety
/// `algebra` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hm_algebra_implies(
    algebra: *const HmAlgebra,
    x: usize,
    y: usize,
    out: *mut usize,
) -> HmStatus {
    binary(algebra, x, y, out, |a, x, y| a.implies(x, y))
}

/// `¬x`.
///
/// # Safety
/// `algebra` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hm_algebra_negation(
    algebra: *const HmAlgebra,
    x: usize,
    out: *mut usize,
) -> HmStatus {
    binary(algebra, x, x, out, |a, x, _| a.negation(x))
}

/// # Safety
/// `algebra` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hm_algebra_is_boolean(
    algebra: *const HmAlgebra,
    out: *mut bool,
) -> HmStatus {
    guarded(|| {
        let a = try_status!(algebra_ref(algebra));
        write(out, a.is_boolean())
    })
}

/// Number of regular elements (`¬¬x = x`).
///
/// # Safety
/// `algebra` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hm_algebra_regular_count(
    algebra: *const HmAlgebra,
    out: *mut usize,
) -> HmStatus {
    guarded(|| {
        let a = try_status!(algebra_ref(algebra));
        match a.regular_elements() {
            Ok(r) => write(out, r.len()),
            Err(e) => fail(HmStatus::VerificationFailed, e.to_string()),
        }
    })
}

/// Enumerates every nucleus. `max_carrier` of 0 selects the default guard.
///
/// # Safety
/// `algebra` must be a live handle and `out` valid.
#[no_mangle]
pub unsafe extern "C" fn hm_nuclei_enumerate(
    algebra: *const HmAlgebra,
    max_carrier: usize,
    out: *mut *mut HmNuclei,
) -> HmStatus {
    guarded(|| {
        let a = try_status!(algebra_ref(algebra));
        if out.is_null() {
            return fail(HmStatus::NullPointer, "null output pointer");
        }
        let config = if max_carrier == 0 {
            NucleiConfig::default()
        } else {
            NucleiConfig { max_carrier }
        };
        match enumerate_nuclei(a, &config) {
            Ok(nuclei) => {
                *out = Box::into_raw(Box::new(HmNuclei { nuclei }));
                HmStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Number of nuclei, or 0 for a null handle.
///
/// # Safety
/// `nuclei` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hm_nuclei_count(nuclei: *const HmNuclei) -> usize {
    nuclei.as_ref().map_or(0, |n| n.nuclei.len())
}

/// Copies the table of nucleus `member` into `table`, which must hold
/// `len` entries; `len` must equal the algebra size.
///
/// # Safety
/// `nuclei` must be a live handle and `table` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn hm_nuclei_table(
    nuclei: *const HmNuclei,
    member: usize,
    table: *mut usize,
    len: usize,
) -> HmStatus {
    guarded(|| {
        let Some(n) = nuclei.as_ref() else {
            return fail(HmStatus::NullPointer, "null nuclei");
        };
        if table.is_null() {
            return fail(HmStatus::NullPointer, "null table");
        }
        if member >= n.nuclei.len() {
            return fail(
                HmStatus::OutOfRange,
                format!("member {member} out of range"),
            );
        }
        let src = n.nuclei.member(member).table();
        if len != src.len() {
            return fail(
                HmStatus::OutOfRange,
                format!("table buffer holds {len} entries, need {}", src.len()),
            );
        }
        ptr::copy_nonoverlapping(src.as_ptr(), table, len);
        HmStatus::Ok
    })
}

/// # Safety
/// `nuclei` must be null or a handle from [`hm_nuclei_enumerate`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hm_nuclei_free(nuclei: *mut HmNuclei) {
    if !nuclei.is_null() {
        drop(Box::from_raw(nuclei));
    }
}

/// Runs the full verification pipeline on a lattice or context-poset
/// document. When a report is produced it is written to `report` as JSON
/// (release with [`hm_string_free`]) and the status is `OK` or
/// `VERIFICATION_FAILED`; otherwise `report` is set to null.
///
/// # Safety
/// `json` must be a NUL-terminated string and `report` valid.
#[no_mangle]
pub unsafe extern "C" fn hm_verify_json(json: *const c_char, report: *mut *mut c_char) -> HmStatus {
    guarded(|| {
        if report.is_null() {
            return fail(HmStatus::NullPointer, "null output pointer");
        }
        *report = ptr::null_mut();
        let text = try_status!(read_str(json));
        let result =
            parse_input(text).and_then(|input| verify_input(&input, &VerifyConfig::default()));
        match result {
            Ok(r) => {
                *report = into_c_string(r.to_json());
                if r.passed {
                    HmStatus::Ok
                } else {
                    let first = r
                        .failures()
                        .next()
                        .map(|c| format!("{}: {}", c.name, c.detail));
                    fail(HmStatus::VerificationFailed, first.unwrap_or_default())
                }
            }
            Err(e) => from_error(e),
        }
    })
}

/// # Safety
/// `s` must be null or a string returned by this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn hm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
