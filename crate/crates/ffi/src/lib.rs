//! C interface. Every handle returned through an out-pointer is owned by the
//! caller and released with the matching `*_free` function. Functions return
//! an [`HbStatus`]; on failure [`hb_last_error`] describes what went wrong on
//! the calling thread.
//!
//! # Safety
//!
//! Pointers passed in must be null or valid for the documented access.
//! Handles must come from this library and must not be used after being freed.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use harborth::{bounds, ElementSet, Error, ExactResult, GroupSpec, SearchBudget};

pub struct HbGroup(GroupSpec);

pub struct HbSet(ElementSet);

pub struct HbExactResult(ExactResult);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidGroup = 2,
    Domain = 3,
    Range = 4,
    Refused = 5,
    Verification = 6,
    Inconsistent = 7,
    Parse = 8,
    Io = 9,
    InvalidUtf8 = 10,
    Panic = 11,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn fail(status: HbStatus, message: impl Into<String>) -> HbStatus {
    set_last_error(message.into());
    status
}

fn status_of(err: &Error) -> HbStatus {
    match err {
        Error::InvalidGroup(_) => HbStatus::InvalidGroup,
        Error::Domain(_) => HbStatus::Domain,
        Error::Range { .. } => HbStatus::Range,
        Error::Refused(_) => HbStatus::Refused,
        Error::Verification(_) => HbStatus::Verification,
        Error::Inconsistent { .. } => HbStatus::Inconsistent,
        Error::Parse { .. } => HbStatus::Parse,
        Error::Io(_) => HbStatus::Io,
    }
}

fn guard(f: impl FnOnce() -> Result<(), HbStatus>) -> HbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HbStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(HbStatus::Panic, "internal panic"),
    }
}

trait OrStatus<T> {
    fn or_status(self) -> Result<T, HbStatus>;
}

impl<T> OrStatus<T> for harborth::Result<T> {
    fn or_status(self) -> Result<T, HbStatus> {
        self.map_err(|e| fail(status_of(&e), e.to_string()))
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, HbStatus> {
    p.as_ref()
        .ok_or_else(|| fail(HbStatus::NullPointer, format!("{what} is null")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), HbStatus> {
    if out.is_null() {
        return Err(fail(HbStatus::NullPointer, "output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn slice<'a, T>(data: *const T, len: usize) -> Result<&'a [T], HbStatus> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(fail(HbStatus::NullPointer, "array pointer is null"));
    }
    Ok(std::slice::from_raw_parts(data, len))
}

fn to_c_string(s: String) -> Result<*mut c_char, HbStatus> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| fail(HbStatus::InvalidUtf8, "string contains a nul byte"))
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn hb_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

#[no_mangle]
pub unsafe extern "C" fn hb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a group from `len` moduli, canonicalised to invariant factors.
#[no_mangle]
pub unsafe extern "C" fn hb_group_new(
    moduli: *const u64,
    len: usize,
    out: *mut *mut HbGroup,
) -> HbStatus {
    guard(|| {
        let g = GroupSpec::new(slice(moduli, len)?).or_status()?;
        write_out(out, Box::into_raw(Box::new(HbGroup(g))))
    })
}

/// Parses a literal such as `"2,4"`.
#[no_mangle]
pub unsafe extern "C" fn hb_group_parse(
    literal: *const c_char,
    out: *mut *mut HbGroup,
) -> HbStatus {
    guard(|| {
        if literal.is_null() {
            return Err(fail(HbStatus::NullPointer, "literal is null"));
        }
        let text = CStr::from_ptr(literal)
            .to_str()
            .map_err(|_| fail(HbStatus::InvalidUtf8, "literal is not UTF-8"))?;
        let g = GroupSpec::parse(text).or_status()?;
        write_out(out, Box::into_raw(Box::new(HbGroup(g))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hb_group_free(group: *mut HbGroup) {
    if !group.is_null() {
        drop(Box::from_raw(group));
    }
}

/// Returns 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn hb_group_order(group: *const HbGroup) -> u64 {
    group.as_ref().map_or(0, |g| g.0.order())
}

#[no_mangle]
pub unsafe extern "C" fn hb_group_exponent(group: *const HbGroup) -> u64 {
    group.as_ref().map_or(0, |g| g.0.exponent())
}

#[no_mangle]
pub unsafe extern "C" fn hb_group_rank(group: *const HbGroup) -> usize {
    group.as_ref().map_or(0, |g| g.0.rank())
}

/// Invariant factor `i`, smallest first.
#[no_mangle]
pub unsafe extern "C" fn hb_group_factor(
    group: *const HbGroup,
    i: usize,
    out: *mut u64,
) -> HbStatus {
    guard(|| {
        let g = &borrow(group, "group")?.0;
        let f = *g.factors().get(i).ok_or_else(|| {
            fail(
                HbStatus::Range,
                format!("factor {i} out of range for rank {}", g.rank()),
            )
        })?;
        write_out(out, f)
    })
}

/// Builds a set from element indices (mixed radix, last coordinate fastest).
/// Duplicates are ignored.
#[no_mangle]
pub unsafe extern "C" fn hb_set_new(
    group: *const HbGroup,
    indices: *const u64,
    len: usize,
    out: *mut *mut HbSet,
) -> HbStatus {
    guard(|| {
        let g = &borrow(group, "group")?.0;
        let idx = slice(indices, len)?;
        if let Some(&bad) = idx.iter().find(|&&i| i >= g.order()) {
            return Err(fail(
                HbStatus::Range,
                format!("index {bad} out of range for group of order {}", g.order()),
            ));
        }
        let set = ElementSet::from_indices(g, idx.iter().map(|&i| i as usize)).or_status()?;
        write_out(out, Box::into_raw(Box::new(HbSet(set))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hb_set_free(set: *mut HbSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

#[no_mangle]
pub unsafe extern "C" fn hb_set_len(set: *const HbSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// Index of the `i`-th member in ascending order.
#[no_mangle]
pub unsafe extern "C" fn hb_set_get(set: *const HbSet, i: usize, out: *mut u64) -> HbStatus {
    guard(|| {
        let s = &borrow(set, "set")?.0;
        let sorted = s.sorted_indices();
        let v = *sorted.get(i).ok_or_else(|| {
            fail(
                HbStatus::Range,
                format!("member {i} out of range for size {}", s.len()),
            )
        })?;
        write_out(out, v as u64)
    })
}

#[no_mangle]
pub unsafe extern "C" fn hb_set_is_free(set: *const HbSet, k: usize, out: *mut bool) -> HbStatus {
    guard(|| {
        let s = &borrow(set, "set")?.0;
        let free = harborth::is_k_zero_sum_free(s, k).or_status()?;
        write_out(out, free)
    })
}

/// The set of sums of `k` distinct members.
#[no_mangle]
pub unsafe extern "C" fn hb_k_subsums(
    set: *const HbSet,
    k: usize,
    out: *mut *mut HbSet,
) -> HbStatus {
    guard(|| {
        let s = &borrow(set, "set")?.0;
        let sums = harborth::k_subsums(s, k).or_status()?;
        write_out(out, Box::into_raw(Box::new(HbSet(sums))))
    })
}

/// Runs the exact solver. `max_nodes == 0` or `max_seconds <= 0` means no
/// limit on that axis. A search that runs out of budget still succeeds;
/// check [`hb_result_exhausted`].
#[no_mangle]
pub unsafe extern "C" fn hb_max_zero_sum_free(
    group: *const HbGroup,
    k: usize,
    max_nodes: u64,
    max_seconds: f64,
    workers: usize,
    out: *mut *mut HbExactResult,
) -> HbStatus {
    guard(|| {
        let g = &borrow(group, "group")?.0;
        let budget = SearchBudget {
            max_nodes: if max_nodes == 0 { u64::MAX } else { max_nodes },
            max_seconds: if max_seconds > 0.0 {
                max_seconds
            } else {
                f64::INFINITY
            },
            symmetry: None,
            workers: workers.max(1),
        };
        let r = harborth::max_zero_sum_free(g, k, &budget).or_status()?;
        write_out(out, Box::into_raw(Box::new(HbExactResult(r))))
    })
}

#[no_mangle]
pub unsafe extern "C" fn hb_result_free(result: *mut HbExactResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

#[no_mangle]
pub unsafe extern "C" fn hb_result_max_free_size(result: *const HbExactResult) -> usize {
    result.as_ref().map_or(0, |r| r.0.max_free_size)
}

#[no_mangle]
pub unsafe extern "C" fn hb_result_harborth(result: *const HbExactResult) -> u64 {
    result.as_ref().map_or(0, |r| r.0.harborth)
}

#[no_mangle]
pub unsafe extern "C" fn hb_result_exhausted(result: *const HbExactResult) -> bool {
    result.as_ref().is_some_and(|r| r.0.exhausted)
}

#[no_mangle]
pub unsafe extern "C" fn hb_result_nodes_explored(result: *const HbExactResult) -> u64 {
    result.as_ref().map_or(0, |r| r.0.nodes_explored)
}

/// Copies the witness into a new set handle.
#[no_mangle]
pub unsafe extern "C" fn hb_result_witness(
    result: *const HbExactResult,
    out: *mut *mut HbSet,
) -> HbStatus {
    guard(|| {
        let r = &borrow(result, "result")?.0;
        write_out(out, Box::into_raw(Box::new(HbSet(r.witness.clone()))))
    })
}

/// Same JSON object as the CLI's `exact --format json`, without the envelope.
/// Free with [`hb_string_free`].
#[no_mangle]
pub unsafe extern "C" fn hb_result_to_json(
    result: *const HbExactResult,
    out: *mut *mut c_char,
) -> HbStatus {
    guard(|| {
        let r = &borrow(result, "result")?.0;
        let json = serde_json::to_string(&r.summary()).expect("summary serialises");
        write_out(out, to_c_string(json)?)
    })
}

/// Best known bounds from the formula registry and verified constructions.
/// `json_out` may be null; otherwise it receives the full report.
#[no_mangle]
pub unsafe extern "C" fn hb_best_bounds(
    group: *const HbGroup,
    k: usize,
    lower_out: *mut u64,
    upper_out: *mut u64,
    json_out: *mut *mut c_char,
) -> HbStatus {
    guard(|| {
        let g = &borrow(group, "group")?.0;
        let report = bounds::best_bounds(g, k).or_status()?;
        write_out(lower_out, report.lower)?;
        write_out(upper_out, report.upper)?;
        if !json_out.is_null() {
            let json = serde_json::to_string(&report).expect("report serialises");
            json_out.write(to_c_string(json)?);
        }
        Ok(())
    })
}
