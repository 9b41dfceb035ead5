//! C ABI over the blockforge library.
//!
//! Every object crosses the boundary as an opaque handle owned by the caller
//! and released with the matching `*_free` function. Functions return a
//! [`BfStatus`]; on failure [`bf_last_error`] describes the problem.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use blockforge::blocks::BlockSystem;
use blockforge::chartab::CharacterTable;
use blockforge::error::Error;
use blockforge::frobenius::{analyze, AnalysisOptions, NormalEmbedding};
use blockforge::numtheory::prime_divisors;
use blockforge::report::block_report;
use blockforge::{catalog, io, PermGroup};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Bad input: unknown group, parse error, not normal, cap exceeded.
    InputError = 3,
    /// A mathematical consistency check failed.
    CheckFailed = 4,
    OutOfRange = 5,
    Panic = 6,
}

pub struct BfGroup {
    name: String,
    group: PermGroup,
}

pub struct BfTable {
    name: String,
    table: CharacterTable,
}

pub struct BfBlocks {
    name: String,
    table: CharacterTable,
    system: BlockSystem,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(BfStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = if e.is_input_error() {
            BfStatus::InputError
        } else {
            BfStatus::CheckFailed
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BfStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BfStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            BfStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(BfStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(BfStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref()
        .ok_or_else(|| Fail(BfStatus::NullPointer, format!("{what} is null")))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut()
        .ok_or_else(|| Fail(BfStatus::NullPointer, format!("{what} is null")))
}

fn c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(BfStatus::Panic, "string contains NUL".into()))
}

fn cap() -> Result<usize, Fail> {
    Ok(io::resolve_cap(None)?)
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn bf_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn bf_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Frees a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn bf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Looks up a builtin group by name.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_group_from_catalog(name: *const c_char, out: *mut *mut BfGroup) -> BfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let entry = catalog::lookup(str_arg(name, "name")?)?;
        let group = entry.group_with_cap(cap()?)?;
        *out = Box::into_raw(Box::new(BfGroup {
            name: entry.name,
            group,
        }));
        Ok(())
    })
}

/// Builds a group from generator-file text.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_group_from_generators(text: *const c_char, out: *mut *mut BfGroup) -> BfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let file = io::parse_generators(str_arg(text, "text")?)?;
        let group = file.group(cap()?)?;
        *out = Box::into_raw(Box::new(BfGroup {
            name: file.name.unwrap_or_else(|| "G".into()),
            group,
        }));
        Ok(())
    })
}

/// # Safety
/// `g` must be a live group handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_group_order(g: *const BfGroup, out: *mut u64) -> BfStatus {
    guard(|| {
        *out_arg(out, "out")? = ref_arg(g, "group")?.group.order();
        Ok(())
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn bf_group_free(g: *mut BfGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Computes the character table of a group.
///
/// # Safety
/// `g` must be a live group handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_table_compute(g: *const BfGroup, out: *mut *mut BfTable) -> BfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let g = ref_arg(g, "group")?;
        let table = CharacterTable::compute(g.group.clone())?;
        *out = Box::into_raw(Box::new(BfTable {
            name: g.name.clone(),
            table,
        }));
        Ok(())
    })
}

/// Ingests a table file and re-validates it.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_table_from_json(json: *const c_char, out: *mut *mut BfTable) -> BfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let (name, table) = io::parse_table(str_arg(json, "json")?)?;
        *out = Box::into_raw(Box::new(BfTable { name, table }));
        Ok(())
    })
}

/// # Safety
/// `t` must be a live table handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_table_class_count(t: *const BfTable, out: *mut usize) -> BfStatus {
    guard(|| {
        *out_arg(out, "out")? = ref_arg(t, "table")?.table.len();
        Ok(())
    })
}

/// # Safety
/// `t` must be a live table handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_table_degree(t: *const BfTable, index: usize, out: *mut u64) -> BfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let t = ref_arg(t, "table")?;
        if index >= t.table.len() {
            return Err(Fail(BfStatus::OutOfRange, format!("character {index} out of range")));
        }
        *out = t.table.degree(index);
        Ok(())
    })
}

/// Serializes the table; free the result with `bf_string_free`.
///
/// # Safety
/// `t` must be a live table handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_table_to_json(t: *const BfTable, out: *mut *mut c_char) -> BfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let t = ref_arg(t, "table")?;
        *out = c_string(io::table_to_json(&t.name, &t.table)?)?;
        Ok(())
    })
}

/// # Safety
/// `t` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn bf_table_free(t: *mut BfTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Computes the p-blocks of a table.
///
/// # Safety
/// `t` must be a live table handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_blocks_compute(t: *const BfTable, p: u64, out: *mut *mut BfBlocks) -> BfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let t = ref_arg(t, "table")?;
        let system = BlockSystem::new(&t.table, p)?;
        *out = Box::into_raw(Box::new(BfBlocks {
            name: t.name.clone(),
            table: t.table.clone(),
            system,
        }));
        Ok(())
    })
}

/// # Safety
/// `b` must be a live block handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_blocks_count(b: *const BfBlocks, out: *mut usize) -> BfStatus {
    guard(|| {
        *out_arg(out, "out")? = ref_arg(b, "blocks")?.system.len();
        Ok(())
    })
}

/// # Safety
/// `b` must be a live block handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_blocks_block_of_char(b: *const BfBlocks, character: usize, out: *mut usize) -> BfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let b = ref_arg(b, "blocks")?;
        if character >= b.table.len() {
            return Err(Fail(BfStatus::OutOfRange, format!("character {character} out of range")));
        }
        *out = b.system.block_of_char(character);
        Ok(())
    })
}

/// # Safety
/// `b` must be a live block handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_blocks_defect(b: *const BfBlocks, block: usize, out: *mut u32) -> BfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let b = ref_arg(b, "blocks")?;
        let blk = b
            .system
            .blocks()
            .get(block)
            .ok_or_else(|| Fail(BfStatus::OutOfRange, format!("block {block} out of range")))?;
        *out = blk.defect;
        Ok(())
    })
}

/// Block report as JSON; free the result with `bf_string_free`.
///
/// # Safety
/// `b` must be a live block handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_blocks_to_json(b: *const BfBlocks, out: *mut *mut c_char) -> BfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let b = ref_arg(b, "blocks")?;
        let report = block_report(&b.name, &b.table, std::slice::from_ref(&b.system))?;
        *out = c_string(io::to_json(&report)?)?;
        Ok(())
    })
}

/// # Safety
/// `b` must be NULL or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn bf_blocks_free(b: *mut BfBlocks) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Analyses `n` inside `g` at the given primes (all primes of `|G|` when
/// `n_primes` is 0) and returns the JSON report. `consistent` receives 1
/// when every internal check passed.
///
/// # Safety
/// `g` and `n` must be live group handles, `primes` must point to
/// `n_primes` values (or be NULL when `n_primes` is 0), and `out` and
/// `consistent` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_frobenius_json(
    g: *const BfGroup,
    n: *const BfGroup,
    primes: *const u64,
    n_primes: usize,
    seed: u64,
    out: *mut *mut c_char,
    consistent: *mut i32,
) -> BfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let consistent = out_arg(consistent, "consistent")?;
        let g = ref_arg(g, "group")?;
        let n = ref_arg(n, "normal subgroup")?;
        let primes = if n_primes == 0 {
            prime_divisors(g.group.order())
        } else {
            if primes.is_null() {
                return Err(Fail(BfStatus::NullPointer, "primes is null".into()));
            }
            std::slice::from_raw_parts(primes, n_primes).to_vec()
        };
        if !n.group.is_subset_of(&g.group) {
            return Err(Error::NotSubgroup.into());
        }
        let g_tbl = CharacterTable::compute(g.group.clone())?;
        let n_tbl = CharacterTable::compute(n.group.clone())?;
        let mut emb = NormalEmbedding::new(g_tbl, n_tbl)?;
        let opts = AnalysisOptions {
            group_name: g.name.clone(),
            normal_name: n.name.clone(),
            primes,
            seed,
        };
        let report = analyze(&mut emb, &opts)?;
        *consistent = i32::from(report.consistent);
        *out = c_string(io::to_json(&report)?)?;
        Ok(())
    })
}

/// Named normal subgroup of a catalog group.
///
/// # Safety
/// `group` and `normal` must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bf_normal_from_catalog(
    group: *const c_char,
    normal: *const c_char,
    out: *mut *mut BfGroup,
) -> BfStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        let entry = catalog::lookup(str_arg(group, "group")?)?;
        let normal = str_arg(normal, "normal")?;
        let g = entry.group_with_cap(cap()?)?;
        let n = entry
            .normal_subgroup(&g, normal)
            .ok_or_else(|| Fail(BfStatus::InputError, format!("unknown normal subgroup '{normal}'")))??;
        *out = Box::into_raw(Box::new(BfGroup {
            name: normal.to_string(),
            group: n,
        }));
        Ok(())
    })
}
