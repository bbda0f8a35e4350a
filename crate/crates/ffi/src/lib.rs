//! C ABI over `trivsrc`.
//!
//! Every fallible call returns a [`TsStatus`]; on failure the message is kept
//! per thread and can be fetched with [`trivsrc_last_error`]. Handles are
//! opaque and released with their `_free` function. Strings returned through
//! `out` pointers are owned by the caller and released with
//! [`trivsrc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use trivsrc::blocks::block_partition;
use trivsrc::chartab::{CharTable, CharTableJson};
use trivsrc::cli::{render_blocks, table_for_group, Format};
use trivsrc::domestic::DomesticBlockInput;
use trivsrc::permgroup::{builtin_group, GroupFile, PermGroup};
use trivsrc::tsct::{assemble_tsct, tsct_d4v, verify_tsct, TSCTable, TsctJson};
use trivsrc::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TsStatus {
    Ok = 0,
    NullArgument = 1,
    Unsupported = 2,
    Parse = 3,
    Classification = 4,
    VerifyFailed = 5,
    Invalid = 6,
    Structural = 7,
    Internal = 8,
}

/// Opaque permutation group.
pub struct TsGroup(PermGroup);
/// Opaque ordinary character table.
pub struct TsCharTable(CharTable);
/// Opaque trivial source character table.
pub struct TsTsct(TSCTable);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> TsStatus {
    match e {
        Error::Unsupported(_) | Error::OrderBound(_) => TsStatus::Unsupported,
        Error::Parse(_) | Error::Cyc(_) => TsStatus::Parse,
        Error::Classification(_) | Error::Ambiguous(_) => TsStatus::Classification,
        Error::Structural(_) => TsStatus::Structural,
        _ => TsStatus::Invalid,
    }
}

struct Fail(TsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> TsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => TsStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(m);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            TsStatus::Internal
        }
    }
}

fn null() -> Fail {
    Fail(TsStatus::NullArgument, "null argument".into())
}

unsafe fn arg_str<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(TsStatus::Parse, "argument is not UTF-8".into()))
}

unsafe fn arg_ref<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn put<T>(out: *mut *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = Box::into_raw(Box::new(v));
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    *out = CString::new(s)
        .map_err(|_| Fail(TsStatus::Internal, "interior NUL".into()))?
        .into_raw();
    Ok(())
}

fn json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

fn parse<T: serde::de::DeserializeOwned>(s: &str) -> Result<T, Fail> {
    serde_json::from_str(s).map_err(|e| Fail(TsStatus::Parse, e.to_string()))
}

/// Message of the last failed call on this thread, or NULL. Caller frees.
#[no_mangle]
pub extern "C" fn trivsrc_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| {
        e.borrow()
            .as_ref()
            .map_or(ptr::null_mut(), |c| c.clone().into_raw())
    })
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builtin group by name: `v4`, `a4`, `a5`, `ex972`, `d4v:<v>`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_group_builtin(
    name: *const c_char,
    out: *mut *mut TsGroup,
) -> TsStatus {
    guard(|| put(out, TsGroup(builtin_group(arg_str(name)?)?)))
}

/// Group from `{"degree": n, "generators": [[...1-based images...]]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_group_from_json(
    json: *const c_char,
    out: *mut *mut TsGroup,
) -> TsStatus {
    guard(|| {
        let gf: GroupFile = parse(arg_str(json)?)?;
        put(out, TsGroup(gf.build()?))
    })
}

/// # Safety
/// `g` must be a live group handle; `order` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_group_order(g: *const TsGroup, order: *mut usize) -> TsStatus {
    guard(|| {
        let g = arg_ref(g)?;
        *order.as_mut().ok_or_else(null)? = g.0.order();
        Ok(())
    })
}

/// # Safety
/// `g` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_group_free(g: *mut TsGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Character table of a group. Named builtin groups keep their classical
/// layout; any other group goes through Dixon's algorithm.
///
/// # Safety
/// `g` must be a live group handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_chartab_compute(
    g: *const TsGroup,
    out: *mut *mut TsCharTable,
) -> TsStatus {
    guard(|| put(out, TsCharTable(table_for_group(arg_ref(g)?.0.clone())?)))
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_chartab_from_json(
    json: *const c_char,
    out: *mut *mut TsCharTable,
) -> TsStatus {
    guard(|| {
        let j: CharTableJson = parse(arg_str(json)?)?;
        put(out, TsCharTable(CharTable::from_json(&j)?))
    })
}

/// # Safety
/// `t` must be a live table handle; `n` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_chartab_num_classes(
    t: *const TsCharTable,
    n: *mut usize,
) -> TsStatus {
    guard(|| {
        let t = arg_ref(t)?;
        *n.as_mut().ok_or_else(null)? = t.0.num_classes();
        Ok(())
    })
}

/// # Safety
/// `t` must be a live table handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_chartab_to_json(
    t: *const TsCharTable,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| put_string(out, json(&arg_ref(t)?.0.to_json())))
}

/// 2-block partition as a JSON array.
///
/// # Safety
/// `t` must be a live table handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_chartab_blocks_json(
    t: *const TsCharTable,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let t = &arg_ref(t)?.0;
        let b = block_partition(t)?;
        put_string(out, render_blocks(t, &b, Format::Json))
    })
}

/// # Safety
/// `t` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_chartab_free(t: *mut TsCharTable) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Assembles and verifies the trivial source character table.
///
/// # Safety
/// `t` must be a live table handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_tsct_assemble(
    t: *const TsCharTable,
    out: *mut *mut TsTsct,
) -> TsStatus {
    guard(|| put(out, TsTsct(assemble_tsct(&arg_ref(t)?.0)?)))
}

/// Closed-form table of the dihedral group of order 4v.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_tsct_d4v(v: usize, out: *mut *mut TsTsct) -> TsStatus {
    guard(|| put(out, TsTsct(tsct_d4v(v)?)))
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_tsct_from_json(
    json: *const c_char,
    out: *mut *mut TsTsct,
) -> TsStatus {
    guard(|| {
        let j: TsctJson = parse(arg_str(json)?)?;
        put(out, TsTsct(TSCTable::from_json(&j)?))
    })
}

/// # Safety
/// `t` must be a live handle; `rows` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_tsct_size(t: *const TsTsct, rows: *mut usize) -> TsStatus {
    guard(|| {
        let t = arg_ref(t)?;
        *rows.as_mut().ok_or_else(null)? = t.0.size();
        Ok(())
    })
}

/// # Safety
/// `t` must be a live handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_tsct_to_json(t: *const TsTsct, out: *mut *mut c_char) -> TsStatus {
    guard(|| put_string(out, json(&arg_ref(t)?.0.to_json())))
}

/// Runs every invariant check. Returns `VerifyFailed` if any fails; the
/// JSON report is written to `report` (if non-NULL) in either case.
///
/// # Safety
/// `t` must be a live handle; `report` NULL or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_tsct_verify(
    t: *const TsTsct,
    report: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let r = verify_tsct(&arg_ref(t)?.0);
        if !report.is_null() {
            put_string(report, json(&r))?;
        }
        if r.all_passed() {
            Ok(())
        } else {
            Err(Fail(
                TsStatus::VerifyFailed,
                r.failures()
                    .iter()
                    .map(|c| c.name)
                    .collect::<Vec<_>>()
                    .join(", "),
            ))
        }
    })
}

/// # Safety
/// `t` must be NULL or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_tsct_free(t: *mut TsTsct) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Trivial source characters of a Klein-four defect block, JSON in and out.
///
/// # Safety
/// `input` must be a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trivsrc_transport_json(
    input: *const c_char,
    out: *mut *mut c_char,
) -> TsStatus {
    guard(|| {
        let i: DomesticBlockInput = parse(arg_str(input)?)?;
        put_string(out, json(&trivsrc::domestic::transport(&i)?))
    })
}
