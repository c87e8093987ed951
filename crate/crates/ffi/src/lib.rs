//! C interface to `catsq-core`.
//!
//! Workspaces are opaque handles owned by the caller and released with
//! `catsq_workspace_free`. Every fallible call returns a `CatsqStatus`; the
//! message of the last failure on the calling thread is available from
//! `catsq_last_error`. Reports are JSON strings released with
//! `catsq_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use catsq_core::dsl::run::{run_check, Command, KanDir, Outcome, Property, RunOptions};
use catsq_core::dsl::{generate_random, parse_workspace, Workspace};
use catsq_core::fincat::Localizer;
use catsq_core::gen::Budget;

/// Status codes; the first four match the exit codes of the `catsq` binary.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatsqStatus {
    /// The call succeeded, or the checked property holds.
    Ok = 0,
    /// The checked property fails; the report lists witnesses.
    Fails = 1,
    InvalidInput = 2,
    SizeGuard = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatsqLocalizer {
    W0 = 0,
    Wgr = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatsqItem {
    Categories = 0,
    Functors = 1,
    Nats = 2,
    Squares = 3,
    Presheaves = 4,
}

/// A parsed and validated workspace.
pub struct CatsqWorkspace {
    ws: Workspace,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> CatsqStatus) -> CatsqStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        CatsqStatus::Panic
    })
}

/// `None` for a null pointer.
unsafe fn opt_str<'a>(p: *const c_char) -> Result<Option<&'a str>, CatsqStatus> {
    if p.is_null() {
        return Ok(None);
    }
    CStr::from_ptr(p).to_str().map(Some).map_err(|_| {
        set_error("argument is not valid UTF-8");
        CatsqStatus::InvalidUtf8
    })
}

unsafe fn req_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, CatsqStatus> {
    opt_str(p)?.ok_or_else(|| {
        set_error(format!("{what} is null"));
        CatsqStatus::NullPointer
    })
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("no interior nul")
        .into_raw()
}

fn localizer(l: CatsqLocalizer) -> Localizer {
    match l {
        CatsqLocalizer::W0 => Localizer::W0,
        CatsqLocalizer::Wgr => Localizer::Wgr,
    }
}

unsafe fn finish(out: Outcome, out_json: *mut *mut c_char) -> CatsqStatus {
    if let Some(err) = &out.report.error {
        set_error(err.clone());
    }
    if !out_json.is_null() {
        *out_json = into_c(out.report.to_json());
    }
    match out.exit_code {
        0 => CatsqStatus::Ok,
        1 => CatsqStatus::Fails,
        3 => CatsqStatus::SizeGuard,
        _ => CatsqStatus::InvalidInput,
    }
}

unsafe fn workspace<'a>(ws: *const CatsqWorkspace) -> Result<&'a Workspace, CatsqStatus> {
    if ws.is_null() {
        set_error("workspace is null");
        return Err(CatsqStatus::NullPointer);
    }
    Ok(&(*ws).ws)
}

/// Parses `.catsq` text. On success `*out` receives a new handle; on
/// failure it is set to null and the positioned message is available from
/// `catsq_last_error`.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn catsq_workspace_parse(
    text: *const c_char,
    out: *mut *mut CatsqWorkspace,
) -> CatsqStatus {
    guard(|| {
        if out.is_null() {
            set_error("output pointer is null");
            return CatsqStatus::NullPointer;
        }
        *out = ptr::null_mut();
        let text = match req_str(text, "text") {
            Ok(t) => t,
            Err(s) => return s,
        };
        match parse_workspace(text) {
            Ok(ws) => {
                *out = Box::into_raw(Box::new(CatsqWorkspace { ws }));
                CatsqStatus::Ok
            }
            Err(e) => {
                let status = if e.is_size_guard() {
                    CatsqStatus::SizeGuard
                } else {
                    CatsqStatus::InvalidInput
                };
                set_error(e.to_string());
                status
            }
        }
    })
}

/// A deterministic random workspace: a square `D` on corners `A'`, `A`,
/// `B'`, `B` and a presheaf `F` on `A`.
#[no_mangle]
pub extern "C" fn catsq_workspace_generate(
    seed: u64,
    max_objects: usize,
    max_arrows: usize,
) -> *mut CatsqWorkspace {
    let budget = Budget {
        max_objects: max_objects.max(1),
        max_arrows: max_arrows.max(1),
    };
    match catch_unwind(|| generate_random(seed, budget)) {
        Ok(ws) => Box::into_raw(Box::new(CatsqWorkspace { ws })),
        Err(_) => {
            set_error("internal panic");
            ptr::null_mut()
        }
    }
}

/// # Safety
/// `ws` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn catsq_workspace_free(ws: *mut CatsqWorkspace) {
    if !ws.is_null() {
        drop(Box::from_raw(ws));
    }
}

/// Number of declared items of one kind.
///
/// # Safety
/// `ws` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn catsq_workspace_count(ws: *const CatsqWorkspace, item: CatsqItem) -> usize {
    let Ok(ws) = workspace(ws) else { return 0 };
    match item {
        CatsqItem::Categories => ws.categories.len(),
        CatsqItem::Functors => ws.functors.len(),
        CatsqItem::Nats => ws.nats.len(),
        CatsqItem::Squares => ws.squares.len(),
        CatsqItem::Presheaves => ws.presheaves.len(),
    }
}

/// The workspace in `.catsq` syntax.
///
/// # Safety
/// `ws` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn catsq_workspace_to_text(
    ws: *const CatsqWorkspace,
    out: *mut *mut c_char,
) -> CatsqStatus {
    guard(|| {
        let ws = match workspace(ws) {
            Ok(ws) => ws,
            Err(s) => return s,
        };
        if out.is_null() {
            set_error("output pointer is null");
            return CatsqStatus::NullPointer;
        }
        *out = into_c(ws.to_text());
        CatsqStatus::Ok
    })
}

/// Checks `property` (`exact`, `weak-exact`, `bc-left`, `bc-right`,
/// `aspheric`, `coaspheric`, `proper`, `smooth`, `local-equiv` or `oracle`).
/// `name` is the square or functor, `over` the second functor for
/// `local-equiv`; either may be null to pick the only item of its kind.
/// The JSON report is stored in `*out_json` when it is non-null.
///
/// # Safety
/// String arguments must be null or nul-terminated; `ws` must be live.
#[no_mangle]
pub unsafe extern "C" fn catsq_check(
    ws: *const CatsqWorkspace,
    property: *const c_char,
    name: *const c_char,
    over: *const c_char,
    loc: CatsqLocalizer,
    all_witnesses: bool,
    out_json: *mut *mut c_char,
) -> CatsqStatus {
    guard(|| {
        let args = (|| {
            let ws = workspace(ws)?;
            let property = req_str(property, "property")?;
            let name = opt_str(name)?.map(str::to_string);
            let over = opt_str(over)?.map(str::to_string);
            Ok((ws, property, name, over))
        })();
        let (ws, property, name, over) = match args {
            Ok(a) => a,
            Err(s) => return s,
        };
        let cmd = if property == "oracle" {
            Command::Oracle { square: name }
        } else {
            let property: Property = match property.parse() {
                Ok(p) => p,
                Err(e) => {
                    set_error(e);
                    return CatsqStatus::InvalidInput;
                }
            };
            let (square, functor) = if property.on_square() {
                (name, None)
            } else {
                (None, name)
            };
            Command::Check {
                property,
                square,
                functor,
                over,
                colocal: false,
            }
        };
        let opts = RunOptions {
            localizer: localizer(loc),
            all_witnesses,
            ..RunOptions::default()
        };
        finish(run_check(ws, &cmd, &opts), out_json)
    })
}

/// Per-object sizes of `u_* F` (`right`) or `u_! F`, in the `sizes` field
/// of the JSON report.
///
/// # Safety
/// String arguments must be null or nul-terminated; `ws` must be live.
#[no_mangle]
pub unsafe extern "C" fn catsq_kan(
    ws: *const CatsqWorkspace,
    right: bool,
    functor: *const c_char,
    presheaf: *const c_char,
    out_json: *mut *mut c_char,
) -> CatsqStatus {
    guard(|| {
        let args = (|| {
            Ok((
                workspace(ws)?,
                opt_str(functor)?.map(str::to_string),
                opt_str(presheaf)?.map(str::to_string),
            ))
        })();
        let (ws, functor, presheaf) = match args {
            Ok(a) => a,
            Err(s) => return s,
        };
        let dir = if right { KanDir::Right } else { KanDir::Left };
        let cmd = Command::Kan {
            dir,
            functor,
            presheaf,
        };
        finish(run_check(ws, &cmd, &RunOptions::default()), out_json)
    })
}

/// The presheaf localizer of a category, in the `classification` field.
///
/// # Safety
/// `category` must be null or nul-terminated; `ws` must be live.
#[no_mangle]
pub unsafe extern "C" fn catsq_classify(
    ws: *const CatsqWorkspace,
    category: *const c_char,
    out_json: *mut *mut c_char,
) -> CatsqStatus {
    guard(|| {
        let args = (|| Ok((workspace(ws)?, opt_str(category)?.map(str::to_string))))();
        let (ws, category) = match args {
            Ok(a) => a,
            Err(s) => return s,
        };
        let cmd = Command::Classify { category };
        finish(run_check(ws, &cmd, &RunOptions::default()), out_json)
    })
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn catsq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn catsq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
