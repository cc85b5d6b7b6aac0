//! C interface to `hopfdouble`.
//!
//! Objects are opaque handles released with their `_free` function. Strings
//! returned through `char **` are owned by the caller and released with
//! [`hd_string_free`]. Every fallible call returns an [`HdStatus`]; on failure
//! [`hd_last_error`] describes the problem for the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use clap::Parser;
use hopfdouble::catalog::AlgebraId;
use hopfdouble::cli::{run, Cli};
use hopfdouble::cyclotomic::CycloNum;
use hopfdouble::double::{build_double, DoubleBuildResult};
use hopfdouble::hopf::PresentedHopfAlgebra;
use hopfdouble::io::{export_json, import_json};
use hopfdouble::modalg::classify_actions;
use hopfdouble::pairing::DualityPairing;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HdStatus {
    Ok = 0,
    NullPointer = 1,
    /// Unparsable id, JSON, scalar or non-UTF-8 text.
    InvalidArgument = 2,
    /// The computation ran and a check did not pass.
    CheckFailed = 3,
    /// The computation could not be carried out.
    ComputeError = 4,
    /// An internal panic was caught at the boundary.
    Panic = 5,
}

/// A presented Hopf algebra.
pub struct HdAlgebra {
    inner: Arc<PresentedHopfAlgebra>,
}

/// A Drinfeld double together with its cross relations.
pub struct HdDouble {
    inner: DoubleBuildResult,
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

struct Fail(HdStatus, String);

type Res<T> = Result<T, Fail>;

fn guard(f: impl FnOnce() -> Res<HdStatus>) -> HdStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            HdStatus::Panic
        }
    }
}

fn invalid(msg: impl Into<String>) -> Fail {
    Fail(HdStatus::InvalidArgument, msg.into())
}

fn compute(e: impl std::fmt::Display) -> Fail {
    Fail(HdStatus::ComputeError, e.to_string())
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Res<&'a str> {
    if p.is_null() {
        return Err(Fail(HdStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Res<&'a mut T> {
    p.as_mut().ok_or_else(|| Fail(HdStatus::NullPointer, format!("{what} is null")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Res<&'a T> {
    p.as_ref().ok_or_else(|| Fail(HdStatus::NullPointer, format!("{what} is null")))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("no interior nul").into_raw()
}

fn parse_id(id: &str) -> Res<AlgebraId> {
    id.parse::<AlgebraId>().map_err(|e| invalid(format!("{id}: {e}")))
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn hd_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(std::ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hd_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hd_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds a catalog algebra from an id such as `taft:3:1` or `uq:3:1:dual`.
///
/// # Safety
/// `id` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_algebra_from_id(id: *const c_char, out: *mut *mut HdAlgebra) -> HdStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let id = parse_id(read_str(id, "id")?)?;
        let alg = id.build().map_err(compute)?;
        *out = Box::into_raw(Box::new(HdAlgebra { inner: Arc::new(alg) }));
        Ok(HdStatus::Ok)
    })
}

/// Reads a presentation in the JSON format of [`hd_algebra_to_json`].
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_algebra_from_json(json: *const c_char, out: *mut *mut HdAlgebra) -> HdStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let text = read_str(json, "json")?;
        let alg = import_json(text).map_err(|e| {
            let at = if e.line > 0 { format!(" (line {}, column {})", e.line, e.column) } else { String::new() };
            invalid(format!("{}{at}: {}", e.path, e.message))
        })?;
        *out = Box::into_raw(Box::new(HdAlgebra { inner: Arc::new(alg) }));
        Ok(HdStatus::Ok)
    })
}

/// # Safety
/// `alg` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hd_algebra_free(alg: *mut HdAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_algebra_dimension(alg: *const HdAlgebra, out: *mut usize) -> HdStatus {
    guard(|| {
        let alg = handle(alg, "alg")?;
        *out_ptr(out, "out")? = alg.inner.dimension();
        Ok(HdStatus::Ok)
    })
}

/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_algebra_name(alg: *const HdAlgebra, out: *mut *mut c_char) -> HdStatus {
    guard(|| {
        let alg = handle(alg, "alg")?;
        *out_ptr(out, "out")? = c_string(alg.inner.name().to_string());
        Ok(HdStatus::Ok)
    })
}

/// The presentation as JSON; `pretty` selects indented output.
///
/// # Safety
/// `alg` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_algebra_to_json(alg: *const HdAlgebra, pretty: bool, out: *mut *mut c_char) -> HdStatus {
    guard(|| {
        let alg = handle(alg, "alg")?;
        *out_ptr(out, "out")? = c_string(export_json(&alg.inner, pretty));
        Ok(HdStatus::Ok)
    })
}

/// Checks the Hopf algebra axioms. Returns `CheckFailed` when a check does not
/// pass; the JSON report is written to `report` unless it is null.
///
/// # Safety
/// `alg` must be a live handle; `report` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn hd_algebra_verify(alg: *const HdAlgebra, seed: u64, report: *mut *mut c_char) -> HdStatus {
    guard(|| {
        let alg = handle(alg, "alg")?;
        let r = alg.inner.verify_axioms(seed);
        if let Some(out) = report.as_mut() {
            *out = c_string(serde_json::to_string(&r).map_err(compute)?);
        }
        if r.passed() {
            Ok(HdStatus::Ok)
        } else {
            let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
            Err(Fail(HdStatus::CheckFailed, format!("failed: {}", failed.join(", "))))
        }
    })
}

/// Builds `D(H)` for a catalog algebra id (not a dual).
///
/// # Safety
/// `id` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_double_build(id: *const c_char, out: *mut *mut HdDouble) -> HdStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let id = parse_id(read_str(id, "id")?)?;
        if id.dual {
            return Err(invalid("doubles are built from the algebra, not its dual"));
        }
        let pairing = DualityPairing::for_family(&id.family).map_err(compute)?;
        let d = build_double(&pairing).map_err(compute)?;
        *out = Box::into_raw(Box::new(HdDouble { inner: d }));
        Ok(HdStatus::Ok)
    })
}

/// The double as an algebra handle, to be freed separately.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_double_algebra(d: *const HdDouble, out: *mut *mut HdAlgebra) -> HdStatus {
    guard(|| {
        let d = handle(d, "double")?;
        *out_ptr(out, "out")? = Box::into_raw(Box::new(HdAlgebra { inner: d.inner.double.clone() }));
        Ok(HdStatus::Ok)
    })
}

/// Number of cross relations `a · p`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_double_cross_relation_count(d: *const HdDouble, out: *mut usize) -> HdStatus {
    guard(|| {
        *out_ptr(out, "out")? = handle(d, "double")?.inner.cross_relations.len();
        Ok(HdStatus::Ok)
    })
}

/// Cross relation `index` as text, `a*p = …`.
///
/// # Safety
/// `d` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_double_cross_relation(d: *const HdDouble, index: usize, out: *mut *mut c_char) -> HdStatus {
    guard(|| {
        let d = handle(d, "double")?;
        let out = out_ptr(out, "out")?;
        let c = d
            .inner
            .cross_relations
            .get(index)
            .ok_or_else(|| invalid(format!("index {index} out of range ({} relations)", d.inner.cross_relations.len())))?;
        *out = c_string(format!("{}*{} = {}", c.h_generator, c.dual_generator, c.value));
        Ok(HdStatus::Ok)
    })
}

/// # Safety
/// `d` must be null or a handle from this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hd_double_free(d: *mut HdDouble) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Classifies actions on `k[u]/(u^n − 1)` for a catalog id. Writes the number
/// of families to `families` and the JSON report to `report` when non-null.
///
/// # Safety
/// `id` must be a nul-terminated string; `families` must be writable;
/// `report` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn hd_classify(id: *const c_char, families: *mut usize, report: *mut *mut c_char) -> HdStatus {
    guard(|| {
        let families = out_ptr(families, "families")?;
        let id = parse_id(read_str(id, "id")?)?;
        if id.dual {
            return Err(invalid("classification takes a catalog algebra, not a dual"));
        }
        let r = classify_actions(&id.family).map_err(compute)?;
        *families = r.families.len();
        if let Some(out) = report.as_mut() {
            *out = c_string(serde_json::to_string(&r).map_err(compute)?);
        }
        Ok(HdStatus::Ok)
    })
}

/// Parses a scalar such as `1 + z` in conductor `conductor` and writes its
/// canonical form.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_scalar_normalize(conductor: u32, text: *const c_char, out: *mut *mut c_char) -> HdStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        if conductor == 0 {
            return Err(invalid("conductor must be positive"));
        }
        let c = CycloNum::parse(conductor, read_str(text, "text")?).map_err(|e| invalid(e.to_string()))?;
        *out = c_string(c.to_string());
        Ok(HdStatus::Ok)
    })
}

/// Runs a command line as the `hopfdouble` tool would, without the program
/// name: `argv[0]` is the subcommand. `exit_code` receives the tool's exit
/// code and `output` the report text.
///
/// # Safety
/// `argv` must point to `argc` nul-terminated strings; `exit_code` and
/// `output` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hd_run(
    argc: usize,
    argv: *const *const c_char,
    exit_code: *mut c_int,
    output: *mut *mut c_char,
) -> HdStatus {
    guard(|| {
        let exit_code = out_ptr(exit_code, "exit_code")?;
        let output = out_ptr(output, "output")?;
        if argc > 0 && argv.is_null() {
            return Err(Fail(HdStatus::NullPointer, "argv is null".into()));
        }
        let mut args = Vec::with_capacity(argc);
        for i in 0..argc {
            args.push(read_str(*argv.add(i), "argv entry")?.to_string());
        }
        let full: Vec<String> = std::iter::once("hopfdouble".to_string()).chain(args.iter().cloned()).collect();
        let cli = Cli::try_parse_from(&full).map_err(|e| invalid(e.to_string()))?;
        let outcome = run(&cli, &args);
        *exit_code = outcome.code;
        *output = c_string(outcome.text);
        match outcome.error {
            Some(e) => Err(Fail(if outcome.code == 2 { HdStatus::InvalidArgument } else { HdStatus::ComputeError }, e)),
            None if outcome.code != 0 => Err(Fail(HdStatus::CheckFailed, "a check did not pass".into())),
            None => Ok(HdStatus::Ok),
        }
    })
}
