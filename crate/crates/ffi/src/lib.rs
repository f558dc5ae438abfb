//! C interface to `hopfinv`.
//!
//! Objects are opaque handles created by `*_from_json` / `hi_hopf_builtin`
//! and released with the matching `*_free`. Reports come back as JSON strings
//! owned by the caller and released with `hi_string_free`. Every function
//! returns a `HiStatus`; on failure `hi_last_error` describes the problem.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hopfinv::comodule::{cobar_complex, invariants, universal_coefficient_check, validate_comodule, Comodule, ComoduleJson};
use hopfinv::exactlin::{smith_normal_form, BaseScalar, IntMatrix, IntText};
use hopfinv::hopf::{validate_axioms, HopfAlgebra, HopfJson, HopfRef};
use hopfinv::Error;
use serde_json::json;

/// Status codes; 0 to 3 match the command line exit codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HiStatus {
    Ok = 0,
    /// A check ran and gave a negative verdict.
    Negative = 1,
    /// Internal inconsistency between independent computations.
    Inconsistent = 2,
    BadInput = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// Integer matrix.
pub struct HiMatrix {
    inner: IntMatrix,
}

/// Finite Hopf algebra given by structure constants.
pub struct HiHopf {
    inner: HopfAlgebra,
}

/// Comodule over a `HiHopf`.
pub struct HiComodule {
    inner: Comodule,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Fail(HiStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let status = match e.exit_code() {
            2 => HiStatus::Inconsistent,
            _ => HiStatus::BadInput,
        };
        Fail(status, e.to_string())
    }
}

type FfiResult<T> = std::result::Result<T, Fail>;

fn guard(f: impl FnOnce() -> FfiResult<HiStatus>) -> HiStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("panic inside hopfinv".into());
            HiStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(Fail(HiStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(HiStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().ok_or_else(|| Fail(HiStatus::NullPointer, format!("{what} is null")))
}

fn check_out<T>(out: *mut *mut T) -> FfiResult<()> {
    if out.is_null() {
        Err(Fail(HiStatus::NullPointer, "output pointer is null".into()))
    } else {
        Ok(())
    }
}

unsafe fn emit_json(out: *mut *mut c_char, v: &serde_json::Value) -> FfiResult<()> {
    check_out(out)?;
    let s = serde_json::to_string(v).expect("reports serialize");
    *out = CString::new(s).expect("JSON has no nul bytes").into_raw();
    Ok(())
}

fn parse<T: serde::de::DeserializeOwned>(s: &str) -> FfiResult<T> {
    serde_json::from_str(s).map_err(|e| Fail(HiStatus::BadInput, e.to_string()))
}

fn verdict(ok: bool) -> HiStatus {
    if ok {
        HiStatus::Ok
    } else {
        HiStatus::Negative
    }
}

/// Message for the last failing call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn hi_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn hi_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hi_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `{"rows", "cols", "entries": [[i, j, "v"], ...]}` or `{"dense": [[...]]}`.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hi_matrix_from_json(json: *const c_char, out: *mut *mut HiMatrix) -> HiStatus {
    guard(|| {
        check_out(out)?;
        let inner: IntMatrix = parse(text(json, "json")?)?;
        *out = Box::into_raw(Box::new(HiMatrix { inner }));
        Ok(HiStatus::Ok)
    })
}

/// # Safety
/// `m` must be null or a live handle from `hi_matrix_from_json`.
#[no_mangle]
pub unsafe extern "C" fn hi_matrix_free(m: *mut HiMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Writes the shape of `m`.
///
/// # Safety
/// `m` must be a live handle; `rows` and `cols` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hi_matrix_shape(m: *const HiMatrix, rows: *mut usize, cols: *mut usize) -> HiStatus {
    guard(|| {
        let m = handle(m, "matrix")?;
        if rows.is_null() || cols.is_null() {
            return Err(Fail(HiStatus::NullPointer, "output pointer is null".into()));
        }
        *rows = m.inner.rows();
        *cols = m.inner.cols();
        Ok(HiStatus::Ok)
    })
}

/// `{"rank": r, "invariant_factors": ["d1", ...]}` from the Smith normal form.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hi_matrix_smith_json(m: *const HiMatrix, out: *mut *mut c_char) -> HiStatus {
    guard(|| {
        let m = handle(m, "matrix")?;
        let snf = smith_normal_form(&m.inner);
        let factors: Vec<IntText> = snf.invariant_factors().iter().cloned().map(IntText).collect();
        emit_json(out, &json!({"rank": snf.rank(), "invariant_factors": factors}))?;
        Ok(HiStatus::Ok)
    })
}

/// Built-in Hopf algebra by name (`mu_<n>`, `const_<G>`, `alpha_<p>`).
///
/// # Safety
/// `name` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hi_hopf_builtin(name: *const c_char, out: *mut *mut HiHopf) -> HiStatus {
    guard(|| {
        check_out(out)?;
        let inner = HopfRef::Name(text(name, "name")?.to_string()).resolve()?;
        *out = Box::into_raw(Box::new(HiHopf { inner }));
        Ok(HiStatus::Ok)
    })
}

/// Hopf algebra from its structure-constant JSON.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hi_hopf_from_json(json: *const c_char, out: *mut *mut HiHopf) -> HiStatus {
    guard(|| {
        check_out(out)?;
        let inner = parse::<HopfJson>(text(json, "json")?)?.into_hopf()?;
        *out = Box::into_raw(Box::new(HiHopf { inner }));
        Ok(HiStatus::Ok)
    })
}

/// # Safety
/// `h` must be null or a live Hopf handle.
#[no_mangle]
pub unsafe extern "C" fn hi_hopf_free(h: *mut HiHopf) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Rank of the underlying free module.
///
/// # Safety
/// `h` must be a live handle; `rank` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hi_hopf_rank(h: *const HiHopf, rank: *mut usize) -> HiStatus {
    guard(|| {
        let h = handle(h, "hopf")?;
        if rank.is_null() {
            return Err(Fail(HiStatus::NullPointer, "output pointer is null".into()));
        }
        *rank = h.inner.rank();
        Ok(HiStatus::Ok)
    })
}

/// Axiom report; `Negative` if some axiom fails.
///
/// # Safety
/// `h` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hi_hopf_check_json(h: *const HiHopf, out: *mut *mut c_char) -> HiStatus {
    guard(|| {
        let h = handle(h, "hopf")?;
        let report = validate_axioms(&h.inner);
        emit_json(out, &serde_json::to_value(&report).expect("serializes"))?;
        Ok(verdict(report.passed()))
    })
}

/// Comodule from `{"hopf"?, "rank", "coaction"}`; `hopf` may be null when
/// the JSON names its Hopf algebra.
///
/// # Safety
/// `json` must be a nul-terminated string, `hopf` null or a live handle,
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hi_comodule_from_json(
    json: *const c_char,
    hopf: *const HiHopf,
    out: *mut *mut HiComodule,
) -> HiStatus {
    guard(|| {
        check_out(out)?;
        let j: ComoduleJson = parse(text(json, "json")?)?;
        let fallback = hopf.as_ref().map(|h| HopfRef::Inline(Box::new(HopfJson::from_hopf(&h.inner))));
        let inner = j.into_comodule(fallback.as_ref())?;
        *out = Box::into_raw(Box::new(HiComodule { inner }));
        Ok(HiStatus::Ok)
    })
}

/// # Safety
/// `m` must be null or a live comodule handle.
#[no_mangle]
pub unsafe extern "C" fn hi_comodule_free(m: *mut HiComodule) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Invariants `M^G` with the inclusion matrix.
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hi_comodule_invariants_json(m: *const HiComodule, out: *mut *mut c_char) -> HiStatus {
    guard(|| {
        let m = handle(m, "comodule")?;
        let validation = validate_comodule(&m.inner);
        if !validation.passed() {
            emit_json(out, &json!({"validation": validation}))?;
            return Ok(HiStatus::Negative);
        }
        let inv = invariants(&m.inner);
        emit_json(out, &json!({"invariants": inv.module(), "inclusion": inv.inclusion()}))?;
        Ok(HiStatus::Ok)
    })
}

/// Cobar cohomology `H^0 .. H^{max_degree-1}` with the differentials'
/// invariant factors (integral comodules).
///
/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hi_comodule_cobar_json(
    m: *const HiComodule,
    max_degree: usize,
    out: *mut *mut c_char,
) -> HiStatus {
    guard(|| {
        let m = handle(m, "comodule")?;
        let cx = cobar_complex(&m.inner, max_degree)?;
        let mut cohomology = Vec::new();
        for i in 0..max_degree {
            cohomology.push(cx.cohomology(i)?);
        }
        let factors: Vec<Vec<IntText>> = cx
            .differentials()
            .iter()
            .map(|d| smith_normal_form(d).invariant_factors().iter().cloned().map(IntText).collect())
            .collect();
        emit_json(out, &json!({"terms": cx.terms(), "invariant_factors": factors, "cohomology": cohomology}))?;
        Ok(HiStatus::Ok)
    })
}

/// Universal coefficient check for an integral comodule over `scalar`
/// (`q`, `f<p>`, `z<n>`).
///
/// # Safety
/// `m` must be a live handle, `scalar` a nul-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn hi_ucs_check_json(
    m: *const HiComodule,
    scalar: *const c_char,
    out: *mut *mut c_char,
) -> HiStatus {
    guard(|| {
        let m = handle(m, "comodule")?;
        let s: BaseScalar = text(scalar, "scalar")?
            .parse()
            .map_err(|e: Error| Fail(HiStatus::BadInput, e.to_string()))?;
        let report = universal_coefficient_check(&m.inner, s)?;
        emit_json(out, &serde_json::to_value(&report).expect("serializes"))?;
        Ok(HiStatus::Ok)
    })
}

/// Runs a command line given as a JSON array of arguments (without the
/// program name) and returns its report; the status is the exit code.
///
/// # Safety
/// `args_json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn hi_run_json(args_json: *const c_char, out: *mut *mut c_char) -> HiStatus {
    guard(|| {
        check_out(out)?;
        let args: Vec<String> = parse(text(args_json, "args")?)?;
        let outcome = hopfinv::cli::run_args(std::iter::once("hopfinv".to_string()).chain(args));
        if outcome.report.is_empty() {
            return Err(Fail(HiStatus::BadInput, outcome.summary));
        }
        *out = CString::new(outcome.report).expect("JSON has no nul bytes").into_raw();
        Ok(match outcome.code {
            0 => HiStatus::Ok,
            1 => HiStatus::Negative,
            2 => HiStatus::Inconsistent,
            _ => {
                set_error(outcome.summary);
                return Ok(HiStatus::BadInput);
            }
        })
    })
}
