//! C ABI over the `pregeom` library.
//!
//! Bindings are opaque handles created by `pregeom_binding_*` constructors and
//! released with `pregeom_binding_free`. Every fallible call returns a
//! [`PregeomStatus`]; on failure `pregeom_last_error` describes the error.
//! Strings returned through out-parameters are owned by the caller and must be
//! released with `pregeom_string_free`.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pregeom::classify::full_report;
use pregeom::doc::{BindingDoc, Document};
use pregeom::gen::GeneratorSpec;
use pregeom::quotient::normal_quotient;
use pregeom::{BoundAction, Error, Limits, PermGroup, Permutation, Verdict};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PregeomStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Capacity = 3,
    TheoremViolation = 4,
    Internal = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PregeomVerdict {
    NotInFamily = 0,
    Degenerate = 1,
    PrimitiveBasic = 2,
    NormalBasic = 3,
    NeitherBasic = 4,
}

impl From<Verdict> for PregeomVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::NotInFamily => PregeomVerdict::NotInFamily,
            Verdict::Degenerate => PregeomVerdict::Degenerate,
            Verdict::PrimitiveBasic => PregeomVerdict::PrimitiveBasic,
            Verdict::NormalBasic => PregeomVerdict::NormalBasic,
            Verdict::NeitherBasic => PregeomVerdict::NeitherBasic,
        }
    }
}

/// A pregeometry together with a group acting on it.
pub struct PregeomBinding {
    inner: BoundAction,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> PregeomStatus {
    match e.exit_code() {
        3 => PregeomStatus::Capacity,
        4 if matches!(e, Error::Internal(_)) => PregeomStatus::Internal,
        4 => PregeomStatus::TheoremViolation,
        _ => PregeomStatus::InvalidInput,
    }
}

enum Failure {
    Null(&'static str),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> PregeomStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => PregeomStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            PregeomStatus::NullPointer
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal panic: {msg}"));
            PregeomStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Lib(Error::Parse(format!("{what}: not valid UTF-8"))))
}

unsafe fn handle<'a>(b: *const PregeomBinding) -> Result<&'a BoundAction, Failure> {
    b.as_ref().map(|b| &b.inner).ok_or(Failure::Null("binding"))
}

fn check_out<T>(out: *mut T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        Err(Failure::Null(what))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no interior nul").into_raw()
}

fn limits(max_order: u64) -> Limits {
    if max_order == 0 {
        Limits::default()
    } else {
        Limits::default().with_max_order(max_order as u128)
    }
}

fn boxed(a: BoundAction) -> *mut PregeomBinding {
    Box::into_raw(Box::new(PregeomBinding { inner: a }))
}

/// Message for the last failed call on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn pregeom_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pregeom_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a binding document. Referenced files are resolved against the
/// current directory.
///
/// # Safety
/// `json` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pregeom_binding_from_json(json: *const c_char, out: *mut *mut PregeomBinding) -> PregeomStatus {
    guard(|| {
        check_out(out, "out")?;
        let doc = Document::parse(text(json, "json")?)?;
        let Document::Binding(b) = doc else {
            return Err(Error::Parse(format!("expected a binding document, found {:?}", doc.kind())).into());
        };
        *out = boxed(b.bind(None)?);
        Ok(())
    })
}

/// Builds a named construction. `params_json` is a JSON object of string
/// values such as `{"p":"3","d":"1"}`, or null for none. A `max_order` of 0
/// selects the default limit.
///
/// # Safety
/// String arguments must be nul-terminated and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pregeom_binding_generate(
    name: *const c_char,
    params_json: *const c_char,
    max_order: u64,
    out: *mut *mut PregeomBinding,
) -> PregeomStatus {
    guard(|| {
        check_out(out, "out")?;
        let name = text(name, "name")?.to_string();
        let params: BTreeMap<String, String> = if params_json.is_null() {
            BTreeMap::new()
        } else {
            serde_json::from_str(text(params_json, "params_json")?)
                .map_err(|e| Error::Parse(format!("params_json: {e}")))?
        };
        *out = boxed(GeneratorSpec { name, params }.build(&limits(max_order))?);
        Ok(())
    })
}

/// Releases a binding. Null is ignored.
///
/// # Safety
/// `b` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn pregeom_binding_free(b: *mut PregeomBinding) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// # Safety
/// `b` must be a live binding and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pregeom_binding_element_count(b: *const PregeomBinding, out: *mut usize) -> PregeomStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = handle(b)?.geometry().element_count();
        Ok(())
    })
}

/// # Safety
/// `b` must be a live binding and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pregeom_binding_rank(b: *const PregeomBinding, out: *mut usize) -> PregeomStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = handle(b)?.rank();
        Ok(())
    })
}

/// Group order, saturating at `UINT64_MAX`.
///
/// # Safety
/// `b` must be a live binding and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pregeom_binding_group_order(b: *const PregeomBinding, out: *mut u64) -> PregeomStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = u64::try_from(handle(b)?.group().order()).unwrap_or(u64::MAX);
        Ok(())
    })
}

/// Writes the binding as a self-contained JSON document.
///
/// # Safety
/// `b` must be a live binding and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pregeom_binding_to_json(b: *const PregeomBinding, out: *mut *mut c_char) -> PregeomStatus {
    guard(|| {
        check_out(out, "out")?;
        *out = into_c_string(Document::Binding(BindingDoc::inline(handle(b)?)).to_json());
        Ok(())
    })
}

/// Classifies the binding. `report_json` may be null; otherwise it receives the
/// full report document.
///
/// # Safety
/// `b` must be a live binding, `verdict` a valid pointer and `report_json`
/// null or valid.
#[no_mangle]
pub unsafe extern "C" fn pregeom_classify(
    b: *const PregeomBinding,
    max_order: u64,
    verdict: *mut PregeomVerdict,
    report_json: *mut *mut c_char,
) -> PregeomStatus {
    guard(|| {
        check_out(verdict, "verdict")?;
        let report = full_report(handle(b)?, &limits(max_order))?;
        *verdict = report.verdict.into();
        if !report_json.is_null() {
            *report_json = into_c_string(Document::Report(Box::new(report)).to_json());
        }
        Ok(())
    })
}

/// Quotient by the normal subgroup generated by `count` permutations in cycle
/// notation, such as `"(0 2)(1 3)"`.
///
/// # Safety
/// `b` must be a live binding, `generators` must point to `count`
/// nul-terminated strings and `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn pregeom_normal_quotient(
    b: *const PregeomBinding,
    generators: *const *const c_char,
    count: usize,
    out: *mut *mut PregeomBinding,
) -> PregeomStatus {
    guard(|| {
        check_out(out, "out")?;
        let a = handle(b)?;
        if generators.is_null() && count > 0 {
            return Err(Failure::Null("generators"));
        }
        let n = a.geometry().element_count();
        let mut gens = Vec::with_capacity(count);
        for i in 0..count {
            gens.push(Permutation::from_cycles(n, text(*generators.add(i), "generator")?)?);
        }
        let q = normal_quotient(a, &PermGroup::new(n, gens)?)?;
        *out = boxed(q.quotient);
        Ok(())
    })
}
