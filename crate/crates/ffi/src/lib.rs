//! C ABI over `aqcdga`.
//!
//! Every function returns an [`AqStatus`]; on failure the message is available from
//! [`aq_last_error`] on the same thread until the next call. Handles are opaque and
//! must be released with their `_free` function. Strings returned through `char**`
//! belong to the caller and are released with [`aq_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use aqcdga::cdga::{DgaMorphism, ModuleView};
use aqcdga::derivation::aq_cohomology_der;
use aqcdga::dsl::{self, Document, Model};
use aqcdga::graded::DegreeWindow;
use aqcdga::harrison::aq_cohomology_harrison;
use aqcdga::Error;

#[repr(C)]
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AqStatus {
    AQ_OK = 0,
    AQ_ERR_NULL = 1,
    AQ_ERR_UTF8 = 2,
    AQ_ERR_INPUT = 3,
    AQ_ERR_REFUSED = 4,
    AQ_ERR_DISAGREEMENT = 5,
    AQ_ERR_BUFFER = 6,
    AQ_ERR_PANIC = 7,
}

#[repr(C)]
#[allow(non_camel_case_types)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AqRoute {
    AQ_ROUTE_DER = 0,
    AQ_ROUTE_HARRISON = 1,
}

/// Parsed but not elaborated presentation.
pub struct AqDocument(Document);

/// Elaborated algebras and morphisms.
pub struct AqModel(Model);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> AqStatus {
    match aqcdga::cli::exit_code(e) {
        aqcdga::cli::EXIT_REFUSED => AqStatus::AQ_ERR_REFUSED,
        aqcdga::cli::EXIT_DISAGREEMENT => AqStatus::AQ_ERR_DISAGREEMENT,
        _ => AqStatus::AQ_ERR_INPUT,
    }
}

struct Fail(AqStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> AqStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AqStatus::AQ_OK,
        Ok(Err(Fail(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            AqStatus::AQ_ERR_PANIC
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(Fail(AqStatus::AQ_ERR_NULL, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(AqStatus::AQ_ERR_UTF8, format!("{what} is not UTF-8")))
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| Fail(AqStatus::AQ_ERR_NULL, format!("{what} is null")))
}

unsafe fn model<'a>(p: *const AqModel) -> Result<&'a Model, Fail> {
    p.as_ref().map(|m| &m.0).ok_or_else(|| Fail(AqStatus::AQ_ERR_NULL, "model is null".into()))
}

fn owned_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s).map(CString::into_raw).map_err(|_| Fail(AqStatus::AQ_ERR_UTF8, "interior NUL".into()))
}

/// Message of the last failure on this thread, or NULL. Valid until the next call.
#[no_mangle]
pub extern "C" fn aq_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Static NUL-terminated version string.
#[no_mangle]
pub extern "C" fn aq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must come from this library or be NULL.
#[no_mangle]
pub unsafe extern "C" fn aq_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `src` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn aq_document_parse(src: *const c_char, out_doc: *mut *mut AqDocument) -> AqStatus {
    guard(|| {
        let slot = out(out_doc, "out")?;
        *slot = ptr::null_mut();
        let doc = dsl::parse_document(text(src, "source")?)?;
        *slot = Box::into_raw(Box::new(AqDocument(doc)));
        Ok(())
    })
}

/// Canonical printed form of a document.
///
/// # Safety
/// `doc` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn aq_document_print(doc: *const AqDocument, out_text: *mut *mut c_char) -> AqStatus {
    guard(|| {
        let slot = out(out_text, "out")?;
        let d = doc.as_ref().ok_or_else(|| Fail(AqStatus::AQ_ERR_NULL, "document is null".into()))?;
        *slot = owned_string(d.0.to_string())?;
        Ok(())
    })
}

/// # Safety
/// `doc` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn aq_document_elaborate(doc: *const AqDocument, out_model: *mut *mut AqModel) -> AqStatus {
    guard(|| {
        let slot = out(out_model, "out")?;
        *slot = ptr::null_mut();
        let d = doc.as_ref().ok_or_else(|| Fail(AqStatus::AQ_ERR_NULL, "document is null".into()))?;
        *slot = Box::into_raw(Box::new(AqModel(dsl::elaborate(&d.0)?)));
        Ok(())
    })
}

/// # Safety
/// `doc` comes from [`aq_document_parse`] or is NULL.
#[no_mangle]
pub unsafe extern "C" fn aq_document_free(doc: *mut AqDocument) {
    if !doc.is_null() {
        drop(Box::from_raw(doc));
    }
}

/// Parses and elaborates in one step.
///
/// # Safety
/// `src` is a NUL-terminated string; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn aq_model_load(src: *const c_char, out_model: *mut *mut AqModel) -> AqStatus {
    guard(|| {
        let slot = out(out_model, "out")?;
        *slot = ptr::null_mut();
        *slot = Box::into_raw(Box::new(AqModel(dsl::load(text(src, "source")?)?)));
        Ok(())
    })
}

/// # Safety
/// `m` comes from this library or is NULL.
#[no_mangle]
pub unsafe extern "C" fn aq_model_free(m: *mut AqModel) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// # Safety
/// `m` is a live handle; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn aq_model_algebra_count(m: *const AqModel, out_count: *mut usize) -> AqStatus {
    guard(|| {
        *out(out_count, "out")? = model(m)?.algebras.len();
        Ok(())
    })
}

/// `dim H^degree` of a named algebra.
///
/// # Safety
/// `m` is a live handle, `algebra` a NUL-terminated string, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aq_cohomology_dim(
    m: *const AqModel,
    algebra: *const c_char,
    degree: i32,
    out_dim: *mut usize,
) -> AqStatus {
    guard(|| {
        let slot = out(out_dim, "out")?;
        let a = model(m)?.algebra(text(algebra, "algebra")?)?;
        *slot = a.cohomology(DegreeWindow::new(degree, degree)?)?.dim(degree);
        Ok(())
    })
}

/// Writes `dim H^t_AQ` for `t = lo..=hi` into `dims[0..=hi-lo]`.
///
/// `morphism` names a morphism of the model, or is NULL to use `source` with trivial
/// coefficients ℚ. `top < 0` leaves the module uncut. The Harrison route fails with
/// `AQ_ERR_REFUSED` if any degree of the window is not certified.
///
/// # Safety
/// Pointers are live; `dims` has room for `len` entries.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn aq_aq_dims(
    m: *const AqModel,
    source: *const c_char,
    morphism: *const c_char,
    top: i32,
    lo: i32,
    hi: i32,
    route: AqRoute,
    dims: *mut usize,
    len: usize,
) -> AqStatus {
    guard(|| {
        let model = model(m)?;
        if dims.is_null() {
            return Err(Fail(AqStatus::AQ_ERR_NULL, "dims is null".into()));
        }
        let w = DegreeWindow::new(lo, hi)?;
        let width = (hi - lo + 1) as usize;
        if len < width {
            return Err(Fail(AqStatus::AQ_ERR_BUFFER, format!("window needs {width} entries, buffer has {len}")));
        }
        let phi = if morphism.is_null() {
            DgaMorphism::augmentation(&model.algebra(text(source, "source")?)?)
        } else {
            model.morphism(text(morphism, "morphism")?)?
        };
        let mut module = ModuleView::new(phi);
        if top >= 0 {
            module = module.truncated(top);
        }
        let values: Vec<usize> = match route {
            AqRoute::AQ_ROUTE_DER => {
                let h = aq_cohomology_der(&module, w)?;
                w.degrees().map(|t| h.dim(t)).collect()
            }
            AqRoute::AQ_ROUTE_HARRISON => {
                let h = aq_cohomology_harrison(&module, w, None)?;
                if let Some(t) = w.degrees().find(|t| !h.is_certified(*t)) {
                    return Err(Fail(AqStatus::AQ_ERR_REFUSED, format!("degree {t} is not certified")));
                }
                w.degrees().map(|t| h.dim(t)).collect()
            }
        };
        std::slice::from_raw_parts_mut(dims, width).copy_from_slice(&values);
        Ok(())
    })
}

/// Runs the command-line driver on `argv[0..argc]` (without a program name) and
/// returns its stdout and exit code.
///
/// # Safety
/// `argv` holds `argc` NUL-terminated strings; outputs are writable.
#[no_mangle]
pub unsafe extern "C" fn aq_cli_run(
    argv: *const *const c_char,
    argc: usize,
    out_stdout: *mut *mut c_char,
    out_code: *mut i32,
) -> AqStatus {
    guard(|| {
        let stdout = out(out_stdout, "stdout")?;
        let code = out(out_code, "code")?;
        *stdout = ptr::null_mut();
        if argv.is_null() && argc > 0 {
            return Err(Fail(AqStatus::AQ_ERR_NULL, "argv is null".into()));
        }
        let mut args = vec!["aqcdga".to_string()];
        for i in 0..argc {
            args.push(text(*argv.add(i), "argument")?.to_string());
        }
        let o = aqcdga::cli::run(args);
        if o.code != 0 {
            set_error(o.stderr.trim_end());
        }
        *code = o.code;
        *stdout = owned_string(o.stdout)?;
        Ok(())
    })
}
