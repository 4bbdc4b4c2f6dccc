//! C interface to `renhance`.
//!
//! Matrices cross the boundary as opaque [`RenhanceMatrix`] handles holding the
//! JSON matrix-file model. Every function returns a [`RenhanceStatus`]; on failure
//! the message is kept per thread and read with [`renhance_last_error`]. Strings
//! handed out by this library are released with [`renhance_string_free`].

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use renhance::catalog;
use renhance::cli::{check_verdict, CliError, EXIT_CAP, EXIT_INPUT, EXIT_NEGATIVE};
use renhance::invariant::{turaev, BraidWord, InvariantInput, Limits};
use renhance::io::MatrixFile;
use renhance::rmatrix::{self, Axiom};
use renhance::scalar::{parse_exact, Backend, CFloat, FieldTag, RatFunc, Scalar};
use renhance::tensor::Tensor4;

/// Result of every call. The first four match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenhanceStatus {
    Ok = 0,
    /// A mathematical negative: not enhanceable, an axiom fails.
    Negative = 1,
    /// Malformed input.
    Input = 2,
    /// A resource cap was hit.
    ResourceCap = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
    /// An internal panic was caught at the boundary.
    Panic = 5,
}

/// An R-matrix file: `R` or `S`, with optional `mu`, `alpha` and `beta`.
pub struct RenhanceMatrix {
    file: MatrixFile,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes replaced");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_last_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

enum Failure {
    Null(&'static str),
    Cli(CliError),
}

impl<E: Into<CliError>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Cli(e.into())
    }
}

type Res<T> = Result<T, Failure>;

fn input(msg: impl Into<String>) -> Failure {
    Failure::Cli(CliError::Input(msg.into()))
}

fn status_of(err: &CliError) -> RenhanceStatus {
    match err.code() {
        EXIT_NEGATIVE => RenhanceStatus::Negative,
        EXIT_CAP => RenhanceStatus::ResourceCap,
        EXIT_INPUT => RenhanceStatus::Input,
        _ => RenhanceStatus::Input,
    }
}

/// Runs `f`, records any error or panic and maps it to a status.
fn guard(f: impl FnOnce() -> Res<RenhanceStatus>) -> RenhanceStatus {
    clear_last_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Failure::Null(what))) => {
            set_last_error(&format!("{what} is null"));
            RenhanceStatus::NullPointer
        }
        Ok(Err(Failure::Cli(e))) => {
            set_last_error(&e.to_string());
            status_of(&e)
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_last_error(&format!("internal panic: {msg}"));
            RenhanceStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &'static str) -> Res<&'a str> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| input(format!("{what} is not valid UTF-8")))
}

unsafe fn handle<'a>(h: *const RenhanceMatrix) -> Res<&'a RenhanceMatrix> {
    h.as_ref().ok_or(Failure::Null("matrix handle"))
}

unsafe fn out_ptr<'a, T>(p: *mut *mut T, what: &'static str) -> Res<&'a mut *mut T> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    *p = ptr::null_mut();
    Ok(&mut *p)
}

fn to_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " "))
        .expect("nul bytes replaced")
        .into_raw()
}

fn boxed(file: MatrixFile) -> *mut RenhanceMatrix {
    Box::into_raw(Box::new(RenhanceMatrix { file }))
}

fn float_backend(file: &MatrixFile) -> bool {
    file.field.backend == Backend::Float
}

fn no_subs() -> HashMap<String, RatFunc> {
    HashMap::new()
}

/// `NAME=VALUE` pairs separated by commas, e.g. `p=2/3,q=i`.
fn parse_bindings(text: &str) -> Res<Vec<(String, RatFunc)>> {
    let tag = FieldTag::exact(&[]).with_imaginary(true);
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| input(format!("binding '{item}' is not NAME=VALUE")))?;
            let v = parse_exact(value.trim(), &tag)
                .map_err(|e| input(format!("binding {name}: {e}")))?;
            Ok((name.trim().to_string(), v))
        })
        .collect()
}

/// Parses a matrix file from JSON text.
///
/// # Safety
/// `json` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn renhance_matrix_from_json(
    json: *const c_char,
    out: *mut *mut RenhanceMatrix,
) -> RenhanceStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let text = str_arg(json, "json")?;
        *out = boxed(MatrixFile::parse_str(text)?);
        Ok(RenhanceStatus::Ok)
    })
}

/// Instantiates catalog fixture `id` exactly. `bindings` is null or a list such as
/// `"p=2,q=1/3"`; unbound parameters stay symbolic.
///
/// # Safety
/// `id` must be a valid C string, `bindings` null or a valid C string, `out` valid.
#[no_mangle]
pub unsafe extern "C" fn renhance_matrix_from_catalog(
    id: *const c_char,
    bindings: *const c_char,
    out: *mut *mut RenhanceMatrix,
) -> RenhanceStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let id = str_arg(id, "id")?;
        let list = if bindings.is_null() {
            Vec::new()
        } else {
            parse_bindings(str_arg(bindings, "bindings")?)?
        };
        let imaginary = list.iter().any(|(_, v)| v.to_string().contains('i'));
        let bound: BTreeMap<String, RatFunc> = list.into_iter().collect();
        let fx = catalog::fixture::<RatFunc>(id, &bound)?;
        let free: Vec<&str> = fx
            .params
            .iter()
            .copied()
            .filter(|p| !bound.contains_key(*p))
            .collect();
        let field = FieldTag::exact(&free).with_imaginary(imaginary);
        *out = boxed(MatrixFile::from_values(field, &fx.r, None, None, None));
        Ok(RenhanceStatus::Ok)
    })
}

/// Serializes a matrix to JSON. Free the result with [`renhance_string_free`].
///
/// # Safety
/// `h` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn renhance_matrix_to_json(
    h: *const RenhanceMatrix,
    out: *mut *mut c_char,
) -> RenhanceStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        *out = to_c(handle(h)?.file.to_json_string());
        Ok(RenhanceStatus::Ok)
    })
}

/// Releases a matrix handle. Null is ignored.
///
/// # Safety
/// `h` must be null or come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn renhance_matrix_free(h: *mut RenhanceMatrix) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

fn check_generic<S: Scalar>(file: &MatrixFile) -> Res<(String, bool)> {
    let tol = file.field.tolerance;
    let r: Tensor4<S> = file.tensor(&no_subs())?;
    let (rep, test) = rmatrix::check_r_matrix(&r, tol);
    let (verdict, positive) = check_verdict(&test, tol);
    Ok((verdict, positive && rep.passed(Axiom::Yb).unwrap_or(false)))
}

/// Checks the matrix as an R-matrix and writes the enhancement verdict. Returns
/// `Ok` when the verdict is positive and the Yang-Baxter equation holds, else
/// `Negative` with the verdict still written.
///
/// # Safety
/// `h` must come from this library and `verdict` must be valid.
#[no_mangle]
pub unsafe extern "C" fn renhance_check(
    h: *const RenhanceMatrix,
    verdict: *mut *mut c_char,
) -> RenhanceStatus {
    guard(|| {
        let verdict = out_ptr(verdict, "verdict")?;
        let file = &handle(h)?.file;
        let (text, ok) = if float_backend(file) {
            check_generic::<CFloat>(file)?
        } else {
            check_generic::<RatFunc>(file)?
        };
        *verdict = to_c(text);
        if ok {
            Ok(RenhanceStatus::Ok)
        } else {
            set_last_error("not an enhanceable R-matrix");
            Ok(RenhanceStatus::Negative)
        }
    })
}

fn enhance_generic<S: Scalar>(file: &MatrixFile, quadruple: bool) -> Res<MatrixFile> {
    let tol = file.field.tolerance;
    let r: Tensor4<S> = file.tensor(&no_subs())?;
    let enh = rmatrix::enhance(&r, tol)?;
    let field = file.field.clone();
    Ok(if quadruple {
        let q = &enh.quadruples[0];
        MatrixFile::from_values(field, &q.s, Some(&q.mu), Some(&q.alpha), Some(&q.beta))
    } else {
        let p = &enh.pairs[0];
        MatrixFile::from_values(field, &p.s, Some(&p.mu), None, None)
    })
}

/// Enhances an R-matrix. Writes the pair `(αPR, α⁻¹U)`, or the quadruple
/// `(PR, U, α⁻¹, α)` when `quadruple` is nonzero, as a new handle.
///
/// # Safety
/// `h` must come from this library and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn renhance_enhance(
    h: *const RenhanceMatrix,
    quadruple: i32,
    out: *mut *mut RenhanceMatrix,
) -> RenhanceStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let file = &handle(h)?.file;
        let mf = if float_backend(file) {
            enhance_generic::<CFloat>(file, quadruple != 0)?
        } else {
            enhance_generic::<RatFunc>(file, quadruple != 0)?
        };
        *out = boxed(mf);
        Ok(RenhanceStatus::Ok)
    })
}

fn verify_generic<S: Scalar>(file: &MatrixFile) -> Res<bool> {
    let tol = file.field.tolerance;
    let at = no_subs();
    let s: Tensor4<S> = file.tensor(&at)?;
    let mu = file
        .mu(&at)?
        .ok_or_else(|| input("verification needs a 'mu' matrix"))?;
    let rep = if file.alpha.is_some() || file.beta.is_some() {
        let alpha = file.alpha(&at)?.unwrap_or_else(S::one);
        let beta = file.beta(&at)?.unwrap_or_else(S::one);
        rmatrix::verify_quadruple(&s, &mu, &alpha, &beta, tol)?
    } else {
        rmatrix::verify_pair(&s, &mu, tol)?
    };
    if !rep.all_passed() {
        set_last_error(&rep.to_string());
    }
    Ok(rep.all_passed())
}

/// Verifies an enhanced pair, or a quadruple when `alpha` or `beta` is present.
/// Returns `Ok` when every axiom holds and `Negative` otherwise, with the axiom
/// report as the last error.
///
/// # Safety
/// `h` must come from this library.
#[no_mangle]
pub unsafe extern "C" fn renhance_verify(h: *const RenhanceMatrix) -> RenhanceStatus {
    guard(|| {
        let file = &handle(h)?.file;
        let ok = if float_backend(file) {
            verify_generic::<CFloat>(file)?
        } else {
            verify_generic::<RatFunc>(file)?
        };
        Ok(if ok {
            RenhanceStatus::Ok
        } else {
            RenhanceStatus::Negative
        })
    })
}

fn invariant_generic<S: Scalar>(file: &MatrixFile, xi: &BraidWord, limits: Limits) -> Res<String> {
    let at = no_subs();
    let s: Tensor4<S> = file.tensor(&at)?;
    let input = match file.mu(&at)? {
        Some(mu) => {
            let alpha = file.alpha(&at)?.unwrap_or_else(S::one);
            let beta = file.beta(&at)?.unwrap_or_else(S::one);
            InvariantInput::new(s, mu, alpha, beta)?
        }
        None => rmatrix::enhance(&s, file.field.tolerance)?
            .pairs
            .swap_remove(0)
            .into(),
    };
    Ok(turaev(&input, xi, limits)?.to_string())
}

/// Evaluates the invariant of the closure of `braid` (e.g. `"strands=2 s1 s1 s1"`).
/// A handle without `mu` is enhanced first. `max_strands` of zero keeps the
/// default cap. Free `value` with [`renhance_string_free`].
///
/// # Safety
/// `h` must come from this library, `braid` a valid C string, `value` valid.
#[no_mangle]
pub unsafe extern "C" fn renhance_invariant(
    h: *const RenhanceMatrix,
    braid: *const c_char,
    max_strands: usize,
    value: *mut *mut c_char,
) -> RenhanceStatus {
    guard(|| {
        let value = out_ptr(value, "value")?;
        let file = &handle(h)?.file;
        let xi: BraidWord = str_arg(braid, "braid")?.parse()?;
        let limits = Limits {
            max_strands: (max_strands > 0).then_some(max_strands),
        };
        let text = if float_backend(file) {
            invariant_generic::<CFloat>(file, &xi, limits)?
        } else {
            invariant_generic::<RatFunc>(file, &xi, limits)?
        };
        *value = to_c(text);
        Ok(RenhanceStatus::Ok)
    })
}

/// The message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into this library on the same thread; do not free it.
#[no_mangle]
pub extern "C" fn renhance_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must be null or come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn renhance_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_parse() {
        let Ok(b) = parse_bindings("p=2/3, q=i") else {
            panic!("bindings should parse")
        };
        assert_eq!(b.len(), 2);
        assert!(parse_bindings("p").is_err());
    }

    #[test]
    fn panics_become_status() {
        let s = guard(|| panic!("boom"));
        assert_eq!(s, RenhanceStatus::Panic);
        let msg = unsafe { CStr::from_ptr(renhance_last_error()) };
        assert!(msg.to_str().unwrap().contains("boom"));
    }
}
