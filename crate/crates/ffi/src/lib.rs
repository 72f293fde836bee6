//! C ABI over `bispectral`.
//!
//! Graphs live behind an opaque `BsGraph` handle created by one of the
//! `bs_graph_*` constructors and released with `bs_graph_free`. Every fallible
//! call returns a `BsStatus`; on failure `bs_last_error` describes the error
//! (per thread, valid until the next call on that thread). Strings returned
//! through out-parameters are owned by the caller and freed with
//! `bs_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use bispectral::certify::{certify, Verdict};
use bispectral::error::Error;
use bispectral::factors::matching_number;
use bispectral::graph::{make_complete, make_extremal, parse_graph, serialize_graph, BipartiteGraph, ExtremalSpec};
use bispectral::packing::tree_packing_number;
use bispectral::spectral::spectral_radius;
use bispectral::theorems::{threshold, Theorem, TheoremParams};

/// Opaque graph handle.
pub struct BsGraph(BipartiteGraph);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    SizeCap = 5,
    Disconnected = 6,
    Precondition = 7,
    NonConvergence = 8,
    Contradiction = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsVerdict {
    HypothesisFail = 0,
    SpectralBelow = 1,
    ExtremalException = 2,
    GuaranteedAndConstructed = 3,
    Contradiction = 4,
}

/// Theorem parameters; 0 means "not given".
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct BsParams {
    pub a: usize,
    pub b: usize,
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub delta: usize,
}

impl From<&BsParams> for TheoremParams {
    fn from(p: &BsParams) -> Self {
        let opt = |v: usize| (v != 0).then_some(v);
        TheoremParams {
            a: opt(p.a),
            b: opt(p.b),
            k: opt(p.k),
            m: opt(p.m),
            n: opt(p.n),
            delta: opt(p.delta),
        }
    }
}

impl From<Verdict> for BsVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::HypothesisFail => BsVerdict::HypothesisFail,
            Verdict::SpectralBelow => BsVerdict::SpectralBelow,
            Verdict::ExtremalException => BsVerdict::ExtremalException,
            Verdict::GuaranteedAndConstructed => BsVerdict::GuaranteedAndConstructed,
            Verdict::Contradiction => BsVerdict::Contradiction,
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BsStatus {
    match e {
        Error::Parse { .. }
        | Error::VertexOutOfRange { .. }
        | Error::DuplicateEdge { .. }
        | Error::WithinPartEdge { .. } => BsStatus::Parse,
        Error::SizeCap { .. } => BsStatus::SizeCap,
        Error::Disconnected => BsStatus::Disconnected,
        Error::Precondition(_) | Error::DegreeSumMismatch { .. } => BsStatus::Precondition,
        Error::NonConvergence { .. } => BsStatus::NonConvergence,
        Error::Contradiction(_) => BsStatus::Contradiction,
        _ => BsStatus::InvalidArgument,
    }
}

struct Fail(BsStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

/// Runs `f`, converting errors and panics into a status and a message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BsStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BsStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside bispectral");
            BsStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(BsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn graph_ref<'a>(g: *const BsGraph) -> Result<&'a BipartiteGraph, Fail> {
    g.as_ref().map(|h| &h.0).ok_or_else(|| null("graph"))
}

unsafe fn text_arg<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Fail(BsStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("library output has no nul bytes").into_raw()
}

unsafe fn put_graph(out: *mut *mut BsGraph, g: BipartiteGraph) -> Result<(), Fail> {
    put(out, Box::into_raw(Box::new(BsGraph(g))))
}

/// Message for the last failed call on this thread (empty if none).
#[no_mangle]
pub extern "C" fn bs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn bs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses the `bip m n` / `e i j` text format.
///
/// # Safety
/// `text` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_graph_parse(text: *const c_char, out: *mut *mut BsGraph) -> BsStatus {
    guard(|| put_graph(out, parse_graph(text_arg(text, "text")?)?))
}

/// `K_{m,n}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_graph_complete(m: usize, n: usize, out: *mut *mut BsGraph) -> BsStatus {
    guard(|| put_graph(out, make_complete(m, n)?))
}

/// `K_{m,n}` minus the edges of `K_{p,q}`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_graph_extremal(
    m: usize,
    n: usize,
    p: usize,
    q: usize,
    out: *mut *mut BsGraph,
) -> BsStatus {
    guard(|| put_graph(out, make_extremal(ExtremalSpec::new(m, n, p, q)?)?))
}

/// Releases a graph; null is ignored.
///
/// # Safety
/// `g` must come from a `bs_graph_*` constructor and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bs_graph_free(g: *mut BsGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Part sizes and edge count.
///
/// # Safety
/// `g` must be a live handle; the out-pointers must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_graph_shape(
    g: *const BsGraph,
    m: *mut usize,
    n: *mut usize,
    edges: *mut usize,
) -> BsStatus {
    guard(|| {
        let g = graph_ref(g)?;
        put(m, g.m())?;
        put(n, g.n())?;
        put(edges, g.edge_count())
    })
}

/// Canonical text form; free the result with `bs_string_free`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_graph_serialize(g: *const BsGraph, out: *mut *mut c_char) -> BsStatus {
    guard(|| put(out, into_c_string(serialize_graph(graph_ref(g)?))))
}

/// Releases a string returned by this library; null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn bs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Largest adjacency eigenvalue, iterated to residual `tol`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_spectral_radius(g: *const BsGraph, tol: f64, out: *mut f64) -> BsStatus {
    guard(|| put(out, spectral_radius(graph_ref(g)?, tol)?.value))
}

/// Closed-form threshold of theorem `"t1"`…`"t4"`.
///
/// # Safety
/// `theorem` must be a nul-terminated string; `params` readable; `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn bs_threshold(
    theorem: *const c_char,
    params: *const BsParams,
    out: *mut f64,
) -> BsStatus {
    guard(|| {
        let t: Theorem = text_arg(theorem, "theorem")?.parse()?;
        let p = params.as_ref().ok_or_else(|| null("params"))?;
        put(out, threshold(t, &p.into())?)
    })
}

/// Certifies a theorem on `g`. Writes the verdict and the JSON certificate
/// (free with `bs_string_free`).
///
/// # Safety
/// `g` must be a live handle; `theorem` nul-terminated; `params` readable;
/// the out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn bs_certify(
    g: *const BsGraph,
    theorem: *const c_char,
    params: *const BsParams,
    tol: f64,
    verdict: *mut BsVerdict,
    json: *mut *mut c_char,
) -> BsStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let t: Theorem = text_arg(theorem, "theorem")?.parse()?;
        let p = params.as_ref().ok_or_else(|| null("params"))?;
        if verdict.is_null() || json.is_null() {
            return Err(null("output pointer"));
        }
        let cert = certify(g, t, &p.into(), tol)?;
        put(verdict, cert.verdict.into())?;
        put(json, into_c_string(cert.to_json()))
    })
}

/// Maximum number of edge-disjoint spanning trees.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_tree_packing_number(g: *const BsGraph, out: *mut usize) -> BsStatus {
    guard(|| put(out, tree_packing_number(graph_ref(g)?).0))
}

/// Size of a maximum matching.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn bs_matching_number(g: *const BsGraph, out: *mut usize) -> BsStatus {
    guard(|| put(out, matching_number(graph_ref(g)?)))
}
