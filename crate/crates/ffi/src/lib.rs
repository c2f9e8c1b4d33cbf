//! C ABI for the cwising library.
//!
//! Conventions: objects are opaque handles created and destroyed by this
//! library; every fallible call returns a [`CwisingStatus`] and writes its
//! result through an out-pointer; on failure a message is stored per thread
//! and can be fetched with [`cwising_last_error`]. Strings returned through
//! out-pointers are NUL-terminated, owned by the caller, and must be
//! released with [`cwising_string_free`].
//!
//! The header `include/cwising.h` is generated from this file at build
//! time.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::time::{Duration, Instant};

use cwising::cwexpr::{build_fallback, build_family, parse_term, CwTerm};
use cwising::engine::{self, EngineError, Preset, RunOptions, Variant};
use cwising::graph::KGraph;
use cwising::oracle::brute_force;
use cwising::polynomial::Poly;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwisingStatus {
    Ok = 0,
    /// A required pointer argument was NULL.
    NullArgument = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// Input failed to parse or validate.
    Parse = 3,
    /// The aggregated engine rejected a term with redundant edge creations.
    RedundantEdgeAdd = 4,
    /// The wall-clock budget was exhausted.
    BudgetExceeded = 5,
    /// The instance exceeds the brute-force size bound.
    TooLarge = 6,
}

/// Engine variant selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwisingEngine {
    Aggregated = 0,
    Reference = 1,
}

impl From<CwisingEngine> for Variant {
    fn from(e: CwisingEngine) -> Variant {
        match e {
            CwisingEngine::Aggregated => Variant::Aggregated,
            CwisingEngine::Reference => Variant::Reference,
        }
    }
}

/// Polynomial specialization selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CwisingPreset {
    Ising = 0,
    IndependenceIsing = 1,
    DominatingIsing = 2,
    Independence = 3,
    Domination = 4,
}

impl From<CwisingPreset> for Preset {
    fn from(p: CwisingPreset) -> Preset {
        match p {
            CwisingPreset::Ising => Preset::Ising,
            CwisingPreset::IndependenceIsing => Preset::IndependenceIsing,
            CwisingPreset::DominatingIsing => Preset::DominatingIsing,
            CwisingPreset::Independence => Preset::Independence,
            CwisingPreset::Domination => Preset::Domination,
        }
    }
}

/// Validation summary of a term (see `cwising_term_validate`).
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CwisingValidation {
    pub width: u32,
    pub irredundant: bool,
    pub vertex_count: u64,
    pub edge_count: u64,
    pub redundant_sites: u64,
}

/// A labeled simple graph (opaque).
pub struct CwisingGraph(KGraph);
/// A clique-width expression term (opaque).
pub struct CwisingTerm(CwTerm);
/// A sparse integer polynomial (opaque).
pub struct CwisingPoly(Poly);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg: String = msg.into();
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
}

/// Returns the error message of the most recent failing call on this
/// thread, or NULL if there is none. Free with `cwising_string_free`.
#[no_mangle]
pub extern "C" fn cwising_last_error() -> *mut c_char {
    LAST_ERROR.with(|slot| match &*slot.borrow() {
        Some(msg) => msg.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must have been returned by a cwising function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn cwising_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

unsafe fn read_utf8<'a>(ptr: *const c_char) -> Result<&'a str, CwisingStatus> {
    if ptr.is_null() {
        set_error("string argument is NULL");
        return Err(CwisingStatus::NullArgument);
    }
    unsafe { CStr::from_ptr(ptr) }.to_str().map_err(|_| {
        set_error("string argument is not valid UTF-8");
        CwisingStatus::InvalidUtf8
    })
}

fn give_string(out: *mut *mut c_char, value: String) -> CwisingStatus {
    let c = match CString::new(value) {
        Ok(c) => c,
        Err(_) => {
            set_error("output contained an interior NUL byte");
            return CwisingStatus::Parse;
        }
    };
    unsafe { *out = c.into_raw() };
    CwisingStatus::Ok
}

macro_rules! check_out {
    ($out:expr) => {
        if $out.is_null() {
            set_error("out pointer is NULL");
            return CwisingStatus::NullArgument;
        }
    };
}

macro_rules! check_handle {
    ($h:expr) => {
        if $h.is_null() {
            set_error("handle argument is NULL");
            return CwisingStatus::NullArgument;
        }
    };
}

/// Parses the graph text format (`n m` header, `u v` edge lines, optional
/// `labels ...` trailer) into a new graph handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cwising_graph_parse(
    text: *const c_char,
    out: *mut *mut CwisingGraph,
) -> CwisingStatus {
    check_out!(out);
    let text = match unsafe { read_utf8(text) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    match KGraph::parse(text) {
        Ok(g) => {
            clear_error();
            unsafe { *out = Box::into_raw(Box::new(CwisingGraph(g))) };
            CwisingStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            CwisingStatus::Parse
        }
    }
}

/// # Safety
/// `g` must be a live graph handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cwising_graph_free(g: *mut CwisingGraph) {
    if !g.is_null() {
        drop(unsafe { Box::from_raw(g) });
    }
}

/// Number of vertices; 0 for NULL.
///
/// # Safety
/// `g` must be a live graph handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cwising_graph_vertex_count(g: *const CwisingGraph) -> u64 {
    unsafe { g.as_ref() }.map_or(0, |g| g.0.n() as u64)
}

/// Number of edges; 0 for NULL.
///
/// # Safety
/// `g` must be a live graph handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cwising_graph_edge_count(g: *const CwisingGraph) -> u64 {
    unsafe { g.as_ref() }.map_or(0, |g| g.0.edge_count() as u64)
}

/// Parses a term from its text form (`v(id,label)`, `U(s,t)`, `r(p->q,t)`,
/// `e(p,q,t)`, `#` comments).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cwising_term_parse(
    text: *const c_char,
    out: *mut *mut CwisingTerm,
) -> CwisingStatus {
    check_out!(out);
    let text = match unsafe { read_utf8(text) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    match parse_term(text) {
        Ok(t) => {
            clear_error();
            unsafe { *out = Box::into_raw(Box::new(CwisingTerm(t))) };
            CwisingStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            CwisingStatus::Parse
        }
    }
}

/// Builds a family term from the mini-syntax `clique:N`, `biclique:A,B`,
/// `path:N`, `cycle:N`, `cograph:TREE`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cwising_term_build_family(
    spec: *const c_char,
    out: *mut *mut CwisingTerm,
) -> CwisingStatus {
    check_out!(out);
    let spec = match unsafe { read_utf8(spec) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    match build_family(spec) {
        Ok(t) => {
            clear_error();
            unsafe { *out = Box::into_raw(Box::new(CwisingTerm(t))) };
            CwisingStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            CwisingStatus::Parse
        }
    }
}

/// Builds the width-n fallback term of a graph (one label per vertex, one
/// edge creation per edge).
///
/// # Safety
/// `g` must be a live graph handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cwising_term_fallback(
    g: *const CwisingGraph,
    out: *mut *mut CwisingTerm,
) -> CwisingStatus {
    check_out!(out);
    check_handle!(g);
    let g = unsafe { &(*g).0 };
    match build_fallback(g) {
        Ok(t) => {
            clear_error();
            unsafe { *out = Box::into_raw(Box::new(CwisingTerm(t))) };
            CwisingStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            CwisingStatus::Parse
        }
    }
}

/// Renders a term in the canonical text form accepted by
/// `cwising_term_parse`.
///
/// # Safety
/// `t` must be a live term handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cwising_term_render(
    t: *const CwisingTerm,
    out: *mut *mut c_char,
) -> CwisingStatus {
    check_out!(out);
    check_handle!(t);
    clear_error();
    give_string(out, unsafe { &(*t).0 }.render())
}

/// Replays a term and fills `out` with width, counts, and the number of
/// redundant edge-creation sites.
///
/// # Safety
/// `t` must be a live term handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cwising_term_validate(
    t: *const CwisingTerm,
    out: *mut CwisingValidation,
) -> CwisingStatus {
    check_out!(out);
    check_handle!(t);
    match unsafe { &(*t).0 }.validate() {
        Ok(report) => {
            clear_error();
            unsafe {
                *out = CwisingValidation {
                    width: report.width,
                    irredundant: report.irredundant,
                    vertex_count: report.vertex_count as u64,
                    edge_count: report.edge_count as u64,
                    redundant_sites: report.redundant_sites.len() as u64,
                };
            }
            CwisingStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            CwisingStatus::Parse
        }
    }
}

/// # Safety
/// `t` must be a live term handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cwising_term_free(t: *mut CwisingTerm) {
    if !t.is_null() {
        drop(unsafe { Box::from_raw(t) });
    }
}

/// Runs the dynamic program on a term and applies the preset
/// specialization. `budget_secs` of 0 means no time limit.
///
/// # Safety
/// `t` must be a live term handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cwising_compute(
    t: *const CwisingTerm,
    preset: CwisingPreset,
    engine: CwisingEngine,
    budget_secs: u64,
    out: *mut *mut CwisingPoly,
) -> CwisingStatus {
    check_out!(out);
    check_handle!(t);
    let term = unsafe { &(*t).0 };
    let opts = RunOptions {
        collect_trace: false,
        deadline: (budget_secs > 0).then(|| Instant::now() + Duration::from_secs(budget_secs)),
    };
    match engine::run_preset(term, preset.into(), engine.into(), &opts) {
        Ok((poly, _)) => {
            clear_error();
            unsafe { *out = Box::into_raw(Box::new(CwisingPoly(poly))) };
            CwisingStatus::Ok
        }
        Err(e) => {
            let status = match &e {
                EngineError::RedundantEdgeAdd { .. } => CwisingStatus::RedundantEdgeAdd,
                EngineError::BudgetExceeded => CwisingStatus::BudgetExceeded,
                _ => CwisingStatus::Parse,
            };
            set_error(e.to_string());
            status
        }
    }
}

/// Brute-force subset enumeration with the preset specialization applied;
/// fails with `TooLarge` beyond `max_n` vertices.
///
/// # Safety
/// `g` must be a live graph handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cwising_oracle(
    g: *const CwisingGraph,
    preset: CwisingPreset,
    max_n: u32,
    out: *mut *mut CwisingPoly,
) -> CwisingStatus {
    check_out!(out);
    check_handle!(g);
    let graph = unsafe { &(*g).0 };
    let preset: Preset = preset.into();
    match brute_force(graph, preset.theta(), max_n as usize) {
        Ok(result) => match engine::preset(&result.poly, preset) {
            Ok(poly) => {
                clear_error();
                unsafe { *out = Box::into_raw(Box::new(CwisingPoly(poly))) };
                CwisingStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                CwisingStatus::Parse
            }
        },
        Err(e) => {
            set_error(e.to_string());
            CwisingStatus::TooLarge
        }
    }
}

/// Serializes a polynomial in the canonical JSON form
/// `{"vars":[...],"terms":[{"exp":[...],"coeff":"..."}]}`.
///
/// # Safety
/// `p` must be a live polynomial handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cwising_poly_to_json(
    p: *const CwisingPoly,
    out: *mut *mut c_char,
) -> CwisingStatus {
    check_out!(out);
    check_handle!(p);
    clear_error();
    give_string(out, unsafe { &(*p).0 }.to_json_string())
}

/// Human-readable form, e.g. `1 + 2*x*y + x^2*z`.
///
/// # Safety
/// `p` must be a live polynomial handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cwising_poly_to_text(
    p: *const CwisingPoly,
    out: *mut *mut c_char,
) -> CwisingStatus {
    check_out!(out);
    check_handle!(p);
    clear_error();
    give_string(out, unsafe { &(*p).0 }.to_text())
}

/// Parses the canonical JSON form into a new polynomial handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cwising_poly_parse_json(
    text: *const c_char,
    out: *mut *mut CwisingPoly,
) -> CwisingStatus {
    check_out!(out);
    let text = match unsafe { read_utf8(text) } {
        Ok(t) => t,
        Err(status) => return status,
    };
    match Poly::from_json_str(text) {
        Ok(p) => {
            clear_error();
            unsafe { *out = Box::into_raw(Box::new(CwisingPoly(p))) };
            CwisingStatus::Ok
        }
        Err(e) => {
            set_error(e.to_string());
            CwisingStatus::Parse
        }
    }
}

/// Exact structural equality (same variables, terms, coefficients).
/// NULL handles compare unequal.
///
/// # Safety
/// `a` and `b` must each be a live polynomial handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cwising_poly_eq(a: *const CwisingPoly, b: *const CwisingPoly) -> bool {
    match (unsafe { a.as_ref() }, unsafe { b.as_ref() }) {
        (Some(a), Some(b)) => a.0 == b.0,
        _ => false,
    }
}

/// Largest exponent of the named variable; 0 when the variable is unknown
/// or the polynomial is constant (check `cwising_last_error` to tell the
/// two apart).
///
/// # Safety
/// `p` must be a live polynomial handle; `var` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn cwising_poly_max_degree(p: *const CwisingPoly, var: *const c_char) -> u64 {
    let Some(poly) = (unsafe { p.as_ref() }) else {
        set_error("handle argument is NULL");
        return 0;
    };
    let var = match unsafe { read_utf8(var) } {
        Ok(v) => v,
        Err(_) => return 0,
    };
    match poly.0.max_degree(var) {
        Ok(d) => {
            clear_error();
            d
        }
        Err(e) => {
            set_error(e.to_string());
            0
        }
    }
}

/// # Safety
/// `p` must be a live polynomial handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn cwising_poly_free(p: *mut CwisingPoly) {
    if !p.is_null() {
        drop(unsafe { Box::from_raw(p) });
    }
}
