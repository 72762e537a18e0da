//! C ABI over `lcc-core`.
//!
//! Graphs cross the boundary as opaque `LccGraph` handles. Every fallible
//! call returns an `LccStatus`; on failure a message is kept per thread and
//! read with `lcc_last_error_message`. Strings returned by the library are
//! owned by the caller and released with `lcc_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lcc_core::constructions::{
    cover_alpha2, cover_claw_free, cover_local_alpha, cover_max_clique, ConstructionError,
};
use lcc_core::cover::{lcc_exact, ClaimedBound, CoverCertificate, Method};
use lcc_core::graph::{Graph, GraphError};
use lcc_core::harness::{
    check_conjectures, enumerate_labeled_graphs, ConjectureReport, HarnessError, SweepOptions,
};
use lcc_core::invariants::{chromatic_number, clique_number, independence_number};
use lcc_core::ng_bounds::{cp_ng_bound, scp_ng_bound, NgBound};

/// Opaque graph handle.
pub struct LccGraph {
    graph: Graph,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LccStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidGraph = 4,
    /// The graph does not meet the construction's precondition.
    Precondition = 5,
    /// Input exceeds a size guard.
    TooLarge = 6,
    Internal = 7,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LccMethod {
    Alpha2 = 0,
    MaxClique = 1,
    LocalAlpha = 2,
    ClawFree = 3,
    Exact = 4,
}

/// One graph's conjecture check.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LccConjectureResult {
    pub n: usize,
    pub lcc: usize,
    pub lcc_complement: usize,
    pub chi: usize,
    pub conj1_holds: bool,
    pub conj2_holds: bool,
    pub equality1: bool,
    pub equality2: bool,
}

/// Totals of an exhaustive sweep.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LccSweepSummary {
    pub total: u64,
    pub conj1_violations: u64,
    pub conj2_violations: u64,
    pub equality1: u64,
    pub equality2: u64,
    pub lemma_failures: u64,
    pub errors: u64,
}

/// Realized partition bound for `G` and its complement.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LccNgBound {
    /// Edge-disjoint monochromatic triangles packed.
    pub k: usize,
    /// Edges covered by the packed triangles, `3k`.
    pub m: usize,
    /// Realized sum (total size for scp, count for cp).
    pub bound: usize,
    /// Whether both partitions validate.
    pub valid: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

struct Failure(LccStatus, String);

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        let status = match e {
            GraphError::TooManyVertices(_) | GraphError::Graph6HeaderRange(_) => {
                LccStatus::TooLarge
            }
            GraphError::MalformedGraph6(_)
            | GraphError::TruncatedGraph6 { .. }
            | GraphError::MalformedEdgeList(_) => LccStatus::ParseError,
            _ => LccStatus::InvalidGraph,
        };
        Failure(status, e.to_string())
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        let status = match e {
            HarnessError::TooLarge { .. } => LccStatus::TooLarge,
            _ => LccStatus::Internal,
        };
        Failure(status, e.to_string())
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        let status = match e {
            ConstructionError::TheoremGap { .. } => LccStatus::Internal,
            _ => LccStatus::Precondition,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(LccStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording any failure or panic as the thread's last error.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> LccStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => LccStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            LccStatus::Internal
        }
    }
}

unsafe fn graph_ref<'a>(g: *const LccGraph) -> Result<&'a Graph, Failure> {
    g.as_ref().map(|h| &h.graph).ok_or_else(|| null("graph"))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

fn into_c_string(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(LccStatus::Internal, "string contains NUL".into()))
}

/// Parses a graph6 string into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcc_graph_from_graph6(
    text: *const c_char,
    out: *mut *mut LccGraph,
) -> LccStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| Failure(LccStatus::InvalidUtf8, e.to_string()))?;
        let graph = Graph::parse_graph6(text.trim())?;
        write_out(out, Box::into_raw(Box::new(LccGraph { graph })))
    })
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`u0, v0, u1, v1, ...`).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (it may be null
/// when `edge_count` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcc_graph_from_edges(
    n: usize,
    edges: *const u32,
    edge_count: usize,
    out: *mut *mut LccGraph,
) -> LccStatus {
    guard(|| {
        let flat: &[u32] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * edge_count)
        };
        let pairs: Vec<(usize, usize)> = flat
            .chunks(2)
            .map(|p| (p[0] as usize, p[1] as usize))
            .collect();
        let graph = Graph::from_edge_list(n, &pairs)?;
        write_out(out, Box::into_raw(Box::new(LccGraph { graph })))
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `g` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lcc_graph_free(g: *mut LccGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn lcc_graph_order(g: *const LccGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.order())
}

/// Encodes the graph as graph6; free the result with `lcc_string_free`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcc_graph_to_graph6(
    g: *const LccGraph,
    out: *mut *mut c_char,
) -> LccStatus {
    guard(|| {
        let s = graph_ref(g)?.to_graph6()?;
        write_out(out, into_c_string(s)?)
    })
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcc_local_clique_cover_number(
    g: *const LccGraph,
    out: *mut usize,
) -> LccStatus {
    guard(|| write_out(out, lcc_exact(graph_ref(g)?).0))
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcc_chromatic_number(g: *const LccGraph, out: *mut usize) -> LccStatus {
    guard(|| write_out(out, chromatic_number(graph_ref(g)?).0))
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcc_independence_number(g: *const LccGraph, out: *mut usize) -> LccStatus {
    guard(|| write_out(out, independence_number(graph_ref(g)?).0))
}

/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcc_clique_number(g: *const LccGraph, out: *mut usize) -> LccStatus {
    guard(|| write_out(out, clique_number(graph_ref(g)?).0))
}

/// Builds a cover with `method` and writes its certificate as JSON to
/// `*out`. A graph outside the method's precondition gives
/// `LccStatus::Precondition`.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcc_cover_certificate_json(
    g: *const LccGraph,
    method: LccMethod,
    out: *mut *mut c_char,
) -> LccStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let cert = match method {
            LccMethod::Alpha2 => cover_alpha2(g)?,
            LccMethod::MaxClique => cover_max_clique(g),
            LccMethod::LocalAlpha => cover_local_alpha(g),
            LccMethod::ClawFree => cover_claw_free(g)?,
            LccMethod::Exact => {
                let (k, cover) = lcc_exact(g);
                CoverCertificate::certify(
                    g,
                    Method::Exact,
                    ClaimedBound::MaxValency { limit: k },
                    cover,
                )
            }
        };
        let json = serde_json::to_string(&cert)
            .map_err(|e| Failure(LccStatus::Internal, e.to_string()))?;
        write_out(out, into_c_string(json)?)
    })
}

/// Checks both conjectures on one graph.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcc_check_graph(
    g: *const LccGraph,
    out: *mut LccConjectureResult,
) -> LccStatus {
    guard(|| {
        let g = graph_ref(g)?.clone();
        let mut report: Option<ConjectureReport> = None;
        let opts = SweepOptions {
            threads: 1,
            ..SweepOptions::default()
        };
        let (summary, _) = check_conjectures([g], &opts, None, |r| {
            report = Some(r.clone());
            Ok(())
        })?;
        let r = report.ok_or_else(|| {
            Failure(
                LccStatus::Internal,
                format!("graph not checked ({} errors)", summary.errors),
            )
        })?;
        write_out(
            out,
            LccConjectureResult {
                n: r.n,
                lcc: r.lcc,
                lcc_complement: r.lcc_complement,
                chi: r.chi,
                conj1_holds: r.conj1_holds,
                conj2_holds: r.conj2_holds,
                equality1: r.equality1,
                equality2: r.equality2,
            },
        )
    })
}

/// Checks both conjectures on every labeled graph with `n` vertices
/// (`n <= 7`). `threads` = 0 uses one worker per core; `lemma` also checks
/// that an added isolated vertex keeps lcc.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn lcc_check_conjectures_exhaustive(
    n: usize,
    threads: usize,
    lemma: bool,
    out: *mut LccSweepSummary,
) -> LccStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("output pointer"));
        }
        let opts = SweepOptions {
            threads,
            lemma,
            ..SweepOptions::default()
        };
        let (s, _) = check_conjectures(enumerate_labeled_graphs(n)?, &opts, None, |_| Ok(()))?;
        write_out(
            out,
            LccSweepSummary {
                total: s.total,
                conj1_violations: s.conj1_violations,
                conj2_violations: s.conj2_violations,
                equality1: s.equality1,
                equality2: s.equality2,
                lemma_failures: s.lemma_failures,
                errors: s.errors,
            },
        )
    })
}

fn ng(g: &Graph, b: NgBound) -> LccNgBound {
    LccNgBound {
        k: b.packing.k(),
        m: b.packing.m(),
        bound: b.bound,
        valid: b.validate(g).is_ok(),
    }
}

/// Realized `scp(G) + scp(co-G)` from the greedy triangle packing.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcc_scp_ng_bound(g: *const LccGraph, out: *mut LccNgBound) -> LccStatus {
    guard(|| {
        let g = graph_ref(g)?;
        write_out(out, ng(g, scp_ng_bound(g)))
    })
}

/// Realized `cp(G) + cp(co-G)` from the greedy triangle packing.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn lcc_cp_ng_bound(g: *const LccGraph, out: *mut LccNgBound) -> LccStatus {
    guard(|| {
        let g = graph_ref(g)?;
        write_out(out, ng(g, cp_ng_bound(g)))
    })
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn lcc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failure on this thread, or null. Valid until the
/// next failing call on the same thread.
#[no_mangle]
pub extern "C" fn lcc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}
