//! C ABI over `degree-ramsey`.
//!
//! Every fallible function returns a `DrStatus`. On failure a message is
//! available from `dr_last_error_message` on the same thread. Handles are
//! opaque and owned by the caller, who releases them with the matching
//! `_free` function. No function panics across the boundary.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use degree_ramsey::algebraic::{build_hexagon, build_quadrangle, ShiftH, ShiftQ};
use degree_ramsey::bounds::lower_bound_exponent;
use degree_ramsey::field::PrimeField;
use degree_ramsey::graph::{girth, has_cycle_of_length, Graph};
use degree_ramsey::io::read_edge_list;
use degree_ramsey::partition::{cover_complete, partition_bipartite_exact, EdgePartition};
use degree_ramsey::rainbow::{decompose, DecompositionConfig};
use degree_ramsey::verify::verify_partition;
use degree_ramsey::Error;

/// Opaque simple undirected graph.
pub struct DrGraph(Graph);

/// Opaque edge partition. Parts are indexed `0..dr_partition_part_count`.
pub struct DrPartition(EdgePartition);

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    NotPrime = 3,
    Io = 4,
    Parse = 5,
    RetentionFailed = 6,
    CertificateFailed = 7,
    BufferTooSmall = 8,
    Internal = 9,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> DrStatus {
    match e {
        Error::InvalidModulus { .. } => DrStatus::NotPrime,
        Error::Io { .. } => DrStatus::Io,
        Error::Parse { .. } | Error::MalformedLabel(_) => DrStatus::Parse,
        Error::RetentionFailed { .. } => DrStatus::RetentionFailed,
        Error::CertificateFailed(_) => DrStatus::CertificateFailed,
        Error::DecompositionAborted { source, .. } => status_of(source),
        _ => DrStatus::InvalidArgument,
    }
}

struct Fail(DrStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(DrStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, recording its error message and converting panics.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> DrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DrStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal error: {msg}"));
            DrStatus::Internal
        }
    }
}

unsafe fn graph_ref<'a>(g: *const DrGraph) -> Result<&'a Graph, Fail> {
    g.as_ref().map(|g| &g.0).ok_or_else(|| null("graph"))
}

unsafe fn partition_ref<'a>(p: *const DrPartition) -> Result<&'a EdgePartition, Fail> {
    p.as_ref().map(|p| &p.0).ok_or_else(|| null("partition"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn emit_graph(out: *mut *mut DrGraph, g: Graph) -> Result<(), Fail> {
    write(out, Box::into_raw(Box::new(DrGraph(g))))
}

unsafe fn emit_partition(out: *mut *mut DrPartition, p: EdgePartition) -> Result<(), Fail> {
    write(out, Box::into_raw(Box::new(DrPartition(p))))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn dr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds a graph on `n` vertices from `m` edges stored as `2 * m`
/// interleaved endpoints.
///
/// # Safety
/// `edges` must point to `2 * m` readable `uint32_t` values (it may be
/// null when `m` is 0) and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_graph_from_edges(
    n: usize,
    edges: *const u32,
    m: usize,
    out: *mut *mut DrGraph,
) -> DrStatus {
    guard(|| {
        let flat: &[u32] = if m == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            std::slice::from_raw_parts(edges, 2 * m)
        };
        let g = Graph::from_edges(n, flat.chunks_exact(2).map(|e| (e[0], e[1])))?;
        emit_graph(out, g)
    })
}

/// Reads a graph in the edge-list text format.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dr_graph_read_edge_list(
    path: *const c_char,
    out: *mut *mut DrGraph,
) -> DrStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        let path = CStr::from_ptr(path)
            .to_str()
            .map_err(|_| Fail(DrStatus::InvalidArgument, "path is not UTF-8".into()))?;
        emit_graph(out, read_edge_list(path)?)
    })
}

/// # Safety
/// `g` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dr_graph_free(g: *mut DrGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dr_graph_vertex_count(g: *const DrGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dr_graph_edge_count(g: *const DrGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.edge_count())
}

/// Copies the edges (`u < v`, sorted) as interleaved endpoints into
/// `buf`, which holds `cap` edges. Fails with `BufferTooSmall` when the
/// graph has more than `cap` edges.
///
/// # Safety
/// `g` must be a live handle and `buf` must have room for `2 * cap` values.
#[no_mangle]
pub unsafe extern "C" fn dr_graph_edges(g: *const DrGraph, buf: *mut u32, cap: usize) -> DrStatus {
    guard(|| {
        let g = graph_ref(g)?;
        copy_edges(g.edges(), g.edge_count(), buf, cap)
    })
}

unsafe fn copy_edges(
    edges: impl Iterator<Item = (u32, u32)>,
    m: usize,
    buf: *mut u32,
    cap: usize,
) -> Result<(), Fail> {
    if m > cap {
        return Err(Fail(
            DrStatus::BufferTooSmall,
            format!("{m} edges, buffer holds {cap}"),
        ));
    }
    if m == 0 {
        return Ok(());
    }
    if buf.is_null() {
        return Err(null("buffer"));
    }
    let out = std::slice::from_raw_parts_mut(buf, 2 * m);
    for (slot, (u, v)) in out.chunks_exact_mut(2).zip(edges) {
        slot[0] = u;
        slot[1] = v;
    }
    Ok(())
}

/// Girth of `g`; 0 when `g` is acyclic.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dr_graph_girth(g: *const DrGraph, out: *mut u32) -> DrStatus {
    guard(|| {
        let g = graph_ref(g)?;
        write(out, girth(g).finite().unwrap_or(0))
    })
}

/// Whether `g` contains a cycle of exactly `len` edges (3 to 16).
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dr_graph_has_cycle(
    g: *const DrGraph,
    len: u32,
    out: *mut bool,
) -> DrStatus {
    guard(|| {
        let g = graph_ref(g)?;
        write(out, has_cycle_of_length(g, len)?)
    })
}

/// The quadrangle graph Q(q) shifted by `(alpha2, alpha3)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_build_quadrangle(
    q: u64,
    alpha2: u64,
    alpha3: u64,
    out: *mut *mut DrGraph,
) -> DrStatus {
    guard(|| {
        let f = PrimeField::new(q)?;
        emit_graph(
            out,
            build_quadrangle(q, ShiftQ::new(&f, alpha2, alpha3))?.into_graph(),
        )
    })
}

/// The hexagon graph H(q) shifted by `beta[0..4]`; `beta` may be null
/// for the unshifted graph.
///
/// # Safety
/// `beta` must be null or point to 4 values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_build_hexagon(
    q: u64,
    beta: *const u64,
    out: *mut *mut DrGraph,
) -> DrStatus {
    guard(|| {
        let f = PrimeField::new(q)?;
        let shift = if beta.is_null() {
            ShiftH::zero(&f)
        } else {
            let b = std::slice::from_raw_parts(beta, 4);
            ShiftH::new(&f, [b[0], b[1], b[2], b[3]])
        };
        emit_graph(out, build_hexagon(q, shift)?.into_graph())
    })
}

/// Exact partition of K_n into parts of girth at least `girth` (8 or 12).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_cover_complete(
    n: usize,
    girth: u32,
    out: *mut *mut DrPartition,
) -> DrStatus {
    guard(|| {
        let (p, _) = cover_complete(n, girth)?;
        emit_partition(out, p)
    })
}

/// Partition of K_{q^k,q^k} into q^(k-1) shifted copies, `k` = `arity`
/// (3 or 5).
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_partition_bipartite_exact(
    q: u64,
    arity: usize,
    out: *mut *mut DrPartition,
) -> DrStatus {
    guard(|| emit_partition(out, partition_bipartite_exact(q, arity)?))
}

/// Partitions `g` into parts without a cycle of length `cycle` (6 or 10)
/// using the default configuration and the given seed.
///
/// # Safety
/// `g` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dr_decompose(
    g: *const DrGraph,
    cycle: u32,
    seed: u64,
    out: *mut *mut DrPartition,
) -> DrStatus {
    guard(|| {
        let g = graph_ref(g)?;
        let cfg = DecompositionConfig::new(cycle)?.with_seed(seed);
        emit_partition(out, decompose(g, &cfg)?.partition)
    })
}

/// # Safety
/// `p` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn dr_partition_free(p: *mut DrPartition) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Number of stored (nonempty) parts, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dr_partition_part_count(p: *const DrPartition) -> usize {
    p.as_ref().map_or(0, |p| p.0.parts.len())
}

/// Number of parts including empty ones, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dr_partition_declared_parts(p: *const DrPartition) -> usize {
    p.as_ref().map_or(0, |p| p.0.declared_parts)
}

/// Vertex count of the partitioned host graph, or 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn dr_partition_vertex_count(p: *const DrPartition) -> usize {
    p.as_ref().map_or(0, |p| p.0.host.vertex_count())
}

/// Id and edge count of part `index`.
///
/// # Safety
/// `p` must be a live handle; `id` and `edges` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_partition_part_info(
    p: *const DrPartition,
    index: usize,
    id: *mut usize,
    edges: *mut usize,
) -> DrStatus {
    guard(|| {
        let part = part_at(partition_ref(p)?, index)?;
        write(id, part.id)?;
        write(edges, part.edges.len())
    })
}

/// Copies the edges of part `index` into `buf` (room for `cap` edges).
///
/// # Safety
/// `p` must be a live handle and `buf` must have room for `2 * cap` values.
#[no_mangle]
pub unsafe extern "C" fn dr_partition_part_edges(
    p: *const DrPartition,
    index: usize,
    buf: *mut u32,
    cap: usize,
) -> DrStatus {
    guard(|| {
        let part = part_at(partition_ref(p)?, index)?;
        copy_edges(part.edges.iter().copied(), part.edges.len(), buf, cap)
    })
}

fn part_at(p: &EdgePartition, index: usize) -> Result<&degree_ramsey::partition::Part, Fail> {
    p.parts.get(index).ok_or_else(|| {
        Fail(
            DrStatus::InvalidArgument,
            format!("part index {index} out of range"),
        )
    })
}

/// Re-checks exactness and the target property of every part.
///
/// # Safety
/// `p` must be a live handle and `passed` writable.
#[no_mangle]
pub unsafe extern "C" fn dr_partition_verify(p: *const DrPartition, passed: *mut bool) -> DrStatus {
    guard(|| {
        let p = partition_ref(p)?;
        write(passed, verify_partition(p, p.target).passed())
    })
}

/// Lower-bound exponent `1 + 2/(3k - 5 + delta)` as a reduced fraction.
///
/// # Safety
/// `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn dr_lower_bound_exponent(k: u32, num: *mut i64, den: *mut i64) -> DrStatus {
    guard(|| {
        let e = lower_bound_exponent(k)?;
        write(num, *e.numer())?;
        write(den, *e.denom())
    })
}
