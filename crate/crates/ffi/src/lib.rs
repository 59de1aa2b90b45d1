//! C ABI over `gpgauss`.
//!
//! Graphs live behind the opaque [`GpgGraph`] handle. Every fallible call
//! returns a [`GpgStatus`] and writes its result through an out pointer; on
//! failure [`gpg_last_error_message`] describes the most recent error on the
//! calling thread. Strings returned by the library are released with
//! [`gpg_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gpgauss::cltlab::{self, DEFAULT_TUPLE_BUDGET};
use gpgauss::spinmodel::{self, SignFunction, DEFAULT_ITERATION_BUDGET};
use gpgauss::{fock, partitions, words};
use gpgauss::{Error, LabeledWord, PairPartition, PairingOptions, SimplicialGraph, Word};

/// Result codes. The numbering matches the exit codes of the `gpgauss` CLI
/// where the two overlap.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GpgStatus {
    Ok = 0,
    /// Null pointer, bad numeric parameter or unsupported combination.
    InvalidArgument = 1,
    /// Malformed graph, word or pairing text.
    InvalidInput = 2,
    BudgetExceeded = 3,
    /// A panic was caught at the boundary.
    Internal = 4,
}

/// Opaque graph handle.
pub struct GpgGraph {
    graph: SimplicialGraph,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(GpgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match &e {
            e if e.is_budget() => GpgStatus::BudgetExceeded,
            Error::Domain(_) | Error::OddN(_) => GpgStatus::InvalidArgument,
            _ => GpgStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure(GpgStatus::InvalidArgument, message.into())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GpgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => GpgStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_last_error(message);
            status
        }
        Err(_) => {
            set_last_error("internal error".into());
            GpgStatus::Internal
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(invalid(format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(GpgStatus::InvalidInput, format!("{what} is not UTF-8")))
}

unsafe fn graph<'a>(g: *const GpgGraph) -> Result<&'a SimplicialGraph, Failure> {
    g.as_ref()
        .map(|h| &h.graph)
        .ok_or_else(|| invalid("graph handle is null"))
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    *out = value;
    Ok(())
}

/// Parses graph JSON `{"vertices": [...], "edges": [[u, v], ...]}`.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gpg_graph_from_json(
    json: *const c_char,
    out: *mut *mut GpgGraph,
) -> GpgStatus {
    guard(|| {
        let graph = SimplicialGraph::from_json(text(json, "json")?)?;
        write(out, Box::into_raw(Box::new(GpgGraph { graph })))
    })
}

/// Releases a graph handle. Null is ignored.
///
/// # Safety
/// `g` must come from [`gpg_graph_from_json`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gpg_graph_free(g: *mut GpgGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gpg_graph_vertex_count(g: *const GpgGraph) -> usize {
    g.as_ref().map_or(0, |h| h.graph.len())
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn gpg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn gpg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Canonical minimal representative of `word`, written as a new string.
///
/// # Safety
/// Pointers must be valid; free `*out` with [`gpg_string_free`].
#[no_mangle]
pub unsafe extern "C" fn gpg_normalize(
    g: *const GpgGraph,
    word: *const c_char,
    out: *mut *mut c_char,
) -> GpgStatus {
    guard(|| {
        let g = graph(g)?;
        let w = Word::parse(g, text(word, "word")?)?;
        let s = words::normalize(g, &w).display(g).to_string();
        write(
            out,
            CString::new(s)
                .map_err(|e| invalid(e.to_string()))?
                .into_raw(),
        )
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gpg_is_reduced(
    g: *const GpgGraph,
    word: *const c_char,
    out: *mut bool,
) -> GpgStatus {
    guard(|| {
        let g = graph(g)?;
        let w = Word::parse(g, text(word, "word")?)?;
        write(out, words::is_reduced(g, &w))
    })
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gpg_are_equivalent(
    g: *const GpgGraph,
    word: *const c_char,
    other: *const c_char,
    out: *mut bool,
) -> GpgStatus {
    guard(|| {
        let g = graph(g)?;
        let a = Word::parse(g, text(word, "word")?)?;
        let b = Word::parse(g, text(other, "other")?)?;
        write(out, words::are_equivalent(g, &a, &b))
    })
}

fn pairing_options(match_vertex: bool) -> PairingOptions {
    PairingOptions {
        match_mode: if match_vertex {
            gpgauss::MatchMode::Vertex
        } else {
            gpgauss::MatchMode::Label
        },
        ..PairingOptions::default()
    }
}

/// Number of Γ-admissible pairings of a labeled word (`"a:1 b:2 ..."`).
/// With `match_vertex` set, spins are ignored when pairing.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gpg_count_gamma_admissible(
    g: *const GpgGraph,
    word: *const c_char,
    match_vertex: bool,
    out: *mut u64,
) -> GpgStatus {
    guard(|| {
        let g = graph(g)?;
        let w = LabeledWord::parse(g, text(word, "word")?)?;
        write(
            out,
            partitions::count_gamma_admissible(g, &w, &pairing_options(match_vertex))?,
        )
    })
}

/// Vacuum moment of the field operators by Fock-space simulation.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gpg_vacuum_moment(
    g: *const GpgGraph,
    word: *const c_char,
    out: *mut i64,
) -> GpgStatus {
    guard(|| {
        let g = graph(g)?;
        let w = LabeledWord::parse(g, text(word, "word")?)?;
        write(out, fock::vacuum_moment(g, &w)?)
    })
}

/// `Σ_P θ^{#I_Γ(P)}` over pairings, `θ ∈ [-1, 1]`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gpg_limit_moment(
    g: *const GpgGraph,
    word: *const c_char,
    theta: f64,
    out: *mut f64,
) -> GpgStatus {
    guard(|| {
        let g = graph(g)?;
        let w = LabeledWord::parse(g, text(word, "word")?)?;
        write(
            out,
            partitions::limit_moment(g, &w, theta, &PairingOptions::default())?,
        )
    })
}

/// Exact matrix-model moment `numerator / denominator` under seeded signs.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gpg_matrix_moment(
    g: *const GpgGraph,
    word: *const c_char,
    n: usize,
    seed: u64,
    p: f64,
    numerator: *mut i64,
    denominator: *mut i64,
) -> GpgStatus {
    guard(|| {
        let g = graph(g)?;
        let w = LabeledWord::parse(g, text(word, "word")?)?;
        let s = SignFunction::seeded(g, p, seed)?;
        let m = spinmodel::moment_s_word(&s, &w, n, DEFAULT_ITERATION_BUDGET)?;
        let fit = |x: i128| i64::try_from(x).map_err(|_| invalid("moment does not fit in 64 bits"));
        let (num, den) = (fit(m.numerator)?, fit(m.denominator)?);
        write(numerator, num)?;
        write(denominator, den)
    })
}

/// Class-tuple estimator for the pairing `"1-3,2-4"` of a vertex word.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn gpg_t_estimate(
    g: *const GpgGraph,
    word: *const c_char,
    pairing: *const c_char,
    n: usize,
    seed: u64,
    p: f64,
    out: *mut f64,
) -> GpgStatus {
    guard(|| {
        let g = graph(g)?;
        let w = Word::parse(g, text(word, "word")?)?;
        let pairing = PairPartition::parse(w.len(), text(pairing, "pairing")?)?;
        let s = SignFunction::seeded(g, p, seed)?;
        write(
            out,
            cltlab::t_estimate(&s, g, &w, &pairing, n, DEFAULT_TUPLE_BUDGET)?,
        )
    })
}
