//! C interface to deckwright.
//!
//! Graphs, decks and sentences are opaque heap handles created by the
//! `*_parse` functions and released with the matching `*_free`. Every
//! fallible call returns a [`DwStatus`]; on failure the message is available
//! from [`dw_last_error`] on the same thread. Strings handed out by the
//! library are NUL-terminated, owned by the caller, and must be released
//! with [`dw_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::str::FromStr;

use deckwright::folcheck::{hanf_equiv, parse_sentence, quantifier_rank, CompiledFormula};
use deckwright::graph::io::{emit_deck, emit_graph, parse_deck, parse_graph};
use deckwright::graph::{deck_any, AnyGraph, Deck};
use deckwright::poly::poly_to_json;
use deckwright::reconstruct::{verify_reconstruction, Invariant, Reconstructor, VerifyConfig};
use deckwright::{invariants, Error};

/// Result of a call. Zero is success.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    GraphTooSmall = 5,
    MixedColoring = 6,
    OrderLimit = 7,
    InconsistentDeck = 8,
    OutsideDomain = 9,
    NotInImage = 10,
    Formula = 11,
    Io = 12,
    Panic = 13,
}

impl From<&Error> for DwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::GraphTooSmall(_) => DwStatus::GraphTooSmall,
            Error::Parse { .. } => DwStatus::Parse,
            Error::MixedColoring => DwStatus::MixedColoring,
            Error::OrderLimit { .. } => DwStatus::OrderLimit,
            Error::KellyInapplicable { .. } | Error::InvalidArgument(_) => DwStatus::InvalidArgument,
            Error::InconsistentDeck(_) => DwStatus::InconsistentDeck,
            Error::OutsideDomain(_) => DwStatus::OutsideDomain,
            Error::NotUPolynomial | Error::NotULabPolynomial(_) | Error::SingularSubstitution(_) => DwStatus::NotInImage,
            Error::Formula { .. } | Error::FreeVariables(_) => DwStatus::Formula,
            Error::Io(_) => DwStatus::Io,
        }
    }
}

/// A graph, plain or edge-colored.
pub struct DwGraph(AnyGraph);

/// A multiset of vertex-deleted cards.
pub struct DwDeck(Deck);

/// A first-order sentence, compiled for evaluation.
pub struct DwSentence {
    rank: usize,
    compiled: CompiledFormula,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

enum Failure {
    Null(&'static str),
    Utf8,
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

/// Run `f`, turning errors and panics into a status and a stored message.
fn guard(f: impl FnOnce() -> Result<(), Failure>) -> DwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => DwStatus::Ok,
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            DwStatus::NullPointer
        }
        Ok(Err(Failure::Utf8)) => {
            set_error("string is not valid UTF-8".into());
            DwStatus::InvalidUtf8
        }
        Ok(Err(Failure::Lib(e))) => {
            set_error(e.to_string());
            DwStatus::from(&e)
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            DwStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8)
}

unsafe fn handle<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &'static str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null(what));
    }
    out.write(value);
    Ok(())
}

fn owned(s: String) -> *mut c_char {
    CString::new(s).expect("library output has no NULs").into_raw()
}

/// Message for the last failed call on this thread, or NULL if none.
/// Release with `dw_string_free`.
#[no_mangle]
pub extern "C" fn dw_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// Release a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn dw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn dw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parse a graph from graph6 or the colored edge-list format.
///
/// # Safety
/// `input` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dw_graph_parse(input: *const c_char, out: *mut *mut DwGraph) -> DwStatus {
    guard(|| {
        let g = parse_graph(text(input, "input")?)?;
        put(out, Box::into_raw(Box::new(DwGraph(g))), "out")
    })
}

/// # Safety
/// `g` must come from `dw_graph_parse` and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn dw_graph_free(g: *mut DwGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Number of vertices, or 0 for NULL.
///
/// # Safety
/// `g` must be NULL or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn dw_graph_order(g: *const DwGraph) -> usize {
    g.as_ref().map_or(0, |g| g.0.base().order())
}

/// Serialize a graph in the format it was parsed from.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dw_graph_to_string(g: *const DwGraph, out: *mut *mut c_char) -> DwStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        put(out, owned(emit_graph(&g.0)), "out")
    })
}

/// Compute a polynomial invariant: one of tutte, charpoly, chromatic,
/// interlace, u, ulab, xi, xilab, xg. The result is a JSON array of terms.
///
/// # Safety
/// `g` must be a live graph handle, `name` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dw_graph_poly(g: *const DwGraph, name: *const c_char, out: *mut *mut c_char) -> DwStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        let p = invariants::compute(text(name, "name")?, &g.0)?;
        put(out, owned(poly_to_json(&p).to_string()), "out")
    })
}

/// The deck of a graph.
///
/// # Safety
/// `g` must be a live graph handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dw_graph_deck(g: *const DwGraph, out: *mut *mut DwDeck) -> DwStatus {
    guard(|| {
        let g = handle(g, "graph")?;
        let d = deck_any(&g.0)?;
        put(out, Box::into_raw(Box::new(DwDeck(d))), "out")
    })
}

/// Parse a deck file.
///
/// # Safety
/// `input` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dw_deck_parse(input: *const c_char, out: *mut *mut DwDeck) -> DwStatus {
    guard(|| {
        let d = parse_deck(text(input, "input")?)?;
        put(out, Box::into_raw(Box::new(DwDeck(d))), "out")
    })
}

/// # Safety
/// `d` must come from this library and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn dw_deck_free(d: *mut DwDeck) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Order of the graph the deck belongs to, or 0 for NULL.
///
/// # Safety
/// `d` must be NULL or a live deck handle.
#[no_mangle]
pub unsafe extern "C" fn dw_deck_order(d: *const DwDeck) -> usize {
    d.as_ref().map_or(0, |d| d.0.order())
}

/// Serialize a deck in the deck file format.
///
/// # Safety
/// `d` must be a live deck handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dw_deck_to_string(d: *const DwDeck, out: *mut *mut c_char) -> DwStatus {
    guard(|| {
        let d = handle(d, "deck")?;
        put(out, owned(emit_deck(&d.0)), "out")
    })
}

/// Reconstruct an invariant from the deck alone: one of u, ulab, xi,
/// xilab, interlace, rank, pmparity. The result is a JSON array of terms.
///
/// # Safety
/// `d` must be a live deck handle, `name` a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dw_deck_reconstruct(d: *const DwDeck, name: *const c_char, out: *mut *mut c_char) -> DwStatus {
    guard(|| {
        let d = handle(d, "deck")?;
        let inv = Invariant::from_str(text(name, "name")?)?;
        let p = inv.reconstruct(&mut Reconstructor::new(), &d.0)?;
        put(out, owned(poly_to_json(&p).to_string()), "out")
    })
}

/// Reconstruct over every graph of order 3..=max_n and compare with direct
/// computation. `passed` receives whether all agreed; `report`, if not
/// NULL, receives the full JSON report.
///
/// # Safety
/// `name` must be a NUL-terminated string, `passed` writable, and `report`
/// NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn dw_verify(name: *const c_char, max_n: usize, passed: *mut bool, report: *mut *mut c_char) -> DwStatus {
    guard(|| {
        let inv = Invariant::from_str(text(name, "name")?)?;
        let r = verify_reconstruction(&VerifyConfig::new(inv, max_n))?;
        put(passed, r.passed(), "passed")?;
        if !report.is_null() {
            report.write(owned(serde_json::to_string(&r).expect("reports serialize")));
        }
        Ok(())
    })
}

/// Parse a first-order sentence over the edge relation.
///
/// # Safety
/// `input` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dw_sentence_parse(input: *const c_char, out: *mut *mut DwSentence) -> DwStatus {
    guard(|| {
        let f = parse_sentence(text(input, "input")?)?;
        let s = DwSentence { rank: quantifier_rank(&f), compiled: CompiledFormula::new(&f)? };
        put(out, Box::into_raw(Box::new(s)), "out")
    })
}

/// # Safety
/// `s` must come from `dw_sentence_parse` and not have been freed. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn dw_sentence_free(s: *mut DwSentence) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Quantifier rank with degree and distinctness macros expanded.
///
/// # Safety
/// `s` must be a live sentence handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dw_sentence_rank(s: *const DwSentence, out: *mut usize) -> DwStatus {
    guard(|| put(out, handle(s, "sentence")?.rank, "out"))
}

/// Truth of a sentence in the uncolored graph underlying `g`.
///
/// # Safety
/// `s` and `g` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dw_sentence_eval(s: *const DwSentence, g: *const DwGraph, out: *mut bool) -> DwStatus {
    guard(|| {
        let s = handle(s, "sentence")?;
        let g = handle(g, "graph")?;
        put(out, s.compiled.evaluate(g.0.base()), "out")
    })
}

/// Whether the two graphs have the same order and the same multiset of
/// radius-`d` ball types.
///
/// # Safety
/// `a` and `b` must be live graph handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn dw_hanf_equiv(a: *const DwGraph, b: *const DwGraph, d: usize, out: *mut bool) -> DwStatus {
    guard(|| {
        let a = handle(a, "a")?;
        let b = handle(b, "b")?;
        put(out, hanf_equiv(a.0.base(), b.0.base(), d), "out")
    })
}
