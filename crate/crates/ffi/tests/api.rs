use std::ffi::{c_char, CStr, CString};
use std::ptr;

use deckwright_ffi::*;

fn take(s: *mut c_char) -> String {
    assert!(!s.is_null());
    let out = unsafe { CStr::from_ptr(s) }.to_str().unwrap().to_string();
    unsafe { dw_string_free(s) };
    out
}

fn last_error() -> String {
    take(dw_last_error())
}

fn graph(text: &str) -> *mut DwGraph {
    let c = CString::new(text).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { dw_graph_parse(c.as_ptr(), &mut g) }, DwStatus::Ok);
    g
}

#[test]
fn graph_round_trip_and_poly() {
    let g = graph("Bw");
    unsafe {
        assert_eq!(dw_graph_order(g), 3);
        let mut s = ptr::null_mut();
        assert_eq!(dw_graph_to_string(g, &mut s), DwStatus::Ok);
        assert_eq!(take(s).trim(), "Bw");
        let name = CString::new("tutte").unwrap();
        assert_eq!(dw_graph_poly(g, name.as_ptr(), &mut s), DwStatus::Ok);
        let v: serde_json::Value = serde_json::from_str(&take(s)).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 3);
        let bad = CString::new("nope").unwrap();
        assert_eq!(dw_graph_poly(g, bad.as_ptr(), &mut s), DwStatus::InvalidArgument);
        assert!(last_error().contains("unknown invariant"));
        dw_graph_free(g);
    }
}

#[test]
fn deck_reconstruction_matches_direct() {
    // The 5-cycle.
    let g = graph("Dhc");
    unsafe {
        let mut d = ptr::null_mut();
        assert_eq!(dw_graph_deck(g, &mut d), DwStatus::Ok);
        assert_eq!(dw_deck_order(d), 5);
        let mut text = ptr::null_mut();
        assert_eq!(dw_deck_to_string(d, &mut text), DwStatus::Ok);
        let text = CString::new(take(text)).unwrap();
        let mut reparsed = ptr::null_mut();
        assert_eq!(dw_deck_parse(text.as_ptr(), &mut reparsed), DwStatus::Ok);
        for name in ["u", "xi", "interlace"] {
            let name = CString::new(name).unwrap();
            let (mut direct, mut rebuilt) = (ptr::null_mut(), ptr::null_mut());
            assert_eq!(dw_graph_poly(g, name.as_ptr(), &mut direct), DwStatus::Ok);
            assert_eq!(dw_deck_reconstruct(reparsed, name.as_ptr(), &mut rebuilt), DwStatus::Ok);
            assert_eq!(take(direct), take(rebuilt));
        }
        dw_deck_free(reparsed);
        dw_deck_free(d);
        dw_graph_free(g);
    }
}

#[test]
fn status_codes() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(dw_graph_parse(ptr::null(), &mut g), DwStatus::NullPointer);
        let junk = CString::new("not a graph").unwrap();
        assert_eq!(dw_graph_parse(junk.as_ptr(), &mut g), DwStatus::Parse);
        assert!(g.is_null());
        assert!(last_error().starts_with("parse error"));

        let bad = CString::new("n=4\nBw\nB?\nB?\nB?\n").unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(dw_deck_parse(bad.as_ptr(), &mut d), DwStatus::Ok);
        let u = CString::new("u").unwrap();
        let mut out = ptr::null_mut();
        assert_eq!(dw_deck_reconstruct(d, u.as_ptr(), &mut out), DwStatus::InconsistentDeck);
        dw_deck_free(d);

        let open = CString::new("E(x,y)").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(dw_sentence_parse(open.as_ptr(), &mut s), DwStatus::Formula);

        let mut passed = false;
        assert_eq!(dw_verify(u.as_ptr(), 64, &mut passed, ptr::null_mut()), DwStatus::OrderLimit);

        dw_graph_free(ptr::null_mut());
        dw_string_free(ptr::null_mut());
        assert_eq!(dw_graph_order(ptr::null()), 0);
        assert_eq!(CStr::from_ptr(dw_version()).to_str().unwrap(), env!("CARGO_PKG_VERSION"));
    }
}

#[test]
fn sentences_and_hanf() {
    let k4 = graph("C~");
    let c12 = graph("KhCGGC@?G?o@");
    let two_c6 = graph("KhEG?C@?G?_P");
    unsafe {
        let clique = CString::new("forall x, y. (x != y <-> E(x,y))").unwrap();
        let mut s = ptr::null_mut();
        assert_eq!(dw_sentence_parse(clique.as_ptr(), &mut s), DwStatus::Ok);
        let mut rank = 0;
        assert_eq!(dw_sentence_rank(s, &mut rank), DwStatus::Ok);
        assert_eq!(rank, 2);
        let mut holds = false;
        assert_eq!(dw_sentence_eval(s, k4, &mut holds), DwStatus::Ok);
        assert!(holds);
        assert_eq!(dw_sentence_eval(s, c12, &mut holds), DwStatus::Ok);
        assert!(!holds);
        dw_sentence_free(s);

        let mut eq = false;
        assert_eq!(dw_hanf_equiv(c12, two_c6, 2, &mut eq), DwStatus::Ok);
        assert!(eq);
        assert_eq!(dw_hanf_equiv(c12, two_c6, 3, &mut eq), DwStatus::Ok);
        assert!(!eq);
        for g in [k4, c12, two_c6] {
            dw_graph_free(g);
        }
    }
}

#[test]
fn verify_small() {
    let name = CString::new("interlace").unwrap();
    let mut passed = false;
    let mut report = ptr::null_mut();
    assert_eq!(unsafe { dw_verify(name.as_ptr(), 5, &mut passed, &mut report) }, DwStatus::Ok);
    assert!(passed);
    let v: serde_json::Value = serde_json::from_str(&take(report)).unwrap();
    assert_eq!(v["checks"], 49);
}
