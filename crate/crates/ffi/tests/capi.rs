use std::ffi::{CStr, CString};
use std::path::Path;
use std::process::Command;
use std::ptr;

use matchcost_ffi::*;

fn model(spec: &str) -> *mut MatchcostModel {
    let spec = CString::new(spec).unwrap();
    let mut out = ptr::null_mut();
    let status = unsafe { matchcost_model_new(spec.as_ptr(), &mut out) };
    assert_eq!(status, MatchcostStatus::Ok, "{}", last_error());
    out
}

fn last_error() -> String {
    let p = matchcost_last_error();
    if p.is_null() {
        String::new()
    } else {
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }
}

fn analyze(
    m: *const MatchcostModel,
    pattern: &str,
    alg: &str,
    n: usize,
) -> Result<*mut MatchcostDistribution, MatchcostStatus> {
    let pattern = CString::new(pattern).unwrap();
    let alg = CString::new(alg).unwrap();
    let mut out = ptr::null_mut();
    match unsafe { matchcost_analyze(m, pattern.as_ptr(), alg.as_ptr(), n, &mut out) } {
        MatchcostStatus::Ok => Ok(out),
        status => Err(status),
    }
}

fn entries(d: *const MatchcostDistribution) -> Vec<(u64, f64)> {
    let len = unsafe { matchcost_distribution_len(d) };
    (0..len)
        .map(|i| {
            let (mut v, mut p) = (0, 0.0);
            assert_eq!(
                unsafe { matchcost_distribution_entry(d, i, &mut v, &mut p) },
                MatchcostStatus::Ok
            );
            (v, p)
        })
        .collect()
}

#[test]
fn horspool_on_aa() {
    let m = model("iid:a=0.5,b=0.5");
    assert_eq!(unsafe { matchcost_model_alphabet_size(m) }, 2);
    let d = analyze(m, "aa", "bmh", 3).unwrap();
    assert_eq!(entries(d), [(1, 0.5), (3, 0.25), (4, 0.25)]);
    assert_eq!(unsafe { matchcost_distribution_probability(d, 3) }, 0.25);
    assert_eq!(unsafe { matchcost_distribution_probability(d, 2) }, 0.0);
    let (mut mean, mut var) = (0.0, 0.0);
    assert_eq!(
        unsafe { matchcost_distribution_moments(d, &mut mean, &mut var) },
        MatchcostStatus::Ok
    );
    assert!((mean - 2.25).abs() < 1e-12);
    assert!((var - 1.6875).abs() < 1e-12);
    let (mut v, mut p) = (0, 0.0);
    assert_eq!(
        unsafe { matchcost_distribution_entry(d, 3, &mut v, &mut p) },
        MatchcostStatus::OutOfRange
    );
    assert!(last_error().contains("index 3"));
    unsafe {
        matchcost_distribution_free(d);
        matchcost_model_free(m);
    }
}

#[test]
fn enumeration_matches_exact() {
    let json = include_str!("../../../models/two_context.json");
    let m = model(json);
    for alg in ["bm", "bmh", "bndm", "bom"] {
        let exact = analyze(m, "ab", alg, 7).unwrap();
        let pattern = CString::new("ab").unwrap();
        let alg = CString::new(alg).unwrap();
        let mut brute = ptr::null_mut();
        let status = unsafe {
            matchcost_enumerate(m, pattern.as_ptr(), alg.as_ptr(), 7, 1 << 10, &mut brute)
        };
        assert_eq!(status, MatchcostStatus::Ok);
        let (a, b) = (entries(exact), entries(brute));
        assert_eq!(a.len(), b.len());
        for ((va, pa), (vb, pb)) in a.iter().zip(&b) {
            assert_eq!(va, vb);
            assert!((pa - pb).abs() < 1e-12);
        }
        unsafe {
            matchcost_distribution_free(exact);
            matchcost_distribution_free(brute);
        }
    }
    unsafe { matchcost_model_free(m) };
}

#[test]
fn errors_set_status_and_message() {
    let m = model("iid:a=0.5,b=0.5");
    assert_eq!(
        analyze(m, "ac", "bm", 4),
        Err(MatchcostStatus::InvalidInput)
    );
    assert!(!last_error().is_empty());
    assert_eq!(
        analyze(m, "ab", "kmp", 4),
        Err(MatchcostStatus::InvalidInput)
    );
    assert_eq!(
        analyze(ptr::null(), "ab", "bm", 4),
        Err(MatchcostStatus::NullPointer)
    );

    let mut out = ptr::null_mut();
    let (p, a) = (CString::new("ab").unwrap(), CString::new("bm").unwrap());
    let status = unsafe { matchcost_enumerate(m, p.as_ptr(), a.as_ptr(), 20, 1000, &mut out) };
    assert_eq!(status, MatchcostStatus::GuardExceeded);
    assert!(out.is_null());

    let bad = CString::new("iid:a=0.5,b=0.6").unwrap();
    let mut bad_model = ptr::null_mut();
    assert_eq!(
        unsafe { matchcost_model_new(bad.as_ptr(), &mut bad_model) },
        MatchcostStatus::InvalidInput
    );
    assert_eq!(
        unsafe { matchcost_model_new(ptr::null(), &mut bad_model) },
        MatchcostStatus::NullPointer
    );
    let invalid = [0xffu8, 0];
    assert_eq!(
        unsafe { matchcost_model_new(invalid.as_ptr().cast(), &mut bad_model) },
        MatchcostStatus::InvalidUtf8
    );
    assert!(bad_model.is_null());

    let d = analyze(m, "ab", "bm", 2).unwrap();
    assert!(matchcost_last_error().is_null());
    unsafe {
        matchcost_distribution_free(d);
        matchcost_model_free(m);
        matchcost_model_free(ptr::null_mut());
        matchcost_distribution_free(ptr::null_mut());
    }
}

#[test]
fn header_declares_every_export() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = std::fs::read_to_string(dir.join("include/matchcost.h")).unwrap();
    let source = std::fs::read_to_string(dir.join("src/lib.rs")).unwrap();
    let exports: Vec<&str> = source
        .lines()
        .filter_map(|l| l.split("extern \"C\" fn ").nth(1))
        .map(|rest| rest.split('(').next().unwrap())
        .collect();
    assert!(exports.len() >= 10);
    for name in exports {
        assert!(
            header.contains(&format!("{name}(")),
            "{name} missing from header"
        );
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let status = Command::new(cc)
        .args(["-fsyntax-only", "-Wall", "-Werror", "-xc"])
        .arg(dir.join("include/matchcost.h"))
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "clang", "gcc"]
        .into_iter()
        .find(|cc| Command::new(cc).arg("--version").output().is_ok())
        .ok_or(())
}
