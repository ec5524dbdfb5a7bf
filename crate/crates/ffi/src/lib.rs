//! C interface to `matchcost`.
//!
//! Models and distributions are opaque handles owned by the caller and
//! released with the matching `_free` function. Every fallible call returns a
//! [`MatchcostStatus`]; on failure, [`matchcost_last_error`] describes the
//! most recent error on the calling thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use matchcost::oracle::brute_distribution;
use matchcost::{Algorithm, Distribution, Error, Pattern, TextModel};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatchcostStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    GuardExceeded = 4,
    OutOfRange = 5,
    Panic = 6,
}

/// A text model over a fixed alphabet.
pub struct MatchcostModel(TextModel);

/// An exact or enumerated cost distribution.
pub struct MatchcostDistribution {
    dist: Distribution,
    entries: Vec<(u64, f64)>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

fn fail(status: MatchcostStatus, msg: impl Into<String>) -> MatchcostStatus {
    set_error(msg.into());
    status
}

fn from_error(e: Error) -> MatchcostStatus {
    let status = if e.is_guard() {
        MatchcostStatus::GuardExceeded
    } else {
        MatchcostStatus::InvalidInput
    };
    fail(status, e.to_string())
}

fn guarded(f: impl FnOnce() -> MatchcostStatus) -> MatchcostStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f))
        .unwrap_or_else(|_| fail(MatchcostStatus::Panic, "internal panic"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, MatchcostStatus> {
    if p.is_null() {
        return Err(fail(
            MatchcostStatus::NullPointer,
            format!("{what} is null"),
        ));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(MatchcostStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn matchcost_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds a model from an inline spec (`iid:a=0.5,b=0.5`,
/// `markov:<initial>|<conditional>`) or a JSON model document.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn matchcost_model_new(
    spec: *const c_char,
    out: *mut *mut MatchcostModel,
) -> MatchcostStatus {
    guarded(|| {
        if out.is_null() {
            return fail(MatchcostStatus::NullPointer, "out is null");
        }
        let spec = match text(spec, "spec") {
            Ok(s) => s.trim(),
            Err(status) => return status,
        };
        let model = if spec.starts_with('{') {
            TextModel::from_json(spec)
        } else {
            TextModel::from_spec(spec)
        };
        match model {
            Ok(m) => {
                *out = Box::into_raw(Box::new(MatchcostModel(m)));
                MatchcostStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Number of symbols in the model's alphabet.
///
/// # Safety
/// `model` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn matchcost_model_alphabet_size(model: *const MatchcostModel) -> usize {
    model.as_ref().map_or(0, |m| m.0.alphabet().size())
}

/// # Safety
/// `model` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn matchcost_model_free(model: *mut MatchcostModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

unsafe fn distribution_call(
    model: *const MatchcostModel,
    pattern: *const c_char,
    algorithm: *const c_char,
    out: *mut *mut MatchcostDistribution,
    compute: impl FnOnce(&Pattern, Algorithm, &TextModel) -> matchcost::Result<Distribution>,
) -> MatchcostStatus {
    guarded(|| {
        if out.is_null() {
            return fail(MatchcostStatus::NullPointer, "out is null");
        }
        let Some(model) = model.as_ref() else {
            return fail(MatchcostStatus::NullPointer, "model is null");
        };
        let (pattern, algorithm) = match (text(pattern, "pattern"), text(algorithm, "algorithm")) {
            (Ok(p), Ok(a)) => (p, a),
            (Err(status), _) | (_, Err(status)) => return status,
        };
        let result = algorithm.parse::<Algorithm>().and_then(|alg| {
            let p = Pattern::parse(model.0.alphabet(), pattern)?;
            compute(&p, alg, &model.0)
        });
        match result {
            Ok(dist) => {
                let entries = dist.pmf.iter().map(|(&v, &p)| (v, p)).collect();
                *out = Box::into_raw(Box::new(MatchcostDistribution { dist, entries }));
                MatchcostStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Exact distribution of the characters accessed by `algorithm`
/// (`bm`, `bmh`, `bndm`, `bom`) when searching `pattern` in a random text of
/// length `n` drawn from `model`.
///
/// # Safety
/// String arguments must be nul-terminated, `model` a live handle and `out` a
/// valid pointer.
#[no_mangle]
pub unsafe extern "C" fn matchcost_analyze(
    model: *const MatchcostModel,
    pattern: *const c_char,
    algorithm: *const c_char,
    n: usize,
    out: *mut *mut MatchcostDistribution,
) -> MatchcostStatus {
    distribution_call(model, pattern, algorithm, out, |p, alg, m| {
        matchcost::analyze(p, alg, m, n)
    })
}

/// Same distribution by enumerating every text of length `n`. Fails with
/// `GuardExceeded` when more than `max_texts` texts would be needed.
///
/// # Safety
/// As for [`matchcost_analyze`].
#[no_mangle]
pub unsafe extern "C" fn matchcost_enumerate(
    model: *const MatchcostModel,
    pattern: *const c_char,
    algorithm: *const c_char,
    n: usize,
    max_texts: u64,
    out: *mut *mut MatchcostDistribution,
) -> MatchcostStatus {
    distribution_call(model, pattern, algorithm, out, |p, alg, m| {
        brute_distribution(p, alg, m, n, max_texts as u128)
    })
}

/// Number of support values.
///
/// # Safety
/// `dist` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn matchcost_distribution_len(dist: *const MatchcostDistribution) -> usize {
    dist.as_ref().map_or(0, |d| d.entries.len())
}

/// The `index`-th support value and its probability, in increasing value
/// order.
///
/// # Safety
/// `dist` must be a live handle; `value` and `probability` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn matchcost_distribution_entry(
    dist: *const MatchcostDistribution,
    index: usize,
    value: *mut u64,
    probability: *mut f64,
) -> MatchcostStatus {
    guarded(|| {
        let Some(d) = dist.as_ref() else {
            return fail(MatchcostStatus::NullPointer, "distribution is null");
        };
        if value.is_null() || probability.is_null() {
            return fail(MatchcostStatus::NullPointer, "output pointer is null");
        }
        match d.entries.get(index) {
            Some(&(v, p)) => {
                *value = v;
                *probability = p;
                MatchcostStatus::Ok
            }
            None => fail(
                MatchcostStatus::OutOfRange,
                format!("index {index} outside 0..{}", d.entries.len()),
            ),
        }
    })
}

/// P(X = value); 0 outside the support or for a null handle.
///
/// # Safety
/// `dist` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn matchcost_distribution_probability(
    dist: *const MatchcostDistribution,
    value: u64,
) -> f64 {
    dist.as_ref().map_or(0.0, |d| d.dist.probability(value))
}

/// Mean and variance of the distribution.
///
/// # Safety
/// `dist` must be a live handle; `mean` and `variance` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn matchcost_distribution_moments(
    dist: *const MatchcostDistribution,
    mean: *mut f64,
    variance: *mut f64,
) -> MatchcostStatus {
    guarded(|| {
        let Some(d) = dist.as_ref() else {
            return fail(MatchcostStatus::NullPointer, "distribution is null");
        };
        if mean.is_null() || variance.is_null() {
            return fail(MatchcostStatus::NullPointer, "output pointer is null");
        }
        (*mean, *variance) = d.dist.moments();
        MatchcostStatus::Ok
    })
}

/// # Safety
/// `dist` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn matchcost_distribution_free(dist: *mut MatchcostDistribution) {
    if !dist.is_null() {
        drop(Box::from_raw(dist));
    }
}
