//! C interface to `bergman-toeplitz`.
//!
//! Pairs and operators are opaque heap handles released with their `_free`
//! function. Every fallible call returns a [`BtcStatus`]; after a non-zero
//! status, [`btc_last_error_message`] describes what went wrong on the
//! calling thread. Strings handed out by the library are released with
//! [`btc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::slice;

use bergman_toeplitz::calculus::{
    build_commutator, build_operator, build_semicommutator, norm_sq, Region, SparseOperator, Truncation,
};
use bergman_toeplitz::cli::{run_job, Options};
use bergman_toeplitz::decide::{classify_trivial, decide_commute, decide_semicommute, TrivialClause};
use bergman_toeplitz::gamma::log_gamma;
use bergman_toeplitz::{DomainSpec, Error, MonomialSymbol, MultiIndex, ProblemPair, Rational};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BtcStatus {
    Ok = 0,
    InvalidArgument = 1,
    DimensionMismatch = 2,
    Domain = 3,
    Parse = 4,
    Internal = 5,
    NullPointer = 6,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BtcOperatorKind {
    Toeplitz = 0,
    Commutator = 1,
    Semicommutator = 2,
}

/// Set in the `flags` output of [`btc_operator_entry`].
pub const BTC_ENTRY_ESCAPING: u32 = 1;
pub const BTC_ENTRY_BOUNDARY: u32 = 2;

/// Two symbols r^l ζ^p ζ̄^q and r^k ζ^s ζ̄^t on one domain.
pub struct BtcPair(ProblemPair);

/// A truncated matrix.
pub struct BtcOperator(SparseOperator);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BtcStatus {
    match e {
        Error::DimensionMismatch { .. } => BtcStatus::DimensionMismatch,
        Error::Domain(_) => BtcStatus::Domain,
        Error::InvalidInput(_) => BtcStatus::InvalidArgument,
        Error::Parse(_) => BtcStatus::Parse,
        Error::Internal(_) => BtcStatus::Internal,
    }
}

fn fail(status: BtcStatus, msg: &str) -> BtcStatus {
    set_error(msg);
    status
}

/// Runs `f`, turning errors and panics into a status.
fn guard(f: impl FnOnce() -> Result<(), (BtcStatus, String)>) -> BtcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            BtcStatus::Ok
        }
        Ok(Err((status, msg))) => fail(status, &msg),
        Err(_) => fail(BtcStatus::Internal, "panic inside the library"),
    }
}

fn lift(e: Error) -> (BtcStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (BtcStatus, String) {
    (BtcStatus::NullPointer, format!("{what} is NULL"))
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, (BtcStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (BtcStatus::Parse, format!("{what} is not UTF-8")))
}

unsafe fn u32_arg<'a>(p: *const u32, n: usize, what: &str) -> Result<&'a [u32], (BtcStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    Ok(slice::from_raw_parts(p, n))
}

fn out_string(s: String, out: *mut *mut c_char) -> Result<(), (BtcStatus, String)> {
    let c = CString::new(s).map_err(|_| (BtcStatus::Internal, "output contains NUL".to_string()))?;
    unsafe { *out = c.into_raw() };
    Ok(())
}

/// Builds a pair from the domain exponents `m[0..n]`, radial exponents given
/// as strings "n/d", and exponent vectors of length `n` each.
///
/// # Safety
/// `m`, `p`, `q`, `s`, `t` must point to `n` readable `uint32_t`s; `l` and `k`
/// must be NUL-terminated strings; `out` must be writable.
#[no_mangle]
#[allow(clippy::too_many_arguments)]
pub unsafe extern "C" fn btc_pair_new(
    m: *const u32,
    n: usize,
    l: *const c_char,
    p: *const u32,
    q: *const u32,
    k: *const c_char,
    s: *const u32,
    t: *const u32,
    out: *mut *mut BtcPair,
) -> BtcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let domain = DomainSpec::new(u32_arg(m, n, "m")?.to_vec()).map_err(lift)?;
        let radial = |x: *const c_char, what: &str| -> Result<Rational, (BtcStatus, String)> {
            str_arg(x, what)?.parse().map_err(lift)
        };
        let vector = |x: *const u32, what: &str| -> Result<MultiIndex, (BtcStatus, String)> {
            Ok(MultiIndex::new(u32_arg(x, n, what)?.to_vec()))
        };
        let first = MonomialSymbol::new(radial(l, "l")?, vector(p, "p")?, vector(q, "q")?).map_err(lift)?;
        let second = MonomialSymbol::new(radial(k, "k")?, vector(s, "s")?, vector(t, "t")?).map_err(lift)?;
        let pair = ProblemPair::new(domain, first, second).map_err(lift)?;
        *out = Box::into_raw(Box::new(BtcPair(pair)));
        Ok(())
    })
}

/// # Safety
/// `pair` must come from [`btc_pair_new`] and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn btc_pair_free(pair: *mut BtcPair) {
    if !pair.is_null() {
        drop(Box::from_raw(pair));
    }
}

unsafe fn pair_ref<'a>(pair: *const BtcPair) -> Result<&'a ProblemPair, (BtcStatus, String)> {
    pair.as_ref().map(|p| &p.0).ok_or_else(|| null("pair"))
}

/// Writes 1 to `answer` if the two operators commute, 0 otherwise.
///
/// # Safety
/// `pair` must be a live handle and `answer` writable.
#[no_mangle]
pub unsafe extern "C" fn btc_decide_commute(pair: *const BtcPair, answer: *mut i32) -> BtcStatus {
    guard(|| {
        let pair = pair_ref(pair)?;
        if answer.is_null() {
            return Err(null("answer"));
        }
        *answer = decide_commute(pair).map_err(lift)?.is_yes() as i32;
        Ok(())
    })
}

/// Writes 1 to `answer` if T₁T₂ is the Toeplitz operator of the product symbol.
///
/// # Safety
/// `pair` must be a live handle and `answer` writable.
#[no_mangle]
pub unsafe extern "C" fn btc_decide_semicommute(pair: *const BtcPair, answer: *mut i32) -> BtcStatus {
    guard(|| {
        let pair = pair_ref(pair)?;
        if answer.is_null() {
            return Err(null("answer"));
        }
        *answer = decide_semicommute(pair).map_err(lift)?.is_yes() as i32;
        Ok(())
    })
}

/// Bit i-1 of `clauses` is set when trivial clause c_i holds;
/// `non_trivial` is 1 for a commuting pair with no clause.
///
/// # Safety
/// `pair` must be a live handle; the outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn btc_classify_trivial(
    pair: *const BtcPair,
    clauses: *mut u32,
    non_trivial: *mut i32,
) -> BtcStatus {
    guard(|| {
        let pair = pair_ref(pair)?;
        if clauses.is_null() || non_trivial.is_null() {
            return Err(null("output"));
        }
        let report = classify_trivial(pair).map_err(lift)?;
        let bit = |c: &TrivialClause| 1u32 << (*c as u32);
        *clauses = report.clauses.iter().map(bit).fold(0, |a, b| a | b);
        *non_trivial = report.non_trivial as i32;
        Ok(())
    })
}

/// Builds a truncated matrix. `truncation` is "D=<rational>" or
/// "N=<natural>"; a Toeplitz matrix uses the pair's first symbol.
///
/// # Safety
/// `pair` must be a live handle, `truncation` a NUL-terminated string and
/// `out` writable.
#[no_mangle]
pub unsafe extern "C" fn btc_operator_build(
    pair: *const BtcPair,
    kind: BtcOperatorKind,
    truncation: *const c_char,
    out: *mut *mut BtcOperator,
) -> BtcStatus {
    guard(|| {
        let pair = pair_ref(pair)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let trunc: Truncation = str_arg(truncation, "truncation")?.parse().map_err(lift)?;
        let (d, a, b) = (&pair.domain, &pair.first, &pair.second);
        let op = match kind {
            BtcOperatorKind::Toeplitz => build_operator(d, a, &trunc),
            BtcOperatorKind::Commutator => build_commutator(d, a, b, &trunc),
            BtcOperatorKind::Semicommutator => build_semicommutator(d, a, b, &trunc),
        }
        .map_err(lift)?;
        *out = Box::into_raw(Box::new(BtcOperator(op)));
        Ok(())
    })
}

/// # Safety
/// `op` must come from [`btc_operator_build`] and not be used afterwards. NULL is ignored.
#[no_mangle]
pub unsafe extern "C" fn btc_operator_free(op: *mut BtcOperator) {
    if !op.is_null() {
        drop(Box::from_raw(op));
    }
}

/// Number of basis elements (rows of the matrix); 0 for NULL.
///
/// # Safety
/// `op` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn btc_operator_basis_size(op: *const BtcOperator) -> usize {
    op.as_ref().map_or(0, |o| o.0.basis().len())
}

/// Reads the entry whose source is the `index`-th basis element. `source`
/// and `target` receive `n` entries each (n = dimension). `present` is 0
/// when that source has no entry, in which case the other outputs are left
/// alone.
///
/// # Safety
/// `op` must be a live handle; `source` and `target` must have room for
/// the domain dimension; the scalar outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn btc_operator_entry(
    op: *const BtcOperator,
    index: usize,
    source: *mut u32,
    target: *mut u32,
    coeff: *mut f64,
    flags: *mut u32,
    present: *mut i32,
) -> BtcStatus {
    guard(|| {
        let op = &op.as_ref().ok_or_else(|| null("operator"))?.0;
        if source.is_null() || target.is_null() || coeff.is_null() || flags.is_null() || present.is_null() {
            return Err(null("output"));
        }
        if index >= op.basis().len() {
            return Err((BtcStatus::InvalidArgument, format!("index {index} out of range")));
        }
        let Some(e) = op.entry(index) else {
            *present = 0;
            return Ok(());
        };
        let n = e.source.len();
        slice::from_raw_parts_mut(source, n).copy_from_slice(e.source.entries());
        slice::from_raw_parts_mut(target, n).copy_from_slice(e.target.entries());
        *coeff = e.coeff;
        *flags = (e.escaping as u32 * BTC_ENTRY_ESCAPING) | (e.boundary as u32 * BTC_ENTRY_BOUNDARY);
        *present = 1;
        Ok(())
    })
}

/// Largest |coefficient|, over interior sources when `interior_only` is
/// non-zero; 0 for NULL.
///
/// # Safety
/// `op` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn btc_operator_max_abs_entry(op: *const BtcOperator, interior_only: i32) -> f64 {
    let region = if interior_only != 0 { Region::Interior } else { Region::All };
    op.as_ref().map_or(0.0, |o| o.0.max_abs_entry(region))
}

/// The matrix as a JSON document; release with [`btc_string_free`].
///
/// # Safety
/// `op` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn btc_operator_to_json(op: *const BtcOperator, out: *mut *mut c_char) -> BtcStatus {
    guard(|| {
        let op = &op.as_ref().ok_or_else(|| null("operator"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        out_string(op.to_json_string(), out)
    })
}

/// Runs a job document {"schema": "btc/1", "command": ..., "payload": ...}
/// exactly as `btc run` would, with default options plus `seed` (used only
/// when `has_seed` is non-zero). `exit_code` receives the command-line exit
/// code and `out` the JSON output.
///
/// # Safety
/// `job` must be a NUL-terminated string; `exit_code` and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn btc_run_job(
    job: *const c_char,
    has_seed: i32,
    seed: u64,
    exit_code: *mut i32,
    out: *mut *mut c_char,
) -> BtcStatus {
    guard(|| {
        let job = str_arg(job, "job")?;
        if exit_code.is_null() || out.is_null() {
            return Err(null("output"));
        }
        let opts = Options { seed: (has_seed != 0).then_some(seed), ..Options::default() };
        let outcome = run_job(job, &opts);
        *exit_code = outcome.code;
        out_string(outcome.output, out)
    })
}

/// ln Γ(x) for x > 0.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn btc_log_gamma(x: f64, out: *mut f64) -> BtcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = log_gamma(x).map_err(lift)?;
        Ok(())
    })
}

/// Squared Bergman norm of z^alpha on the domain with exponents `m[0..n]`.
///
/// # Safety
/// `m` and `alpha` must point to `n` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn btc_norm_sq(m: *const u32, n: usize, alpha: *const u32, out: *mut f64) -> BtcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let domain = DomainSpec::new(u32_arg(m, n, "m")?.to_vec()).map_err(lift)?;
        let alpha = MultiIndex::new(u32_arg(alpha, n, "alpha")?.to_vec());
        *out = norm_sq(&domain, &alpha).map_err(lift)?;
        Ok(())
    })
}

/// Releases a string returned by this library. NULL is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn btc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread ("" after a success).
/// The pointer stays valid until the next call into the library on the
/// same thread.
#[no_mangle]
pub extern "C" fn btc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}
