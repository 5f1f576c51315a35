//! C ABI over `confirm-core`.
//!
//! Every fallible function returns a [`ConfirmStatus`] and writes its result
//! through an out-pointer only on success. The message for the most recent
//! failure on the calling thread is available from [`confirm_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use confirm_core::calculi::{Calculus, Measure};
use confirm_core::dstheory::{dempster_combine, BinaryMass};
use confirm_core::oracle::{run_check, MAX_CHANNELS};
use confirm_core::ruledsl::{self, DslError};
use confirm_core::{Error, RuleBase};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConfirmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    OutOfRange = 3,
    TotalConflict = 4,
    ParseError = 5,
    ValidationError = 6,
    UnknownHypothesis = 7,
    DomainError = 8,
    Panic = 9,
}

/// Calculus selector: one of the `CONFIRM_CALCULUS_*` constants.
pub type ConfirmCalculus = u32;

pub const CONFIRM_CALCULUS_LAMBDA: ConfirmCalculus = 0;
pub const CONFIRM_CALCULUS_CF: ConfirmCalculus = 1;
pub const CONFIRM_CALCULUS_BELIEF: ConfirmCalculus = 2;
pub const CONFIRM_CALCULUS_LOGL: ConfirmCalculus = 3;

/// Mass function on the frame {H, not H}.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfirmMass {
    pub h: f64,
    pub not_h: f64,
    pub theta: f64,
}

/// Result of evaluating one hypothesis. The aggregate includes the prior.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConfirmPosterior {
    pub prior: f64,
    pub posterior: f64,
    pub lambda: f64,
    pub cf: f64,
    pub belief: f64,
    pub logl: f64,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConfirmCheckSummary {
    pub models: u64,
    pub failures: u64,
    pub worst_model: u64,
    pub worst_error: f64,
    pub tolerance: f64,
}

/// Opaque parsed rule base.
pub struct ConfirmRuleBase {
    inner: RuleBase,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(message: &str) {
    let message = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = message);
}

struct Failure(ConfirmStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::TotalConflict { .. } => ConfirmStatus::TotalConflict,
            Error::OutOfRange { .. } | Error::InvalidMass(_) => ConfirmStatus::OutOfRange,
            Error::UnknownHypothesis(_) => ConfirmStatus::UnknownHypothesis,
            Error::InvalidModel(_) => ConfirmStatus::InvalidArgument,
            _ => ConfirmStatus::DomainError,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(ConfirmStatus::NullPointer, format!("{what} is null"))
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> ConfirmStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            ConfirmStatus::Ok
        }
        Ok(Err(Failure(status, message))) => {
            set_last_error(&message);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            ConfirmStatus::Panic
        }
    }
}

fn calculus(code: ConfirmCalculus) -> Result<Calculus, Failure> {
    Calculus::ALL.get(code as usize).copied().ok_or_else(|| {
        Failure(
            ConfirmStatus::InvalidArgument,
            format!("unknown calculus code {code}"),
        )
    })
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        Failure(
            ConfirmStatus::InvalidArgument,
            format!("{what} is not valid UTF-8"),
        )
    })
}

/// Message for the last failed call on this thread, or an empty string.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn confirm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn confirm_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Converts `value` from one calculus to another.
///
/// # Safety
/// `out` must be null or valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn confirm_convert(
    from: ConfirmCalculus,
    value: f64,
    to: ConfirmCalculus,
    out: *mut f64,
) -> ConfirmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let m = Measure::new(calculus(from)?, value)?;
        *out = m.convert(calculus(to)?).value();
        Ok(())
    })
}

/// Combines `len` values of one calculus. An empty list yields the identity.
///
/// # Safety
/// `values` must point to `len` readable doubles (or be null when `len` is 0)
/// and `out` must be valid for writing one `double`.
#[no_mangle]
pub unsafe extern "C" fn confirm_combine(
    calc: ConfirmCalculus,
    values: *const f64,
    len: usize,
    out: *mut f64,
) -> ConfirmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if values.is_null() && len > 0 {
            return Err(null("values"));
        }
        let calc = calculus(calc)?;
        let values = if len == 0 {
            &[][..]
        } else {
            std::slice::from_raw_parts(values, len)
        };
        let mut acc = calc.identity();
        for &v in values {
            acc = acc.combine(&Measure::new(calc, v)?)?;
        }
        *out = acc.value();
        Ok(())
    })
}

/// Dempster's rule on the binary frame.
///
/// # Safety
/// `a` and `b` must be valid for reads and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn confirm_dempster_combine(
    a: *const ConfirmMass,
    b: *const ConfirmMass,
    out: *mut ConfirmMass,
) -> ConfirmStatus {
    guard(|| {
        let (Some(a), Some(b)) = (a.as_ref(), b.as_ref()) else {
            return Err(null("mass"));
        };
        if out.is_null() {
            return Err(null("out"));
        }
        let m1 = BinaryMass::new(a.h, a.not_h, a.theta)?;
        let m2 = BinaryMass::new(b.h, b.not_h, b.theta)?;
        let m = dempster_combine(&m1, &m2)?;
        *out = ConfirmMass {
            h: m.h(),
            not_h: m.not_h(),
            theta: m.theta(),
        };
        Ok(())
    })
}

/// Parses and validates rule-file text. On success `*out` owns a new handle
/// that must be released with [`confirm_rulebase_free`]. On failure the
/// diagnostics, one `line:column: message` per line, are available from
/// [`confirm_last_error`].
///
/// # Safety
/// `source` must be a NUL-terminated string and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn confirm_rulebase_parse(
    source: *const c_char,
    out: *mut *mut ConfirmRuleBase,
) -> ConfirmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let source = text(source, "source")?;
        let inner = ruledsl::parse(source).map_err(|e| {
            let status = match e {
                DslError::Parse(_) => ConfirmStatus::ParseError,
                DslError::Validation(_) => ConfirmStatus::ValidationError,
            };
            let rendered = ruledsl::render_error("", &e);
            let rendered = rendered
                .lines()
                .map(|l| l.trim_start_matches(':'))
                .collect::<Vec<_>>()
                .join("\n");
            Failure(status, rendered)
        })?;
        *out = Box::into_raw(Box::new(ConfirmRuleBase { inner }));
        Ok(())
    })
}

/// Releases a handle from [`confirm_rulebase_parse`]. Null is ignored.
///
/// # Safety
/// `rb` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn confirm_rulebase_free(rb: *mut ConfirmRuleBase) {
    if !rb.is_null() {
        drop(Box::from_raw(rb));
    }
}

/// Canonical text of a rule base. The returned string must be released with
/// [`confirm_string_free`]; null is returned for a null handle.
///
/// # Safety
/// `rb` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn confirm_rulebase_to_source(rb: *const ConfirmRuleBase) -> *mut c_char {
    match rb.as_ref() {
        Some(rb) => CString::new(rb.inner.to_source()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn confirm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Posterior of `hypothesis` given the observed evidence in `rb`.
///
/// # Safety
/// `rb` must be a live handle, `hypothesis` a NUL-terminated string and
/// `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn confirm_rulebase_evaluate(
    rb: *const ConfirmRuleBase,
    hypothesis: *const c_char,
    out: *mut ConfirmPosterior,
) -> ConfirmStatus {
    guard(|| {
        let rb = rb.as_ref().ok_or_else(|| null("rule base"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let hypothesis = text(hypothesis, "hypothesis")?;
        let report = ruledsl::evaluate(&rb.inner, hypothesis)?;
        let agg = report.aggregate;
        *out = ConfirmPosterior {
            prior: report.prior.value(),
            posterior: report.posterior.value(),
            lambda: agg.lambda.value(),
            cf: agg.cf.value(),
            belief: agg.belief.value(),
            logl: agg.logl.value(),
        };
        Ok(())
    })
}

/// Runs the enumeration cross-check on `models` seeded random models with
/// up to `max_channels` channels each (1 to 16).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn confirm_check(
    seed: u64,
    models: u64,
    max_channels: u32,
    out: *mut ConfirmCheckSummary,
) -> ConfirmStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if max_channels as usize > MAX_CHANNELS {
            return Err(Failure(
                ConfirmStatus::InvalidArgument,
                format!("max channels must be in 1..={MAX_CHANNELS}, got {max_channels}"),
            ));
        }
        let models = usize::try_from(models)
            .map_err(|_| Failure(ConfirmStatus::InvalidArgument, "too many models".into()))?;
        let s = run_check(seed, models, max_channels as usize)?;
        *out = ConfirmCheckSummary {
            models: s.models as u64,
            failures: s.failures as u64,
            worst_model: s.worst_model as u64,
            worst_error: s.worst_error,
            tolerance: s.tolerance,
        };
        Ok(())
    })
}
