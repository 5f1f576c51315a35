use std::ffi::{CStr, CString};
use std::ptr;

use confirm_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(confirm_last_error()) }
        .to_string_lossy()
        .into_owned()
}

fn convert(from: ConfirmCalculus, v: f64, to: ConfirmCalculus) -> Result<f64, ConfirmStatus> {
    let mut out = f64::NAN;
    match unsafe { confirm_convert(from, v, to, &mut out) } {
        ConfirmStatus::Ok => Ok(out),
        s => Err(s),
    }
}

fn combine(c: ConfirmCalculus, values: &[f64]) -> Result<f64, ConfirmStatus> {
    let mut out = f64::NAN;
    match unsafe { confirm_combine(c, values.as_ptr(), values.len(), &mut out) } {
        ConfirmStatus::Ok => Ok(out),
        s => Err(s),
    }
}

#[test]
fn version() {
    let v = unsafe { CStr::from_ptr(confirm_version()) };
    assert_eq!(v.to_str().unwrap(), env!("CARGO_PKG_VERSION"));
}

#[test]
fn conversions() {
    assert_eq!(
        convert(CONFIRM_CALCULUS_LAMBDA, 3.0, CONFIRM_CALCULUS_CF),
        Ok(0.5)
    );
    assert_eq!(
        convert(CONFIRM_CALCULUS_BELIEF, 0.5, CONFIRM_CALCULUS_LAMBDA),
        Ok(1.0)
    );
    assert_eq!(
        convert(CONFIRM_CALCULUS_CF, 0.5, CONFIRM_CALCULUS_BELIEF),
        Ok(0.75)
    );
    assert_eq!(
        convert(CONFIRM_CALCULUS_CF, 1.0, CONFIRM_CALCULUS_LOGL),
        Ok(f64::INFINITY)
    );

    assert_eq!(
        convert(CONFIRM_CALCULUS_CF, 2.0, CONFIRM_CALCULUS_BELIEF),
        Err(ConfirmStatus::OutOfRange)
    );
    assert!(last_error().contains("out of range"), "{}", last_error());
    assert_eq!(
        convert(CONFIRM_CALCULUS_CF, f64::NAN, CONFIRM_CALCULUS_BELIEF),
        Err(ConfirmStatus::OutOfRange)
    );
    assert_eq!(
        convert(7, 0.5, CONFIRM_CALCULUS_CF),
        Err(ConfirmStatus::InvalidArgument)
    );
    assert_eq!(
        unsafe {
            confirm_convert(
                CONFIRM_CALCULUS_CF,
                0.5,
                CONFIRM_CALCULUS_LAMBDA,
                ptr::null_mut(),
            )
        },
        ConfirmStatus::NullPointer
    );
}

#[test]
fn combination() {
    assert_eq!(combine(CONFIRM_CALCULUS_CF, &[0.5, 0.5]), Ok(0.8));
    assert!((combine(CONFIRM_CALCULUS_BELIEF, &[0.75, 0.75]).unwrap() - 0.9).abs() < 1e-15);
    assert_eq!(combine(CONFIRM_CALCULUS_LAMBDA, &[]), Ok(1.0));
    assert_eq!(combine(CONFIRM_CALCULUS_LOGL, &[1.0, 2.5]), Ok(3.5));
    assert_eq!(
        combine(CONFIRM_CALCULUS_CF, &[1.0, -1.0]),
        Err(ConfirmStatus::TotalConflict)
    );
    assert!(last_error().contains("total conflict"));

    // Success clears the message.
    assert_eq!(combine(CONFIRM_CALCULUS_CF, &[0.1]), Ok(0.1));
    assert_eq!(last_error(), "");

    let mut out = 0.0;
    let status = unsafe { confirm_combine(CONFIRM_CALCULUS_CF, ptr::null(), 2, &mut out) };
    assert_eq!(status, ConfirmStatus::NullPointer);
}

#[test]
fn dempster() {
    let m = |b: f64| ConfirmMass {
        h: b,
        not_h: 1.0 - b,
        theta: 0.0,
    };
    let mut out = ConfirmMass {
        h: 0.0,
        not_h: 0.0,
        theta: 0.0,
    };
    assert_eq!(
        unsafe { confirm_dempster_combine(&m(0.75), &m(0.75), &mut out) },
        ConfirmStatus::Ok
    );
    assert!((out.h - 0.9).abs() < 1e-15 && (out.not_h - 0.1).abs() < 1e-15 && out.theta == 0.0);

    let vacuous = ConfirmMass {
        h: 0.0,
        not_h: 0.0,
        theta: 1.0,
    };
    let simple = ConfirmMass {
        h: 0.3,
        not_h: 0.0,
        theta: 0.7,
    };
    assert_eq!(
        unsafe { confirm_dempster_combine(&simple, &vacuous, &mut out) },
        ConfirmStatus::Ok
    );
    assert_eq!(out, simple);

    assert_eq!(
        unsafe { confirm_dempster_combine(&m(1.0), &m(0.0), &mut out) },
        ConfirmStatus::TotalConflict
    );
    let bad = ConfirmMass {
        h: 0.5,
        not_h: 0.6,
        theta: 0.0,
    };
    assert_eq!(
        unsafe { confirm_dempster_combine(&bad, &m(0.5), &mut out) },
        ConfirmStatus::OutOfRange
    );
    assert_eq!(
        unsafe { confirm_dempster_combine(ptr::null(), &m(0.5), &mut out) },
        ConfirmStatus::NullPointer
    );
}

const FLU: &str = "hypothesis H \"flu\"\nevidence E1 \"fever\"\nevidence E2 \"cough\"\n\
                   rule R1: E1 -> H cf 0.5\nrule R2: E2 -> H lambda 3\nobserve E1\nobserve E2\n";

fn parse(src: &str) -> (ConfirmStatus, *mut ConfirmRuleBase) {
    let src = CString::new(src).unwrap();
    let mut rb = ptr::null_mut();
    let status = unsafe { confirm_rulebase_parse(src.as_ptr(), &mut rb) };
    (status, rb)
}

#[test]
fn rule_base_lifecycle() {
    let (status, rb) = parse(FLU);
    assert_eq!(status, ConfirmStatus::Ok);
    assert!(!rb.is_null());

    let hyp = CString::new("H").unwrap();
    let mut post = ConfirmPosterior::default();
    assert_eq!(
        unsafe { confirm_rulebase_evaluate(rb, hyp.as_ptr(), &mut post) },
        ConfirmStatus::Ok
    );
    assert!((post.posterior - 0.9).abs() < 1e-15);
    assert_eq!(post.prior, 0.5);
    assert!((post.lambda - 9.0).abs() < 1e-12 && (post.cf - 0.8).abs() < 1e-15);
    assert!((post.logl - 9f64.ln()).abs() < 1e-15);

    let unknown = CString::new("K").unwrap();
    assert_eq!(
        unsafe { confirm_rulebase_evaluate(rb, unknown.as_ptr(), &mut post) },
        ConfirmStatus::UnknownHypothesis
    );

    let text = unsafe { confirm_rulebase_to_source(rb) };
    let printed = unsafe { CStr::from_ptr(text) }.to_str().unwrap().to_owned();
    unsafe { confirm_string_free(text) };
    assert!(printed.starts_with("hypothesis H \"flu\"\n"));
    let (status, again) = parse(&printed);
    assert_eq!(status, ConfirmStatus::Ok);

    unsafe {
        confirm_rulebase_free(rb);
        confirm_rulebase_free(again);
        confirm_rulebase_free(ptr::null_mut());
    }
}

#[test]
fn rule_base_diagnostics() {
    let (status, rb) = parse("hypothesis H \"h\"\nrule R1 E -> H cf 0.5\n");
    assert_eq!(status, ConfirmStatus::ParseError);
    assert!(rb.is_null());
    assert_eq!(last_error(), "2:9: expected ':' (found 'E')");

    let (status, rb) = parse("hypothesis H \"h\"\nevidence H \"again\"\nobserve X\n");
    assert_eq!(status, ConfirmStatus::ValidationError);
    assert!(rb.is_null());
    let message = last_error();
    let lines: Vec<_> = message.lines().collect();
    assert_eq!(lines.len(), 2, "{message}");
    assert!(
        lines[0].starts_with("2:10: ") && lines[1].starts_with("3:9: "),
        "{message}"
    );

    let mut out = ptr::null_mut();
    assert_eq!(
        unsafe { confirm_rulebase_parse(ptr::null(), &mut out) },
        ConfirmStatus::NullPointer
    );
    let bad = [0xffu8, 0];
    assert_eq!(
        unsafe { confirm_rulebase_parse(bad.as_ptr().cast(), &mut out) },
        ConfirmStatus::InvalidArgument
    );
}

#[test]
fn check() {
    let mut s = ConfirmCheckSummary::default();
    assert_eq!(
        unsafe { confirm_check(42, 100, 8, &mut s) },
        ConfirmStatus::Ok
    );
    assert_eq!((s.models, s.failures), (100, 0));
    assert!(s.worst_error < 1e-9 && s.tolerance == 1e-9);

    let mut again = ConfirmCheckSummary::default();
    unsafe { confirm_check(42, 100, 8, &mut again) };
    assert_eq!(s, again);

    assert_eq!(
        unsafe { confirm_check(42, 0, 8, &mut s) },
        ConfirmStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { confirm_check(42, 10, 17, &mut s) },
        ConfirmStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { confirm_check(42, 10, 0, &mut s) },
        ConfirmStatus::InvalidArgument
    );
}

#[test]
fn errors_are_per_thread() {
    assert_eq!(
        combine(CONFIRM_CALCULUS_CF, &[1.0, -1.0]),
        Err(ConfirmStatus::TotalConflict)
    );
    std::thread::spawn(|| assert_eq!(last_error(), ""))
        .join()
        .unwrap();
    assert!(last_error().contains("total conflict"));
}
