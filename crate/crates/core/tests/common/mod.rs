#![allow(dead_code)]

use confirm_core::calculi::Calculus;
use confirm_core::Measure;
use proptest::prelude::*;

/// Absolute closeness; identical values (including infinities) always match.
pub fn close_abs(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol
}

/// Closeness relative to magnitude, for the unbounded L coordinate.
pub fn close_rel(a: f64, b: f64, tol: f64) -> bool {
    a == b || (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Compares two measures in their own calculus: relative for lambda,
/// absolute for the bounded calculi and for logl.
pub fn same_measure(a: &Measure, b: &Measure, tol: f64) -> bool {
    a.calculus() == b.calculus()
        && match a.calculus() {
            Calculus::Lambda => close_rel(a.value(), b.value(), tol),
            _ => close_abs(a.value(), b.value(), tol),
        }
}

pub fn calculus() -> impl Strategy<Value = Calculus> {
    prop::sample::select(Calculus::ALL.to_vec())
}

pub fn interior_logl() -> impl Strategy<Value = f64> {
    -20.0f64..20.0
}

pub fn interior_cf() -> impl Strategy<Value = f64> {
    (-1.0f64..1.0).prop_filter("interior", |d| d.abs() < 1.0)
}

pub fn interior_belief() -> impl Strategy<Value = f64> {
    (0.0f64..1.0).prop_filter("interior", |b| *b > 0.0)
}

/// Log-uniform over `[e^-20, e^20)`.
pub fn interior_lambda() -> impl Strategy<Value = f64> {
    interior_logl().prop_map(f64::exp)
}

/// A non-certain value sampled in the calculus's own coordinate: uniform
/// for the bounded calculi and for logl, log-uniform for lambda.
pub fn native_value(c: Calculus) -> BoxedStrategy<f64> {
    match c {
        Calculus::Lambda => interior_lambda().boxed(),
        Calculus::Cf => interior_cf().boxed(),
        Calculus::Belief => interior_belief().boxed(),
        Calculus::LogL => interior_logl().boxed(),
    }
}

pub fn native_measure(c: Calculus) -> impl Strategy<Value = Measure> {
    native_value(c).prop_map(move |v| Measure::new(c, v).unwrap())
}

/// A non-certain measure in a random calculus.
pub fn interior_measure() -> impl Strategy<Value = Measure> {
    calculus().prop_flat_map(native_measure)
}

/// A calculus together with `n` measures sampled natively in it.
pub fn same_calculus(n: usize) -> impl Strategy<Value = (Calculus, Vec<Measure>)> {
    calculus().prop_flat_map(move |c| (Just(c), prop::collection::vec(native_measure(c), n)))
}
