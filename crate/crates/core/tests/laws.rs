//! Algebraic properties of the four calculi and of the binary-frame
//! Dempster rule.

mod common;

use common::*;
use confirm_core::calculi::*;
use confirm_core::dstheory::{belief_of, chance_mass, dempster_combine, BinaryMass};
use confirm_core::Error;
use proptest::prelude::*;

fn l(v: f64) -> LikelihoodRatio {
    LikelihoodRatio::new(v).unwrap()
}
fn d(v: f64) -> CertaintyFactor {
    CertaintyFactor::new(v).unwrap()
}
fn b(v: f64) -> ChanceBelief {
    ChanceBelief::new(v).unwrap()
}
fn g(v: f64) -> LogLikelihood {
    LogLikelihood::new(v).unwrap()
}

fn mass() -> impl Strategy<Value = BinaryMass> {
    (0.001f64..1.0, 0.001f64..1.0, 0.0f64..1.0).prop_map(|(h, n, t)| {
        let s = h + n + t;
        let (h, n) = (h / s, n / s);
        BinaryMass::new(h, n, 1.0 - h - n).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn transforms_round_trip(dv in interior_cf(), bv in interior_belief(), gv in interior_logl(), lv in (-8.0f64..8.0).prop_map(f64::exp)) {
        prop_assert!(close_abs(l_to_d(d_to_l(d(dv))).value(), dv, 1e-12));
        prop_assert!(close_abs(b_to_d(d_to_b(d(dv))).value(), dv, 1e-12));
        prop_assert!(close_abs(l_to_b(b_to_l(b(bv))).value(), bv, 1e-12));
        prop_assert!(close_abs(d_to_b(b_to_d(b(bv))).value(), bv, 1e-12));
        prop_assert!(close_abs(l_to_g(g_to_l(g(gv))).value(), gv, 1e-12));
        prop_assert!(close_rel(g_to_l(l_to_g(l(lv))).value(), lv, 1e-12));
        // Leaving L for a bounded coordinate costs relative precision of
        // order L * eps, so this direction is sampled over a narrower range.
        prop_assert!(close_rel(d_to_l(l_to_d(l(lv))).value(), lv, 1e-12));
        prop_assert!(close_rel(b_to_l(l_to_b(l(lv))).value(), lv, 1e-12));
    }

    #[test]
    fn cf_rule_is_lambda_rule(d1 in interior_cf(), d2 in interior_cf()) {
        let (d1, d2) = (d(d1), d(d2));
        let via_l = l_to_d(combine_l(d_to_l(d1), d_to_l(d2)).unwrap()).value();
        prop_assert!(close_abs(combine_d(d1, d2).unwrap().value(), via_l, 1e-12));
    }

    #[test]
    fn belief_rule_is_lambda_rule(b1 in interior_belief(), b2 in interior_belief()) {
        let (b1, b2) = (b(b1), b(b2));
        let via_l = l_to_b(combine_l(b_to_l(b1), b_to_l(b2)).unwrap()).value();
        prop_assert!(close_abs(combine_b(b1, b2).unwrap().value(), via_l, 1e-12));
    }

    #[test]
    fn logl_rule_is_lambda_rule(g1 in interior_logl(), g2 in interior_logl()) {
        let via_l = l_to_g(combine_l(g_to_l(g(g1)), g_to_l(g(g2))).unwrap()).value();
        prop_assert!(close_abs(combine_g(g(g1), g(g2)).unwrap().value(), via_l, 1e-12));
    }

    #[test]
    fn commutative_exactly((_c, m) in same_calculus(2)) {
        let (a, x) = (m[0], m[1]);
        prop_assert_eq!(a.combine(&x).unwrap(), x.combine(&a).unwrap());
    }

    #[test]
    fn associative((_c, m) in same_calculus(3)) {
        let (a, x, y) = (m[0], m[1], m[2]);
        let left = a.combine(&x).unwrap().combine(&y).unwrap();
        let right = a.combine(&x.combine(&y).unwrap()).unwrap();
        prop_assert!(same_measure(&left, &right, 1e-10), "{left} vs {right}");
    }

    #[test]
    fn identity_is_bit_exact(a in interior_measure()) {
        let c = a.calculus();
        let e = c.identity();
        prop_assert_eq!(a.combine(&e).unwrap().value().to_bits(), a.value().to_bits());
        prop_assert_eq!(e.combine(&a).unwrap().value().to_bits(), a.value().to_bits());
    }

    #[test]
    fn negation_antisymmetry((c, m) in same_calculus(2), dv in interior_cf()) {
        prop_assert!(close_abs(combine_d(d(dv), d(-dv)).unwrap().value(), 0.0, 1e-12));
        let (a, x) = (m[0], m[1]);
        let lhs = a.combine(&x).unwrap().negate();
        let rhs = a.negate().combine(&x.negate()).unwrap();
        prop_assert!(same_measure(&lhs, &rhs, 1e-12), "{lhs} vs {rhs}");
        prop_assert_eq!(a.negate().negate().calculus(), c);
    }

    #[test]
    fn confirming_evidence_raises_belief(l1 in interior_lambda(), l2 in 1.001f64..1e6) {
        prop_assert!(combine_l(l(l1), l(l2)).unwrap().value() > l1);
        let (d1, d2) = (l_to_d(l(l1)), l_to_d(l(l2)));
        if d1.value() < 0.999 {
            prop_assert!(combine_d(d1, d2).unwrap().value() > d1.value());
        }
        let (b1, b2) = (l_to_b(l(l1)), l_to_b(l(l2)));
        if b1.value() < 0.999 {
            prop_assert!(combine_b(b1, b2).unwrap().value() > b1.value());
        }
    }

    #[test]
    fn results_stay_in_range((c, m) in same_calculus(2)) {
        let r = m[0].combine(&m[1]).unwrap();
        prop_assert!(Measure::new(c, r.value()).is_ok());
        for t in Calculus::ALL {
            let v = r.convert(t);
            prop_assert_eq!(Measure::new(t, v.value()).unwrap(), v);
        }
    }

    #[test]
    fn dempster_reduces_to_belief_rule(b1 in interior_belief(), b2 in interior_belief()) {
        let m = dempster_combine(&chance_mass(b(b1)), &chance_mass(b(b2))).unwrap();
        prop_assert_eq!(m.theta(), 0.0);
        let direct = combine_b(b(b1), b(b2)).unwrap().value();
        prop_assert!(close_abs(belief_of(&m).unwrap().value(), direct, 1e-12));
    }

    #[test]
    fn dempster_laws(m1 in mass(), m2 in mass(), m3 in mass()) {
        let ab = dempster_combine(&m1, &m2).unwrap();
        let ba = dempster_combine(&m2, &m1).unwrap();
        prop_assert!(close_abs(ab.h(), ba.h(), 1e-10) && close_abs(ab.not_h(), ba.not_h(), 1e-10));
        let left = dempster_combine(&ab, &m3).unwrap();
        let right = dempster_combine(&m1, &dempster_combine(&m2, &m3).unwrap()).unwrap();
        prop_assert!(close_abs(left.h(), right.h(), 1e-10));
        prop_assert!(close_abs(left.not_h(), right.not_h(), 1e-10));
        prop_assert!(close_abs(left.theta(), right.theta(), 1e-10));
        for m in [ab, left, right] {
            prop_assert!(close_abs(m.h() + m.not_h() + m.theta(), 1.0, 1e-12));
        }
        prop_assert_eq!(dempster_combine(&BinaryMass::VACUOUS, &m1).unwrap(), m1);
        prop_assert_eq!(dempster_combine(&m1, &BinaryMass::VACUOUS).unwrap(), m1);
    }
}

#[test]
fn boundaries_map_exactly() {
    assert_eq!(l_to_d(l(0.0)).value(), -1.0);
    assert_eq!(l_to_d(l(f64::INFINITY)).value(), 1.0);
    assert_eq!(l_to_b(l(0.0)).value(), 0.0);
    assert_eq!(l_to_b(l(f64::INFINITY)).value(), 1.0);
    assert_eq!(l_to_g(l(0.0)).value(), f64::NEG_INFINITY);
    assert_eq!(l_to_g(l(f64::INFINITY)).value(), f64::INFINITY);
    assert_eq!(d_to_l(d(-1.0)).value(), 0.0);
    assert_eq!(d_to_l(d(1.0)).value(), f64::INFINITY);
    assert_eq!(d_to_b(d(-1.0)).value(), 0.0);
    assert_eq!(d_to_b(d(1.0)).value(), 1.0);
    assert_eq!(b_to_l(b(0.0)).value(), 0.0);
    assert_eq!(b_to_l(b(1.0)).value(), f64::INFINITY);
    assert_eq!(b_to_d(b(0.0)).value(), -1.0);
    assert_eq!(b_to_d(b(1.0)).value(), 1.0);
    assert_eq!(g_to_l(g(f64::NEG_INFINITY)).value(), 0.0);
    assert_eq!(g_to_l(g(f64::INFINITY)).value(), f64::INFINITY);
}

#[test]
fn every_calculus_rejects_opposing_certainties() {
    for c in Calculus::ALL {
        let yes = Measure::Lambda(LikelihoodRatio::CERTAIN_FOR).convert(c);
        let no = Measure::Lambda(LikelihoodRatio::CERTAIN_AGAINST).convert(c);
        assert!(
            matches!(yes.combine(&no), Err(Error::TotalConflict { .. })),
            "{c}"
        );
        assert!(
            matches!(no.combine(&yes), Err(Error::TotalConflict { .. })),
            "{c}"
        );
        assert_eq!(yes.combine(&yes).unwrap(), yes);
    }
}

#[test]
fn total_conflict_in_dempster() {
    let yes = BinaryMass::new(1.0, 0.0, 0.0).unwrap();
    let no = BinaryMass::new(0.0, 1.0, 0.0).unwrap();
    assert!(matches!(
        dempster_combine(&yes, &no),
        Err(Error::TotalConflict { .. })
    ));
    // Certainty against a partially committed source is fine.
    let partial = BinaryMass::new(0.0, 0.7, 0.3).unwrap();
    let m = dempster_combine(&yes, &partial).unwrap();
    assert_eq!((m.h(), m.not_h(), m.theta()), (1.0, 0.0, 0.0));
}
