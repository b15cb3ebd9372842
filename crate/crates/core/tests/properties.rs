use fano_instanton::chow::pair_curve_divisor;
use fano_instanton::stability::{destabilizer_curve_class, extension_eliminator};
use fano_instanton::{
    euler_characteristic, h_line_f, h_omega_f, monad_chern, rr_blowup, synthesize_monad_f, BigChern, BigCurve,
    BigDivisor, ChernData, CurveClass, DivisorClass, InstantonInvariants,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn div() -> impl Strategy<Value = DivisorClass> {
    (-50i64..=50, -50i64..=50).prop_map(|(a, b)| DivisorClass::blowup(a, b))
}

fn flag_div() -> impl Strategy<Value = DivisorClass> {
    (-50i64..=50, -50i64..=50).prop_map(|(a, b)| DivisorClass::flag(a, b))
}

fn admissible() -> impl Strategy<Value = InstantonInvariants> {
    (0i64..=12, -12i64..=12, 0i64..=12)
        .prop_map(|(a, b, g)| InstantonInvariants::new(a, b, g))
        .prop_filter("admissible", InstantonInvariants::is_admissible)
}

fn big(d: &DivisorClass) -> BigDivisor {
    BigDivisor::new(d.geometry, BigInt::from(d.coords[0]), BigInt::from(d.coords[1]))
}

proptest! {
    #[test]
    fn intersection_is_commutative(x in div(), y in div()) {
        prop_assert_eq!(x.intersect(&y).unwrap(), y.intersect(&x).unwrap());
    }

    #[test]
    fn triple_products_are_associative(x in div(), y in div(), z in div()) {
        let l = pair_curve_divisor(&x.intersect(&y).unwrap(), &z).unwrap();
        let r = pair_curve_divisor(&y.intersect(&z).unwrap(), &x).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn flag_products_are_associative(x in flag_div(), y in flag_div(), z in flag_div()) {
        let l = x.intersect(&y).unwrap().pair(&z).unwrap();
        let r = y.intersect(&z).unwrap().pair(&x).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn intersection_distributes(x in div(), y in div(), z in div()) {
        let lhs = x.intersect(&y.checked_add(&z).unwrap()).unwrap();
        let rhs = x.intersect(&y).unwrap().checked_add(&x.intersect(&z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bigint_and_i64_agree(x in div(), y in div(), alpha in -40i64..=40, beta in -40i64..=40) {
        let p = big(&x).intersect(&big(&y)).unwrap();
        let q = x.intersect(&y).unwrap();
        prop_assert_eq!(p.coords.clone(), [BigInt::from(q.coords[0]), BigInt::from(q.coords[1])]);
        let e = BigChern::rank_two(BigCurve::blowup(BigInt::from(alpha), BigInt::from(beta)));
        let chi_big = euler_characteristic(&e.twist(&big(&x)).unwrap()).unwrap();
        let chi = euler_characteristic(&ChernData::rank_two(CurveClass::blowup(alpha, beta)).twist(&x).unwrap()).unwrap();
        prop_assert_eq!(chi_big, BigInt::from(chi));
    }

    #[test]
    fn serre_duality_far_out(i in 0u8..4, a in -400i64..=400, b in -400i64..=400) {
        prop_assert_eq!(h_line_f(i, a, b), h_line_f(3 - i, -a - 2, -b - 2));
        prop_assert_eq!(h_omega_f(i, a, b), h_omega_f(3 - i, -a - 2, -b + 1));
    }

    #[test]
    fn line_cohomology_matches_rr(a in -300i64..=300, b in -300i64..=300) {
        let alt: i64 = (0..4u8).map(|i| if i % 2 == 0 { h_line_f(i, a, b) as i64 } else { -(h_line_f(i, a, b) as i64) }).sum();
        let chi = euler_characteristic(&ChernData::line_bundle(DivisorClass::blowup(a, b))).unwrap();
        prop_assert_eq!(alt, chi);
    }

    #[test]
    fn rr_closed_form(a in -60i64..=60, b in -60i64..=60, alpha in 0i64..=60, beta in -60i64..=60) {
        let e = ChernData::rank_two(CurveClass::blowup(alpha, beta));
        let chi = euler_characteristic(&e.twist(&DivisorClass::blowup(a, b)).unwrap()).unwrap();
        prop_assert_eq!(rr_blowup(a, b, alpha, beta), num_rational::Ratio::from_integer(chi));
    }

    #[test]
    fn twists_compose(x in div(), y in div(), alpha in -20i64..=20, beta in -20i64..=20) {
        let e = ChernData::new(2, DivisorClass::blowup(1, 0), CurveClass::blowup(alpha, beta), 0).unwrap();
        prop_assert_eq!(e.twist(&x).unwrap().twist(&y).unwrap(), e.twist(&x.checked_add(&y).unwrap()).unwrap());
    }

    #[test]
    fn monad_chern_is_charge(inv in admissible()) {
        let terms = synthesize_monad_f(&inv).unwrap();
        prop_assert_eq!(terms.alternating_rank(), 2);
        prop_assert_eq!(monad_chern(&terms).unwrap(), inv.chern());
    }

    #[test]
    fn destabilizer_identity(alpha in -200i64..=200, beta in -200i64..=200, lambda in -30i64..=30) {
        prop_assume!(lambda != 0);
        let d = DivisorClass::blowup(3 * lambda, -4 * lambda);
        let total = d.intersect(&-d.clone()).unwrap().checked_add(&destabilizer_curve_class(alpha, beta, lambda).unwrap()).unwrap();
        prop_assert_eq!(total, CurveClass::blowup(alpha, beta));
    }

    #[test]
    fn every_extension_is_eliminated(a in -10_000i64..=10_000, b in -10_000i64..=10_000) {
        prop_assert!(extension_eliminator(a, b).eliminated());
    }
}
