mod common;

use dp1_core::exactalg::{pgl2_act, BinaryForm, Elem, Field, Matrix2};
use dp1_core::weier::{nodal_param, tate_family_3, tate_family_5, CurvePoint, OrderClass, WeierCurve};
use proptest::prelude::*;

/// A smooth curve over GF(p) and one of its affine points, by scanning x.
fn curve_and_point(p: u64, a: i64, b: i64, x: i64) -> Option<(WeierCurve, CurvePoint)> {
    let k = Field::prime(p).unwrap();
    let e = WeierCurve::new(k.int(a), k.int(b));
    if !e.is_smooth() {
        return None;
    }
    for dx in 0..p as i64 {
        let xv = k.int(x + dx);
        if let Some(y) = e.rhs(&xv).sqrt().unwrap() {
            return Some((e, CurvePoint::Affine(xv, y)));
        }
    }
    None
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![5u64, 7, 11, 13, 17, 101])
}

proptest! {
    #[test]
    fn addition_is_associative_and_commutative(p in prime(), a in 0i64..100, b in 0i64..100, x1 in 0i64..100, x2 in 0i64..100, x3 in 0i64..100) {
        let Some((e, p1)) = curve_and_point(p, a, b, x1) else { return Ok(()) };
        let (_, p2) = curve_and_point(p, a, b, x2).unwrap();
        let (_, p3) = curve_and_point(p, a, b, x3).unwrap();
        let l = e.add(&e.add(&p1, &p2).unwrap(), &p3).unwrap();
        let r = e.add(&p1, &e.add(&p2, &p3).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(e.add(&p1, &p2).unwrap(), e.add(&p2, &p1).unwrap());
        prop_assert!(e.add(&p1, &e.neg(&p1)).unwrap().is_identity());
    }

    #[test]
    fn multiplication_is_additive(p in prime(), a in 0i64..100, b in 0i64..100, x in 0i64..100, m in -20i64..20, n in -20i64..20) {
        let Some((e, pt)) = curve_and_point(p, a, b, x) else { return Ok(()) };
        let lhs = e.mul(m + n, &pt).unwrap();
        let rhs = e.add(&e.mul(m, &pt).unwrap(), &e.mul(n, &pt).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(e.contains(&e.mul(m, &pt).unwrap()));
    }

    #[test]
    fn division_values_match_addition(p in prime(), a in 0i64..100, b in 0i64..100, x in 0i64..100) {
        let Some((e, pt)) = curve_and_point(p, a, b, x) else { return Ok(()) };
        let by_add = e.order_by_addition(&pt, 6).unwrap().finite();
        let by_phi = e.phi_values(pt.x().unwrap()).order();
        prop_assert_eq!(by_add, by_phi);
    }

    #[test]
    fn rational_points_off_torsion(a in -20i64..20, x0 in -20i64..20, y0 in 1i64..20) {
        let k = Field::rationals();
        let (x, y) = (k.int(x0), k.int(y0));
        let b = y.square() - x.pow(3) - k.int(a) * &x;
        let e = WeierCurve::new(k.int(a), b);
        if !e.is_smooth() { return Ok(()) }
        let pt = CurvePoint::Affine(x, y);
        prop_assert!(e.order_class(&pt, 12).is_ok());
    }

    #[test]
    fn pgl2_composition(m1 in prop::array::uniform4(-5i64..5), m2 in prop::array::uniform4(-5i64..5), c in prop::array::uniform5(-9i64..9)) {
        let k = Field::rationals();
        let mk = |m: [i64; 4]| Matrix2::new(k.int(m[0]), k.int(m[1]), k.int(m[2]), k.int(m[3]));
        let (a, b) = (mk(m1), mk(m2));
        if a.det().is_zero() || b.det().is_zero() { return Ok(()) }
        let f = BinaryForm::from_ints(&k, &c);
        let two_step = pgl2_act(&a, &pgl2_act(&b, &f).unwrap()).unwrap();
        prop_assert_eq!(two_step, pgl2_act(&a.mul(&b), &f).unwrap());
    }
}

#[test]
fn tate_families_have_their_orders() {
    let k = Field::rationals();
    for beta in [2i64, 3, 5, -7] {
        let b: Elem = k.int(beta);
        let (x, y, a, bb) = tate_family_3(&b, 1);
        let e = WeierCurve::new(a, bb);
        let pt = CurvePoint::Affine(x, y);
        assert_eq!(e.order_class(&pt, 12).unwrap(), OrderClass::Finite(3));
        let (x, y, a, bb) = tate_family_5(&b);
        let e = WeierCurve::new(a, bb);
        let pt = CurvePoint::Affine(x, y);
        assert_eq!(e.order_class(&pt, 12).unwrap(), OrderClass::Finite(5));
    }
}

#[test]
fn nodal_parametrization_is_multiplicative() {
    // (s − √(3d))/(s + √(3d)) is the multiplicative coordinate; with d = 3 it is (s−3)/(s+3)
    let k = Field::rationals();
    let d = k.int(3);
    let e = WeierCurve::new(k.int(-27), k.int(54));
    let u = |s: &Elem| (s - &k.int(3)).checked_div(&(s + &k.int(3))).unwrap();
    for (s1, s2) in [(1i64, 2i64), (5, -7), (4, 11)] {
        let (a, b) = (k.int(s1), k.int(s2));
        let sum = e.add(&nodal_param(&d, &a).unwrap(), &nodal_param(&d, &b).unwrap()).unwrap();
        let (x, y) = (sum.x().unwrap(), sum.y().unwrap());
        // recover s from the point: s = y / (x − d)
        let s = y.checked_div(&(x - &d)).unwrap();
        assert_eq!(u(&s), u(&a) * u(&b));
    }
}
