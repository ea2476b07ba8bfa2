use dp1_core::exactalg::{Field, UniPoly};
use dp1_core::genus1::{rationals_by_height, QuarticModel, QuarticPoint, QuarticToCubic};
use dp1_core::Error;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quartic_to_cubic_round_trips(c in prop::array::uniform4(-6i64..6), v0 in 1i64..5) {
        let k = Field::rationals();
        // D(p) = v0² + c1 p + c2 p² + c3 p³ + c4 p⁴ has the point (0, v0)
        let d = UniPoly::from_ints(&k, &[v0 * v0, c[0], c[1], c[2], c[3]]);
        let model = QuarticModel::from_poly(d);
        let base = QuarticPoint::Affine(k.zero(), k.int(v0));
        let map = match QuarticToCubic::new(&model, &base) {
            Ok(m) => m,
            Err(Error::SingularQuartic) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(map.forward(&base).unwrap().is_identity());
        for pt in model.search_points(6).unwrap() {
            let img = map.forward(&pt).unwrap();
            prop_assert!(map.curve.contains(&img));
            prop_assert_eq!(map.backward(&img).unwrap(), pt);
        }
    }
}

#[test]
fn heights_are_nondecreasing() {
    let k = Field::rationals();
    let rs = rationals_by_height(&k, 12);
    let hs: Vec<u64> = rs
        .iter()
        .map(|r| {
            let r = r.as_rational().unwrap();
            r.numer().magnitude().max(r.denom().magnitude()).try_into().unwrap()
        })
        .collect();
    assert!(hs.windows(2).all(|w| w[0] <= w[1]));
    let distinct: std::collections::HashSet<String> = rs.iter().map(|r| r.to_string()).collect();
    assert_eq!(distinct.len(), rs.len());
}
