#![allow(dead_code)]

use dp1_core::dp1::{Dp1Surface, WeightedPoint};
use dp1_core::exactalg::{BinaryForm, Elem, Field};
use rand::Rng;

pub fn small(k: &Field, rng: &mut impl Rng, r: i64) -> Elem {
    k.int(rng.gen_range(-r..=r))
}

/// A random surface through a random point (x0, y0) over t0, found by solving
/// for the w⁶ coefficient of g. Smoothness is not checked.
pub fn surface_through_point(k: &Field, rng: &mut impl Rng, r: i64) -> Option<(Dp1Surface, WeightedPoint)> {
    let f: Vec<Elem> = (0..5).map(|_| small(k, rng, r)).collect();
    let mut g: Vec<Elem> = (0..7).map(|_| small(k, rng, r)).collect();
    let t0 = small(k, rng, 3);
    let x0 = small(k, rng, r);
    let y0 = small(k, rng, r);
    if y0.is_zero() {
        return None;
    }
    let one = k.one();
    let fv = BinaryForm::new(k, f.clone()).eval(&t0, &one);
    let gv = BinaryForm::new(k, g.clone()).eval(&t0, &one);
    let need = y0.square() - x0.pow(3) - &fv * &x0 - gv;
    g[0] = &g[0] + &need;
    let s = Dp1Surface::new(BinaryForm::new(k, f), BinaryForm::new(k, g)).ok()?;
    let q = WeightedPoint::affine(x0, y0, t0);
    assert!(s.contains(&q));
    Some((s, q))
}

pub fn smooth_surface_through_point(k: &Field, rng: &mut impl Rng, r: i64) -> (Dp1Surface, WeightedPoint) {
    loop {
        if let Some((s, q)) = surface_through_point(k, rng, r) {
            if s.is_smooth().unwrap() {
                return (s, q);
            }
        }
    }
}

pub fn random_smooth_surface(k: &Field, rng: &mut impl Rng, r: i64) -> Dp1Surface {
    loop {
        let f: Vec<Elem> = (0..5).map(|_| small(k, rng, r)).collect();
        let g: Vec<Elem> = (0..7).map(|_| small(k, rng, r)).collect();
        if let Ok(s) = Dp1Surface::new(BinaryForm::new(k, f), BinaryForm::new(k, g)) {
            if s.is_smooth().unwrap() {
                return s;
            }
        }
    }
}

/// A smooth surface over ℚ with a nodal fiber over (0:1) whose node sits at x = d.
pub fn nodal_surface(rng: &mut impl Rng) -> Dp1Surface {
    let k = Field::rationals();
    loop {
        let d = *[1i64, -1, 2, -2, 3].get(rng.gen_range(0..5)).unwrap();
        let mut f: [i64; 5] = std::array::from_fn(|_| rng.gen_range(-2..=2));
        let mut g: [i64; 7] = std::array::from_fn(|_| rng.gen_range(-2..=2));
        f[0] = -3 * d * d;
        g[0] = 2 * d * d * d;
        let Ok(s) = Dp1Surface::from_ints(&k, &f, &g) else {
            continue;
        };
        // simple root of Δ at 0
        if s.discriminant().coeff(1).is_zero() {
            continue;
        }
        if s.is_smooth().unwrap() {
            return s;
        }
    }
}
