//! Short Weierstrass cubics y² = x³ + Ax + B, smooth or singular, with the
//! chord-tangent law on their nonsingular points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exactalg::{Elem, Field};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveKind {
    Smooth,
    /// Node at (x_s, 0) with x_s = -3B/(2A).
    Nodal { singular_x: Elem },
    /// Cusp at (0, 0); A = B = 0.
    Cuspidal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierCurve {
    pub a: Elem,
    pub b: Elem,
    pub kind: CurveKind,
    /// 4A³ + 27B²
    pub disc: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Identity,
    Affine(Elem, Elem),
}

impl CurvePoint {
    pub fn x(&self) -> Option<&Elem> {
        match self {
            CurvePoint::Affine(x, _) => Some(x),
            CurvePoint::Identity => None,
        }
    }

    pub fn y(&self) -> Option<&Elem> {
        match self {
            CurvePoint::Affine(_, y) => Some(y),
            CurvePoint::Identity => None,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, CurvePoint::Identity)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrderClass {
    Finite(u32),
    ExceedsBound(u32),
}

impl OrderClass {
    pub fn finite(&self) -> Option<u32> {
        match self {
            OrderClass::Finite(n) => Some(*n),
            OrderClass::ExceedsBound(_) => None,
        }
    }
}

/// Values at x of ψ = Φ2'/2 and Φ2..Φ6.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiValues {
    pub psi: Elem,
    pub phi2: Elem,
    pub phi3: Elem,
    pub phi4: Elem,
    pub phi5: Elem,
    pub phi6: Elem,
}

/// Φ2 = 4(x³+Ax+B), Ψ = 6x²+2A, Φ3 = 3xΦ2 − Ψ²/4, Φ4 = ΨΦ3 − Φ2²,
/// Φ5 = Φ2²Φ4 − Φ3³, Φ6 = Φ5 − Φ4².
pub fn phi_values(a: &Elem, b: &Elem, x: &Elem) -> PhiValues {
    let f = x.field();
    let k = |n: i64| f.int(n);
    let x2 = x * x;
    let phi2 = k(4) * (&x2 * x + a * x + b);
    let psi = k(6) * &x2 + k(2) * a;
    let phi3 = k(3) * x * &phi2 - psi.square() * f.rat(1, 4).unwrap();
    let phi4 = &psi * &phi3 - phi2.square();
    let phi5 = phi2.square() * &phi4 - phi3.pow(3);
    let phi6 = &phi5 - phi4.square();
    PhiValues {
        psi,
        phi2,
        phi3,
        phi4,
        phi5,
        phi6,
    }
}

impl PhiValues {
    /// Order read off the division values: 2..6, or None for "not ≤ 6".
    pub fn order(&self) -> Option<u32> {
        if self.phi2.is_zero() {
            Some(2)
        } else if self.phi3.is_zero() {
            Some(3)
        } else if self.phi4.is_zero() {
            Some(4)
        } else if self.phi5.is_zero() {
            Some(5)
        } else if self.phi6.is_zero() {
            Some(6)
        } else {
            None
        }
    }
}

/// Torsion status over ℚ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TorsionCert {
    Torsion(u32),
    NonTorsion(NonTorsionWitness),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum NonTorsionWitness {
    /// The n-th multiple has a non-integral coordinate on the integral model.
    NonIntegral(u32),
    /// y(nP)² does not divide the discriminant of the integral model.
    DiscriminantDivisibility(u32),
    /// nP ≠ O for all n ≤ 12.
    MazurBound,
}

/// Tate normal form data: the point becomes (0,0) on y²+exy+βy=x³ (n = 3)
/// or y²+(β+1)xy+βy=x³+βx² (n = 5), up to the short-model scaling η.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateData {
    pub beta: Elem,
    /// 0 or 1 for n = 3; None for n = 5.
    pub e: Option<u8>,
    pub eta: Elem,
}

/// (x0, y0, A, B) of the order-3 family at (β, e) with η = 1.
pub fn tate_family_3(beta: &Elem, e: u8) -> (Elem, Elem, Elem, Elem) {
    let f = beta.field();
    let e = f.int(e as i64);
    let u = f.int(3) * &e;
    let a = (f.int(6) * beta - f.int(27)) * &e;
    let b = beta.square() - f.int(18) * (beta - &f.int(3)) * &e;
    (u, beta.clone(), a, b)
}

/// (x0, y0, A, B) of the order-5 family at β with η = 1.
pub fn tate_family_5(beta: &Elem) -> (Elem, Elem, Elem, Elem) {
    let f = beta.field();
    let k = |n: i64| f.int(n);
    let b2 = beta.square();
    let u = k(3) * (&b2 + k(6) * beta + k(1));
    let v = k(108) * beta;
    let b3 = &b2 * beta;
    let b4 = &b2 * &b2;
    let a = k(-27) * (&b4 + k(12) * &b3 + k(14) * &b2 - k(12) * beta + k(1));
    let b = k(54) * (&b2 + k(1)) * (&b4 + k(18) * &b3 + k(74) * &b2 - k(18) * beta + k(1));
    (u, v, a, b)
}

/// The point (s²−2d, s³−3ds) on y² = (x−d)²(x+2d).
pub fn nodal_param(d: &Elem, s: &Elem) -> Result<CurvePoint> {
    let f = d.field();
    let s2 = s * s;
    if s.is_zero() {
        return Err(Error::ZeroY);
    }
    if s2 == f.int(3) * d {
        return Err(Error::HitsSingularPoint);
    }
    Ok(CurvePoint::Affine(
        &s2 - &(f.int(2) * d),
        &s2 * s - f.int(3) * d * s,
    ))
}

impl WeierCurve {
    pub fn new(a: Elem, b: Elem) -> WeierCurve {
        let f = a.field().clone();
        assert!(f.characteristic() == 0 || f.characteristic() >= 5);
        let disc = f.int(4) * a.pow(3) + f.int(27) * b.square();
        let kind = if !disc.is_zero() {
            CurveKind::Smooth
        } else if a.is_zero() {
            CurveKind::Cuspidal
        } else {
            let sx = (f.int(-3) * &b).checked_div(&(f.int(2) * &a)).unwrap();
            CurveKind::Nodal { singular_x: sx }
        };
        WeierCurve { a, b, kind, disc }
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn is_smooth(&self) -> bool {
        self.kind == CurveKind::Smooth
    }

    pub fn rhs(&self, x: &Elem) -> Elem {
        x.pow(3) + &self.a * x + &self.b
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match p {
            CurvePoint::Identity => true,
            CurvePoint::Affine(x, y) => y.square() == self.rhs(x),
        }
    }

    pub fn singular_point(&self) -> Option<CurvePoint> {
        let f = self.field();
        match &self.kind {
            CurveKind::Smooth => None,
            CurveKind::Nodal { singular_x } => Some(CurvePoint::Affine(singular_x.clone(), f.zero())),
            CurveKind::Cuspidal => Some(CurvePoint::Affine(f.zero(), f.zero())),
        }
    }

    fn check_nonsingular(&self, p: &CurvePoint) -> Result<()> {
        if let Some(s) = self.singular_point() {
            if &s == p {
                return Err(Error::HitsSingularPoint);
            }
        }
        Ok(())
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Identity => CurvePoint::Identity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x.clone(), -y),
        }
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        self.check_nonsingular(p)?;
        self.check_nonsingular(q)?;
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Identity, _) => return Ok(q.clone()),
            (_, CurvePoint::Identity) => return Ok(p.clone()),
            (CurvePoint::Affine(x1, y1), CurvePoint::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let f = self.field();
        let lambda = if x1 == x2 {
            if (y1 + y2).is_zero() {
                return Ok(CurvePoint::Identity);
            }
            (f.int(3) * x1.square() + &self.a).checked_div(&(f.int(2) * y1))?
        } else {
            (y2 - y1).checked_div(&(x2 - x1))?
        };
        let x3 = lambda.square() - x1 - x2;
        let y3 = &lambda * &(x1 - &x3) - y1;
        Ok(CurvePoint::Affine(x3, y3))
    }

    pub fn mul(&self, n: i64, p: &CurvePoint) -> Result<CurvePoint> {
        self.check_nonsingular(p)?;
        let mut base = if n < 0 { self.neg(p) } else { p.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = CurvePoint::Identity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base)?;
            }
        }
        Ok(acc)
    }

    pub fn phi_values(&self, x: &Elem) -> PhiValues {
        phi_values(&self.a, &self.b, x)
    }

    /// Smallest n ≤ bound with nP = O by repeated addition. On smooth curves
    /// the answer is checked against the division values; a disagreement is
    /// reported as `AnomalousOrder` carrying the repeated-addition result.
    pub fn order_class(&self, p: &CurvePoint, bound: u32) -> Result<OrderClass> {
        let class = self.order_by_addition(p, bound)?;
        if let (CurveKind::Smooth, CurvePoint::Affine(x, _)) = (&self.kind, p) {
            let by_phi = self.phi_values(x).order();
            let by_add = class.finite().filter(|&n| n <= 6);
            let comparable = match class {
                OrderClass::Finite(_) => true,
                OrderClass::ExceedsBound(b) => b >= 6,
            };
            if comparable && by_add != by_phi {
                return Err(Error::AnomalousOrder {
                    by_addition: class.finite(),
                    by_phi,
                });
            }
        }
        Ok(class)
    }

    /// Repeated addition alone, without the division-value cross-check.
    pub fn order_by_addition(&self, p: &CurvePoint, bound: u32) -> Result<OrderClass> {
        self.check_nonsingular(p)?;
        let mut acc = p.clone();
        for n in 1..=bound {
            if acc.is_identity() {
                return Ok(OrderClass::Finite(n));
            }
            acc = self.add(&acc, p)?;
            if n == bound {
                break;
            }
        }
        Ok(OrderClass::ExceedsBound(bound))
    }

    /// Torsion decision over ℚ via an integral model, Nagell–Lutz and Mazur's bound.
    pub fn non_torsion_certificate(&self, p: &CurvePoint) -> Result<TorsionCert> {
        if !self.field().is_rationals() {
            return Err(Error::FieldUnsupported(self.field().to_string()));
        }
        if !self.is_smooth() {
            return Err(Error::SingularCurve);
        }
        if !self.contains(p) {
            return Err(Error::NotOnCurve);
        }
        let (model, u) = self.integral_model();
        let p = match p {
            CurvePoint::Identity => return Ok(TorsionCert::Torsion(1)),
            CurvePoint::Affine(x, y) => CurvePoint::Affine(x * &u.square(), y * &u.pow(3)),
        };
        let disc = model.disc.as_rational().unwrap().numer().clone();
        let mut acc = p.clone();
        for n in 1..=12u32 {
            match &acc {
                CurvePoint::Identity => return Ok(TorsionCert::Torsion(n)),
                CurvePoint::Affine(x, y) => {
                    let (x, y) = (x.as_rational().unwrap(), y.as_rational().unwrap());
                    if !x.is_integer() || !y.is_integer() {
                        return Ok(TorsionCert::NonTorsion(NonTorsionWitness::NonIntegral(n)));
                    }
                    let y = y.numer();
                    if !y.is_zero() && !(&disc % (y * y)).is_zero() {
                        return Ok(TorsionCert::NonTorsion(
                            NonTorsionWitness::DiscriminantDivisibility(n),
                        ));
                    }
                }
            }
            acc = model.add(&acc, &p)?;
        }
        Ok(TorsionCert::NonTorsion(NonTorsionWitness::MazurBound))
    }

    /// Model y² = x³ + Au⁴x + Bu⁶ with integral coefficients; u is minimal
    /// over primes found by trial division, any remaining cofactor is taken whole.
    pub fn integral_model(&self) -> (WeierCurve, Elem) {
        let f = self.field();
        let da = self.a.as_rational().unwrap().denom().clone();
        let db = self.b.as_rational().unwrap().denom().clone();
        let mut u = BigInt::one();
        let mut need = vec![(da, 4u32), (db, 6u32)];
        let mut prime = BigInt::from(2);
        let limit = BigInt::from(100_000);
        loop {
            if need.iter().all(|(d, _)| d.is_one()) {
                break;
            }
            if prime > limit || need.iter().all(|(d, _)| &(&prime * &prime) > d) {
                // leftover cofactors are 1 or prime (below the limit) or unfactored
                let rest = need.iter().fold(BigInt::one(), |acc, (d, _)| acc.lcm(d));
                u *= rest;
                break;
            }
            let mut e_needed = 0u32;
            for (d, k) in need.iter_mut() {
                let mut e = 0u32;
                while (&*d % &prime).is_zero() {
                    *d /= &prime;
                    e += 1;
                }
                e_needed = e_needed.max(e.div_ceil(*k));
            }
            for _ in 0..e_needed {
                u *= &prime;
            }
            prime += 1;
        }
        let ue = f.from_bigint(&u);
        let model = WeierCurve::new(&self.a * &ue.pow(4), &self.b * &ue.pow(6));
        (model, ue)
    }

    /// Tate normal form for a point of order 3 or 5.
    pub fn tate_normal_form(&self, p: &CurvePoint, n: u32) -> Result<TateData> {
        if n != 3 && n != 5 {
            return Err(Error::WrongOrder(n));
        }
        match self.order_by_addition(p, 6)? {
            OrderClass::Finite(m) if m == n => {}
            _ => return Err(Error::WrongOrder(n)),
        }
        let (x0, y0) = match p {
            CurvePoint::Affine(x, y) => (x, y),
            CurvePoint::Identity => return Err(Error::WrongOrder(n)),
        };
        let f = self.field();
        let k = |v: i64| f.int(v);
        // move P to (0,0) with tangent y = 0: y² + a1xy + a3y = x³ + a2x²
        let lambda = (k(3) * x0.square() + &self.a).checked_div(&(k(2) * y0))?;
        let a2 = k(3) * x0 - lambda.square();
        let a3 = k(2) * y0;
        let data = if n == 3 {
            if lambda.is_zero() {
                TateData {
                    beta: y0.clone(),
                    e: Some(0),
                    eta: f.one(),
                }
            } else {
                let beta = (k(27) * y0).checked_div(&lambda.pow(3))?;
                let eta = lambda.pow(3).checked_div(&(k(9) * x0))?;
                TateData {
                    beta,
                    e: Some(1),
                    eta,
                }
            }
        } else {
            let beta = a2.pow(3).checked_div(&a3.square())?;
            let (u0, v0, _, _) = tate_family_5(&beta);
            let eta = (y0 * &u0).checked_div(&(&v0 * x0))?;
            TateData {
                beta,
                e: None,
                eta,
            }
        };
        let (u, v, aa, bb) = match data.e {
            Some(e) => tate_family_3(&data.beta, e),
            None => tate_family_5(&data.beta),
        };
        let eta = &data.eta;
        let ok = &u * &eta.square() == *x0
            && &v * &eta.pow(3) == *y0
            && &aa * &eta.pow(4) == self.a
            && &bb * &eta.pow(6) == self.b;
        if !ok {
            return Err(Error::IdentityFailed("Tate normal form reproduction".into()));
        }
        Ok(data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq() -> Field {
        Field::rationals()
    }

    fn pt(x: &str, y: &str) -> CurvePoint {
        CurvePoint::Affine(qq().parse(x).unwrap(), qq().parse(y).unwrap())
    }

    fn curve(a: i64, b: i64) -> WeierCurve {
        WeierCurve::new(qq().int(a), qq().int(b))
    }

    #[test]
    fn add_example() {
        let e = curve(0, 1);
        assert_eq!(e.add(&pt("2", "3"), &pt("0", "1")).unwrap(), pt("-1", "0"));
    }

    #[test]
    fn mul_examples() {
        let e = curve(-3, 2);
        let q = pt("2", "2");
        assert_eq!(e.mul(2, &q).unwrap(), pt("17/16", "7/64"));
        assert_eq!(e.mul(4, &q).unwrap(), pt("3137/3136", "97/175616"));
        assert_eq!(e.mul(-4, &q).unwrap(), pt("3137/3136", "-97/175616"));
        assert_eq!(e.mul(0, &q).unwrap(), CurvePoint::Identity);
    }

    #[test]
    fn singular_point_rejected() {
        let e = curve(-3, 2);
        assert!(matches!(e.kind, CurveKind::Nodal { .. }));
        assert!(matches!(e.add(&pt("1", "0"), &pt("2", "2")), Err(Error::HitsSingularPoint)));
        let c = curve(0, 0);
        assert_eq!(c.kind, CurveKind::Cuspidal);
        assert!(matches!(c.mul(2, &pt("0", "0")), Err(Error::HitsSingularPoint)));
    }

    #[test]
    fn phi_at_origin_of_x3_plus_1() {
        let e = curve(0, 1);
        let v = e.phi_values(&qq().zero());
        assert_eq!(v.psi, qq().zero());
        assert_eq!(v.phi2, qq().int(4));
        assert_eq!(v.phi3, qq().zero());
    }

    #[test]
    fn order_examples() {
        let e = curve(0, 1);
        assert_eq!(e.order_class(&pt("2", "3"), 12).unwrap(), OrderClass::Finite(6));
        assert_eq!(e.order_class(&pt("0", "1"), 12).unwrap(), OrderClass::Finite(3));
        let e = curve(-1, 0);
        assert_eq!(e.order_class(&pt("0", "0"), 12).unwrap(), OrderClass::Finite(2));
        let e = curve(-2, 0);
        assert_eq!(e.order_class(&pt("-1", "1"), 12).unwrap(), OrderClass::ExceedsBound(12));
    }

    #[test]
    fn non_torsion_examples() {
        let e = curve(-2, 0);
        assert_eq!(
            e.non_torsion_certificate(&pt("-1", "1")).unwrap(),
            TorsionCert::NonTorsion(NonTorsionWitness::NonIntegral(2))
        );
        let e = curve(0, 1);
        assert_eq!(e.non_torsion_certificate(&pt("2", "3")).unwrap(), TorsionCert::Torsion(6));
        // rational model: y² = x³ + x/16 + 1/64 is y² = x³ + 16x + 64 scaled by u = 2
        let e = WeierCurve::new(qq().rat(1, 16).unwrap(), qq().rat(1, 64).unwrap());
        let (m, u) = e.integral_model();
        assert_eq!(u, qq().int(2));
        assert_eq!((m.a.clone(), m.b.clone()), (qq().int(1), qq().int(1)));
    }

    #[test]
    fn nodal_param_examples() {
        let d = qq().int(1);
        let p = nodal_param(&d, &qq().int(2)).unwrap();
        assert_eq!(p, pt("2", "2"));
        assert!(curve(-3, 2).contains(&p));
        assert!(matches!(nodal_param(&d, &qq().zero()), Err(Error::ZeroY)));
        assert!(matches!(nodal_param(&qq().int(3), &qq().int(3)), Err(Error::HitsSingularPoint)));
    }

    #[test]
    fn tate_examples() {
        let k = qq();
        // order-3 family with β = 1, e = 1: (3, 1, -21, -35)
        let beta = k.int(1);
        let (x0, y0, a, b) = tate_family_3(&beta, 1);
        let e = WeierCurve::new(a, b);
        let t = e.tate_normal_form(&CurvePoint::Affine(x0, y0), 3).unwrap();
        assert_eq!((t.beta, t.e, t.eta), (k.int(1), Some(1), k.int(1)));
        // (0, 5, 0, 25)
        let e = curve(0, 25);
        let t = e.tate_normal_form(&pt("0", "5"), 3).unwrap();
        assert_eq!((t.beta, t.e, t.eta), (k.int(5), Some(0), k.int(1)));
        // order-5 family at β = 2
        let (x0, y0, a, b) = tate_family_5(&k.int(2));
        let e = WeierCurve::new(a, b);
        let t = e.tate_normal_form(&CurvePoint::Affine(x0, y0), 5).unwrap();
        assert_eq!(t.eta, k.int(1));
        // order 6 point
        assert!(matches!(curve(0, 1).tate_normal_form(&pt("2", "3"), 3), Err(Error::WrongOrder(3))));
    }
}
