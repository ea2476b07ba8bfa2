//! The curve C_Q(5) as a double cover v² = D(p) of the p-line: point search,
//! maps to a Weierstrass model, and certificates that it has infinitely many
//! rational points.

use num_integer::Integer;
use num_traits::Signed;
use serde::Serialize;

use crate::cq5::{small_elements, CQ5Data, ComponentClass, ComponentDesc};
use crate::exactalg::{rational_is_square, squarefree_decomposition, Budget, Elem, Field, UniPoly};
use crate::weier::{CurvePoint, NonTorsionWitness, TorsionCert, WeierCurve};
use crate::{Error, Result};

/// v² = D(p) with q = (v − L(p)) / (2c1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticModel {
    pub d: UniPoly,
    pub lin: UniPoly,
    pub c1: Elem,
    pub c2: Elem,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QuarticPoint {
    Affine(Elem, Elem),
    /// The point at infinity where v/p² → the given value (a square root of
    /// the coefficient of p⁴, or 0 when deg D = 3).
    AtInfinity(Elem),
}

impl QuarticModel {
    pub fn complete_square(data: &CQ5Data) -> Result<QuarticModel> {
        if data.is_order_three() {
            return Err(Error::OrderThree);
        }
        let k = data.field();
        let c = &data.c;
        let lin = UniPoly::new(k, vec![c[4].clone(), c[3].clone(), c[2].clone()]);
        let rhs = UniPoly::new(k, (5..=9).rev().map(|i| c[i].clone()).collect());
        let d = &(&lin * &lin) + &rhs.scale(&(k.int(4) * &c[1]));
        Ok(QuarticModel {
            d,
            lin,
            c1: c[1].clone(),
            c2: c[2].clone(),
        })
    }

    /// v² = D(p) on its own, with q = v.
    pub fn from_poly(d: UniPoly) -> QuarticModel {
        let k = d.field().clone();
        QuarticModel {
            lin: UniPoly::zero(&k),
            c1: k.rat(1, 2).unwrap(),
            c2: k.zero(),
            d,
        }
    }

    pub fn field(&self) -> &Field {
        self.d.field()
    }

    pub fn contains(&self, pt: &QuarticPoint) -> bool {
        match pt {
            QuarticPoint::Affine(p, v) => v.square() == self.d.eval(p),
            QuarticPoint::AtInfinity(s) => match self.d.degree() {
                Some(4) => &s.square() == self.d.lc().unwrap(),
                Some(3) => s.is_zero(),
                _ => false,
            },
        }
    }

    pub fn to_pq(&self, p: &Elem, v: &Elem) -> Result<(Elem, Elem)> {
        let q = (v - &self.lin.eval(p)).checked_div(&(self.field().int(2) * &self.c1))?;
        Ok((p.clone(), q))
    }

    pub fn from_pq(&self, p: &Elem, q: &Elem) -> QuarticPoint {
        let v = self.field().int(2) * &self.c1 * q + self.lin.eval(p);
        QuarticPoint::Affine(p.clone(), v)
    }

    /// The root α of c1T² + c2T − c5 belonging to a branch at infinity.
    pub fn alpha_of(&self, v_lead: &Elem) -> Result<Elem> {
        Ok((v_lead - &self.c2).checked_div(&(self.field().int(2) * &self.c1))?)
    }

    pub fn points_at_infinity(&self) -> Result<Vec<QuarticPoint>> {
        let k = self.field();
        Ok(match self.d.degree() {
            Some(4) => match self.d.lc().unwrap().sqrt()? {
                Some(r) if r.is_zero() => vec![],
                Some(r) => vec![QuarticPoint::AtInfinity(r.clone()), QuarticPoint::AtInfinity(-r)],
                None => vec![],
            },
            Some(3) => vec![QuarticPoint::AtInfinity(k.zero())],
            _ => vec![],
        })
    }

    /// Rational points with p of height at most `height`, then those at infinity.
    pub fn search_points(&self, height: u64) -> Result<Vec<QuarticPoint>> {
        if !self.field().is_rationals() {
            return Err(Error::FieldUnsupported("point search needs Q".into()));
        }
        let mut out = self.points_at_infinity()?;
        for (p, v) in square_values(&self.d, height) {
            if v.is_zero() {
                out.push(QuarticPoint::Affine(p, v));
            } else {
                out.push(QuarticPoint::Affine(p.clone(), v.clone()));
                out.push(QuarticPoint::Affine(p, -v));
            }
        }
        Ok(out)
    }
}

/// Rationals u/v with max(|u|, v) ≤ H, ordered by height, then denominator.
pub fn rationals_by_height(k: &Field, height: u64) -> Vec<Elem> {
    let h = height as i64;
    let mut out = vec![];
    for n in 1..=h.max(1) {
        let mut layer = vec![];
        for den in 1..=n {
            for num in -n..=n {
                if num.abs().max(den) == n && num.gcd(&den) == 1 {
                    layer.push((den, num.abs(), num));
                }
            }
        }
        layer.sort();
        out.extend(layer.into_iter().map(|(den, _, num)| k.rat(num, den).unwrap()));
    }
    out
}

/// (p, v) with v ≥ 0 and v² = D(p) for p of height ≤ H.
fn square_values(d: &UniPoly, height: u64) -> Vec<(Elem, Elem)> {
    let k = d.field();
    rationals_by_height(k, height)
        .into_iter()
        .filter_map(|p| {
            let val = d.eval(&p);
            let r = val.as_rational()?;
            if r.is_negative() {
                return None;
            }
            rational_is_square(r).map(|s| (p, k.from_rational(&s).unwrap()))
        })
        .collect()
}

#[derive(Clone, Debug)]
enum Moved {
    Aff(Elem, Elem),
    Inf(Elem),
}

/// A birational map from a smooth quartic (or cubic) v² = D(p) with a chosen
/// rational point to a short Weierstrass curve, sending that point to 𝒪.
#[derive(Clone, Debug)]
pub struct QuarticToCubic {
    pub model: QuarticModel,
    pub base: QuarticPoint,
    pub curve: WeierCurve,
    inverted: bool,
    shift: Elem,
    /// Coefficients of the moved quartic, ascending: e + d x + c x² + b x³ + a x⁴.
    moved: Vec<Elem>,
    /// Some(q) when the moved base is (0, q) with q ≠ 0.
    q: Option<Elem>,
    /// a1, a2, a3, a4, a6
    long: [Elem; 5],
}

impl QuarticToCubic {
    pub fn new(model: &QuarticModel, base: &QuarticPoint) -> Result<QuarticToCubic> {
        let k = model.field().clone();
        let deg = model.d.degree().unwrap_or(0);
        if !(3..=4).contains(&deg) {
            return Err(Error::SingularQuartic);
        }
        let parts = squarefree_decomposition(&model.d)?;
        if parts.iter().any(|(_, m)| *m > 1) {
            return Err(Error::SingularQuartic);
        }
        if !model.contains(base) {
            return Err(Error::NotOnCurve);
        }
        let (inverted, shift, d1, y0) = match base {
            QuarticPoint::Affine(p0, v0) => {
                let lin = UniPoly::new(&k, vec![p0.clone(), k.one()]);
                (false, p0.clone(), model.d.compose(&lin), v0.clone())
            }
            QuarticPoint::AtInfinity(s) => {
                let mut cs: Vec<Elem> = (0..=4).map(|i| model.d.coeff(i)).collect();
                cs.reverse();
                (true, k.zero(), UniPoly::new(&k, cs), s.clone())
            }
        };
        let moved: Vec<Elem> = (0..=4).map(|i| d1.coeff(i)).collect();
        let (e, dd, c, b, a) = (&moved[0], &moved[1], &moved[2], &moved[3], &moved[4]);
        let n = |v: i64| k.int(v);
        let (q, long) = if !y0.is_zero() {
            let q = y0.clone();
            debug_assert_eq!(&q.square(), e);
            let a1 = dd.checked_div(&q)?;
            let a2 = c - &dd.square().checked_div(&(n(4) * q.square()))?;
            let a3 = n(2) * &q * b;
            let a4 = n(-4) * q.square() * a;
            let a6 = &a2 * &a4;
            (Some(q), [a1, a2, a3, a4, a6])
        } else {
            (
                None,
                [k.zero(), c.clone(), k.zero(), b * dd, a * dd.square()],
            )
        };
        let [a1, a2, a3, a4, a6] = &long;
        let b2 = a1.square() + n(4) * a2;
        let b4 = n(2) * a4 + a1 * a3;
        let b6 = a3.square() + n(4) * a6;
        let c4 = b2.square() - n(24) * &b4;
        let c6 = -b2.pow(3) + n(36) * &b2 * &b4 - n(216) * &b6;
        let curve = WeierCurve::new(
            -(c4.checked_div(&n(48))?),
            -(c6.checked_div(&n(864))?),
        );
        if !curve.is_smooth() {
            return Err(Error::IdentityFailed("Weierstrass model of a smooth quartic is singular".into()));
        }
        Ok(QuarticToCubic {
            model: model.clone(),
            base: base.clone(),
            curve,
            inverted,
            shift,
            moved,
            q,
            long,
        })
    }

    fn to_moved(&self, pt: &QuarticPoint) -> Result<Moved> {
        Ok(match (pt, self.inverted) {
            (QuarticPoint::Affine(p, v), false) => Moved::Aff(p - &self.shift, v.clone()),
            (QuarticPoint::AtInfinity(s), false) => Moved::Inf(s.clone()),
            (QuarticPoint::Affine(p, v), true) => {
                if p.is_zero() {
                    Moved::Inf(v.clone())
                } else {
                    let ip = p.inv()?;
                    Moved::Aff(ip.clone(), v * &ip.square())
                }
            }
            (QuarticPoint::AtInfinity(s), true) => Moved::Aff(self.model.field().zero(), s.clone()),
        })
    }

    fn from_moved(&self, m: Moved) -> Result<QuarticPoint> {
        Ok(match (m, self.inverted) {
            (Moved::Aff(x, y), false) => QuarticPoint::Affine(&x + &self.shift, y),
            (Moved::Inf(s), false) => QuarticPoint::AtInfinity(s),
            (Moved::Aff(x, y), true) => {
                if x.is_zero() {
                    QuarticPoint::AtInfinity(y)
                } else {
                    let ix = x.inv()?;
                    QuarticPoint::Affine(ix.clone(), y * ix.square())
                }
            }
            (Moved::Inf(s), true) => QuarticPoint::Affine(self.model.field().zero(), s),
        })
    }

    fn long_to_short(&self, x: Elem, y: Elem) -> Result<CurvePoint> {
        let k = self.model.field();
        let [a1, a2, a3, ..] = &self.long;
        let b2 = a1.square() + k.int(4) * a2;
        let xs = &x + &b2.checked_div(&k.int(12))?;
        let ys = &y + &(a1 * &x + a3).checked_div(&k.int(2))?;
        Ok(CurvePoint::Affine(xs, ys))
    }

    pub fn forward(&self, pt: &QuarticPoint) -> Result<CurvePoint> {
        if !self.model.contains(pt) {
            return Err(Error::NotOnCurve);
        }
        let k = self.model.field();
        let n = |v: i64| k.int(v);
        let (dd, c) = (&self.moved[1], &self.moved[2]);
        let m = self.to_moved(pt)?;
        let (x, y) = match (&self.q, m) {
            (Some(q), Moved::Aff(x, y)) => {
                let [a1, a2, a3, ..] = &self.long;
                if x.is_zero() {
                    if &y == q {
                        return Ok(CurvePoint::Identity);
                    }
                    (-a2, a1 * a2 - a3)
                } else {
                    let x2 = x.square();
                    let xx = (n(2) * q * (&y + q) + dd * &x).checked_div(&x2)?;
                    let yy = (n(4) * q.square() * (&y + q) + n(2) * q * (dd * &x + c * &x2)
                        - (dd.square() * &x2).checked_div(&(n(2) * q))?)
                    .checked_div(&(&x2 * &x))?;
                    (xx, yy)
                }
            }
            (Some(q), Moved::Inf(s)) => (n(2) * q * &s, k.zero()),
            (None, Moved::Aff(x, y)) => {
                if x.is_zero() {
                    return Ok(CurvePoint::Identity);
                }
                (dd.checked_div(&x)?, (dd * &y).checked_div(&x.square())?)
            }
            (None, Moved::Inf(s)) => (k.zero(), dd * &s),
        };
        let out = self.long_to_short(x, y)?;
        debug_assert!(self.curve.contains(&out));
        Ok(out)
    }

    pub fn backward(&self, cp: &CurvePoint) -> Result<QuarticPoint> {
        let k = self.model.field();
        let n = |v: i64| k.int(v);
        let (xs, ys) = match cp {
            CurvePoint::Identity => return Ok(self.base.clone()),
            CurvePoint::Affine(x, y) => (x, y),
        };
        if !self.curve.contains(cp) {
            return Err(Error::NotOnCurve);
        }
        let [a1, a2, a3, a4, _] = &self.long;
        let b2 = a1.square() + n(4) * a2;
        let xx = xs - &b2.checked_div(&n(12))?;
        let yy = ys - &(a1 * &xx + a3).checked_div(&n(2))?;
        let dd = &self.moved[1];
        let m = match &self.q {
            Some(q) => {
                let den2 = xx.square() + a4;
                let x = if !yy.is_zero() {
                    (n(2) * q * (&xx + a2)).checked_div(&yy)?
                } else if !den2.is_zero() {
                    (n(2) * q * (&yy + a1 * &xx + a3)).checked_div(&den2)?
                } else {
                    let s = xx.checked_div(&(n(2) * q))?;
                    return self.from_moved(Moved::Inf(s));
                };
                let y = -q + &(&x * &(&x * &xx - dd)).checked_div(&(n(2) * q))?;
                Moved::Aff(x, y)
            }
            None => {
                if xx.is_zero() {
                    Moved::Inf(yy.checked_div(dd)?)
                } else {
                    let x = dd.checked_div(&xx)?;
                    let y = (&yy * &x.square()).checked_div(dd)?;
                    Moved::Aff(x, y)
                }
            }
        };
        self.from_moved(m)
    }
}

/// A rational parametrization of a component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RationalParam {
    /// a(p) q = b(p)
    Graph { a: UniPoly, b: UniPoly },
    /// p = p0, q free.
    Line { p0: Elem },
    /// v = h(p)·w with w² = e(p), deg e ≤ 2, through a known point.
    Conic { h: UniPoly, e: UniPoly, start: QuarticPoint },
}

#[derive(Clone, Debug)]
pub enum Infinitude {
    RationalComponent(RationalParam),
    NonTorsionClass {
        map: Box<QuarticToCubic>,
        point: QuarticPoint,
        image: CurvePoint,
        witness: NonTorsionWitness,
    },
    PointCount(Vec<QuarticPoint>),
    Inconclusive,
}

/// Serializable summary of an infinitude certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinitudeSummary {
    pub kind: String,
    pub detail: String,
}

impl Infinitude {
    pub fn is_conclusive(&self) -> bool {
        !matches!(self, Infinitude::Inconclusive)
    }

    pub fn summary(&self) -> InfinitudeSummary {
        let (kind, detail) = match self {
            Infinitude::RationalComponent(RationalParam::Graph { a, b }) => (
                "RationalComponent",
                format!("({}) q = {}", a.fmt_var("p"), b.fmt_var("p")),
            ),
            Infinitude::RationalComponent(RationalParam::Line { p0 }) => {
                ("RationalComponent", format!("p = {p0}"))
            }
            Infinitude::RationalComponent(RationalParam::Conic { e, start, .. }) => (
                "RationalComponent",
                format!("conic w^2 = {} through {:?}", e.fmt_var("p"), start),
            ),
            Infinitude::NonTorsionClass {
                map, image, witness, ..
            } => (
                "NonTorsionClass",
                format!(
                    "y^2 = x^3 + ({})x + ({}), point {:?}, {:?}",
                    map.curve.a, map.curve.b, image, witness
                ),
            ),
            Infinitude::PointCount(pts) => ("PointCount", format!("{} points > 16", pts.len())),
            Infinitude::Inconclusive => ("Inconclusive", String::new()),
        };
        InfinitudeSummary {
            kind: kind.into(),
            detail,
        }
    }
}

fn split_square(d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
    let k = d.field();
    let mut h = UniPoly::one(k);
    let mut e = UniPoly::constant(d.lc().unwrap().clone());
    for (f, m) in squarefree_decomposition(d)? {
        h = &h * &f.pow(m as u32 / 2);
        if m % 2 == 1 {
            e = &e * &f;
        }
    }
    Ok((h, e))
}

impl RationalParam {
    /// The point with parameter t, if defined.
    pub fn point(&self, t: &Elem, model: Option<&QuarticModel>) -> Result<Option<(Elem, Elem)>> {
        Ok(match self {
            RationalParam::Graph { a, b } => {
                let av = a.eval(t);
                if av.is_zero() {
                    None
                } else {
                    Some((t.clone(), b.eval(t).checked_div(&av)?))
                }
            }
            RationalParam::Line { p0 } => Some((p0.clone(), t.clone())),
            RationalParam::Conic { h, e, start } => {
                let model = model.expect("conic parametrization needs the quartic model");
                let k = e.field();
                let (e0, e1, e2) = (e.coeff(0), e.coeff(1), e.coeff(2));
                let pw = match (e.degree(), start) {
                    (Some(1), _) => Some(((t.square() - &e0).checked_div(&e1)?, t.clone())),
                    (_, QuarticPoint::AtInfinity(r)) => {
                        let den = &e1 - &(k.int(2) * r * t);
                        if den.is_zero() {
                            None
                        } else {
                            let p = (t.square() - &e0).checked_div(&den)?;
                            let w = r * &p + t;
                            Some((p, w))
                        }
                    }
                    (_, QuarticPoint::Affine(p0, w0)) => {
                        let den = &e2 - &t.square();
                        if den.is_zero() {
                            None
                        } else {
                            let c = w0 - &(t * p0);
                            let sum = -(&e1 - &(k.int(2) * t * &c)).checked_div(&den)?;
                            let p = &sum - p0;
                            let w = w0 + &(t * &(&p - p0));
                            Some((p, w))
                        }
                    }
                };
                match pw {
                    None => None,
                    Some((p, w)) => {
                        let v = h.eval(&p) * w;
                        Some(model.to_pq(&p, &v)?)
                    }
                }
            }
        })
    }
}

/// Decide whether a component has infinitely many rational points.
pub fn infinitude_certificate(
    data: &CQ5Data,
    comp: &ComponentDesc,
    height: u64,
) -> Result<Infinitude> {
    let k = data.field();
    if !k.is_rationals() {
        return Err(Error::FieldUnsupported("infinitude certificates need Q".into()));
    }
    match &comp.class {
        ComponentClass::GraphOverP { a, b } => {
            Ok(Infinitude::RationalComponent(RationalParam::Graph {
                a: a.clone(),
                b: b.clone(),
            }))
        }
        ComponentClass::VerticalLines { m } => Ok(if m.degree() == Some(1) {
            Infinitude::RationalComponent(RationalParam::Line {
                p0: -m.monic()?.coeff(0),
            })
        } else {
            Infinitude::Inconclusive
        }),
        ComponentClass::QuadraticCover { .. } => {
            let model = QuarticModel::complete_square(data)?;
            quartic_infinitude(&model, height)
        }
    }
}

pub fn quartic_infinitude(model: &QuarticModel, height: u64) -> Result<Infinitude> {
    let (h, e) = split_square(&model.d)?;
    let de = e.degree().unwrap_or(0);
    if de <= 2 {
        if de == 0 {
            return Ok(Infinitude::Inconclusive);
        }
        if de == 1 {
            return Ok(Infinitude::RationalComponent(RationalParam::Conic {
                h,
                e: e.clone(),
                start: QuarticPoint::AtInfinity(model.field().zero()),
            }));
        }
        let conic = QuarticModel::from_poly(e.clone());
        let mut pts = conic.points_at_infinity()?;
        pts.extend(square_values(&e, height).into_iter().map(|(p, w)| QuarticPoint::Affine(p, w)));
        return Ok(match pts.into_iter().next() {
            Some(start) => Infinitude::RationalComponent(RationalParam::Conic { h, e, start }),
            None => Infinitude::Inconclusive,
        });
    }
    let pts = model.search_points(height)?;
    let Some(base) = pts.first() else {
        return Ok(Infinitude::Inconclusive);
    };
    let map = QuarticToCubic::new(model, base)?;
    for pt in &pts[1..] {
        let image = map.forward(pt)?;
        if let TorsionCert::NonTorsion(witness) = map.curve.non_torsion_certificate(&image)? {
            return Ok(Infinitude::NonTorsionClass {
                map: Box::new(map),
                point: pt.clone(),
                image,
                witness,
            });
        }
    }
    if pts.len() > 16 {
        return Ok(Infinitude::PointCount(pts));
    }
    Ok(Infinitude::Inconclusive)
}

/// Up to n distinct rational points (p, q) of C_Q(5) from a certificate.
pub fn generate_points(
    data: &CQ5Data,
    cert: &Infinitude,
    n: usize,
    budget: &Budget,
) -> Result<Vec<(Elem, Elem)>> {
    let k = data.field();
    let mut out: Vec<(Elem, Elem)> = vec![];
    if n == 0 {
        return Ok(out);
    }
    // false once the height budget is spent; the points so far are kept
    let push = |out: &mut Vec<(Elem, Elem)>, pq: (Elem, Elem)| -> bool {
        if budget.check_all([&pq.0, &pq.1]).is_err() {
            return false;
        }
        debug_assert!(data.g.eval(&pq.0, &pq.1).is_zero());
        if !out.contains(&pq) {
            out.push(pq);
        }
        true
    };
    match cert {
        Infinitude::Inconclusive => {}
        Infinitude::RationalComponent(param) => {
            let model = QuarticModel::complete_square(data).ok();
            let ts = if k.is_rationals() {
                rationals_by_height(k, 64)
            } else {
                small_elements(k, 4 * n + 8)
            };
            for t in ts {
                if out.len() >= n {
                    break;
                }
                if let Some(pq) = param.point(&t, model.as_ref())? {
                    if !push(&mut out, pq) {
                        break;
                    }
                }
            }
        }
        Infinitude::NonTorsionClass { map, image, .. } => {
            let e = &map.curve;
            let model = &map.model;
            let mut pos = CurvePoint::Identity;
            let mut neg = CurvePoint::Identity;
            let mut steps = 0;
            'grow: while out.len() < n && steps < 4 * n + 8 {
                pos = e.add(&pos, image)?;
                neg = e.add(&neg, &e.neg(image))?;
                for cp in [&pos, &neg] {
                    if let QuarticPoint::Affine(p, v) = map.backward(cp)? {
                        if !push(&mut out, model.to_pq(&p, &v)?) {
                            break 'grow;
                        }
                    }
                }
                steps += 1;
            }
            out.truncate(n);
        }
        Infinitude::PointCount(pts) => {
            let model = QuarticModel::complete_square(data)?;
            for pt in pts {
                if let QuarticPoint::Affine(p, v) = pt {
                    if !push(&mut out, model.to_pq(p, v)?) {
                        break;
                    }
                }
                if out.len() >= n {
                    break;
                }
            }
        }
    }
    Ok(out)
}
