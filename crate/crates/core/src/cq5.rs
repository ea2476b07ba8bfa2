//! The curve of sections through Q meeting S there with multiplicity at least five,
//! the sixth-intersection map σ on it, its limit points and its components.

use std::fmt;

use crate::dp1::{Dp1Surface, SectionCurve, WeightedPoint};
use crate::exactalg::{gcd, rational_roots, resultant_q, squarefree_decomposition, squarefree_part};
use crate::exactalg::{AlgError, BiPoly, Elem, Field, FieldKind, UniPoly};
use crate::weier::{phi_values, CurveKind, CurvePoint, PhiValues, WeierCurve};
use crate::{Error, Result};

/// Everything derived from a normalized surface and Q = (x0 : y0 : 0 : 1).
#[derive(Clone, Debug)]
pub struct CQ5Data {
    pub surface: Dp1Surface,
    pub x0: Elem,
    pub y0: Elem,
    pub phi: PhiValues,
    /// h[i], l[i] for i = 1..6; index 0 unused.
    pub h: Vec<Elem>,
    pub l: Vec<Elem>,
    /// c[i] for i = 1..9; index 0 unused.
    pub c: Vec<Elem>,
    /// c1 q² + (c2 p² + c3 p + c4) q − (c5 p⁴ + … + c9).
    pub g: BiPoly,
    /// The lifted coefficients a, b, c of the section as functions of (p, q).
    pub lift: [BiPoly; 3],
    /// F0..F6 after the lift.
    pub f: Vec<BiPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaPoint {
    /// A root of c1 T² + c2 T − c5. An element of a quadratic extension stands
    /// for the conjugate pair.
    AlphaRoot(Elem),
    /// The limit points over the vertex of ℙ(1,2,1), present when c1 = 0.
    AboveVertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentClass {
    /// a(p) q = b(p)
    GraphOverP { a: UniPoly, b: UniPoly },
    /// The lines p = p0 over the roots of a squarefree m.
    VerticalLines { m: UniPoly },
    /// Irreducible over the ground field, of degree 2 over the p-line. When
    /// `geometrically_split` the discriminant is a nonsquare constant times a square.
    QuadraticCover { disc: UniPoly, geometrically_split: bool },
}

#[derive(Clone, Debug)]
pub struct ComponentDesc {
    pub factor: BiPoly,
    pub class: ComponentClass,
    pub multiplicity: usize,
}

impl ComponentDesc {
    pub fn non_reduced(&self) -> bool {
        self.multiplicity > 1
    }
}

/// Image of a component under σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    Horizontal,
    /// Contracted into the fiber over (z : w).
    VerticalOver(Elem, Elem),
}

impl Image {
    pub fn is_horizontal(&self) -> bool {
        matches!(self, Image::Horizontal)
    }

    pub fn is_over_zero(&self) -> bool {
        matches!(self, Image::VerticalOver(z, _) if z.is_zero())
    }
}

impl fmt::Display for Image {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Image::Horizontal => write!(f, "horizontal"),
            Image::VerticalOver(z, w) => write!(f, "vertical over ({z} : {w})"),
        }
    }
}

/// Solutions of F4 = F5 = F6 = 0 grouped over factors m(p).
#[derive(Clone, Debug)]
pub struct MinusOneScheme {
    pub distinct: usize,
    pub with_multiplicity: usize,
    /// (m, gcd of the F's in q over K[p]/(m)).
    pub parts: Vec<(UniPoly, UniPoly)>,
    /// Solutions with both coordinates in the ground field.
    pub rational: Vec<(Elem, Elem)>,
}

fn konst(e: &Elem) -> BiPoly {
    BiPoly::constant(e.clone())
}

fn tmul(a: &[BiPoly], b: &[BiPoly], field: &Field) -> Vec<BiPoly> {
    let mut out = vec![BiPoly::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn tadd(a: &[BiPoly], b: &[BiPoly], field: &Field) -> Vec<BiPoly> {
    let n = a.len().max(b.len());
    let z = BiPoly::zero(field);
    (0..n)
        .map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z))
        .collect()
}

/// Coefficients of t^0..t^6 in −y(t)² + x(t)³ + f(t,1) x(t) + g(t,1) for a section
/// with x = [x0, p, q], y = [y0, a, b, c] given as bivariate coefficients.
pub fn section_coefficients(s: &Dp1Surface, x: &[BiPoly; 3], y: &[BiPoly; 4]) -> Vec<BiPoly> {
    let k = s.field();
    let x2 = tmul(x, x, k);
    let x3 = tmul(&x2, x, k);
    let y2: Vec<BiPoly> = tmul(y, y, k).iter().map(|e| -e).collect();
    let fs: Vec<BiPoly> = (0..5).map(|i| konst(s.f_coeff(i))).collect();
    let gs: Vec<BiPoly> = (0..7).map(|i| konst(s.g_coeff(i))).collect();
    let fx = tmul(&fs, x, k);
    let mut r = tadd(&tadd(&tadd(&y2, &x3, k), &fx, k), &gs, k);
    r.resize(7, BiPoly::zero(k));
    r
}

/// ψ, φ2..φ6, h1..h6, l1..l6 and c1..c9 at x0. None of them involves y0.
pub fn coefficient_block(s: &Dp1Surface, x0: &Elem) -> (PhiValues, Vec<Elem>, Vec<Elem>, Vec<Elem>) {
    let k = s.field().clone();
    let n = |v: i64| k.int(v);
    let (f0, g0) = (s.f_coeff(0).clone(), s.g_coeff(0).clone());
    let phi = phi_values(&f0, &g0, x0);
    let PhiValues {
        psi,
        phi2: p2,
        phi3: p3,
        phi4: p4,
        ..
    } = phi.clone();
    let fi = |i: usize| if i <= 4 { s.f_coeff(i).clone() } else { k.zero() };
    let mut h = vec![k.zero()];
    let mut l = vec![k.zero()];
    for i in 1..=6 {
        let hi = (fi(i) * x0 + s.g_coeff(i)) * p2.pow(i as u64 - 1);
        l.push(fi(i) * p2.pow(i as u64) - &hi * &psi);
        h.push(hi);
    }
    let (h1, h2, h3, h4) = (&h[1], &h[2], &h[3], &h[4]);
    let (l1, l2, l3) = (&l[1], &l[2], &l[3]);
    let c1 = p2.square() * &p3;
    let c2 = n(-3) * &p2 * &p4;
    let c3 = n(-2) * &p2 * (l1 * &psi + n(2) * h1 * &p3);
    let c4 = &p2 * (h1.square() * &psi - n(2) * l1 * h1 + l2);
    let c5 = p3.square() - &p4 * &psi;
    let c6 = n(2) * l1 * &p3 - n(2) * h1 * p2.square() - n(4) * h1 * &p4 - l1 * psi.square();
    let c7 = h1.square() * psi.square() - n(2) * (n(3) * h1.square() - h2) * &p3
        - (n(4) * l1 * h1 - l2) * &psi
        + l1.square();
    let c8 = (n(4) * h1.pow(3) - n(2) * h1 * h2) * &psi - n(6) * l1 * h1.square()
        + n(2) * l1 * h2
        + n(2) * l2 * h1
        - l3;
    let c9 = n(5) * h1.pow(4) - n(6) * h1.square() * h2 + n(2) * h1 * h3 + h2.square() - h4;
    let c = vec![k.zero(), c1, c2, c3, c4, c5, c6, c7, c8, c9];
    (phi, h, l, c)
}

impl CQ5Data {
    pub fn build(s: &Dp1Surface, q: &WeightedPoint) -> Result<CQ5Data> {
        let k = s.field().clone();
        if !q.z.is_zero() || !q.w.is_one() {
            return Err(Error::InvalidPoint("Q must lie over (0:1)".into()));
        }
        if !s.contains(q) {
            return Err(Error::NotOnSurface);
        }
        let (x0, y0) = (q.x.clone(), q.y.clone());
        if y0.is_zero() {
            return Err(Error::TwoTorsionPoint);
        }
        let n = |v: i64| k.int(v);
        let (phi, h, l, c) = coefficient_block(s, &x0);
        let PhiValues {
            psi,
            phi2: p2,
            phi3: p3,
            phi4: p4,
            ..
        } = phi.clone();
        let (h1, h2, h3) = (&h[1], &h[2], &h[3]);
        let l1 = &l[1];
        let l2 = &l[2];

        let pp = BiPoly::p(&k);
        let qq = BiPoly::q(&k);
        let t = |e: &Elem, i: u32, j: u32| BiPoly::term(e.clone(), i, j);
        let g = &(&(&t(&c[1], 0, 2) + &t(&c[2], 2, 1)) + &(&t(&c[3], 1, 1) + &t(&c[4], 0, 1)))
            - &(&(&(&t(&c[5], 4, 0) + &t(&c[6], 3, 0)) + &(&t(&c[7], 2, 0) + &t(&c[8], 1, 0)))
                + &t(&c[9], 0, 0));

        let inv4y0 = (n(4) * &y0).inv()?;
        let a = (&pp.scale(&psi) + &konst(&(n(2) * h1))).scale(&inv4y0);
        let b = (&(&qq.scale(&(&psi * &p2)) + &t(&(n(2) * &p3), 2, 0))
            + &(&pp.scale(&(n(2) * l1)) + &konst(&(n(2) * h2 - n(2) * h1.square()))))
            .scale(&(&inv4y0 * &p2.inv()?));
        let zeta = (&pp.scale(&(n(2) * &p3)) + &konst(l1)).scale(&p2);
        let eta = &(&(&t(&-&p4, 3, 0) + &t(&-(n(2) * h1 * &p3 + l1 * &psi), 2, 0))
            + &pp.scale(&(l2 - &(n(2) * h1 * l1) + h1.square() * &psi)))
            + &konst(&(h3 - &(n(2) * h1 * h2) + n(2) * h1.pow(3)));
        let cc = (&(&zeta * &qq) + &eta).scale(&(n(2) * &y0 * p2.square()).inv()?);

        let xs = [konst(&x0), pp.clone(), qq.clone()];
        let ys = [konst(&y0), a.clone(), b.clone(), cc.clone()];
        let f = section_coefficients(s, &xs, &ys);
        Ok(CQ5Data {
            surface: s.clone(),
            x0,
            y0,
            phi,
            h,
            l,
            c,
            g,
            lift: [a, b, cc],
            f,
        })
    }

    pub fn field(&self) -> &Field {
        self.surface.field()
    }

    pub fn is_order_three(&self) -> bool {
        self.c[1].is_zero()
    }

    pub fn q_point(&self) -> CurvePoint {
        CurvePoint::Affine(self.x0.clone(), self.y0.clone())
    }

    /// The fiber through Q, over (0:1).
    pub fn fiber(&self) -> WeierCurve {
        WeierCurve::new(self.surface.f_coeff(0).clone(), self.surface.g_coeff(0).clone())
    }

    /// The section through Q determined by (p, q) ∈ C_Q(5).
    pub fn section(&self, p: &Elem, q: &Elem) -> SectionCurve {
        let [a, b, c] = &self.lift;
        let to = p.field();
        let emb = |e: &Elem| to.embed(e).expect("extension of the ground field");
        SectionCurve {
            q: q.clone(),
            p: p.clone(),
            x0: emb(&self.x0),
            c: c.eval(p, q),
            b: b.eval(p, q),
            a: a.eval(p, q),
            y0: emb(&self.y0),
        }
    }

    /// The sixth intersection point of the section over (p, q) with S.
    pub fn sigma(&self, p: &Elem, q: &Elem) -> Result<WeightedPoint> {
        if !self.g.eval(p, q).is_zero() {
            return Err(Error::NotOnCurve);
        }
        let f5 = self.f[5].eval(p, q);
        let f6 = self.f[6].eval(p, q);
        let sec = self.section(p, q);
        if f6.is_zero() {
            if f5.is_zero() {
                return Err(Error::MinusOneCurve);
            }
            return Ok(sec.point_at_infinity());
        }
        let t = -(f5.checked_div(&f6)?);
        Ok(sec.point_at(&t))
    }

    pub fn omega_points(&self) -> Result<Vec<OmegaPoint>> {
        let k = self.field();
        let (c1, c2, c5) = (&self.c[1], &self.c[2], &self.c[5]);
        if c1.is_zero() {
            let alpha = c5.checked_div(c2)?;
            return Ok(vec![OmegaPoint::AlphaRoot(alpha), OmegaPoint::AboveVertex]);
        }
        let disc = c2.square() + k.int(4) * c1 * c5;
        let two_c1 = k.int(2) * c1;
        if disc.is_zero() {
            return Ok(vec![OmegaPoint::AlphaRoot(-(c2.checked_div(&two_c1)?))]);
        }
        if let Some(r) = disc.sqrt()? {
            let mut out = vec![];
            for s in [r.clone(), -r] {
                out.push(OmegaPoint::AlphaRoot((s - c2).checked_div(&two_c1)?));
            }
            return Ok(out);
        }
        let m = UniPoly::new(k, vec![-(c5.checked_div(c1)?), c2.checked_div(c1)?, k.one()]);
        let ext = Field::quotient(&m, "alpha")?;
        Ok(vec![OmegaPoint::AlphaRoot(ext.generator().unwrap())])
    }

    /// σ at a limit point, computed from the limit of the sections: they
    /// collapse into the fiber through Q along the curve x = αs² + s + x0 and
    /// their sixth intersection point converges.
    pub fn sigma_at_omega(&self, w: &OmegaPoint) -> Result<CurvePoint> {
        let fiber = self.fiber();
        let alpha = match w {
            OmegaPoint::AboveVertex => return fiber.mul(-5, &self.q_point()),
            OmegaPoint::AlphaRoot(a) => a,
        };
        let l = alpha.field().clone();
        let e = |v: &Elem| l.embed(v).expect("extension of the ground field");
        let n = |v: i64| l.int(v);
        let ph = &self.phi;
        let (psi, p2, p3, p4) = (e(&ph.psi), e(&ph.phi2), e(&ph.phi3), e(&ph.phi4));
        let (x0, y0) = (e(&self.x0), e(&self.y0));
        let inv4y0 = (n(4) * &y0).inv()?;
        let a1 = &psi * &inv4y0;
        let a2 = (&psi * &p2 * alpha + n(2) * &p3) * &inv4y0 * p2.inv()?;
        let a3 = (n(2) * &p2 * &p3 * alpha - &p4) * (n(2) * &y0 * p2.square()).inv()?;
        let xs = UniPoly::new(&l, vec![x0.clone(), l.one(), alpha.clone()]);
        let ys = UniPoly::new(&l, vec![y0, a1, a2, a3]);
        let (f0, g0) = (e(self.surface.f_coeff(0)), e(self.surface.g_coeff(0)));
        let ecub = &(&(&ys * &ys) - &xs.pow(3)) - &(&xs.scale(&f0) + &UniPoly::constant(g0));
        let s_star = if ecub.is_zero() {
            // the limit curve lies in the singular fiber: use its group parameter
            let d = match &fiber.kind {
                CurveKind::Nodal { singular_x } => e(singular_x),
                CurveKind::Cuspidal => l.zero(),
                CurveKind::Smooth => {
                    return Err(Error::IdentityFailed("limit curve inside a smooth fiber".into()))
                }
            };
            if p4.is_zero() {
                return Ok(CurvePoint::Identity);
            }
            -(e(&ph.phi5).checked_div(&((&x0 - &d).pow(5) * &p4))?)
        } else {
            if (0..5).any(|i| !ecub.coeff(i).is_zero()) {
                return Err(Error::IdentityFailed("limit sextic not divisible by s^5".into()));
            }
            let (e5, e6) = (ecub.coeff(5), ecub.coeff(6));
            if e6.is_zero() {
                return Ok(CurvePoint::Identity);
            }
            -(e5.checked_div(&e6)?)
        };
        let x = xs.eval(&s_star);
        let y = ys.eval(&s_star);
        let down = |v: Elem| -> Result<Elem> {
            if v.field() == self.field() {
                return Ok(v);
            }
            v.to_base()
                .ok_or_else(|| Error::IdentityFailed("limit point not defined over k".into()))
        };
        Ok(CurvePoint::Affine(down(x)?, down(y)?))
    }

    /// Count the (−1)-curves through Q: the points of F4 = F5 = F6 = 0.
    pub fn minus_one_scheme(&self) -> Result<MinusOneScheme> {
        let k = self.field().clone();
        let fs = [&self.f[4], &self.f[5], &self.f[6]];
        let mut res = vec![];
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let r = resultant_q(fs[i], fs[j])?;
            if !r.is_zero() {
                res.push(r);
            }
        }
        if res.is_empty() {
            for lam in 1..=4 {
                let comb = fs[1] + &fs[2].scale(&k.int(lam));
                for other in [fs[0], &(fs[0] + &fs[2].scale(&k.int(lam)))] {
                    let r = resultant_q(other, &comb)?;
                    if !r.is_zero() {
                        res.push(r);
                    }
                }
                if !res.is_empty() {
                    break;
                }
            }
        }
        if res.is_empty() {
            return Err(Error::PositiveDimensional);
        }
        let mut r = res[0].clone();
        for x in &res[1..] {
            r = gcd(&r, x)?;
        }
        let mut out = MinusOneScheme {
            distinct: 0,
            with_multiplicity: 0,
            parts: vec![],
            rational: vec![],
        };
        if r.degree().unwrap_or(0) == 0 {
            return Ok(out);
        }
        let mut work = vec![squarefree_part(&r)?];
        while let Some(m) = work.pop() {
            let deg = m.degree().unwrap();
            let (root, field) = if deg == 1 {
                let m = m.monic()?;
                (-m.coeff(0), k.clone())
            } else {
                let fld = Field::quotient(&m, "p")?;
                (fld.generator().unwrap(), fld)
            };
            let specs: Vec<UniPoly> = fs.iter().map(|f| f.specialize_p(&root)).collect();
            if specs.iter().all(|s| s.is_zero()) {
                return Err(Error::PositiveDimensional);
            }
            let step = || -> std::result::Result<(UniPoly, UniPoly), AlgError> {
                let mut g = UniPoly::zero(&field);
                for s in &specs {
                    g = gcd(&g, s)?;
                }
                let sq = if g.degree().unwrap_or(0) == 0 {
                    g.clone()
                } else {
                    squarefree_part(&g)?
                };
                Ok((g, sq))
            };
            match step() {
                Ok((g, sq)) => {
                    let dq = sq.degree().unwrap_or(0);
                    out.distinct += deg * dq;
                    out.with_multiplicity += deg * g.degree().unwrap_or(0);
                    let prime_field = matches!(k.kind(), FieldKind::Rationals | FieldKind::Prime(_));
                    if deg == 1 && dq > 0 && prime_field {
                        for qv in rational_roots(&sq)? {
                            out.rational.push((root.clone(), qv));
                        }
                    }
                    out.parts.push((m, g));
                }
                Err(AlgError::ZeroDivisor(split)) => {
                    let (a, b) = *split;
                    work.push(a);
                    work.push(b);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Ok(out)
    }

    /// Factor G over the ground field using deg_q G ≤ 2.
    pub fn components(&self) -> Result<Vec<ComponentDesc>> {
        let k = self.field().clone();
        let (c1, c2, c3, c4) = (&self.c[1], &self.c[2], &self.c[3], &self.c[4]);
        let lin = UniPoly::new(&k, vec![c4.clone(), c3.clone(), c2.clone()]);
        let rhs = UniPoly::new(
            &k,
            (5..=9).rev().map(|i| self.c[i].clone()).collect::<Vec<_>>(),
        );
        let mut out = vec![];
        if !c1.is_zero() {
            let disc = &(&lin * &lin) + &rhs.scale(&(k.int(4) * c1));
            match poly_sqrt(&disc)? {
                SqrtResult::Square(s) => {
                    let two_c1 = UniPoly::constant(k.int(2) * c1);
                    let mk = |s: &UniPoly| {
                        let b = -&(&lin - s);
                        let factor = BiPoly::from_q_coeffs(&k, &[-&b, two_c1.clone()]);
                        ComponentDesc {
                            factor,
                            class: ComponentClass::GraphOverP {
                                a: two_c1.clone(),
                                b,
                            },
                            multiplicity: 1,
                        }
                    };
                    if s.is_zero() {
                        let mut c = mk(&s);
                        c.multiplicity = 2;
                        out.push(c);
                    } else {
                        out.push(mk(&s));
                        out.push(mk(&-&s));
                    }
                }
                SqrtResult::NonSquare { geometrically_split } => out.push(ComponentDesc {
                    factor: self.g.clone(),
                    class: ComponentClass::QuadraticCover {
                        disc,
                        geometrically_split,
                    },
                    multiplicity: 1,
                }),
            }
            return Ok(out);
        }
        // G = lin·q − rhs
        let g = gcd(&lin, &rhs)?;
        let a = lin.exact_div(&g)?;
        let b = rhs.exact_div(&g)?;
        out.push(ComponentDesc {
            factor: BiPoly::from_q_coeffs(&k, &[-&b, a.clone()]),
            class: ComponentClass::GraphOverP { a, b },
            multiplicity: 1,
        });
        if g.degree().unwrap_or(0) > 0 {
            for (m, mult) in squarefree_decomposition(&g)? {
                for piece in self.split_lines(&m)? {
                    out.push(ComponentDesc {
                        factor: BiPoly::from_p_poly(&piece),
                        class: ComponentClass::VerticalLines { m: piece },
                        multiplicity: mult,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Split m so that the lines over the roots of each piece share one σ-image class.
    fn split_lines(&self, m: &UniPoly) -> Result<Vec<UniPoly>> {
        let f5 = &self.f[5];
        let f6 = &self.f[6];
        let w = &(&f5.partial_q() * f6) - &(&f6.partial_q() * f5);
        let mut pieces = vec![m.clone()];
        for test in [f5, f6, &w] {
            let mut next = vec![];
            for piece in pieces {
                let mut g = piece.clone();
                for cf in test.q_coeffs() {
                    g = gcd(&g, &cf)?;
                }
                if g.degree().unwrap_or(0) == 0 || g.degree() == piece.degree() {
                    next.push(piece);
                } else {
                    next.push(piece.exact_div(&g)?.monic()?);
                    next.push(g);
                }
            }
            pieces = next;
        }
        Ok(pieces)
    }

    fn vanishes_on(&self, f: &BiPoly, comp: &ComponentDesc) -> Result<bool> {
        Ok(match &comp.class {
            ComponentClass::GraphOverP { a, b } => f.restrict_to_graph(a, b).is_zero(),
            ComponentClass::VerticalLines { m } => {
                let mut ok = true;
                for cf in f.q_coeffs() {
                    ok &= cf.rem(m)?.is_zero();
                }
                ok
            }
            ComponentClass::QuadraticCover { .. } => rem_q(f, &comp.factor)?.is_zero(),
        })
    }

    /// Whether σ contracts the component into a fiber.
    pub fn vertical_test(&self, comp: &ComponentDesc) -> Result<Image> {
        let k = self.field();
        let z5 = self.vanishes_on(&self.f[5], comp)?;
        let z6 = self.vanishes_on(&self.f[6], comp)?;
        match (z5, z6) {
            (true, true) => return Err(Error::BothVanish),
            (true, false) => return Ok(Image::VerticalOver(k.zero(), k.one())),
            (false, true) => return Ok(Image::VerticalOver(k.one(), k.zero())),
            _ => {}
        }
        let h = &comp.factor;
        let (hp, hq) = (h.partial_p(), h.partial_q());
        let d = |f: &BiPoly| &(&f.partial_p() * &hq) - &(&f.partial_q() * &hp);
        let w = &(&d(&self.f[5]) * &self.f[6]) - &(&d(&self.f[6]) * &self.f[5]);
        if !self.vanishes_on(&w, comp)? {
            return Ok(Image::Horizontal);
        }
        let samples = self.sample_points(comp, if k.characteristic() == 0 { 1 } else { 6 })?;
        let mut image: Option<Image> = None;
        for (p, q) in samples {
            let f5 = self.f[5].eval(&p, &q);
            let f6 = self.f[6].eval(&p, &q);
            let here = if f6.is_zero() {
                let l = f6.field();
                Image::VerticalOver(l.one(), l.zero())
            } else {
                Image::VerticalOver(-(f5.checked_div(&f6)?), f6.field().one())
            };
            match &image {
                None => image = Some(here),
                Some(prev) if prev.field_eq(&here) && *prev != here => return Ok(Image::Horizontal),
                _ => {}
            }
        }
        let img = image.ok_or_else(|| Error::IdentityFailed("no sample point on component".into()))?;
        Ok(img.to_ground(k))
    }

    /// Points of a component where F5, F6 are not both zero, over K when possible.
    pub fn sample_points(&self, comp: &ComponentDesc, want: usize) -> Result<Vec<(Elem, Elem)>> {
        let k = self.field().clone();
        let mut out = vec![];
        let good = |p: &Elem, q: &Elem| {
            !(self.f[5].eval(p, q).is_zero() && self.f[6].eval(p, q).is_zero())
        };
        let cands = small_elements(&k, 64);
        match &comp.class {
            ComponentClass::GraphOverP { a, b } => {
                for p in &cands {
                    let av = a.eval(p);
                    if av.is_zero() {
                        continue;
                    }
                    let q = b.eval(p).checked_div(&av)?;
                    if good(p, &q) {
                        out.push((p.clone(), q));
                    }
                    if out.len() >= want {
                        break;
                    }
                }
            }
            ComponentClass::VerticalLines { m } => {
                let root = if m.degree() == Some(1) {
                    -m.monic()?.coeff(0)
                } else {
                    Field::quotient(m, "p")?.generator().unwrap()
                };
                let l = root.field().clone();
                for q in small_elements(&l, 64) {
                    if good(&root, &q) && self.f[6].eval(&root, &q).inv().is_ok() {
                        out.push((root.clone(), q));
                    }
                    if out.len() >= want {
                        break;
                    }
                }
            }
            ComponentClass::QuadraticCover { .. } => {
                for p in &cands {
                    let hq = comp.factor.specialize_p(p);
                    if hq.degree() != Some(2) {
                        continue;
                    }
                    let finite = k.characteristic() != 0;
                    let roots = rational_roots(&hq).unwrap_or_default();
                    if !roots.is_empty() {
                        for q in roots {
                            if good(p, &q) {
                                out.push((p.clone(), q));
                            }
                        }
                    } else if !finite {
                        if let Ok(ext) = Field::quotient(&hq, "q") {
                            let q = ext.generator().unwrap();
                            let pe = ext.embed(p)?;
                            if good(&pe, &q) {
                                out.push((pe, q));
                            }
                        }
                    }
                    if out.len() >= want {
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Whether σ maps the component into the fiber through Q.
    pub fn maps_to_q(&self, comp: &ComponentDesc) -> Result<bool> {
        Ok(self.vertical_test(comp)?.is_over_zero())
    }
}

impl Image {
    fn field_eq(&self, o: &Image) -> bool {
        match (self, o) {
            (Image::VerticalOver(a, _), Image::VerticalOver(b, _)) => a.field() == b.field(),
            _ => true,
        }
    }

    fn to_ground(self, k: &Field) -> Image {
        match self {
            Image::VerticalOver(z, w) if z.field() != k => match (z.to_base(), w.to_base()) {
                (Some(z), Some(w)) => Image::VerticalOver(z, w),
                _ => Image::VerticalOver(z, w),
            },
            other => other,
        }
    }
}

/// Small elements 0, 1, −1, 2, −2, … of a field (all of 𝔽_p when p is small).
pub fn small_elements(k: &Field, n: usize) -> Vec<Elem> {
    let mut out = vec![k.zero()];
    let mut i = 1i64;
    let cap = match k.characteristic() {
        0 => n,
        p => n.min(p as usize),
    };
    while out.len() < cap {
        for v in [k.int(i), k.int(-i)] {
            if out.len() < cap && !out.contains(&v) {
                out.push(v);
            }
        }
        i += 1;
    }
    out
}

/// Remainder of f on division in q by h, whose leading q-coefficient is a constant.
fn rem_q(f: &BiPoly, h: &BiPoly) -> Result<BiPoly> {
    let k = f.field();
    let hc = h.q_coeffs();
    let dh = hc.len() - 1;
    let lead = hc[dh].coeff(0);
    if hc[dh].degree() != Some(0) {
        return Err(AlgError::Unsupported("divisor must be monic in q up to a constant".into()).into());
    }
    let inv = lead.inv()?;
    let mut r = f.clone();
    while let Some(dr) = r.degree_q() {
        let dr = dr as usize;
        if dr < dh {
            break;
        }
        let top = r.q_coeffs()[dr].scale(&inv);
        let mut sub = BiPoly::zero(k);
        for (j, c) in hc.iter().enumerate() {
            let prod = &top * c;
            let mut cs = vec![UniPoly::zero(k); dr - dh + j + 1];
            cs[dr - dh + j] = prod;
            sub = &sub + &BiPoly::from_q_coeffs(k, &cs);
        }
        r = &r - &sub;
    }
    Ok(r)
}

enum SqrtResult {
    Square(UniPoly),
    NonSquare { geometrically_split: bool },
}

fn poly_sqrt(d: &UniPoly) -> Result<SqrtResult> {
    let k = d.field();
    let Some(deg) = d.degree() else {
        return Ok(SqrtResult::Square(d.clone()));
    };
    let lc = d.lc().unwrap().clone();
    let sq_lc = lc.sqrt()?;
    if deg == 0 {
        return Ok(match sq_lc {
            Some(r) => SqrtResult::Square(UniPoly::constant(r)),
            None => SqrtResult::NonSquare {
                geometrically_split: true,
            },
        });
    }
    let parts = squarefree_decomposition(d)?;
    if parts.iter().any(|(_, m)| m % 2 == 1) {
        return Ok(SqrtResult::NonSquare {
            geometrically_split: false,
        });
    }
    let s0 = parts
        .iter()
        .fold(UniPoly::one(k), |acc, (f, m)| &acc * &f.pow(*m as u32 / 2));
    Ok(match sq_lc {
        Some(r) => SqrtResult::Square(s0.scale(&r)),
        None => SqrtResult::NonSquare {
            geometrically_split: true,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq() -> Field {
        Field::rationals()
    }

    fn build(field: &Field, f: &[i64; 5], g: &[i64; 7], x0: i64, y0: i64) -> CQ5Data {
        let s = Dp1Surface::from_ints(field, f, g).unwrap();
        let q = WeightedPoint::affine(field.int(x0), field.int(y0), field.zero());
        CQ5Data::build(&s, &q).unwrap()
    }

    // f = α z²w², g = ε z⁶ + δ z³w³ + β² w⁶ with β=5, α=2, δ=3, ε=1
    fn ex44i() -> CQ5Data {
        build(&qq(), &[0, 0, 2, 0, 0], &[25, 0, 0, 3, 0, 0, 1], 0, 5)
    }

    #[test]
    fn lift_kills_low_coefficients() {
        let d = build(&qq(), &[1, 2, 0, -1, 3], &[4, 1, 0, 2, 0, -1, 1], 0, 2);
        for i in 0..4 {
            assert!(d.f[i].is_zero(), "F{i} = {}", d.f[i]);
        }
        let p23 = d.phi.phi2.pow(3);
        assert_eq!(d.f[4].scale(&p23), d.g);
    }

    #[test]
    fn example_44i_curve_and_f5() {
        let d = ex44i();
        let k = qq();
        // G ∝ (3p² + 2) q
        let want = BiPoly::from_q_coeffs(&k, &[UniPoly::zero(&k), UniPoly::from_ints(&k, &[2, 0, 3])]);
        let lc = d.g.coeff(2, 1);
        assert_eq!(d.g.scale(&(k.int(3) * lc.inv().unwrap())), want);
        assert_eq!(d.f[5], BiPoly::term(k.int(3), 1, 2));
        let comps = d.components().unwrap();
        let images: Vec<Image> = comps.iter().map(|c| d.vertical_test(c).unwrap()).collect();
        assert_eq!(comps.len(), 2);
        assert!(images.iter().any(|i| i.is_over_zero()));
        assert!(images.iter().any(|i| i.is_horizontal()));
    }

    #[test]
    fn sigma_lies_on_surface() {
        let d = ex44i();
        let k = qq();
        // on the horizontal component 3p² + 2 = 0 over ℚ(√−6/3): use q free on the
        // vertical component q = 0 instead, σ = Q there
        let pt = d.sigma(&k.int(3), &k.zero()).unwrap();
        assert_eq!(pt, WeightedPoint::affine(k.zero(), k.int(5), k.zero()));
    }

    #[test]
    fn omega_nodal_alpha1_is_minus_four_q() {
        // y² = (x−1)²(x+2) at t = 0: f0 = −3, g0 = 2; Q = (2, 2)
        let k = qq();
        let d = build(&k, &[-3, 1, 0, 0, 1], &[2, 0, 1, 0, 0, 0, 1], 2, 2);
        let om = d.omega_points().unwrap();
        let a1 = OmegaPoint::AlphaRoot(k.rat(1, 16).unwrap());
        assert!(om.contains(&a1));
        let fib = d.fiber();
        let got = d.sigma_at_omega(&a1).unwrap();
        assert_eq!(
            got,
            CurvePoint::Affine(k.rat(3137, 3136).unwrap(), k.rat(-97, 175616).unwrap())
        );
        assert_eq!(got, fib.mul(-4, &d.q_point()).unwrap());
        for w in om.iter().filter(|w| **w != a1) {
            assert_eq!(d.sigma_at_omega(w).unwrap(), fib.mul(-5, &d.q_point()).unwrap());
        }
    }

    #[test]
    fn omega_smooth_and_cusp() {
        let k = qq();
        let d = build(&k, &[1, 2, 0, 1, 0], &[1, 1, 0, 3, 0, 0, 1], 0, 1);
        let m5 = d.fiber().mul(-5, &d.q_point()).unwrap();
        for w in d.omega_points().unwrap() {
            assert_eq!(d.sigma_at_omega(&w).unwrap(), m5);
        }
        let d = build(&k, &[0, 1, 0, 0, 1], &[0, 0, 1, 0, 0, 0, 1], 1, 1);
        let om = d.omega_points().unwrap();
        assert_eq!(om, vec![OmegaPoint::AlphaRoot(k.rat(1, 4).unwrap())]);
        assert_eq!(
            d.sigma_at_omega(&om[0]).unwrap(),
            d.fiber().mul(-4, &d.q_point()).unwrap()
        );
    }

    #[test]
    fn example_73_nine_curves() {
        let d = build(&qq(), &[0; 5], &[16, 0, 0, 0, 0, 0, 243], 0, 4);
        assert!(d.is_order_three());
        let s = d.minus_one_scheme().unwrap();
        assert_eq!(s.distinct, 9);
        let comps = d.components().unwrap();
        for c in &comps {
            assert!(d.maps_to_q(c).unwrap());
        }
    }

    #[test]
    fn rem_q_matches_graph_restriction() {
        let k = qq();
        let h = BiPoly::from_q_coeffs(&k, &[UniPoly::from_ints(&k, &[1, 0, -1]), UniPoly::zero(&k), UniPoly::one(&k)]);
        let f = &h * &BiPoly::p(&k);
        assert!(rem_q(&f, &h).unwrap().is_zero());
        assert!(!rem_q(&BiPoly::q(&k), &h).unwrap().is_zero());
    }
}
