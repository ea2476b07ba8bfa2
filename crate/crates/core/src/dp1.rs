//! Surfaces y² = x³ + f(z,w)x + g(z,w) in ℙ(2,3,1,1) with deg f = 4, deg g = 6.

use std::fmt;

use serde::Serialize;

use crate::exactalg::{gcd, pgl2_act, squarefree_decomposition, squarefree_part, AlgError};
use crate::exactalg::{BinaryForm, Elem, Field, Matrix2, UniPoly};
use crate::weier::{CurvePoint, WeierCurve};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dp1Surface {
    field: Field,
    f: BinaryForm,
    g: BinaryForm,
}

/// A point (x:y:z:w) scaled so that z = 1, else w = 1, else it is 𝒪 = (1:1:0:0).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeightedPoint {
    pub x: Elem,
    pub y: Elem,
    pub z: Elem,
    pub w: Elem,
}

/// The curve x = qz² + pzw + x0w², y = cz³ + bz²w + azw² + y0w³ through (x0:y0:0:1).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SectionCurve {
    pub q: Elem,
    pub p: Elem,
    pub x0: Elem,
    pub c: Elem,
    pub b: Elem,
    pub a: Elem,
    pub y0: Elem,
}

/// Numbers of nodal (simple root of Δ) and cuspidal (double root) fibers,
/// and the multiplicity of Δ at (1:0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiberCensus {
    pub nodal: usize,
    pub cuspidal: usize,
    pub infinity_multiplicity: usize,
}

/// A surface moved so that a chosen point lies over (0:1), together with
/// the matrix M such that S′ = S∘M.
#[derive(Clone, Debug)]
pub struct Normalized {
    pub surface: Dp1Surface,
    pub point: WeightedPoint,
    pub matrix: Matrix2,
}

impl WeightedPoint {
    pub fn new(x: Elem, y: Elem, z: Elem, w: Elem) -> Result<WeightedPoint> {
        let f = x.field().clone();
        if !z.is_zero() || !w.is_zero() {
            let lam = if !z.is_zero() { z.inv()? } else { w.inv()? };
            let l2 = lam.square();
            let l3 = &l2 * &lam;
            return Ok(WeightedPoint {
                x: &x * &l2,
                y: &y * &l3,
                z: &z * &lam,
                w: &w * &lam,
            });
        }
        if x.is_zero() || y.is_zero() || x.pow(3) != y.square() {
            return Err(Error::InvalidPoint(
                "a point with z = w = 0 must be the base point (1:1:0:0)".into(),
            ));
        }
        Ok(WeightedPoint {
            x: f.one(),
            y: f.one(),
            z: f.zero(),
            w: f.zero(),
        })
    }

    /// The point (x:y:t:1).
    pub fn affine(x: Elem, y: Elem, t: Elem) -> WeightedPoint {
        let one = x.field().one();
        WeightedPoint::new(x, y, t, one).unwrap()
    }

    pub fn base_point(f: &Field) -> WeightedPoint {
        WeightedPoint {
            x: f.one(),
            y: f.one(),
            z: f.zero(),
            w: f.zero(),
        }
    }

    pub fn is_base_point(&self) -> bool {
        self.z.is_zero() && self.w.is_zero()
    }

    pub fn field(&self) -> &Field {
        self.x.field()
    }

    /// The point on its fiber y² = x³ + f(z,w)x + g(z,w) in these coordinates.
    pub fn on_fiber(&self) -> CurvePoint {
        CurvePoint::Affine(self.x.clone(), self.y.clone())
    }

    pub fn coords(&self) -> [&Elem; 4] {
        [&self.x, &self.y, &self.z, &self.w]
    }

    pub fn max_bits(&self) -> u64 {
        self.coords().iter().map(|c| c.bits()).max().unwrap()
    }
}

impl fmt::Display for WeightedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} : {} : {} : {})", self.x, self.y, self.z, self.w)
    }
}

impl SectionCurve {
    pub fn point_at(&self, t: &Elem) -> WeightedPoint {
        let x = &self.q * &t.square() + &self.p * t + &self.x0;
        let y = &self.c * &t.pow(3) + &self.b * &t.square() + &self.a * t + &self.y0;
        WeightedPoint::affine(x, y, t.clone())
    }

    /// The point over (1:0): (q : c : 1 : 0).
    pub fn point_at_infinity(&self) -> WeightedPoint {
        let f = self.q.field();
        WeightedPoint::new(self.q.clone(), self.c.clone(), f.one(), f.zero()).unwrap()
    }
}

impl Dp1Surface {
    pub fn new(f: BinaryForm, g: BinaryForm) -> Result<Dp1Surface> {
        if f.degree() != 4 || g.degree() != 6 {
            return Err(Error::InvalidPoint("f must be a quartic and g a sextic".into()));
        }
        if f.field() != g.field() {
            return Err(AlgError::FieldMismatch("f and g".into()).into());
        }
        let c = f.field().characteristic();
        if c != 0 && c < 5 {
            return Err(Error::FieldUnsupported(format!("characteristic {c}")));
        }
        let s = Dp1Surface {
            field: f.field().clone(),
            f,
            g,
        };
        if s.discriminant().is_zero() {
            return Err(Error::DegenerateSurface);
        }
        Ok(s)
    }

    pub fn from_ints(field: &Field, f: &[i64; 5], g: &[i64; 7]) -> Result<Dp1Surface> {
        Dp1Surface::new(BinaryForm::from_ints(field, f), BinaryForm::from_ints(field, g))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn f(&self) -> &BinaryForm {
        &self.f
    }

    pub fn g(&self) -> &BinaryForm {
        &self.g
    }

    /// f_i: coefficient of z^i w^(4-i).
    pub fn f_coeff(&self, i: usize) -> &Elem {
        self.f.coeff(i)
    }

    pub fn g_coeff(&self, i: usize) -> &Elem {
        self.g.coeff(i)
    }

    /// Δ = 4f³ + 27g², a form of degree 12.
    pub fn discriminant(&self) -> BinaryForm {
        let k = |n| self.field.int(n);
        let f3 = self.f.mul(&self.f).mul(&self.f).scale(&k(4));
        let g2 = self.g.mul(&self.g).scale(&k(27));
        f3.add(&g2)
    }

    pub fn contains(&self, p: &WeightedPoint) -> bool {
        if p.is_base_point() {
            return true;
        }
        let fz = self.f.eval(&p.z, &p.w);
        let gz = self.g.eval(&p.z, &p.w);
        p.y.square() == p.x.pow(3) + &fz * &p.x + gz
    }

    /// Fiber over (z:w).
    pub fn fiber(&self, z: &Elem, w: &Elem) -> WeierCurve {
        WeierCurve::new(self.f.eval(z, w), self.g.eval(z, w))
    }

    /// Fiber through a point, in the point's own normalization.
    pub fn fiber_of(&self, p: &WeightedPoint) -> WeierCurve {
        self.fiber(&p.z, &p.w)
    }

    /// Smoothness: no nodal fiber whose node satisfies f′x + g′ = 0 and no
    /// cuspidal fiber with g′ = 0, checked in both affine charts of ℙ¹.
    pub fn is_smooth(&self) -> Result<bool> {
        for chart in [false, true] {
            let (f, g) = if chart {
                (self.f.dehomogenize_at_infinity(), self.g.dehomogenize_at_infinity())
            } else {
                (self.f.dehomogenize(), self.g.dehomogenize())
            };
            let disc = if chart {
                self.discriminant().dehomogenize_at_infinity()
            } else {
                self.discriminant().dehomogenize()
            };
            let k = |n| self.field.int(n);
            let (df, dg) = (f.derivative(), g.derivative());
            let w = &(&f * &dg).scale(&k(2)) - &(&df * &g).scale(&k(3));
            let h = gcd(&disc, &w)?;
            if h.degree().unwrap_or(0) == 0 {
                continue;
            }
            let fg = gcd(&f, &g)?;
            if fg.is_zero() {
                return Ok(false);
            }
            let sh = squarefree_part(&h).map_err(|_| Error::NotSmooth)?;
            let sfg = if fg.degree().unwrap_or(0) == 0 {
                fg.clone()
            } else {
                squarefree_part(&fg).map_err(|_| Error::NotSmooth)?
            };
            if !sh.rem(&sfg)?.is_zero() {
                return Ok(false);
            }
            if gcd(&h, &dg)?.degree().unwrap_or(0) > 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn fiber_census(&self) -> Result<FiberCensus> {
        let disc = self.discriminant().dehomogenize();
        let deg = disc.degree().unwrap_or(0);
        let mut census = FiberCensus {
            nodal: 0,
            cuspidal: 0,
            infinity_multiplicity: 12 - deg,
        };
        let parts = squarefree_decomposition(&disc).map_err(|e| match e {
            AlgError::InseparableCase => Error::SmoothnessViolated,
            e => e.into(),
        })?;
        for (fac, m) in parts {
            let d = fac.degree().unwrap();
            match m {
                1 => census.nodal += d,
                2 => census.cuspidal += d,
                _ => return Err(Error::SmoothnessViolated),
            }
        }
        match census.infinity_multiplicity {
            0 => {}
            1 => census.nodal += 1,
            2 => census.cuspidal += 1,
            _ => return Err(Error::SmoothnessViolated),
        }
        Ok(census)
    }

    /// Apply (z,w) ↦ (z,w)·M to both forms.
    pub fn transform(&self, m: &Matrix2) -> Result<Dp1Surface> {
        Ok(Dp1Surface {
            field: self.field.clone(),
            f: pgl2_act(m, &self.f)?,
            g: pgl2_act(m, &self.g)?,
        })
    }

    /// Move Q to lie over (0:1); for Q over (1:0) the matrix is the coordinate swap.
    pub fn move_to_zero(&self, q: &WeightedPoint) -> Result<Normalized> {
        if q.is_base_point() {
            return Err(Error::IsBasePoint);
        }
        if !self.contains(q) {
            return Err(Error::NotOnSurface);
        }
        let k = &self.field;
        let m = if q.w.is_zero() {
            Matrix2::new(k.zero(), k.one(), q.z.clone(), q.w.clone())
        } else {
            Matrix2::new(k.one(), k.zero(), q.z.clone(), q.w.clone())
        };
        let surface = self.transform(&m)?;
        let point = WeightedPoint::affine(q.x.clone(), q.y.clone(), k.zero());
        debug_assert!(surface.contains(&point));
        Ok(Normalized {
            surface,
            point,
            matrix: m,
        })
    }

    /// −y² + x³ + fx + g restricted to the section curve, a sextic in (z, w).
    pub fn section_surface_form(&self, c: &SectionCurve) -> BinaryForm {
        let field = &self.field;
        let x = UniPoly::new(field, vec![c.x0.clone(), c.p.clone(), c.q.clone()]);
        let y = UniPoly::new(
            field,
            vec![c.y0.clone(), c.a.clone(), c.b.clone(), c.c.clone()],
        );
        let f = self.f.dehomogenize();
        let g = self.g.dehomogenize();
        let r = &(&(&x.pow(3) + &(&f * &x)) + &g) - &(&y * &y);
        BinaryForm::from_dehomogenized(&r, 6)
    }

    pub fn is_minus_one_curve(&self, c: &SectionCurve) -> bool {
        self.section_surface_form(c).is_zero()
    }

    /// The surface with f̃(z,w) = f(−z, w−z), g̃(z,w) = g(−z, w−z).
    pub fn involution(&self) -> Dp1Surface {
        let k = &self.field;
        let m = Matrix2::new(k.int(-1), k.int(-1), k.zero(), k.one());
        self.transform(&m).expect("invertible matrix")
    }

    pub fn embed(&self, to: &Field) -> Result<Dp1Surface> {
        Ok(Dp1Surface {
            field: to.clone(),
            f: self.f.embed(to)?,
            g: self.g.embed(to)?,
        })
    }
}

impl fmt::Display for Dp1Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y^2 = x^3 + ({})*x + ({}) over {}", self.f, self.g, self.field)
    }
}

impl Normalized {
    /// A point of the normalized surface, expressed on the original surface.
    pub fn to_original(&self, p: &WeightedPoint) -> Result<WeightedPoint> {
        if p.is_base_point() {
            return Ok(p.clone());
        }
        let (z, w) = self.matrix.apply(&p.z, &p.w);
        WeightedPoint::new(p.x.clone(), p.y.clone(), z, w)
    }

    /// A point of the original surface, expressed on the normalized one.
    pub fn from_original(&self, p: &WeightedPoint) -> Result<WeightedPoint> {
        if p.is_base_point() {
            return Ok(p.clone());
        }
        let inv = self.matrix.inverse()?;
        let (z, w) = inv.apply(&p.z, &p.w);
        WeightedPoint::new(p.x.clone(), p.y.clone(), z, w)
    }

    pub fn x0(&self) -> &Elem {
        &self.point.x
    }

    pub fn y0(&self) -> &Elem {
        &self.point.y
    }
}
