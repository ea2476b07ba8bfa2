use std::fmt;
use std::hash::{Hash, Hasher};

use super::field::{Elem, Field};
use super::poly::{self, UniPoly};
use super::AlgError;

/// Homogeneous form of fixed degree d in (z, w); `coeffs[i]` multiplies z^i w^(d-i).
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    field: Field,
    coeffs: Vec<Elem>,
}

impl BinaryForm {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> BinaryForm {
        assert!(!coeffs.is_empty(), "a binary form needs d+1 coefficients");
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        BinaryForm {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field, degree: usize) -> BinaryForm {
        BinaryForm::new(field, vec![field.zero(); degree + 1])
    }

    pub fn from_ints(field: &Field, cs: &[i64]) -> BinaryForm {
        BinaryForm::new(field, cs.iter().map(|&c| field.int(c)).collect())
    }

    /// Homogenize a polynomial in t = z/w to the given degree.
    pub fn from_dehomogenized(p: &UniPoly, degree: usize) -> BinaryForm {
        assert!(p.degree().map_or(true, |d| d <= degree));
        BinaryForm::new(p.field(), (0..=degree).map(|i| p.coeff(i)).collect())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Elem {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, z: &Elem, w: &Elem) -> Elem {
        let d = self.degree();
        let f = z.field();
        let mut zp = vec![f.one()];
        let mut wp = vec![f.one()];
        for i in 0..d {
            zp.push(&zp[i] * z);
            wp.push(&wp[i] * w);
        }
        let mut acc = f.zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let c = f.embed(c).expect("evaluation field");
                acc = &acc + &(&c * &(&zp[i] * &wp[d - i]));
            }
        }
        acc
    }

    /// F(t, 1).
    pub fn dehomogenize(&self) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.clone())
    }

    /// F(1, s).
    pub fn dehomogenize_at_infinity(&self) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().rev().cloned().collect())
    }

    pub fn scale(&self, c: &Elem) -> BinaryForm {
        BinaryForm::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn embed(&self, to: &Field) -> Result<BinaryForm, AlgError> {
        let cs = self
            .coeffs
            .iter()
            .map(|c| to.embed(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BinaryForm::new(to, cs))
    }

    pub fn add(&self, o: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree(), o.degree());
        let cs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        BinaryForm::new(&self.field, cs)
    }

    pub fn mul(&self, o: &BinaryForm) -> BinaryForm {
        let p = &self.dehomogenize() * &o.dehomogenize();
        BinaryForm::from_dehomogenized(&p, self.degree() + o.degree())
    }

    /// ∂/∂z and ∂/∂w.
    pub fn partials(&self) -> (BinaryForm, BinaryForm) {
        let d = self.degree();
        if d == 0 {
            return (self.clone(), self.clone());
        }
        let f = &self.field;
        let dz = (0..d)
            .map(|i| &self.coeffs[i + 1] * &f.int(i as i64 + 1))
            .collect();
        let dw = (0..d)
            .map(|i| &self.coeffs[i] * &f.int((d - i) as i64))
            .collect();
        (BinaryForm::new(f, dz), BinaryForm::new(f, dw))
    }

    /// Discriminant of a binary quartic by the classical closed formula.
    pub fn quartic_discriminant(&self) -> Elem {
        assert_eq!(self.degree(), 4);
        // a x^4 + b x^3 y + c x^2 y^2 + d x y^3 + e y^4 with x = z
        let (a, b, c, d, e) = (
            &self.coeffs[4],
            &self.coeffs[3],
            &self.coeffs[2],
            &self.coeffs[1],
            &self.coeffs[0],
        );
        let f = &self.field;
        let k = |n: i64| f.int(n);
        let terms = [
            k(256) * a.pow(3) * e.pow(3),
            k(-192) * a.pow(2) * b * d * e.pow(2),
            k(-128) * a.pow(2) * c.pow(2) * e.pow(2),
            k(144) * a.pow(2) * c * d.pow(2) * e,
            k(-27) * a.pow(2) * d.pow(4),
            k(144) * a * b.pow(2) * c * e.pow(2),
            k(-6) * a * b.pow(2) * d.pow(2) * e,
            k(-80) * a * b * c.pow(2) * d * e,
            k(18) * a * b * c * d.pow(3),
            k(16) * a * c.pow(4) * e,
            k(-4) * a * c.pow(3) * d.pow(2),
            k(-27) * b.pow(4) * e.pow(2),
            k(18) * b.pow(3) * c * d * e,
            k(-4) * b.pow(3) * d.pow(3),
            k(-4) * b.pow(2) * c.pow(3) * e,
            b.pow(2) * c.pow(2) * d.pow(2),
        ];
        terms.iter().fold(f.zero(), |acc, t| &acc + t)
    }

    /// Discriminant through Res(F(t,1), F'(t,1)) in whichever chart has full degree.
    pub fn discriminant(&self) -> Result<Elem, AlgError> {
        let n = self.degree();
        let (fp, lead) = if !self.coeffs[n].is_zero() {
            (self.dehomogenize(), self.coeffs[n].clone())
        } else if !self.coeffs[0].is_zero() {
            (self.dehomogenize_at_infinity(), self.coeffs[0].clone())
        } else {
            return Ok(self.field.zero());
        };
        let r = poly::resultant(&fp, &fp.derivative())?.checked_div(&lead)?;
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -r } else { r })
    }
}

impl Hash for BinaryForm {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.coeffs.hash(h);
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut parts = vec![];
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = |v: &str, k: usize| match k {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{k}"),
            };
            let m = [mono("z", i), mono("w", d - i)]
                .into_iter()
                .filter(|s| !s.is_empty())
                .collect::<Vec<_>>()
                .join("*");
            let cs = c.to_string();
            parts.push(match (cs.as_str(), m.is_empty()) {
                (_, true) => cs,
                ("1", false) => m,
                ("-1", false) => format!("-{m}"),
                _ => format!("{cs}*{m}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
        }
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// 2×2 matrix acting on row vectors (z, w).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix2 {
    pub m: [[Elem; 2]; 2],
}

impl Matrix2 {
    pub fn new(a: Elem, b: Elem, c: Elem, d: Elem) -> Matrix2 {
        Matrix2 { m: [[a, b], [c, d]] }
    }

    pub fn identity(f: &Field) -> Matrix2 {
        Matrix2::new(f.one(), f.zero(), f.zero(), f.one())
    }

    pub fn det(&self) -> Elem {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        let e = |i: usize, j: usize| &self.m[i][0] * &o.m[0][j] + &self.m[i][1] * &o.m[1][j];
        Matrix2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn inverse(&self) -> Result<Matrix2, AlgError> {
        let d = self.det();
        if d.is_zero() {
            return Err(AlgError::SingularMatrix);
        }
        let di = d.inv()?;
        Ok(Matrix2::new(
            &self.m[1][1] * &di,
            -&self.m[0][1] * &di,
            -&self.m[1][0] * &di,
            &self.m[0][0] * &di,
        ))
    }

    /// (z, w)·M
    pub fn apply(&self, z: &Elem, w: &Elem) -> (Elem, Elem) {
        (
            z * &self.m[0][0] + w * &self.m[1][0],
            z * &self.m[0][1] + w * &self.m[1][1],
        )
    }
}

/// The form (z, w) ↦ F((z, w)·M).
pub fn pgl2_act(m: &Matrix2, form: &BinaryForm) -> Result<BinaryForm, AlgError> {
    if m.det().is_zero() {
        return Err(AlgError::SingularMatrix);
    }
    let f = form.field();
    let d = form.degree();
    // with w = 1: z' = m00 t + m10, w' = m01 t + m11
    let zl = UniPoly::new(f, vec![m.m[1][0].clone(), m.m[0][0].clone()]);
    let wl = UniPoly::new(f, vec![m.m[1][1].clone(), m.m[0][1].clone()]);
    let mut zp = vec![UniPoly::one(f)];
    let mut wp = vec![UniPoly::one(f)];
    for i in 0..d {
        zp.push(&zp[i] * &zl);
        wp.push(&wp[i] * &wl);
    }
    let mut acc = UniPoly::zero(f);
    for (i, c) in form.coeffs().iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &(&zp[i] * &wp[d - i]).scale(c);
        }
    }
    Ok(BinaryForm::from_dehomogenized(&acc, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn swap_reverses_coefficients() {
        let qq = Field::rationals();
        let f = BinaryForm::from_ints(&qq, &[1, 2, 3, 4, 5]);
        let swap = Matrix2::new(qq.zero(), qq.one(), qq.one(), qq.zero());
        let g = pgl2_act(&swap, &f).unwrap();
        assert_eq!(g, BinaryForm::from_ints(&qq, &[5, 4, 3, 2, 1]));
    }

    #[test]
    fn singular_matrix_rejected() {
        let qq = Field::rationals();
        let f = BinaryForm::from_ints(&qq, &[1, 0, 1]);
        let m = Matrix2::new(qq.one(), qq.int(2), qq.int(2), qq.int(4));
        assert!(matches!(pgl2_act(&m, &f), Err(AlgError::SingularMatrix)));
    }

    #[test]
    fn quartic_discriminant_matches_resultant_route() {
        let qq = Field::rationals();
        for cs in [[1, -3, 0, 2, 5], [0, 1, 0, 0, 1], [2, 0, 7, -1, 3], [4, 1, 0, 0, 0]] {
            let f = BinaryForm::from_ints(&qq, &cs);
            assert_eq!(f.quartic_discriminant(), f.discriminant().unwrap(), "{f}");
        }
    }

    #[test]
    fn display_form() {
        let qq = Field::rationals();
        let f = BinaryForm::from_ints(&qq, &[16, 0, 0, 0, 0, 0, 243]);
        assert_eq!(f.to_string(), "243*z^6 + 16*w^6");
    }
}
