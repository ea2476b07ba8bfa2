use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Elem, Field};
use super::poly::UniPoly;
use super::AlgError;

/// Sparse polynomial in (p, q); key (i, j) is the exponent of p^i q^j.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    terms: BTreeMap<(u32, u32), Elem>,
}

impl BiPoly {
    pub fn zero(field: &Field) -> BiPoly {
        BiPoly {
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Elem) -> BiPoly {
        BiPoly::term(c, 0, 0)
    }

    pub fn term(c: Elem, i: u32, j: u32) -> BiPoly {
        let mut b = BiPoly::zero(c.field());
        if !c.is_zero() {
            b.terms.insert((i, j), c);
        }
        b
    }

    pub fn p(field: &Field) -> BiPoly {
        BiPoly::term(field.one(), 1, 0)
    }

    pub fn q(field: &Field) -> BiPoly {
        BiPoly::term(field.one(), 0, 1)
    }

    /// Σ_j c_j(p) q^j from the q-coefficient list.
    pub fn from_q_coeffs(field: &Field, cs: &[UniPoly]) -> BiPoly {
        let mut b = BiPoly::zero(field);
        for (j, c) in cs.iter().enumerate() {
            for (i, a) in c.coeffs().iter().enumerate() {
                if !a.is_zero() {
                    b.terms.insert((i as u32, j as u32), a.clone());
                }
            }
        }
        b
    }

    pub fn from_p_poly(a: &UniPoly) -> BiPoly {
        BiPoly::from_q_coeffs(a.field(), std::slice::from_ref(a))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Elem {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn degree_q(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn degree_p(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).max()
    }

    fn insert_add(&mut self, k: (u32, u32), c: Elem) {
        if c.is_zero() {
            return;
        }
        let v = match self.terms.remove(&k) {
            Some(old) => &old + &c,
            None => c,
        };
        if !v.is_zero() {
            self.terms.insert(k, v);
        }
    }

    pub fn scale(&self, c: &Elem) -> BiPoly {
        let mut b = BiPoly::zero(&self.field);
        if c.is_zero() {
            return b;
        }
        for (k, a) in &self.terms {
            b.terms.insert(*k, a * c);
        }
        b
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut r = BiPoly::constant(self.field.one());
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    pub fn eval(&self, p: &Elem, q: &Elem) -> Elem {
        let f = p.field();
        let dp = self.degree_p().unwrap_or(0) as usize;
        let dq = self.degree_q().unwrap_or(0) as usize;
        let mut pp = vec![f.one()];
        for i in 0..dp {
            pp.push(&pp[i] * p);
        }
        let mut qp = vec![f.one()];
        for j in 0..dq {
            qp.push(&qp[j] * q);
        }
        let mut acc = f.zero();
        for ((i, j), c) in &self.terms {
            let c = f.embed(c).expect("evaluation field");
            acc = &acc + &(&c * &(&pp[*i as usize] * &qp[*j as usize]));
        }
        acc
    }

    /// Coefficients of q^j as polynomials in p.
    pub fn q_coeffs(&self) -> Vec<UniPoly> {
        let dq = match self.degree_q() {
            Some(d) => d as usize,
            None => return vec![],
        };
        let mut cols: Vec<Vec<Elem>> = vec![vec![]; dq + 1];
        for ((i, j), c) in &self.terms {
            let col = &mut cols[*j as usize];
            if col.len() <= *i as usize {
                col.resize(*i as usize + 1, self.field.zero());
            }
            col[*i as usize] = c.clone();
        }
        cols.into_iter()
            .map(|c| UniPoly::new(&self.field, c))
            .collect()
    }

    /// Coefficients of p^i as polynomials in q.
    pub fn p_coeffs(&self) -> Vec<UniPoly> {
        self.swap().q_coeffs()
    }

    /// Exchange the roles of p and q.
    pub fn swap(&self) -> BiPoly {
        BiPoly {
            field: self.field.clone(),
            terms: self.terms.iter().map(|((i, j), c)| ((*j, *i), c.clone())).collect(),
        }
    }

    pub fn partial_p(&self) -> BiPoly {
        let mut b = BiPoly::zero(&self.field);
        for ((i, j), c) in &self.terms {
            if *i > 0 {
                b.insert_add((i - 1, *j), c * &self.field.int(*i as i64));
            }
        }
        b
    }

    pub fn partial_q(&self) -> BiPoly {
        let mut b = BiPoly::zero(&self.field);
        for ((i, j), c) in &self.terms {
            if *j > 0 {
                b.insert_add((*i, j - 1), c * &self.field.int(*j as i64));
            }
        }
        b
    }

    /// Substitute p = θ, giving a polynomial in q over θ's field.
    pub fn specialize_p(&self, theta: &Elem) -> UniPoly {
        let f = theta.field();
        let cs = self.q_coeffs().iter().map(|c| c.eval(theta)).collect();
        UniPoly::new(f, cs)
    }

    /// Substitute q = θ, giving a polynomial in p over θ's field.
    pub fn specialize_q(&self, theta: &Elem) -> UniPoly {
        self.swap().specialize_p(theta)
    }

    /// A^n·F(p, B/A) with n = deg_q F: the restriction of F to the curve A q = B.
    pub fn restrict_to_graph(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        let cs = self.q_coeffs();
        let n = cs.len();
        let mut acc = UniPoly::zero(&self.field);
        for (j, c) in cs.iter().enumerate() {
            acc = &acc + &(&(c * &b.pow(j as u32)) * &a.pow((n - 1 - j) as u32));
        }
        acc
    }

    pub fn embed(&self, to: &Field) -> Result<BiPoly, AlgError> {
        let mut b = BiPoly::zero(to);
        for (k, c) in &self.terms {
            b.terms.insert(*k, to.embed(c)?);
        }
        Ok(b)
    }

    pub fn max_bits(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).max().unwrap_or(0)
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = vec![];
        for ((i, j), c) in self.terms.iter().rev() {
            let mono = |v: &str, k: u32| match k {
                0 => String::new(),
                1 => v.to_string(),
                _ => format!("{v}^{k}"),
            };
            let m = [mono("p", *i), mono("q", *j)]
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
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut b = self.clone();
        for (k, c) in &o.terms {
            b.insert_add(*k, c.clone());
        }
        b
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut b = self.clone();
        for (k, c) in &o.terms {
            b.insert_add(*k, -c);
        }
        b
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut b = BiPoly::zero(&self.field);
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &o.terms {
                b.insert_add((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        b
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.scale(&-self.field.one())
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, o: BiPoly) -> BiPoly {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $m(self, o: &'a BiPoly) -> BiPoly {
                (&self).$m(o)
            }
        }
        impl<'a> $tr<BiPoly> for &'a BiPoly {
            type Output = BiPoly;
            fn $m(self, o: BiPoly) -> BiPoly {
                self.$m(&o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

/// Determinant of a square matrix over K[p] by fraction-free Bareiss elimination.
pub fn det_poly(mut a: Vec<Vec<UniPoly>>, field: &Field) -> Result<UniPoly, AlgError> {
    let n = a.len();
    if n == 0 {
        return Ok(UniPoly::one(field));
    }
    let mut sign = false;
    let mut prev = UniPoly::one(field);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return Ok(UniPoly::zero(field)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev)?;
            }
            a[i][k] = UniPoly::zero(field);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    Ok(if sign { -&d } else { d })
}

/// Resultant with respect to q of two polynomials with coefficients in K[p].
pub fn resultant_q(a: &BiPoly, b: &BiPoly) -> Result<UniPoly, AlgError> {
    let f = a.field();
    let (Some(m), Some(n)) = (a.degree_q(), b.degree_q()) else {
        return Ok(UniPoly::zero(f));
    };
    let (m, n) = (m as usize, n as usize);
    let ac = a.q_coeffs();
    let bc = b.q_coeffs();
    if m == 0 && n == 0 {
        return Ok(UniPoly::one(f));
    }
    let size = m + n;
    let mut rows = vec![];
    // Sylvester matrix: descending powers of q
    for r in 0..n {
        let mut row = vec![UniPoly::zero(f); size];
        for (k, c) in ac.iter().enumerate() {
            row[r + m - k] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![UniPoly::zero(f); size];
        for (k, c) in bc.iter().enumerate() {
            row[r + n - k] = c.clone();
        }
        rows.push(row);
    }
    det_poly(rows, f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Field, BiPoly, BiPoly) {
        let qq = Field::rationals();
        (qq.clone(), BiPoly::p(&qq), BiPoly::q(&qq))
    }

    #[test]
    fn resultant_examples() {
        let (qq, p, q) = setup();
        let r = resultant_q(&(&q - &p), &(&q + &p)).unwrap();
        assert_eq!(r, UniPoly::from_ints(&qq, &[0, 2]));
        let r = resultant_q(&(&q * &q), &(&q - &p)).unwrap();
        assert_eq!(r, UniPoly::from_ints(&qq, &[0, 0, 1]));
        // shared factor q - p
        let a = &(&q - &p) * &(&q + &BiPoly::constant(qq.one()));
        let b = &(&q - &p) * &(&q - &BiPoly::constant(qq.int(3)));
        assert!(resultant_q(&a, &b).unwrap().is_zero());
    }

    #[test]
    fn resultant_matches_univariate_at_specialization() {
        let (qq, p, q) = setup();
        let a = &(&(&q * &q) * &p) + &(&q - &(&p * &p));
        let b = &(&q.pow(3) - &p) + &(&q * &BiPoly::constant(qq.int(2)));
        let r = resultant_q(&a, &b).unwrap();
        for v in -3..4 {
            let pv = qq.int(v);
            let ua = a.specialize_p(&pv);
            let ub = b.specialize_p(&pv);
            if ua.degree() == Some(2) {
                let expect = crate::exactalg::poly::resultant(&ua, &ub).unwrap();
                assert_eq!(r.eval(&pv), expect, "p = {v}");
            }
        }
    }

    #[test]
    fn graph_restriction() {
        let (qq, p, q) = setup();
        // F = q^2 - p on q = p/2 ... A = 2, B = p: 4 F(p, p/2) = p^2 - 4p
        let f = &(&q * &q) - &p;
        let r = f.restrict_to_graph(&UniPoly::from_ints(&qq, &[2]), &UniPoly::from_ints(&qq, &[0, 1]));
        assert_eq!(r, UniPoly::from_ints(&qq, &[0, -4, 1]));
    }
}
