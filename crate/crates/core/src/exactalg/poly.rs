use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Elem, Field, FieldKind};
use super::AlgError;

/// Dense univariate polynomial; `coeffs[i]` multiplies `t^i`, no trailing zeros.
#[derive(Clone)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl UniPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> UniPoly {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &Field) -> UniPoly {
        UniPoly {
            field: field.clone(),
            coeffs: vec![],
        }
    }

    pub fn one(field: &Field) -> UniPoly {
        UniPoly::constant(field.one())
    }

    pub fn constant(c: Elem) -> UniPoly {
        let field = c.field().clone();
        UniPoly::new(&field, vec![c])
    }

    pub fn x(field: &Field) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn monomial(c: Elem, k: usize) -> UniPoly {
        let field = c.field().clone();
        let mut v = vec![field.zero(); k];
        v.push(c);
        UniPoly::new(&field, v)
    }

    pub fn from_ints(field: &Field, cs: &[i64]) -> UniPoly {
        UniPoly::new(field, cs.iter().map(|&c| field.int(c)).collect())
    }

    /// x - r
    pub fn linear_root(r: &Elem) -> UniPoly {
        let f = r.field().clone();
        UniPoly::new(&f, vec![-r, f.one()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn lc(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let mut acc = x.field().zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + &x.field().embed(c).expect("evaluation point field");
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * &self.field.int(i as i64))
            .collect();
        UniPoly::new(&self.field, cs)
    }

    pub fn scale(&self, c: &Elem) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly::new(&self.field, v)
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut r = UniPoly::one(&self.field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(&inner.field);
        for c in self.coeffs.iter().rev() {
            let c = inner.field.embed(c).expect("composition field");
            acc = &(&acc * inner) + &UniPoly::constant(c);
        }
        acc
    }

    /// Same polynomial with coefficients embedded in a larger field.
    pub fn embed(&self, to: &Field) -> Result<UniPoly, AlgError> {
        if &self.field == to {
            return Ok(self.clone());
        }
        let cs = self
            .coeffs
            .iter()
            .map(|c| to.embed(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UniPoly::new(to, cs))
    }

    pub fn monic(&self) -> Result<UniPoly, AlgError> {
        match self.lc() {
            None => Ok(self.clone()),
            Some(c) => Ok(self.scale(&c.inv()?)),
        }
    }

    pub fn divrem(&self, b: &UniPoly) -> Result<(UniPoly, UniPoly), AlgError> {
        let db = b.degree().ok_or(AlgError::DivisionByZero)?;
        let inv = b.lc().unwrap().inv()?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((UniPoly::zero(&self.field), self.clone()));
        }
        let mut q = vec![self.field.zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &inv;
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    r[k + j] = &r[k + j] - &(&c * bj);
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        Ok((UniPoly::new(&self.field, q), UniPoly::new(&self.field, r)))
    }

    pub fn rem(&self, b: &UniPoly) -> Result<UniPoly, AlgError> {
        Ok(self.divrem(b)?.1)
    }

    /// Remainder by a monic polynomial; never fails.
    pub fn rem_monic(&self, m: &UniPoly) -> UniPoly {
        let dm = m.degree().expect("nonzero modulus");
        debug_assert!(m.lc().unwrap().is_one());
        if self.coeffs.len() <= dm {
            return self.clone();
        }
        let mut r = self.coeffs.clone();
        for k in (0..r.len() - dm).rev() {
            let c = r[k + dm].clone();
            if !c.is_zero() {
                for (j, mj) in m.coeffs.iter().enumerate() {
                    r[k + j] = &r[k + j] - &(&c * mj);
                }
            }
        }
        r.truncate(dm);
        UniPoly::new(&self.field, r)
    }

    pub fn exact_div(&self, b: &UniPoly) -> Result<UniPoly, AlgError> {
        let (q, r) = self.divrem(b)?;
        if !r.is_zero() {
            return Err(AlgError::Inexact);
        }
        Ok(q)
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let neg = s.starts_with('-') && !s.contains(' ');
            if neg {
                s.remove(0);
            }
            if s.contains(['+', ' ']) || (s.contains('-') && !neg) {
                s = format!("({s})");
            }
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                out.push_str(&s);
            } else if s == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{s}*{mono}"));
            }
        }
        out
    }
}

impl PartialEq for UniPoly {
    fn eq(&self, o: &UniPoly) -> bool {
        self.coeffs == o.coeffs && (self.is_zero() || self.field == o.field)
    }
}

impl Eq for UniPoly {}

impl Hash for UniPoly {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.coeffs.len().hash(h);
        for c in &self.coeffs {
            c.hash(h);
        }
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("t"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("t"))
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let cs = (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        UniPoly::new(&self.field, cs)
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let cs = (0..n).map(|i| &self.coeff(i) - &o.coeff(i)).collect();
        UniPoly::new(&self.field, cs)
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut cs = vec![self.field.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                cs[i + j] = &cs[i + j] + &(a * b);
            }
        }
        UniPoly::new(&self.field, cs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs.iter().map(|c| -c).collect())
    }
}

// ---- integer polynomial helpers for fraction-free gcd over ℚ ----

fn primitive_int(a: &UniPoly) -> Vec<BigInt> {
    let rats: Vec<&BigRational> = a.coeffs.iter().map(|c| c.as_rational().unwrap()).collect();
    let den = rats
        .iter()
        .fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| r.numer() * (&den / r.denom()))
        .collect();
    primitive_part(ints)
}

fn primitive_part(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

fn trim_int(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Pseudo-remainder up to a nonzero constant factor.
fn prem_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim_int(&mut r);
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap().clone();
        let g = c.gcd(lb);
        let (mr, mb) = (lb / &g, &c / &g);
        for x in r.iter_mut() {
            *x *= &mr;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &mb * bj;
        }
        trim_int(&mut r);
        r = primitive_part(r);
    }
    r
}

fn int_to_rat_poly(field: &Field, v: &[BigInt]) -> UniPoly {
    UniPoly::new(field, v.iter().map(|c| field.from_bigint(c)).collect())
}

fn gcd_rational(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let mut u = primitive_int(a);
    let mut v = primitive_int(b);
    if u.len() < v.len() {
        std::mem::swap(&mut u, &mut v);
    }
    while !v.is_empty() {
        let r = prem_int(&u, &v);
        u = v;
        v = primitive_part(r);
    }
    int_to_rat_poly(&a.field, &u).monic().unwrap()
}

/// Monic gcd; gcd(0, b) = monic(b) and gcd(0, 0) = 0.
pub fn gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly, AlgError> {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.field.is_rationals() {
        return Ok(gcd_rational(a, b));
    }
    let (mut u, mut v) = (a.clone(), b.clone());
    while !v.is_zero() {
        let r = u.rem(&v)?;
        u = v;
        v = r;
    }
    u.monic()
}

/// Extended Euclid: (g, s, t) with s·a + t·b = g (g not normalized).
pub fn xgcd(a: &UniPoly, b: &UniPoly) -> Result<(UniPoly, UniPoly, UniPoly), AlgError> {
    let f = &a.field;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (UniPoly::one(f), UniPoly::zero(f));
    let (mut t0, mut t1) = (UniPoly::zero(f), UniPoly::one(f));
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        r0 = std::mem::replace(&mut r1, r);
        let s = &s0 - &(&q * &s1);
        s0 = std::mem::replace(&mut s1, s);
        let t = &t0 - &(&q * &t1);
        t0 = std::mem::replace(&mut t1, t);
    }
    Ok((r0, s0, t0))
}

/// Resultant over a field by the Euclidean recurrence.
pub fn resultant(a: &UniPoly, b: &UniPoly) -> Result<Elem, AlgError> {
    let f = a.field.clone();
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Ok(f.zero());
    };
    if db == 0 {
        return Ok(b.coeff(0).pow(da as u64));
    }
    if da == 0 {
        return Ok(a.coeff(0).pow(db as u64));
    }
    let r = a.rem(b)?;
    let Some(dr) = r.degree() else {
        return Ok(f.zero());
    };
    let mut res = resultant(b, &r)? * b.lc().unwrap().pow((da - dr) as u64);
    if da % 2 == 1 && db % 2 == 1 {
        res = -res;
    }
    Ok(res)
}

/// Discriminant (-1)^{n(n-1)/2} Res(f, f')/lc(f).
pub fn discriminant(f: &UniPoly) -> Result<Elem, AlgError> {
    let n = f.degree().ok_or(AlgError::DivisionByZero)?;
    let r = resultant(f, &f.derivative())?.checked_div(f.lc().unwrap())?;
    Ok(if (n * (n.saturating_sub(1)) / 2) % 2 == 1 { -r } else { r })
}

/// Yun's squarefree decomposition: monic factors with multiplicities,
/// ascending in multiplicity, unit dropped.
pub fn squarefree_decomposition(f: &UniPoly) -> Result<Vec<(UniPoly, usize)>, AlgError> {
    let Some(d) = f.degree() else {
        return Err(AlgError::DivisionByZero);
    };
    if d == 0 {
        return Ok(vec![]);
    }
    let f = f.monic()?;
    let df = f.derivative();
    if df.is_zero() {
        return Err(AlgError::InseparableCase);
    }
    let a0 = gcd(&f, &df)?;
    let mut b = f.exact_div(&a0)?;
    let c = df.exact_div(&a0)?;
    let mut dd = &c - &b.derivative();
    let mut out = vec![];
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = gcd(&b, &dd)?;
        let nb = b.exact_div(&a)?;
        let c = dd.exact_div(&a)?;
        dd = &c - &nb.derivative();
        if a.degree().unwrap_or(0) > 0 {
            out.push((a, i));
        }
        b = nb;
        i += 1;
    }
    let prod = out
        .iter()
        .fold(UniPoly::one(&f.field), |acc, (a, k)| &acc * &a.pow(*k as u32));
    if prod != f {
        return Err(AlgError::InseparableCase);
    }
    Ok(out)
}

/// Product of the distinct monic irreducible factors.
pub fn squarefree_part(f: &UniPoly) -> Result<UniPoly, AlgError> {
    match squarefree_decomposition(f) {
        Ok(parts) => Ok(parts
            .into_iter()
            .fold(UniPoly::one(&f.field), |acc, (a, _)| &acc * &a)),
        Err(AlgError::InseparableCase) => radical(&f.monic()?),
        Err(e) => Err(e),
    }
}

/// rad f = lcm(f / gcd(f, f′), rad gcd(f, f′)), taking p-th roots over 𝔽_p when f′ = 0.
fn radical(f: &UniPoly) -> Result<UniPoly, AlgError> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(UniPoly::one(&f.field));
    }
    let df = f.derivative();
    if df.is_zero() {
        let FieldKind::Prime(p) = f.field.kind() else {
            return Err(AlgError::InseparableCase);
        };
        let p = *p as usize;
        let cs = f.coeffs.iter().step_by(p).cloned().collect();
        return radical(&UniPoly::new(&f.field, cs));
    }
    let g = gcd(f, &df)?;
    let a = f.exact_div(&g)?;
    let b = radical(&g)?;
    let l = gcd(&a, &b)?;
    (&a * &b).exact_div(&l)?.monic()
}

/// Roots in the coefficient field (ℚ or 𝔽_p), without multiplicity, sorted.
pub fn rational_roots(f: &UniPoly) -> Result<Vec<Elem>, AlgError> {
    if f.is_zero() {
        return Err(AlgError::Unsupported("roots of the zero polynomial".into()));
    }
    if f.is_constant() {
        return Ok(vec![]);
    }
    match f.field.kind() {
        FieldKind::Rationals => Ok(rational_roots_q(f)),
        FieldKind::Prime(p) => prime_roots(f, *p),
        _ => Err(AlgError::Unsupported(format!(
            "root finding over {} is not supported",
            f.field
        ))),
    }
}

fn rational_roots_q(f: &UniPoly) -> Vec<Elem> {
    let field = f.field.clone();
    let sq = squarefree_part(f).expect("characteristic zero");
    let mut roots = vec![];
    // split off a root at zero so the monic transform has nonzero constant term
    let mut g = primitive_int(&sq);
    if g[0].is_zero() {
        roots.push(field.zero());
        g.remove(0);
    }
    let n = g.len() - 1;
    if n == 0 {
        return roots;
    }
    // h(y) = a^{n-1} g(y/a) is monic; rational roots of g are integer roots of h over a
    let a = g[n].clone();
    let mut h = vec![BigInt::zero(); n + 1];
    let mut pw = BigInt::one();
    for i in (0..n).rev() {
        h[i] = &g[i] * &pw;
        pw *= &a;
    }
    h[n] = BigInt::one();
    let bound = h.iter().take(n).map(|c| c.abs()).max().unwrap() + BigInt::one();
    let eval = |y: &BigInt| h.iter().rev().fold(BigInt::zero(), |acc, c| acc * y + c);
    for y in integer_roots_monic(&h, &bound) {
        if eval(&y).is_zero() {
            roots.push(field.from_rational(&BigRational::new(y, a.clone())).unwrap());
        }
    }
    roots.sort_by(|x, y| x.as_rational().cmp(&y.as_rational()));
    roots.dedup();
    roots
}

/// Candidate integer roots of a squarefree monic integer polynomial via
/// roots mod a good prime lifted by Newton iteration.
fn integer_roots_monic(h: &[BigInt], bound: &BigInt) -> Vec<BigInt> {
    let mut p = 5u64;
    let field = loop {
        if super::field::is_prime_u64(p) {
            let fp = Field::prime(p).unwrap();
            let hp = UniPoly::new(&fp, h.iter().map(|c| fp.from_bigint(c)).collect());
            if gcd(&hp, &hp.derivative()).unwrap().degree() == Some(0) {
                break fp;
            }
        }
        p += 2;
    };
    let hp = UniPoly::new(&field, h.iter().map(|c| field.from_bigint(c)).collect());
    let modp = prime_roots(&hp, p).unwrap();
    let target = bound * 2 + 1;
    let eval = |y: &BigInt, m: &BigInt| -> BigInt {
        h.iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * y + c).mod_floor(m))
    };
    let deval = |y: &BigInt, m: &BigInt| -> BigInt {
        let n = h.len() - 1;
        (1..=n).rev().fold(BigInt::zero(), |acc, i| {
            (acc * y + &h[i] * BigInt::from(i)).mod_floor(m)
        })
    };
    let mut out = vec![];
    for r in modp {
        let mut y = BigInt::from(r.as_residue().unwrap());
        let mut m = BigInt::from(p);
        while m < target {
            m = &m * &m;
            let fy = eval(&y, &m);
            let dy = deval(&y, &m);
            let inv = modinv(&dy, &m).expect("simple root mod p");
            y = (&y - fy * inv).mod_floor(&m);
        }
        let half = &m / 2;
        if y > half {
            y -= &m;
        }
        out.push(y);
    }
    out
}

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// x^e mod m over a field.
fn powmod_poly(base: &UniPoly, mut e: u64, m: &UniPoly) -> Result<UniPoly, AlgError> {
    let mut r = UniPoly::one(&base.field);
    let mut b = base.rem(m)?;
    while e > 0 {
        if e & 1 == 1 {
            r = (&r * &b).rem(m)?;
        }
        e >>= 1;
        if e > 0 {
            b = (&b * &b).rem(m)?;
        }
    }
    Ok(r)
}

fn prime_roots(f: &UniPoly, p: u64) -> Result<Vec<Elem>, AlgError> {
    let field = f.field.clone();
    let f = f.monic()?;
    if p <= 1 << 12 {
        let mut v: Vec<Elem> = (0..p as i64)
            .map(|a| field.int(a))
            .filter(|a| f.eval(a).is_zero())
            .collect();
        v.sort_by_key(|e| e.as_residue());
        return Ok(v);
    }
    // product of linear factors: gcd(f, x^p - x), split by (x+a)^((p-1)/2) - 1
    let x = UniPoly::x(&field);
    let xp = powmod_poly(&x, p, &f)?;
    let mut g = gcd(&f, &(&xp - &x))?;
    let mut roots = vec![];
    if g.eval(&field.zero()).is_zero() {
        roots.push(field.zero());
        g = g.exact_div(&x)?;
    }
    let mut stack = vec![g];
    let mut a = 1i64;
    while let Some(h) = stack.pop() {
        match h.degree() {
            Some(0) | None => continue,
            Some(1) => {
                roots.push(-&h.coeff(0));
                continue;
            }
            _ => {}
        }
        loop {
            let shifted = UniPoly::new(&field, vec![field.int(a), field.one()]);
            a += 1;
            let w = &powmod_poly(&shifted, (p - 1) / 2, &h)? - &UniPoly::one(&field);
            let d = gcd(&h, &w)?;
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && dd < h.degree().unwrap() {
                stack.push(h.exact_div(&d)?);
                stack.push(d);
                break;
            }
        }
    }
    roots.sort_by_key(|e| e.as_residue());
    Ok(roots)
}

/// Integer square root test for a nonnegative rational; used by point searches.
pub fn rational_is_square(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    fn qp(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(&Field::rationals(), cs)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd(&qp(&[-1, 0, 1]), &qp(&[-1, 1])).unwrap(), qp(&[-1, 1]));
        assert_eq!(gcd(&qp(&[0, 0, 0, 1]), &qp(&[0, 0, 1])).unwrap(), qp(&[0, 0, 1]));
        assert_eq!(gcd(&qp(&[]), &qp(&[4, 2])).unwrap(), qp(&[2, 1]));
        assert!(gcd(&qp(&[]), &qp(&[])).unwrap().is_zero());
        let f7 = Field::prime(7).unwrap();
        let a = UniPoly::from_ints(&f7, &[-1, 0, 1]);
        let b = UniPoly::from_ints(&f7, &[1, 1]);
        assert_eq!(gcd(&a, &b).unwrap(), b);
    }

    #[test]
    fn gcd_rational_larger() {
        // (t^2+1)(t-3)^2 and (t^2+1)(t+5)
        let common = qp(&[1, 0, 1]);
        let a = &common * &qp(&[-3, 1]).pow(2);
        let b = &common * &qp(&[5, 1]);
        assert_eq!(gcd(&a, &b).unwrap(), common);
    }

    #[test]
    fn squarefree_example() {
        // (t-1)^2 (t+2)
        let f = &qp(&[-1, 1]).pow(2) * &qp(&[2, 1]);
        let d = squarefree_decomposition(&f).unwrap();
        assert_eq!(d, vec![(qp(&[2, 1]), 1), (qp(&[-1, 1]), 2)]);
    }

    #[test]
    fn squarefree_inseparable() {
        let f5 = Field::prime(5).unwrap();
        // t^5 - 1 = (t-1)^5 in char 5
        let f = UniPoly::from_ints(&f5, &[-1, 0, 0, 0, 0, 1]);
        assert!(matches!(squarefree_decomposition(&f), Err(AlgError::InseparableCase)));
        assert_eq!(squarefree_part(&f).unwrap(), UniPoly::from_ints(&f5, &[-1, 1]));
        // (t-1)^5 (t+1)^2 t
        let g = &(&f * &UniPoly::from_ints(&f5, &[1, 1]).pow(2)) * &UniPoly::x(&f5);
        let want = &(&UniPoly::from_ints(&f5, &[-1, 1]) * &UniPoly::from_ints(&f5, &[1, 1]))
            * &UniPoly::x(&f5);
        assert_eq!(squarefree_part(&g).unwrap(), want);
    }

    #[test]
    fn rational_roots_examples() {
        let qq = Field::rationals();
        let r = rational_roots(&qp(&[-1, -1, 2])).unwrap();
        assert_eq!(r, vec![qq.rat(-1, 2).unwrap(), qq.int(1)]);
        assert!(rational_roots(&qp(&[1, 0, 1])).unwrap().is_empty());
        let f5 = Field::prime(5).unwrap();
        let r = rational_roots(&UniPoly::from_ints(&f5, &[1, 0, 1])).unwrap();
        assert_eq!(r, vec![f5.int(2), f5.int(3)]);
    }

    #[test]
    fn rational_roots_large_coefficients() {
        let qq = Field::rationals();
        // (7t - 123456789)(3t + 1000003)(t^2 + 2) t
        let f = &(&(&qp(&[-123456789, 7]) * &qp(&[1000003, 3])) * &qp(&[2, 0, 1])) * &qp(&[0, 1]);
        let r = rational_roots(&f).unwrap();
        assert_eq!(
            r,
            vec![qq.rat(-1000003, 3).unwrap(), qq.zero(), qq.rat(123456789, 7).unwrap()]
        );
    }

    #[test]
    fn large_prime_roots() {
        let fp = Field::prime(1_000_003).unwrap();
        let f = &(&UniPoly::from_ints(&fp, &[-5, 1]) * &UniPoly::from_ints(&fp, &[-77, 1]))
            * &UniPoly::from_ints(&fp, &[2, 0, 1]);
        let r = rational_roots(&f).unwrap();
        assert!(r.contains(&fp.int(5)) && r.contains(&fp.int(77)));
        for x in &r {
            assert!(f.eval(x).is_zero());
        }
    }

    #[test]
    fn resultant_and_discriminant() {
        let qq = Field::rationals();
        // Res(t^2 - 2, t - 1) = -1
        assert_eq!(resultant(&qp(&[-2, 0, 1]), &qp(&[-1, 1])).unwrap(), qq.int(-1));
        // disc(t^3 + a t + b) = -4a^3 - 27 b^2 with a=-1,b=1: 4 - 27 = -23
        assert_eq!(discriminant(&qp(&[1, -1, 0, 1])).unwrap(), qq.int(-23));
        assert_eq!(discriminant(&qp(&[1, 0, 1])).unwrap(), qq.int(-4));
    }

    #[test]
    fn fmt_poly() {
        assert_eq!(qp(&[-1, 0, 2]).fmt_var("p"), "2*p^2 - 1");
        assert_eq!(qp(&[0, -1]).fmt_var("p"), "-p");
    }
}
