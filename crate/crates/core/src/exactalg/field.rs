use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::{self, UniPoly};
use super::AlgError;

/// A field, shared by reference among its elements.
#[derive(Clone)]
pub struct Field(Arc<FieldKind>);

pub enum FieldKind {
    Rationals,
    /// 𝔽_p with p ≥ 5.
    Prime(u64),
    /// base[var]/(modulus); the modulus is monic and squarefree but need not
    /// be irreducible, so inversion can expose a zero divisor.
    Quotient { modulus: UniPoly, var: String },
    /// base(var) with base ℚ or 𝔽_p.
    Function { base: Field, var: String },
}

static RATIONALS: OnceLock<Field> = OnceLock::new();

impl Field {
    pub fn rationals() -> Field {
        RATIONALS
            .get_or_init(|| Field(Arc::new(FieldKind::Rationals)))
            .clone()
    }

    pub fn prime(p: u64) -> Result<Field, AlgError> {
        if p < 5 || p >= 1 << 62 || !is_prime_u64(p) {
            return Err(AlgError::InvalidField(format!(
                "{p} is not a prime in [5, 2^62)"
            )));
        }
        Ok(Field(Arc::new(FieldKind::Prime(p))))
    }

    /// K[var]/(m) for a squarefree m of positive degree over K.
    pub fn quotient(modulus: &UniPoly, var: &str) -> Result<Field, AlgError> {
        match modulus.degree() {
            None | Some(0) => {
                return Err(AlgError::InvalidField(
                    "quotient modulus must have positive degree".into(),
                ))
            }
            _ => {}
        }
        let m = modulus.monic()?;
        let g = poly::gcd(&m, &m.derivative())?;
        if g.degree() != Some(0) {
            return Err(AlgError::InvalidField(format!(
                "quotient modulus {} is not squarefree",
                m.fmt_var(var)
            )));
        }
        Ok(Field(Arc::new(FieldKind::Quotient {
            modulus: m,
            var: var.to_string(),
        })))
    }

    /// Rational function field base(var); base must be ℚ or 𝔽_p.
    pub fn function(base: &Field, var: &str) -> Result<Field, AlgError> {
        match base.kind() {
            FieldKind::Rationals | FieldKind::Prime(_) => Ok(Field(Arc::new(FieldKind::Function {
                base: base.clone(),
                var: var.to_string(),
            }))),
            _ => Err(AlgError::Unsupported(
                "function fields are built over Q or F_p only".into(),
            )),
        }
    }

    pub fn kind(&self) -> &FieldKind {
        &self.0
    }

    pub fn base(&self) -> Option<&Field> {
        match self.kind() {
            FieldKind::Quotient { modulus, .. } => Some(modulus.field()),
            FieldKind::Function { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn modulus(&self) -> Option<&UniPoly> {
        match self.kind() {
            FieldKind::Quotient { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            FieldKind::Rationals => 0,
            FieldKind::Prime(p) => *p,
            _ => self.base().unwrap().characteristic(),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self.kind() {
            FieldKind::Rationals | FieldKind::Function { .. } => false,
            FieldKind::Prime(_) => true,
            FieldKind::Quotient { .. } => self.base().unwrap().is_finite(),
        }
    }

    pub fn is_rationals(&self) -> bool {
        matches!(self.kind(), FieldKind::Rationals)
    }

    /// Whether `sub` is this field or one of the fields it is built over.
    pub fn contains_field(&self, sub: &Field) -> bool {
        if self == sub {
            return true;
        }
        match self.base() {
            Some(b) => b.contains_field(sub),
            None => false,
        }
    }

    fn elem(&self, val: Val) -> Elem {
        Elem {
            field: self.clone(),
            val,
        }
    }

    pub fn zero(&self) -> Elem {
        self.from_bigint(&BigInt::zero())
    }

    pub fn one(&self) -> Elem {
        self.from_bigint(&BigInt::one())
    }

    pub fn int(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self.kind() {
            FieldKind::Rationals => self.elem(Val::Rat(BigRational::from_integer(n.clone()))),
            FieldKind::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p)).to_u64().unwrap();
                self.elem(Val::Mod(r))
            }
            FieldKind::Quotient { .. } => {
                let c = self.base().unwrap().from_bigint(n);
                self.elem(Val::Ext(UniPoly::constant(c)))
            }
            FieldKind::Function { base, .. } => {
                let c = base.from_bigint(n);
                self.elem(Val::Frac(UniPoly::constant(c), UniPoly::one(base)))
            }
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Elem, AlgError> {
        if let FieldKind::Rationals = self.kind() {
            return Ok(self.elem(Val::Rat(r.clone())));
        }
        let n = self.from_bigint(r.numer());
        let d = self.from_bigint(r.denom());
        n.checked_div(&d)
    }

    pub fn rat(&self, n: i64, d: i64) -> Result<Elem, AlgError> {
        if d == 0 {
            return Err(AlgError::DivisionByZero);
        }
        self.from_rational(&BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// The class of the adjoined variable of a quotient or function field.
    pub fn generator(&self) -> Option<Elem> {
        match self.kind() {
            FieldKind::Quotient { modulus, .. } => {
                let x = UniPoly::x(modulus.field());
                Some(self.elem(Val::Ext(x.rem_monic(modulus))))
            }
            FieldKind::Function { base, .. } => {
                Some(self.elem(Val::Frac(UniPoly::x(base), UniPoly::one(base))))
            }
            _ => None,
        }
    }

    /// Image of a polynomial over the base field, reduced modulo the modulus.
    pub fn from_base_poly(&self, a: &UniPoly) -> Result<Elem, AlgError> {
        match self.kind() {
            FieldKind::Quotient { modulus, .. } => {
                let a = a.embed(modulus.field())?;
                Ok(self.elem(Val::Ext(a.rem_monic(modulus))))
            }
            FieldKind::Function { base, .. } => {
                let a = a.embed(base)?;
                Ok(self.elem(Val::Frac(a, UniPoly::one(base))))
            }
            _ => Err(AlgError::Unsupported(
                "polynomial image needs a quotient or function field".into(),
            )),
        }
    }

    /// The quotient n/d in a function field.
    pub fn fraction(&self, n: &UniPoly, d: &UniPoly) -> Result<Elem, AlgError> {
        match self.kind() {
            FieldKind::Function { base, .. } => {
                let (n, d) = frac_canon(n.embed(base)?, d.embed(base)?)?;
                Ok(self.elem(Val::Frac(n, d)))
            }
            _ => Err(AlgError::Unsupported("fraction needs a function field".into())),
        }
    }

    /// Embed an element of a subfield (this field, or any field it is built over).
    pub fn embed(&self, e: &Elem) -> Result<Elem, AlgError> {
        if &e.field == self {
            return Ok(e.clone());
        }
        match self.kind() {
            FieldKind::Quotient { modulus, .. } => {
                let c = modulus.field().embed(e)?;
                Ok(self.elem(Val::Ext(UniPoly::constant(c))))
            }
            FieldKind::Function { base, .. } => {
                let c = base.embed(e)?;
                Ok(self.elem(Val::Frac(UniPoly::constant(c), UniPoly::one(base))))
            }
            FieldKind::Prime(_) if e.field.is_rationals() => {
                self.from_rational(e.as_rational().unwrap())
            }
            _ => Err(AlgError::FieldMismatch(format!("{} is not a subfield of {}", e.field, self))),
        }
    }

    /// Parse a scalar in the text format "-12", "3/4" (ℚ and 𝔽_p only).
    pub fn parse(&self, s: &str) -> Result<Elem, AlgError> {
        let r = parse_rational(s)?;
        match self.kind() {
            FieldKind::Rationals | FieldKind::Prime(_) => self.from_rational(&r),
            _ => Err(AlgError::Unsupported(format!("cannot parse scalars of {self}"))),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational, AlgError> {
    let s = s.trim();
    let bad = || AlgError::Parse(format!("bad scalar {s:?}"));
    let int = |t: &str| -> Result<BigInt, AlgError> {
        if t.is_empty() || t.contains(char::is_whitespace) || t.starts_with('+') && t.len() == 1 {
            return Err(bad());
        }
        BigInt::from_str(t).map_err(|_| bad())
    };
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(int(s)?)),
        Some((n, d)) => {
            let d = int(d)?;
            if d.is_negative() || d.to_string().starts_with('+') {
                return Err(bad());
            }
            if d.is_zero() {
                return Err(AlgError::DivisionByZero);
            }
            Ok(BigRational::new(int(n)?, d))
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (self.kind(), other.kind()) {
            (FieldKind::Rationals, FieldKind::Rationals) => true,
            (FieldKind::Prime(p), FieldKind::Prime(q)) => p == q,
            (
                FieldKind::Quotient { modulus: m1, .. },
                FieldKind::Quotient { modulus: m2, .. },
            ) => m1.field() == m2.field() && m1 == m2,
            (
                FieldKind::Function { base: b1, var: v1 },
                FieldKind::Function { base: b2, var: v2 },
            ) => b1 == b2 && v1 == v2,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            FieldKind::Rationals => write!(f, "QQ"),
            FieldKind::Prime(p) => write!(f, "GF({p})"),
            FieldKind::Quotient { modulus, var } => {
                write!(f, "{}[{var}]/({})", modulus.field(), modulus.fmt_var(var))
            }
            FieldKind::Function { base, var } => write!(f, "{base}({var})"),
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone)]
enum Val {
    Rat(BigRational),
    Mod(u64),
    Ext(UniPoly),
    Frac(UniPoly, UniPoly),
}

/// An element in canonical form: reduced fraction, least residue, remainder
/// modulo the modulus, or a fraction of coprime polynomials with monic
/// denominator.
#[derive(Clone)]
pub struct Elem {
    field: Field,
    val: Val,
}

fn frac_canon(n: UniPoly, d: UniPoly) -> Result<(UniPoly, UniPoly), AlgError> {
    if d.is_zero() {
        return Err(AlgError::DivisionByZero);
    }
    if n.is_zero() {
        let one = UniPoly::one(d.field());
        return Ok((n, one));
    }
    let g = poly::gcd(&n, &d)?;
    let (n, d) = if g.degree() == Some(0) {
        (n, d)
    } else {
        (n.exact_div(&g)?, d.exact_div(&g)?)
    };
    let lc = d.lc().unwrap().inv()?;
    Ok((n.scale(&lc), d.scale(&lc)))
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    if a == 0 {
        return Some(0);
    }
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod(a, (p + 1) / 4, p));
    }
    // Tonelli–Shanks
    let (mut q, mut s) = (p - 1, 0u32);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

fn bigint_isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

impl Elem {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.val {
            Val::Rat(r) => r.is_zero(),
            Val::Mod(a) => *a == 0,
            Val::Ext(a) => a.is_zero(),
            Val::Frac(n, _) => n.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        self == &self.field.one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.val {
            Val::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match &self.val {
            Val::Mod(a) => Some(*a),
            _ => None,
        }
    }

    /// Representative polynomial of a quotient-field element.
    pub fn as_ext_poly(&self) -> Option<&UniPoly> {
        match &self.val {
            Val::Ext(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_fraction(&self) -> Option<(&UniPoly, &UniPoly)> {
        match &self.val {
            Val::Frac(n, d) => Some((n, d)),
            _ => None,
        }
    }

    /// For extension elements that are constants, the base-field value.
    pub fn to_base(&self) -> Option<Elem> {
        match &self.val {
            Val::Ext(a) if a.degree().unwrap_or(0) == 0 => Some(a.coeff(0)),
            Val::Frac(n, d) if n.degree().unwrap_or(0) == 0 && d.degree() == Some(0) => {
                Some(n.coeff(0))
            }
            _ => None,
        }
    }

    fn check(&self, o: &Elem) {
        assert!(
            self.field == o.field,
            "field mismatch: {} vs {}",
            self.field,
            o.field
        );
    }

    fn plus(&self, o: &Elem) -> Elem {
        self.check(o);
        let val = match (&self.val, &o.val) {
            (Val::Rat(a), Val::Rat(b)) => Val::Rat(a + b),
            (Val::Mod(a), Val::Mod(b)) => {
                let p = self.field.characteristic();
                Val::Mod(((*a as u128 + *b as u128) % p as u128) as u64)
            }
            (Val::Ext(a), Val::Ext(b)) => Val::Ext(a + b),
            (Val::Frac(an, ad), Val::Frac(bn, bd)) => {
                let (n, d) = if ad == bd {
                    frac_canon(an + bn, ad.clone())
                } else {
                    frac_canon(&(an * bd) + &(bn * ad), ad * bd)
                }
                .expect("function field arithmetic over Q or F_p");
                Val::Frac(n, d)
            }
            _ => unreachable!(),
        };
        self.field.elem(val)
    }

    fn times(&self, o: &Elem) -> Elem {
        self.check(o);
        let val = match (&self.val, &o.val) {
            (Val::Rat(a), Val::Rat(b)) => Val::Rat(a * b),
            (Val::Mod(a), Val::Mod(b)) => Val::Mod(mulmod(*a, *b, self.field.characteristic())),
            (Val::Ext(a), Val::Ext(b)) => {
                Val::Ext((a * b).rem_monic(self.field.modulus().unwrap()))
            }
            (Val::Frac(an, ad), Val::Frac(bn, bd)) => {
                let (n, d) = frac_canon(an * bn, ad * bd)
                    .expect("function field arithmetic over Q or F_p");
                Val::Frac(n, d)
            }
            _ => unreachable!(),
        };
        self.field.elem(val)
    }

    fn negated(&self) -> Elem {
        let val = match &self.val {
            Val::Rat(a) => Val::Rat(-a),
            Val::Mod(a) => {
                let p = self.field.characteristic();
                Val::Mod(if *a == 0 { 0 } else { p - a })
            }
            Val::Ext(a) => Val::Ext(-a),
            Val::Frac(n, d) => Val::Frac(-n, d.clone()),
        };
        self.field.elem(val)
    }

    /// Multiplicative inverse. In a quotient by a reducible modulus a
    /// non-invertible nonzero element yields `ZeroDivisor` with the split.
    pub fn inv(&self) -> Result<Elem, AlgError> {
        if self.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        let val = match &self.val {
            Val::Rat(a) => Val::Rat(a.recip()),
            Val::Mod(a) => {
                let p = self.field.characteristic();
                Val::Mod(powmod(*a, p - 2, p))
            }
            Val::Ext(a) => {
                let m = self.field.modulus().unwrap();
                let (g, s, _) = poly::xgcd(a, m)?;
                if g.degree() != Some(0) {
                    let g = g.monic()?;
                    let other = m.exact_div(&g)?;
                    return Err(AlgError::ZeroDivisor(Box::new((g, other))));
                }
                let c = g.coeff(0).inv()?;
                Val::Ext(s.scale(&c).rem_monic(m))
            }
            Val::Frac(n, d) => {
                let lc = n.lc().unwrap().inv()?;
                Val::Frac(d.scale(&lc), n.scale(&lc))
            }
        };
        Ok(self.field.elem(val))
    }

    pub fn checked_div(&self, o: &Elem) -> Result<Elem, AlgError> {
        Ok(self * &o.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Elem {
        let mut base = self.clone();
        let mut r = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        r
    }

    pub fn square(&self) -> Elem {
        self * self
    }

    /// Square root in ℚ or 𝔽_p; `None` when the element is not a square.
    pub fn sqrt(&self) -> Result<Option<Elem>, AlgError> {
        match &self.val {
            Val::Rat(r) => {
                let n = bigint_isqrt_exact(r.numer());
                let d = bigint_isqrt_exact(r.denom());
                Ok(match (n, d) {
                    (Some(n), Some(d)) => Some(self.field.elem(Val::Rat(BigRational::new(n, d)))),
                    _ => None,
                })
            }
            Val::Mod(a) => {
                let p = self.field.characteristic();
                Ok(sqrt_mod(*a, p).map(|r| self.field.elem(Val::Mod(r.min(p - r)))))
            }
            _ => Err(AlgError::Unsupported(format!(
                "square roots in {} are not supported",
                self.field
            ))),
        }
    }

    /// Whether the element is a square, when decidable.
    pub fn is_square(&self) -> Result<bool, AlgError> {
        Ok(self.sqrt()?.is_some())
    }

    /// Largest bit size among the integers in the canonical representation.
    pub fn bits(&self) -> u64 {
        match &self.val {
            Val::Rat(r) => r.numer().bits().max(r.denom().bits()),
            Val::Mod(_) => 0,
            Val::Ext(a) => a.coeffs().iter().map(|c| c.bits()).max().unwrap_or(0),
            Val::Frac(n, d) => n
                .coeffs()
                .iter()
                .chain(d.coeffs())
                .map(|c| c.bits())
                .max()
                .unwrap_or(0),
        }
    }

    /// Sign of a rational element.
    pub fn signum(&self) -> Option<i32> {
        self.as_rational().map(|r| match r.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        })
    }

    /// Move an element of a quotient field to a quotient by a factor of its modulus.
    pub fn reduce_to(&self, target: &Field) -> Result<Elem, AlgError> {
        if &self.field == target {
            return Ok(self.clone());
        }
        match (&self.val, target.kind()) {
            (Val::Ext(a), FieldKind::Quotient { .. }) => target.from_base_poly(a),
            _ => target.embed(self),
        }
    }
}

impl PartialEq for Elem {
    fn eq(&self, o: &Elem) -> bool {
        if self.field != o.field {
            return false;
        }
        match (&self.val, &o.val) {
            (Val::Rat(a), Val::Rat(b)) => a == b,
            (Val::Mod(a), Val::Mod(b)) => a == b,
            (Val::Ext(a), Val::Ext(b)) => a == b,
            (Val::Frac(an, ad), Val::Frac(bn, bd)) => an == bn && ad == bd,
            _ => false,
        }
    }
}

impl Eq for Elem {}

impl Hash for Elem {
    fn hash<H: Hasher>(&self, h: &mut H) {
        match &self.val {
            Val::Rat(r) => r.hash(h),
            Val::Mod(a) => a.hash(h),
            Val::Ext(a) => a.hash(h),
            Val::Frac(n, d) => {
                n.hash(h);
                d.hash(h);
            }
        }
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.val {
            Val::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Val::Mod(a) => write!(f, "{a}"),
            Val::Ext(a) => {
                let var = match self.field.kind() {
                    FieldKind::Quotient { var, .. } => var.as_str(),
                    _ => "t",
                };
                if a.degree().unwrap_or(0) == 0 {
                    write!(f, "{}", a.coeff(0))
                } else {
                    write!(f, "({})", a.fmt_var(var))
                }
            }
            Val::Frac(n, d) => {
                let var = match self.field.kind() {
                    FieldKind::Function { var, .. } => var.as_str(),
                    _ => "t",
                };
                if d.degree() == Some(0) {
                    if n.degree().unwrap_or(0) == 0 {
                        write!(f, "{}", n.coeff(0))
                    } else {
                        write!(f, "({})", n.fmt_var(var))
                    }
                } else {
                    write!(f, "({})/({})", n.fmt_var(var), d.fmt_var(var))
                }
            }
        }
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl<'a> $tr<&'a Elem> for &'a Elem {
            type Output = Elem;
            fn $m(self, o: &'a Elem) -> Elem {
                self.$inner(o)
            }
        }
        impl $tr<Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                (&self).$inner(&o)
            }
        }
        impl<'a> $tr<&'a Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: &'a Elem) -> Elem {
                (&self).$inner(o)
            }
        }
        impl<'a> $tr<Elem> for &'a Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                self.$inner(&o)
            }
        }
    };
}

impl Elem {
    fn minus(&self, o: &Elem) -> Elem {
        self.plus(&o.negated())
    }
}

forward_binop!(Add, add, plus);
forward_binop!(Sub, sub, minus);
forward_binop!(Mul, mul, times);

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.negated()
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.negated()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Elem {
        Field::rationals().parse(s).unwrap()
    }

    #[test]
    fn rational_canonical_form() {
        assert_eq!(q("6/4").to_string(), "3/2");
        assert_eq!(q("-6/4").to_string(), "-3/2");
        assert_eq!(q("-12").to_string(), "-12");
        assert_eq!((q("1/3") + q("2/3")).to_string(), "1");
    }

    #[test]
    fn parse_rejects_malformed() {
        let qq = Field::rationals();
        assert!(matches!(qq.parse("1//2"), Err(AlgError::Parse(_))));
        assert!(matches!(qq.parse(""), Err(AlgError::Parse(_))));
        assert!(matches!(qq.parse("1/0"), Err(AlgError::DivisionByZero)));
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(q("9/4").sqrt().unwrap().unwrap().to_string(), "3/2");
        assert!(q("2").sqrt().unwrap().is_none());
        let f11 = Field::prime(11).unwrap();
        assert_eq!(f11.int(5).sqrt().unwrap().unwrap().to_string(), "4");
        assert!(f11.int(2).sqrt().unwrap().is_none());
        let f13 = Field::prime(13).unwrap();
        for a in 0..13 {
            if let Some(r) = f13.int(a).sqrt().unwrap() {
                assert_eq!(r.square(), f13.int(a));
            }
        }
    }

    #[test]
    fn prime_field_rejects_small_and_composite() {
        assert!(Field::prime(3).is_err());
        assert!(Field::prime(15).is_err());
        assert!(Field::prime(1_000_000_007).is_ok());
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(q("0").inv(), Err(AlgError::DivisionByZero)));
        let f7 = Field::prime(7).unwrap();
        assert_eq!((f7.int(3) * f7.int(3).inv().unwrap()).to_string(), "1");
    }

    #[test]
    fn quotient_zero_divisor_splits_modulus() {
        let qq = Field::rationals();
        // t^2 - 1 is squarefree but reducible
        let m = UniPoly::from_ints(&qq, &[-1, 0, 1]);
        let k = Field::quotient(&m, "t").unwrap();
        let t = k.generator().unwrap();
        let a = &t - &k.one();
        match a.inv() {
            Err(AlgError::ZeroDivisor(parts)) => {
                let (g, h) = *parts;
                assert_eq!(g.fmt_var("t"), "t - 1");
                assert_eq!(h.fmt_var("t"), "t + 1");
            }
            other => panic!("expected zero divisor, got {other:?}"),
        }
        // t + 2 is a unit
        let b = &t + &k.int(2);
        assert!((&b * &b.inv().unwrap()).is_one());
    }

    #[test]
    fn quotient_rejects_square_modulus() {
        let qq = Field::rationals();
        let m = UniPoly::from_ints(&qq, &[1, 2, 1]);
        assert!(Field::quotient(&m, "t").is_err());
    }

    #[test]
    fn function_field_canonical() {
        let qq = Field::rationals();
        let k = Field::function(&qq, "x").unwrap();
        let x = k.generator().unwrap();
        let one = k.one();
        // (x^2 - 1)/(x - 1) = x + 1
        let a = (&x * &x - &one).checked_div(&(&x - &one)).unwrap();
        assert_eq!(a, &x + &one);
        let b = one.checked_div(&(k.int(2) * &x)).unwrap();
        let (n, d) = b.as_fraction().unwrap();
        assert_eq!(n.fmt_var("x"), "1/2");
        assert_eq!(d.fmt_var("x"), "x");
    }
}
