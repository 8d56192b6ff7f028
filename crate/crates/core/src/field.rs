//! Exact scalar fields: prime fields, finite extensions given by a monic
//! irreducible modulus over another finite field, and the rationals.
//!
//! Finite-field elements are stored as indices. For `F_p` the index is the
//! residue in `[0, p)`. For an extension of degree `d` over a base of size
//! `Q` the index is `sum c_i * Q^i`, where `c_i` is the index of the
//! coefficient of `T^i` in the canonical representative of degree `< d`.
//! Multiplication in extensions goes through discrete-log tables built once
//! when the field is constructed.

use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::factor;
use crate::poly::Poly;

/// Largest finite extension (number of elements) we build tables for.
pub const MAX_EXTENSION_SIZE: u64 = 1 << 20;

/// A field element without its field. Arithmetic goes through [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Fin(u32),
    Rat(BigRational),
}

#[derive(Clone)]
pub struct Field(Arc<Inner>);

enum Inner {
    Prime { p: u32 },
    Extension(Ext),
    Rationals,
}

struct Ext {
    base: Field,
    modulus: Poly,
    degree: usize,
    base_size: u32,
    size: u32,
    var: String,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a supported prime")));
        }
        Ok(Field(Arc::new(Inner::Prime { p: p as u32 })))
    }

    pub fn rationals() -> Field {
        Field(Arc::new(Inner::Rationals))
    }

    /// Builds `base[T]/(modulus)`. The modulus must be monic and irreducible
    /// over a finite base; `var` names the class of `T` when printing.
    pub fn extension(base: &Field, modulus: &Poly, var: &str) -> Result<Field> {
        if modulus.field() != base {
            return Err(Error::SpecMismatch(
                "modulus lives over a different field".into(),
            ));
        }
        let q0 = base
            .size()
            .ok_or_else(|| Error::UnsupportedBase("extensions of Q are not supported".into()))?;
        let degree = modulus
            .degree()
            .ok_or_else(|| Error::InvalidField("zero modulus".into()))?;
        if degree == 0 {
            return Err(Error::InvalidField("constant modulus".into()));
        }
        if !modulus.is_monic() {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        let mut size: u64 = 1;
        for _ in 0..degree {
            size = size.saturating_mul(q0);
        }
        if size > MAX_EXTENSION_SIZE {
            return Err(Error::UnsupportedBase(format!(
                "extension with {size} elements exceeds the table limit {MAX_EXTENSION_SIZE}"
            )));
        }
        if !factor::is_irreducible(modulus)? {
            return Err(Error::InvalidField(format!(
                "modulus {} is reducible",
                modulus.display("T")
            )));
        }
        let (exp, log) = build_log_tables(base, modulus, degree, size as u32);
        Ok(Field(Arc::new(Inner::Extension(Ext {
            base: base.clone(),
            modulus: modulus.clone(),
            degree,
            base_size: q0 as u32,
            size: size as u32,
            var: var.to_string(),
            exp,
            log,
        }))))
    }

    pub fn is_finite(&self) -> bool {
        !matches!(&*self.0, Inner::Rationals)
    }

    pub fn is_rationals(&self) -> bool {
        matches!(&*self.0, Inner::Rationals)
    }

    pub fn is_extension(&self) -> bool {
        matches!(&*self.0, Inner::Extension(_))
    }

    /// Number of elements, `None` for Q.
    pub fn size(&self) -> Option<u64> {
        match &*self.0 {
            Inner::Prime { p } => Some(*p as u64),
            Inner::Extension(e) => Some(e.size as u64),
            Inner::Rationals => None,
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            Inner::Prime { p } => *p as u64,
            Inner::Extension(e) => e.base.characteristic(),
            Inner::Rationals => 0,
        }
    }

    /// Degree over the immediate base field (1 for prime fields and Q).
    pub fn degree(&self) -> usize {
        match &*self.0 {
            Inner::Extension(e) => e.degree,
            _ => 1,
        }
    }

    pub fn base(&self) -> Option<&Field> {
        match &*self.0 {
            Inner::Extension(e) => Some(&e.base),
            _ => None,
        }
    }

    pub fn modulus(&self) -> Option<&Poly> {
        match &*self.0 {
            Inner::Extension(e) => Some(&e.modulus),
            _ => None,
        }
    }

    pub fn var_name(&self) -> Option<&str> {
        match &*self.0 {
            Inner::Extension(e) => Some(&e.var),
            _ => None,
        }
    }

    /// Text form accepted by the field-spec parser: `F5`, `F3^2:T^2+1`, `Q`.
    /// Towers print the modulus coefficients with the base generator name.
    pub fn spec_string(&self) -> String {
        match &*self.0 {
            Inner::Prime { p } => format!("F{p}"),
            Inner::Rationals => "Q".to_string(),
            Inner::Extension(e) => format!(
                "{}^{}:{}",
                e.base.spec_string(),
                e.degree,
                e.modulus.display("T")
            ),
        }
    }

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            Inner::Rationals => Elem::Rat(BigRational::zero()),
            _ => Elem::Fin(0),
        }
    }

    pub fn one(&self) -> Elem {
        match &*self.0 {
            Inner::Rationals => Elem::Rat(BigRational::one()),
            _ => Elem::Fin(1),
        }
    }

    pub fn from_i64(&self, n: i64) -> Elem {
        match &*self.0 {
            Inner::Prime { p } => Elem::Fin(n.rem_euclid(*p as i64) as u32),
            Inner::Extension(e) => self.embed(&e.base.from_i64(n)),
            Inner::Rationals => Elem::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match &*self.0 {
            Inner::Prime { p } => {
                let r = n.mod_floor(&BigInt::from(*p));
                Elem::Fin(r.to_u32().expect("residue fits"))
            }
            Inner::Extension(e) => self.embed(&e.base.from_bigint(n)),
            Inner::Rationals => Elem::Rat(BigRational::from_integer(n.clone())),
        }
    }

    /// Element from an explicit index (finite fields only).
    pub fn from_index(&self, i: u64) -> Elem {
        let size = self.size().expect("finite field");
        assert!(i < size, "index out of range");
        Elem::Fin(i as u32)
    }

    pub fn index(&self, a: &Elem) -> u64 {
        match a {
            Elem::Fin(i) => *i as u64,
            Elem::Rat(_) => panic!("rational element has no index"),
        }
    }

    pub fn contains(&self, a: &Elem) -> bool {
        match (&*self.0, a) {
            (Inner::Rationals, Elem::Rat(_)) => true,
            (Inner::Rationals, _) | (_, Elem::Rat(_)) => false,
            (_, Elem::Fin(i)) => (*i as u64) < self.size().unwrap(),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Fin(i) => *i == 0,
            Elem::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Fin(i) => *i == 1,
            Elem::Rat(r) => r.is_one(),
        }
    }

    fn add_idx(&self, a: u32, b: u32) -> u32 {
        match &*self.0 {
            Inner::Prime { p } => ((a as u64 + b as u64) % *p as u64) as u32,
            Inner::Extension(e) => {
                let (mut a, mut b) = (a, b);
                let mut out = 0u32;
                let mut place = 1u32;
                for _ in 0..e.degree {
                    let d = e.base.add_idx(a % e.base_size, b % e.base_size);
                    out += d * place;
                    place = place.wrapping_mul(e.base_size);
                    a /= e.base_size;
                    b /= e.base_size;
                }
                out
            }
            Inner::Rationals => unreachable!(),
        }
    }

    fn neg_idx(&self, a: u32) -> u32 {
        match &*self.0 {
            Inner::Prime { p } => {
                if a == 0 {
                    0
                } else {
                    *p - a
                }
            }
            Inner::Extension(e) => {
                let mut a = a;
                let mut out = 0u32;
                let mut place = 1u32;
                for _ in 0..e.degree {
                    out += e.base.neg_idx(a % e.base_size) * place;
                    place = place.wrapping_mul(e.base_size);
                    a /= e.base_size;
                }
                out
            }
            Inner::Rationals => unreachable!(),
        }
    }

    fn mul_idx(&self, a: u32, b: u32) -> u32 {
        match &*self.0 {
            Inner::Prime { p } => ((a as u64 * b as u64) % *p as u64) as u32,
            Inner::Extension(e) => {
                if a == 0 || b == 0 {
                    return 0;
                }
                let n = e.size as u64 - 1;
                let l = (e.log[a as usize] as u64 + e.log[b as usize] as u64) % n;
                e.exp[l as usize]
            }
            Inner::Rationals => unreachable!(),
        }
    }

    fn inv_idx(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        match &*self.0 {
            Inner::Prime { p } => {
                let p = *p as u64;
                let (mut r, mut b, mut e) = (1u64, a as u64, p - 2);
                while e > 0 {
                    if e & 1 == 1 {
                        r = r * b % p;
                    }
                    b = b * b % p;
                    e >>= 1;
                }
                r as u32
            }
            Inner::Extension(e) => {
                let n = e.size as u64 - 1;
                let l = (n - e.log[a as usize] as u64) % n;
                e.exp[l as usize]
            }
            Inner::Rationals => unreachable!(),
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(self.add_idx(*x, *y)),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Fin(x) => Elem::Fin(self.neg_idx(*x)),
            Elem::Rat(x) => Elem::Rat(-x),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(self.add_idx(*x, self.neg_idx(*y))),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Fin(x), Elem::Fin(y)) => Elem::Fin(self.mul_idx(*x, *y)),
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            _ => panic!("mixed element kinds"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Elem::Fin(x) => Elem::Fin(self.inv_idx(*x)),
            Elem::Rat(x) => Elem::Rat(x.recip()),
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, e: i64) -> Result<Elem> {
        let base = if e < 0 { self.inv(a)? } else { a.clone() };
        Ok(self.pow_u(&base, e.unsigned_abs()))
    }

    pub fn pow_u(&self, a: &Elem, mut e: u64) -> Elem {
        let mut result = self.one();
        let mut sq = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &sq);
            }
            e >>= 1;
            if e > 0 {
                sq = self.mul(&sq, &sq);
            }
        }
        result
    }

    pub fn pow_big(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut result = self.one();
        for i in (0..e.bits()).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        result
    }

    /// `(-1)^e` as a field element.
    pub fn sign(&self, e: i64) -> Elem {
        if e.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.neg(&self.one())
        }
    }

    /// Embeds an element of the immediate base field.
    pub fn embed(&self, b: &Elem) -> Elem {
        match &*self.0 {
            Inner::Extension(e) => {
                let v = match b {
                    Elem::Fin(i) => *i,
                    Elem::Rat(_) => panic!("no extensions over Q"),
                };
                debug_assert!(v < e.base_size);
                Elem::Fin(v)
            }
            _ => b.clone(),
        }
    }

    /// Embeds an element of `src`, which must be `self` or a field below it in the tower.
    pub fn embed_from(&self, src: &Field, b: &Elem) -> Result<Elem> {
        if self == src {
            return Ok(b.clone());
        }
        match &*self.0 {
            Inner::Extension(e) => {
                let inner = e.base.embed_from(src, b)?;
                Ok(self.embed(&inner))
            }
            _ => Err(Error::SpecMismatch(format!(
                "{} is not a subfield of {}",
                src.spec_string(),
                self.spec_string()
            ))),
        }
    }

    /// Coefficients over the immediate base of the canonical representative.
    pub fn to_base_coeffs(&self, a: &Elem) -> Vec<Elem> {
        match (&*self.0, a) {
            (Inner::Extension(e), Elem::Fin(i)) => {
                let mut v = *i;
                (0..e.degree)
                    .map(|_| {
                        let d = v % e.base_size;
                        v /= e.base_size;
                        Elem::Fin(d)
                    })
                    .collect()
            }
            _ => vec![a.clone()],
        }
    }

    /// Inverse of [`Field::to_base_coeffs`]; reduces modulo the modulus if needed.
    pub fn from_base_coeffs(&self, coeffs: &[Elem]) -> Elem {
        match &*self.0 {
            Inner::Extension(e) => {
                let reduced = if coeffs.len() > e.degree {
                    Poly::new(e.base.clone(), coeffs.to_vec())
                        .div_rem(&e.modulus)
                        .expect("monic modulus")
                        .1
                } else {
                    Poly::new(e.base.clone(), coeffs.to_vec())
                };
                let mut idx = 0u32;
                let mut place = 1u32;
                for i in 0..e.degree {
                    idx += e.base.index(&reduced.coeff(i)) as u32 * place;
                    place = place.wrapping_mul(e.base_size);
                }
                Elem::Fin(idx)
            }
            _ => coeffs.first().cloned().unwrap_or_else(|| self.zero()),
        }
    }

    /// The class of `T` in `base[T]/(modulus)`.
    pub fn generator(&self) -> Result<Elem> {
        match &*self.0 {
            Inner::Extension(e) => {
                let t = vec![e.base.zero(), e.base.one()];
                Ok(self.from_base_coeffs(&t))
            }
            _ => Err(Error::NotAnExtensionElement),
        }
    }

    /// Field norm to the immediate base, computed as `Res(modulus, a(T))`.
    pub fn norm_to_base(&self, a: &Elem) -> Result<Elem> {
        match &*self.0 {
            Inner::Extension(e) => {
                let rep = Poly::new(e.base.clone(), self.to_base_coeffs(a));
                Ok(Poly::resultant(&e.modulus, &rep))
            }
            _ => Err(Error::NotAnExtensionElement),
        }
    }

    /// Norm to the immediate base for extensions, identity otherwise.
    pub fn norm_or_identity(&self, a: &Elem) -> (Field, Elem) {
        match self.base() {
            Some(b) => (b.clone(), self.norm_to_base(a).expect("extension")),
            None => (self.clone(), a.clone()),
        }
    }

    /// Unique `p`-th root in a finite field.
    pub fn pth_root(&self, a: &Elem) -> Elem {
        let q = self.size().expect("finite field");
        let p = self.characteristic();
        self.pow_u(a, q / p)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        let n = self.size().expect("finite field");
        (0..n).map(|i| Elem::Fin(i as u32))
    }

    pub fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match self.size() {
            Some(n) => Elem::Fin(rng.gen_range(0..n) as u32),
            None => {
                let num = rng.gen_range(-9i64..=9);
                let den = rng.gen_range(1i64..=4);
                Elem::Rat(BigRational::new(num.into(), den.into()))
            }
        }
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let a = self.random_elem(rng);
            if !self.is_zero(&a) {
                return a;
            }
        }
    }

    /// Canonical text form of an element.
    pub fn format(&self, a: &Elem) -> String {
        match (&*self.0, a) {
            (Inner::Rationals, Elem::Rat(r)) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            (Inner::Prime { .. }, Elem::Fin(i)) => i.to_string(),
            (Inner::Extension(e), Elem::Fin(_)) => {
                let coeffs = self.to_base_coeffs(a);
                let mut terms = Vec::new();
                for (i, c) in coeffs.iter().enumerate().rev() {
                    if e.base.is_zero(c) {
                        continue;
                    }
                    let cs = e.base.format(c);
                    let cs = if e.base.is_extension() && cs.contains('+') {
                        format!("({cs})")
                    } else {
                        cs
                    };
                    let mono = match i {
                        0 => String::new(),
                        1 => e.var.clone(),
                        _ => format!("{}^{}", e.var, i),
                    };
                    terms.push(match (i, e.base.is_one(c)) {
                        (0, _) => cs,
                        (_, true) => mono,
                        _ => format!("{cs}*{mono}"),
                    });
                }
                if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join("+")
                }
            }
            _ => panic!("element does not belong to {}", self.spec_string()),
        }
    }

    /// Finds the field in this tower whose generator is named `var`.
    pub fn find_generator(&self, var: &str) -> Option<Elem> {
        match &*self.0 {
            Inner::Extension(e) => {
                if e.var == var {
                    self.generator().ok()
                } else {
                    let inner = e.base.find_generator(var)?;
                    Some(self.embed(&inner))
                }
            }
            _ => None,
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Field) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (&*self.0, &*other.0) {
            (Inner::Prime { p }, Inner::Prime { p: q }) => p == q,
            (Inner::Rationals, Inner::Rationals) => true,
            (Inner::Extension(a), Inner::Extension(b)) => {
                a.base == b.base && a.modulus.coeffs() == b.modulus.coeffs()
            }
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.spec_string())
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

fn mulmod_digits(base: &Field, a: &[Elem], b: &[Elem], m: &Poly) -> Vec<Elem> {
    let pa = Poly::new(base.clone(), a.to_vec());
    let pb = Poly::new(base.clone(), b.to_vec());
    let r = pa.mul(&pb).div_rem(m).expect("monic modulus").1;
    let d = m.degree().unwrap();
    (0..d).map(|i| r.coeff(i)).collect()
}

fn digits_of(base: &Field, mut idx: u64, q0: u64, d: usize) -> Vec<Elem> {
    (0..d)
        .map(|_| {
            let c = idx % q0;
            idx /= q0;
            base.from_index(c)
        })
        .collect()
}

fn index_of(base: &Field, digits: &[Elem], q0: u64) -> u32 {
    let mut idx = 0u64;
    let mut place = 1u64;
    for c in digits {
        idx += base.index(c) * place;
        place *= q0;
    }
    idx as u32
}

fn pow_digits(base: &Field, a: &[Elem], mut e: u64, m: &Poly) -> Vec<Elem> {
    let d = m.degree().unwrap();
    let mut result: Vec<Elem> = (0..d)
        .map(|i| if i == 0 { base.one() } else { base.zero() })
        .collect();
    let mut sq = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod_digits(base, &result, &sq, m);
        }
        e >>= 1;
        if e > 0 {
            sq = mulmod_digits(base, &sq, &sq, m);
        }
    }
    result
}

fn build_log_tables(base: &Field, modulus: &Poly, d: usize, size: u32) -> (Vec<u32>, Vec<u32>) {
    let q0 = base.size().unwrap();
    let n = size as u64 - 1;
    let one_idx = 1u32;
    let primes = prime_factors(n);
    let mut generator = None;
    for cand in 1..size as u64 {
        let g = digits_of(base, cand, q0, d);
        let ok = primes.iter().all(|r| {
            let x = pow_digits(base, &g, n / r, modulus);
            index_of(base, &x, q0) != one_idx
        });
        if ok {
            generator = Some(g);
            break;
        }
    }
    let g = generator.expect("finite fields have primitive elements");
    let mut exp = vec![0u32; n as usize];
    let mut log = vec![0u32; size as usize];
    let mut x = digits_of(base, 1, q0, d);
    for (i, e) in exp.iter_mut().enumerate() {
        let idx = index_of(base, &x, q0);
        *e = idx;
        log[idx as usize] = i as u32;
        x = mulmod_digits(base, &x, &g, modulus);
    }
    (exp, log)
}

/// A field element bundled with its field; the self-describing value type
/// used in reports and symbol results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElem {
    pub field: Field,
    pub value: Elem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElem {
    pub fn new(field: &Field, value: Elem) -> Self {
        debug_assert!(field.contains(&value));
        FieldElem {
            field: field.clone(),
            value,
        }
    }

    pub fn from_i64(field: &Field, n: i64) -> Self {
        FieldElem::new(field, field.from_i64(n))
    }

    pub fn is_one(&self) -> bool {
        self.field.is_one(&self.value)
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.value)
    }

    pub fn inv(&self) -> Result<FieldElem> {
        Ok(FieldElem::new(&self.field, self.field.inv(&self.value)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElem> {
        Ok(FieldElem::new(&self.field, self.field.pow(&self.value, e)?))
    }

    pub fn norm_to_base(&self) -> Result<FieldElem> {
        let base = self.field.base().ok_or(Error::NotAnExtensionElement)?;
        Ok(FieldElem::new(base, self.field.norm_to_base(&self.value)?))
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(&self.value))
    }
}

/// Checked field arithmetic on bundled elements.
pub fn field_arith(a: &FieldElem, b: &FieldElem, op: ArithOp) -> Result<FieldElem> {
    if a.field != b.field {
        return Err(Error::SpecMismatch(format!(
            "{} vs {}",
            a.field.spec_string(),
            b.field.spec_string()
        )));
    }
    let k = &a.field;
    let v = match op {
        ArithOp::Add => k.add(&a.value, &b.value),
        ArithOp::Sub => k.sub(&a.value, &b.value),
        ArithOp::Mul => k.mul(&a.value, &b.value),
        ArithOp::Div => k.div(&a.value, &b.value)?,
    };
    Ok(FieldElem::new(k, v))
}

/// Product of a slice of elements; 1 for the empty slice.
pub fn product<'a>(k: &Field, xs: impl IntoIterator<Item = &'a Elem>) -> Elem {
    xs.into_iter().fold(k.one(), |acc, x| k.mul(&acc, x))
}

pub(crate) fn rational_of(a: &Elem) -> Option<&BigRational> {
    match a {
        Elem::Rat(r) => Some(r),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3_2() -> Field {
        let f3 = Field::prime(3).unwrap();
        let m = Poly::new(f3.clone(), vec![f3.one(), f3.zero(), f3.one()]);
        Field::extension(&f3, &m, "a").unwrap()
    }

    #[test]
    fn prime_arith() {
        let k = Field::prime(5).unwrap();
        let a = FieldElem::from_i64(&k, 2);
        let b = FieldElem::from_i64(&k, 3);
        assert_eq!(
            field_arith(&a, &b, ArithOp::Mul).unwrap(),
            FieldElem::from_i64(&k, 1)
        );
        assert_eq!(
            field_arith(&a, &b, ArithOp::Add).unwrap(),
            FieldElem::from_i64(&k, 0)
        );
        let z = FieldElem::from_i64(&k, 0);
        assert_eq!(
            field_arith(&a, &z, ArithOp::Div),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn mismatch_is_reported() {
        let a = FieldElem::from_i64(&Field::prime(5).unwrap(), 1);
        let b = FieldElem::from_i64(&Field::prime(7).unwrap(), 1);
        assert!(matches!(
            field_arith(&a, &b, ArithOp::Add),
            Err(Error::SpecMismatch(_))
        ));
    }

    #[test]
    fn generator_squares_to_minus_one() {
        let k = f3_2();
        let t = FieldElem::new(&k, k.generator().unwrap());
        let sq = field_arith(&t, &t, ArithOp::Mul).unwrap();
        assert_eq!(sq, FieldElem::from_i64(&k, 2));
        assert_eq!(sq.to_string(), "2");
        assert_eq!(t.to_string(), "a");
    }

    #[test]
    fn rational_arith() {
        let q = Field::rationals();
        let half = FieldElem::new(&q, Elem::Rat(BigRational::new(1.into(), 2.into())));
        let third = FieldElem::new(&q, Elem::Rat(BigRational::new(1.into(), 3.into())));
        let s = field_arith(&half, &third, ArithOp::Add).unwrap();
        assert_eq!(s.to_string(), "5/6");
    }

    #[test]
    fn norms_in_f9() {
        let k = f3_2();
        let t = k.generator().unwrap();
        assert!(k.is_one(&k.norm_to_base(&t).unwrap()));
        let t1 = k.add(&t, &k.one());
        assert_eq!(k.norm_to_base(&t1).unwrap(), Elem::Fin(2));
        let c = k.from_i64(2);
        assert_eq!(k.norm_to_base(&c).unwrap(), Elem::Fin(1));
        let f3 = Field::prime(3).unwrap();
        assert_eq!(
            k.norm_to_base(&k.one()).unwrap(),
            f3.one(),
            "norm of the unit element"
        );
    }

    #[test]
    fn not_an_extension() {
        let k = Field::prime(5).unwrap();
        assert_eq!(k.norm_to_base(&k.one()), Err(Error::NotAnExtensionElement));
    }

    #[test]
    fn reducible_modulus_rejected() {
        let f5 = Field::prime(5).unwrap();
        // T^2 - 1
        let m = Poly::new(f5.clone(), vec![f5.from_i64(-1), f5.zero(), f5.one()]);
        assert!(matches!(
            Field::extension(&f5, &m, "a"),
            Err(Error::InvalidField(_))
        ));
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn extension_field_axioms() {
        let k = f3_2();
        for a in k.elements() {
            for b in k.elements() {
                assert_eq!(k.mul(&a, &b), k.mul(&b, &a));
                let s = k.add(&a, &b);
                assert_eq!(k.sub(&s, &b), a);
                if !k.is_zero(&b) {
                    let q = k.div(&a, &b).unwrap();
                    assert_eq!(k.mul(&q, &b), a);
                }
            }
        }
    }
}
