//! Dense univariate polynomials over a [`Field`].

use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Poly) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for Poly {}

impl Poly {
    /// Coefficients in ascending order; trailing zeros are trimmed.
    pub fn new(field: Field, mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::new(
            field.clone(),
            coeffs.iter().map(|&c| field.from_i64(c)).collect(),
        )
    }

    pub fn zero(field: &Field) -> Poly {
        Poly::new(field.clone(), Vec::new())
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field.clone(), vec![c])
    }

    pub fn monomial(field: &Field, c: Elem, n: usize) -> Poly {
        let mut v = vec![field.zero(); n];
        v.push(c);
        Poly::new(field.clone(), v)
    }

    /// The polynomial `T`.
    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
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

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn lc(&self) -> Option<&Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| self.field.is_one(c))
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !self.field.is_zero(c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| k.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Poly::new(k.clone(), v)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| k.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        Poly::new(k.clone(), v)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(
            self.field.clone(),
            self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let k = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(k);
        }
        let mut v = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = k.add(&v[i + j], &k.mul(a, b));
            }
        }
        Poly::new(k.clone(), v)
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        Poly::new(
            self.field.clone(),
            self.coeffs.iter().map(|a| self.field.mul(a, c)).collect(),
        )
    }

    pub fn shift_up(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); n];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(self.field.clone(), v)
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one(&self.field);
        for _ in 0..n {
            result = result.mul(self);
        }
        result
    }

    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let k = &self.field;
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv_lc = k.inv(d.lc().unwrap())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Poly::zero(k), self.clone()));
        }
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = k.mul(&r[i], &inv_lc);
            if k.is_zero(&c) {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = k.sub(&r[idx], &k.mul(&c, dj));
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        Ok((Poly::new(k.clone(), q), Poly::new(k.clone(), r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.div_rem(d)?.1)
    }

    /// `self / d` if the division is exact.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem(d).ok()?;
        r.is_zero().then_some(q)
    }

    /// Splits off the leading coefficient: `self = lc * monic`.
    pub fn monic(&self) -> Result<(Elem, Poly)> {
        let lc = self.lc().ok_or(Error::ZeroPolynomial)?.clone();
        let inv = self.field.inv(&lc)?;
        Ok((lc, self.scale(&inv)))
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem(&y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        if x.is_zero() {
            x
        } else {
            x.monic().unwrap().1
        }
    }

    pub fn derivative(&self) -> Poly {
        let k = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.from_i64(i as i64)))
            .collect();
        Poly::new(k.clone(), v)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    /// Maps coefficients into a field containing `self.field()`.
    pub fn base_change(&self, to: &Field) -> Result<Poly> {
        if &self.field == to {
            return Ok(self.clone());
        }
        let v = self
            .coeffs
            .iter()
            .map(|c| to.embed_from(&self.field, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Poly::new(to.clone(), v))
    }

    /// `P(T + c)`.
    pub fn shift(&self, c: &Elem) -> Poly {
        let k = &self.field;
        let lin = Poly::new(k.clone(), vec![c.clone(), k.one()]);
        self.compose(&lin)
    }

    /// `P(Q(T))`.
    pub fn compose(&self, q: &Poly) -> Poly {
        let k = &self.field;
        self.coeffs.iter().rev().fold(Poly::zero(k), |acc, c| {
            acc.mul(q).add(&Poly::constant(k, c.clone()))
        })
    }

    /// `T^deg * P(1/T)`.
    pub fn reversed(&self) -> Poly {
        let mut v = self.coeffs.clone();
        v.reverse();
        Poly::new(self.field.clone(), v)
    }

    pub fn mulmod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m).expect("nonzero modulus")
    }

    pub fn powmod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut result = Poly::one(&self.field).rem(m).expect("nonzero modulus");
        let base = self.rem(m).expect("nonzero modulus");
        for i in (0..e.bits()).rev() {
            result = result.mulmod(&result, m);
            if e.bit(i) {
                result = result.mulmod(&base, m);
            }
        }
        result
    }

    /// Resultant of two polynomials by the Euclidean algorithm.
    pub fn resultant(a: &Poly, b: &Poly) -> Elem {
        let k = a.field.clone();
        let (Some(mut m), Some(mut n)) = (a.degree(), b.degree()) else {
            return k.zero();
        };
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut acc = k.one();
        loop {
            if n == 0 {
                let c = k.pow_u(b.lc().unwrap(), m as u64);
                return k.mul(&acc, &c);
            }
            let r = a.rem(&b).expect("nonzero divisor");
            let Some(dr) = r.degree() else {
                return k.zero();
            };
            if (m * n) % 2 == 1 {
                acc = k.neg(&acc);
            }
            acc = k.mul(&acc, &k.pow_u(b.lc().unwrap(), (m - dr) as u64));
            a = b;
            b = r;
            m = n;
            n = dr;
        }
    }

    /// Largest `e` with `f^e | self`, and the cofactor.
    pub fn multiplicity(&self, f: &Poly) -> (u32, Poly) {
        let mut e = 0;
        let mut cur = self.clone();
        if f.is_constant() || cur.is_zero() {
            return (0, cur);
        }
        while let Some(q) = cur.exact_div(f) {
            cur = q;
            e += 1;
        }
        (e, cur)
    }

    pub fn display(&self, var: &str) -> String {
        let k = &self.field;
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let cs = k.format(c);
            let simple = !cs.contains(['+', '-']);
            let cs = if simple { cs } else { format!("({cs})") };
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = match (i, k.is_one(c)) {
                (0, _) => cs,
                (_, true) => mono,
                _ => format!("{cs}*{mono}"),
            };
            if !out.is_empty() {
                out.push('+');
            }
            out.push_str(&term);
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Poly[{}]({})",
            self.field.spec_string(),
            self.display("T")
        )
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("T"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resultant_matches_hand_values() {
        let f3 = Field::prime(3).unwrap();
        let m = Poly::from_i64s(&f3, &[1, 0, 1]);
        let t = Poly::x(&f3);
        assert_eq!(Poly::resultant(&m, &t), f3.one());
        let t1 = Poly::from_i64s(&f3, &[1, 1]);
        assert_eq!(Poly::resultant(&m, &t1), f3.from_i64(2));
        let c = Poly::from_i64s(&f3, &[2]);
        assert_eq!(Poly::resultant(&m, &c), f3.from_i64(4));
    }

    #[test]
    fn resultant_sylvester_cross_check() {
        // Res(T^2 - 3T + 2, T^3 + T + 5) over F_7 against the product of
        // g over the roots 1 and 2 of the monic quadratic.
        let f7 = Field::prime(7).unwrap();
        let a = Poly::from_i64s(&f7, &[2, -3, 1]);
        let b = Poly::from_i64s(&f7, &[5, 1, 0, 1]);
        let expect = f7.mul(&b.eval(&f7.from_i64(1)), &b.eval(&f7.from_i64(2)));
        assert_eq!(Poly::resultant(&a, &b), expect);
    }

    #[test]
    fn division_and_gcd() {
        let f5 = Field::prime(5).unwrap();
        let a = Poly::from_i64s(&f5, &[-1, 0, 1]);
        let b = Poly::from_i64s(&f5, &[1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_i64s(&f5, &[-1, 1]));
        assert_eq!(Poly::gcd(&a, &b.scale(&f5.from_i64(3))), b);
        assert_eq!(a.multiplicity(&b).0, 1);
    }

    #[test]
    fn shift_is_taylor_expansion() {
        let f7 = Field::prime(7).unwrap();
        let p = Poly::from_i64s(&f7, &[0, 0, 1]);
        assert_eq!(p.shift(&f7.from_i64(2)), Poly::from_i64s(&f7, &[4, 4, 1]));
    }
}
