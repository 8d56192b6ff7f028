//! Polynomials and rational functions in two variables `u`, `v`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;

/// `sum_j coeffs[j](u) v^j`, trailing zero coefficients trimmed.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly {
    field: Field,
    coeffs: Vec<Poly>,
}

impl BiPoly {
    pub fn new(field: &Field, mut coeffs: Vec<Poly>) -> BiPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BiPoly {
            field: field.clone(),
            coeffs,
        }
    }

    /// From `(c, i, j)` triples meaning `c u^i v^j`.
    pub fn from_terms(field: &Field, terms: &[(Elem, usize, usize)]) -> BiPoly {
        let mut b = BiPoly::zero(field);
        for (c, i, j) in terms {
            b = b.add(&BiPoly::monomial(field, c.clone(), *i, *j));
        }
        b
    }

    pub fn zero(field: &Field) -> BiPoly {
        BiPoly::new(field, Vec::new())
    }

    pub fn constant(field: &Field, c: Elem) -> BiPoly {
        BiPoly::new(field, vec![Poly::constant(field, c)])
    }

    pub fn one(field: &Field) -> BiPoly {
        BiPoly::constant(field, field.one())
    }

    pub fn monomial(field: &Field, c: Elem, i: usize, j: usize) -> BiPoly {
        let mut v = vec![Poly::zero(field); j];
        v.push(Poly::monomial(field, c, i));
        BiPoly::new(field, v)
    }

    pub fn u(field: &Field) -> BiPoly {
        BiPoly::monomial(field, field.one(), 1, 0)
    }

    pub fn v(field: &Field) -> BiPoly {
        BiPoly::monomial(field, field.one(), 0, 1)
    }

    /// A polynomial in `u` alone.
    pub fn from_u_poly(p: &Poly) -> BiPoly {
        BiPoly::new(p.field(), vec![p.clone()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Coefficient of `v^j` as a polynomial in `u`.
    pub fn v_coeff(&self, j: usize) -> Poly {
        self.coeffs
            .get(j)
            .cloned()
            .unwrap_or_else(|| Poly::zero(&self.field))
    }

    pub fn v_coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> Elem {
        self.v_coeff(j).coeff(i)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1 && self.v_coeff(0).is_constant()
    }

    pub fn deg_v(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_u(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(|c| c.degree()).max()
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.terms().map(|(_, i, j)| i + j).max()
    }

    /// Lowest total degree of a nonzero term: the multiplicity at the origin.
    pub fn order_at_origin(&self) -> Option<usize> {
        self.terms().map(|(_, i, j)| i + j).min()
    }

    /// Nonzero terms `(c, i, j)`.
    pub fn terms(&self) -> impl Iterator<Item = (Elem, usize, usize)> + '_ {
        let k = self.field.clone();
        self.coeffs.iter().enumerate().flat_map(move |(j, p)| {
            let k = k.clone();
            p.coeffs()
                .iter()
                .enumerate()
                .filter(move |(_, c)| !k.is_zero(c))
                .map(move |(i, c)| (c.clone(), i, j))
        })
    }

    /// Leading coefficient: highest power of `v`, then highest power of `u`.
    pub fn lc(&self) -> Option<Elem> {
        self.coeffs.last().and_then(|p| p.lc().cloned())
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|j| self.v_coeff(j).add(&other.v_coeff(j)))
            .collect();
        BiPoly::new(&self.field, v)
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return BiPoly::zero(&self.field);
        }
        let mut v = vec![Poly::zero(&self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].add(&a.mul(b));
            }
        }
        BiPoly::new(&self.field, v)
    }

    pub fn mul_u_poly(&self, p: &Poly) -> BiPoly {
        BiPoly::new(&self.field, self.coeffs.iter().map(|c| c.mul(p)).collect())
    }

    pub fn scale(&self, c: &Elem) -> BiPoly {
        BiPoly::new(
            &self.field,
            self.coeffs.iter().map(|p| p.scale(c)).collect(),
        )
    }

    pub fn pow(&self, n: u32) -> BiPoly {
        let mut acc = BiPoly::one(&self.field);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    fn shift_v(&self, n: usize) -> BiPoly {
        let mut v = vec![Poly::zero(&self.field); n];
        v.extend(self.coeffs.iter().cloned());
        BiPoly::new(&self.field, v)
    }

    /// Exact quotient, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        let dd = d.deg_v()?;
        let dlc = d.v_coeff(dd);
        let mut q = BiPoly::zero(&self.field);
        let mut r = self.clone();
        while let Some(dr) = r.deg_v() {
            if dr < dd {
                return None;
            }
            let c = r.v_coeff(dr).exact_div(&dlc)?;
            let term = BiPoly::from_u_poly(&c).shift_v(dr - dd);
            q = q.add(&term);
            r = r.sub(&term.mul(d));
        }
        Some(q)
    }

    /// How often `d` divides `self`, and the cofactor.
    pub fn multiplicity(&self, d: &BiPoly) -> (u32, BiPoly) {
        let mut e = 0;
        let mut r = self.clone();
        if d.is_constant() || self.is_zero() {
            return (0, r);
        }
        while let Some(q) = r.exact_div(d) {
            r = q;
            e += 1;
        }
        (e, r)
    }

    /// Monic gcd of the `v`-coefficients.
    pub fn content(&self) -> Poly {
        self.coeffs
            .iter()
            .fold(Poly::zero(&self.field), |acc, c| Poly::gcd(&acc, c))
    }

    pub fn primitive_part(&self) -> BiPoly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        BiPoly::new(
            &self.field,
            self.coeffs
                .iter()
                .map(|p| p.exact_div(&c).expect("content divides"))
                .collect(),
        )
    }

    /// Scales so that [`BiPoly::lc`] is one.
    pub fn normalized(&self) -> BiPoly {
        match self.lc() {
            None => self.clone(),
            Some(c) => self.scale(&self.field.inv(&c).expect("nonzero")),
        }
    }

    fn prem(a: &BiPoly, b: &BiPoly) -> BiPoly {
        let db = b.deg_v().expect("nonzero");
        let lb = BiPoly::from_u_poly(&b.v_coeff(db));
        let mut r = a.clone();
        while let Some(dr) = r.deg_v() {
            if dr < db {
                break;
            }
            let lr = BiPoly::from_u_poly(&r.v_coeff(dr));
            r = r.mul(&lb).sub(&lr.mul(&b.shift_v(dr - db)));
        }
        r
    }

    /// Normalized gcd by a primitive remainder sequence over `k[u][v]`.
    pub fn gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
        if a.is_zero() {
            return b.normalized();
        }
        if b.is_zero() {
            return a.normalized();
        }
        let c = Poly::gcd(&a.content(), &b.content());
        let mut x = a.primitive_part();
        let mut y = b.primitive_part();
        if x.deg_v() < y.deg_v() {
            std::mem::swap(&mut x, &mut y);
        }
        let g = loop {
            if y.is_zero() {
                break x;
            }
            if y.deg_v() == Some(0) {
                break BiPoly::one(&a.field);
            }
            let r = BiPoly::prem(&x, &y);
            x = y;
            y = r.primitive_part();
        };
        g.primitive_part().mul_u_poly(&c).normalized()
    }

    pub fn d_u(&self) -> BiPoly {
        BiPoly::new(
            &self.field,
            self.coeffs.iter().map(|c| c.derivative()).collect(),
        )
    }

    pub fn d_v(&self) -> BiPoly {
        let k = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, c)| c.scale(&k.from_i64(j as i64)))
            .collect();
        BiPoly::new(k, v)
    }

    /// Maps coefficients into a field containing `self.field()`.
    pub fn base_change(&self, to: &Field) -> Result<BiPoly> {
        let v = self
            .coeffs
            .iter()
            .map(|c| c.base_change(to))
            .collect::<Result<Vec<_>>>()?;
        Ok(BiPoly::new(to, v))
    }

    /// Value at `(u0, v0)`, both in `self.field()`.
    pub fn eval(&self, u0: &Elem, v0: &Elem) -> Elem {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, v0), &c.eval(u0)))
    }

    /// `B(u, c)` as a polynomial in `u`.
    pub fn eval_v(&self, c: &Elem) -> Poly {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(k), |acc, p| acc.scale(c).add(p))
    }

    /// `B(u0 + u, v0 + v)`.
    pub fn translate(&self, u0: &Elem, v0: &Elem) -> BiPoly {
        let k = &self.field;
        let lin = BiPoly::v(k).add(&BiPoly::constant(k, v0.clone()));
        self.coeffs.iter().rev().fold(BiPoly::zero(k), |acc, c| {
            acc.mul(&lin).add(&BiPoly::from_u_poly(&c.shift(u0)))
        })
    }

    /// Substitutes `u = lu`, `v = lv` for bivariate polynomials `lu`, `lv`.
    pub fn substitute(&self, lu: &BiPoly, lv: &BiPoly) -> BiPoly {
        let k = &self.field;
        let in_u = |p: &Poly| {
            p.coeffs().iter().rev().fold(BiPoly::zero(k), |acc, c| {
                acc.mul(lu).add(&BiPoly::constant(k, c.clone()))
            })
        };
        self.coeffs
            .iter()
            .rev()
            .fold(BiPoly::zero(k), |acc, c| acc.mul(lv).add(&in_u(c)))
    }

    /// `B(v, u)`.
    pub fn swap(&self) -> BiPoly {
        let k = &self.field;
        let terms: Vec<_> = self.terms().map(|(c, i, j)| (c, j, i)).collect();
        BiPoly::from_terms(k, &terms)
    }

    /// Restriction to `v = 0`.
    pub fn restrict_v0(&self) -> Poly {
        self.v_coeff(0)
    }

    /// Dehomogenization at the line at infinity.
    ///
    /// For total degree `d`, returns `B~` with `B(1/a, b/a) = a^(-d) B~(a, b)`
    /// where the new coordinates are `(a, b) = (1/u, v/u)`.
    pub fn chart_u_infinity(&self) -> (BiPoly, usize) {
        let k = &self.field;
        let d = self.total_degree().unwrap_or(0);
        let terms: Vec<_> = self.terms().map(|(c, i, j)| (c, d - i - j, j)).collect();
        (BiPoly::from_terms(k, &terms), d)
    }

    /// As [`BiPoly::chart_u_infinity`] with coordinates `(a, b) = (u/v, 1/v)`,
    /// so that `B(a/b, 1/b) = b^(-d) B~(a, b)`.
    pub fn chart_v_infinity(&self) -> (BiPoly, usize) {
        let k = &self.field;
        let d = self.total_degree().unwrap_or(0);
        let terms: Vec<_> = self.terms().map(|(c, i, j)| (c, i, d - i - j)).collect();
        (BiPoly::from_terms(k, &terms), d)
    }

    pub fn display(&self) -> String {
        let k = &self.field;
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by_key(|t| std::cmp::Reverse((t.1 + t.2, t.2)));
        if terms.is_empty() {
            return "0".into();
        }
        terms
            .iter()
            .map(|(c, i, j)| {
                let mut parts = Vec::new();
                let cs = k.format(c);
                if !k.is_one(c) || (i + j == 0) {
                    parts.push(if cs.contains(['+', '/']) {
                        format!("({cs})")
                    } else {
                        cs
                    });
                }
                for (var, e) in [("u", *i), ("v", *j)] {
                    match e {
                        0 => {}
                        1 => parts.push(var.to_string()),
                        _ => parts.push(format!("{var}^{e}")),
                    }
                }
                parts.join("*")
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

/// A nonzero rational function `num/den` in `u`, `v`.
///
/// Alongside the reduced quotient it keeps the factored form the value was
/// built from: `num/den = unit * prod f^e`. Factors are not assumed irreducible.
#[derive(Clone, Debug)]
pub struct BivariateRational {
    num: BiPoly,
    den: BiPoly,
    unit: Elem,
    factors: Vec<(BiPoly, i64)>,
}

impl BivariateRational {
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let k = num.field().clone();
        let mut unit = k.one();
        let mut factors = Vec::new();
        for (p, e) in [(num, 1), (den, -1)] {
            if p.is_constant() {
                let c = p.coeff(0, 0);
                unit = k.mul(&unit, &if e > 0 { c } else { k.inv(&c)? });
            } else {
                let c = p.lc().unwrap();
                unit = k.mul(&unit, &if e > 0 { c.clone() } else { k.inv(&c)? });
                factors.push((p.normalized(), e));
            }
        }
        Self::from_factors(&k, unit, factors)
    }

    pub fn from_bipoly(p: BiPoly) -> Result<Self> {
        let k = p.field().clone();
        Self::new(p, BiPoly::one(&k))
    }

    pub fn constant(field: &Field, c: Elem) -> Result<Self> {
        Self::new(BiPoly::constant(field, c), BiPoly::one(field))
    }

    /// `unit * prod f^e`; factors are normalized and merged.
    pub fn from_factors(field: &Field, unit: Elem, factors: Vec<(BiPoly, i64)>) -> Result<Self> {
        if field.is_zero(&unit) {
            return Err(Error::ZeroPolynomial);
        }
        let mut unit = unit;
        let mut merged: Vec<(BiPoly, i64)> = Vec::new();
        for (f, e) in factors {
            if f.is_zero() {
                return Err(if e < 0 {
                    Error::DivisionByZero
                } else {
                    Error::ZeroPolynomial
                });
            }
            if e == 0 {
                continue;
            }
            let c = f.lc().unwrap();
            unit = field.mul(&unit, &field.pow(&c, e)?);
            if f.is_constant() {
                continue;
            }
            let f = f.normalized();
            match merged.iter_mut().find(|(g, _)| *g == f) {
                Some(entry) => entry.1 += e,
                None => merged.push((f, e)),
            }
        }
        merged.retain(|(_, e)| *e != 0);
        let mut num = BiPoly::constant(field, unit.clone());
        let mut den = BiPoly::one(field);
        for (f, e) in &merged {
            if *e > 0 {
                num = num.mul(&f.pow(*e as u32));
            } else {
                den = den.mul(&f.pow((-*e) as u32));
            }
        }
        let g = BiPoly::gcd(&num, &den);
        if !g.is_constant() {
            num = num.exact_div(&g).expect("gcd divides");
            den = den.exact_div(&g).expect("gcd divides");
        }
        let c = den.lc().unwrap();
        let ci = field.inv(&c)?;
        Ok(BivariateRational {
            num: num.scale(&ci),
            den: den.scale(&ci),
            unit,
            factors: merged,
        })
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn unit(&self) -> &Elem {
        &self.unit
    }

    /// Normalized factors with nonzero exponents.
    pub fn factors(&self) -> &[(BiPoly, i64)] {
        &self.factors
    }

    pub fn is_constant(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let k = self.field();
        let mut f = self.factors.clone();
        f.extend(other.factors.iter().cloned());
        Self::from_factors(k, k.mul(&self.unit, &other.unit), f)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let k = self.field();
        let f = self
            .factors
            .iter()
            .map(|(p, n)| (p.clone(), n * e))
            .collect();
        Self::from_factors(k, k.pow(&self.unit, e)?, f)
    }

    pub fn inv(&self) -> Result<Self> {
        self.pow(-1)
    }

    /// `self + other`; the factored form collapses to numerator over denominator.
    pub fn add(&self, other: &Self) -> Result<Self> {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Result<Self> {
        let k = self.field();
        let f = self.factors.clone();
        Self::from_factors(k, k.neg(&self.unit), f)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    /// Applies a polynomial map to each factor, collecting extra powers of a
    /// monomial factor `extra` (used by the chart changes).
    pub fn map_factors(
        &self,
        to: &Field,
        f: impl Fn(&BiPoly) -> Result<(BiPoly, i64)>,
        extra: &BiPoly,
    ) -> Result<Self> {
        let unit = to.embed_from(self.field(), &self.unit)?;
        let mut out = Vec::new();
        let mut extra_exp = 0;
        for (p, e) in &self.factors {
            let (q, x) = f(p)?;
            out.push((q, *e));
            extra_exp += x * e;
        }
        if extra_exp != 0 {
            out.push((extra.clone(), extra_exp));
        }
        Self::from_factors(to, unit, out)
    }

    pub fn display(&self) -> String {
        if self.den.is_constant() {
            format!("{}", self.num)
        } else {
            format!("({})/({})", self.num, self.den)
        }
    }
}

impl PartialEq for BivariateRational {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for BivariateRational {}

impl fmt::Display for BivariateRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5() -> Field {
        Field::prime(5).unwrap()
    }

    #[test]
    fn gcd_and_exact_division() {
        let k = k5();
        let u = BiPoly::u(&k);
        let v = BiPoly::v(&k);
        let a = u.add(&v).mul(&v.sub(&u.pow(2)));
        let b = u.add(&v).mul(&u.sub(&BiPoly::one(&k)));
        let g = BiPoly::gcd(&a, &b);
        assert_eq!(g, u.add(&v));
        assert_eq!(a.exact_div(&g).unwrap(), v.sub(&u.pow(2)));
        assert!(a.exact_div(&u).is_none());
        let c = u.pow(3).mul(&v);
        assert_eq!(BiPoly::gcd(&c, &u.pow(2).mul(&v.pow(2))), u.pow(2).mul(&v));
    }

    #[test]
    fn translation_and_charts() {
        let k = k5();
        let u = BiPoly::u(&k);
        let v = BiPoly::v(&k);
        let p = v.sub(&u.pow(2));
        let one = k.one();
        let q = p.translate(&one, &one);
        // (1+v) - (1+u)^2 = v - 2u - u^2
        let expect = v.sub(&u.scale(&k.from_i64(2))).sub(&u.pow(2));
        assert_eq!(q, expect);
        let (c, d) = p.chart_u_infinity();
        assert_eq!(d, 2);
        // v - u^2 -> b a - 1
        assert_eq!(c, u.mul(&v).sub(&BiPoly::one(&k)));
    }

    #[test]
    fn rational_normalization() {
        let k = k5();
        let u = BiPoly::u(&k);
        let v = BiPoly::v(&k);
        let num = u.mul(&v).scale(&k.from_i64(2));
        let den = u.scale(&k.from_i64(3));
        let r = BivariateRational::new(num, den).unwrap();
        assert_eq!(r.factors().len(), 2);
        assert_eq!(r.num(), &v.scale(&k.from_i64(4)));
        assert_eq!(r.den(), &BiPoly::one(&k));
        assert!(BivariateRational::new(u.clone(), BiPoly::zero(&k)).is_err());
    }

    #[test]
    fn derivatives() {
        let k = k5();
        let u = BiPoly::u(&k);
        let v = BiPoly::v(&k);
        let p = u.pow(2).mul(&v.pow(3));
        assert_eq!(p.d_u(), u.mul(&v.pow(3)).scale(&k.from_i64(2)));
        assert_eq!(p.d_v(), u.pow(2).mul(&v.pow(2)).scale(&k.from_i64(3)));
    }
}
