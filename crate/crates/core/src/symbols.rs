//! Tame symbols of one- and two-dimensional local fields.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldElem};
use crate::series::{LaurentSeries1, LaurentSeries2};

/// A nonzero symbol value in the residue field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolValue {
    pub value: FieldElem,
}

impl SymbolValue {
    pub fn new(field: &Field, value: Elem) -> Self {
        SymbolValue {
            value: FieldElem::new(field, value),
        }
    }

    pub fn residue_field(&self) -> &Field {
        &self.value.field
    }

    pub fn elem(&self) -> &Elem {
        &self.value.value
    }

    /// Norm to the base field, or the value itself over a prime field or `Q`.
    pub fn norm(&self) -> FieldElem {
        let (k, n) = self.value.field.norm_or_identity(&self.value.value);
        FieldElem::new(&k, n)
    }

    /// Norm down the tower of residue fields until `k` is reached.
    pub fn norm_to(&self, k: &Field) -> Result<FieldElem> {
        let mut x = self.value.clone();
        while &x.field != k {
            if x.field.base().is_none() {
                return Err(Error::SpecMismatch(format!(
                    "{} does not lie over {}",
                    self.value.field.spec_string(),
                    k.spec_string()
                )));
            }
            x = x.norm_to_base()?;
        }
        Ok(x)
    }

    pub fn mul(&self, other: &SymbolValue) -> Result<SymbolValue> {
        if self.value.field != other.value.field {
            return Err(Error::SpecMismatch(
                "symbols in different residue fields".into(),
            ));
        }
        let k = &self.value.field;
        Ok(SymbolValue::new(k, k.mul(self.elem(), other.elem())))
    }

    pub fn inv(&self) -> SymbolValue {
        let k = &self.value.field;
        SymbolValue::new(k, k.inv(self.elem()).expect("symbols are nonzero"))
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }
}

impl fmt::Display for SymbolValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn constant_term_of_unit(w: &LaurentSeries1, what: &str) -> Result<Elem> {
    if w.is_zero_window() {
        return Err(Error::PrecisionExhausted(format!(
            "{what} lost all precision"
        )));
    }
    if w.val() != 0 {
        return Err(Error::NotAUnitAfterReduction(format!(
            "{what} has valuation {}",
            w.val()
        )));
    }
    w.residue_unit()
}

/// `{f, g}`: the reduction of `(-1)^(v(f)v(g)) f^v(g) / g^v(f)`.
pub fn tame1d(f: &LaurentSeries1, g: &LaurentSeries1) -> Result<SymbolValue> {
    if f.field() != g.field() {
        return Err(Error::SpecMismatch("series over different fields".into()));
    }
    let k = f.field();
    let a = f.valuation()?;
    let b = g.valuation()?;
    let w = f.pow(b)?.div(&g.pow(a)?)?;
    let c = constant_term_of_unit(&w, "f^v(g)/g^v(f)")?;
    Ok(SymbolValue::new(k, k.mul(&k.sign(a * b), &c)))
}

/// `nu_K(f, g)`: the `t`-valuation of the residue of `f^nu1(g) / g^nu1(f)`.
pub fn nu_k(f: &LaurentSeries2, g: &LaurentSeries2) -> Result<i64> {
    let (a, fr) = f.reduce()?;
    let (b, gr) = g.reduce()?;
    let w = fr.pow(b)?.div(&gr.pow(a)?)?;
    if w.is_zero_window() {
        return Err(Error::PrecisionExhausted(
            "residue lost all precision".into(),
        ));
    }
    w.valuation()
}

struct Reduced {
    nu1: i64,
    res: LaurentSeries1,
    nu2: i64,
}

fn reduced(x: &LaurentSeries2) -> Result<Reduced> {
    let (nu1, res) = x.reduce()?;
    let nu2 = res.valuation()?;
    Ok(Reduced { nu1, res, nu2 })
}

fn nu_k_reduced(f: &Reduced, g: &Reduced) -> i64 {
    g.nu1 * f.nu2 - f.nu1 * g.nu2
}

/// `{f, g, h}` for the two-dimensional field `k((t))((s))`.
pub fn tame2d(f: &LaurentSeries2, g: &LaurentSeries2, h: &LaurentSeries2) -> Result<SymbolValue> {
    let k = f.field();
    if g.field() != k || h.field() != k {
        return Err(Error::SpecMismatch("series over different fields".into()));
    }
    let (rf, rg, rh) = (reduced(f)?, reduced(g)?, reduced(h)?);
    let fg = nu_k_reduced(&rf, &rg);
    let gh = nu_k_reduced(&rg, &rh);
    let hf = nu_k_reduced(&rh, &rf);
    let (gf, hg, fh) = (-fg, -gh, -hf);
    let sgn = fg * fh + gh * gf + hf * hg + fg * gh * hf;
    let (a, b, c) = (gh, hf, fg);
    let nu1 = a * rf.nu1 + b * rg.nu1 + c * rh.nu1;
    if nu1 != 0 {
        return Err(Error::NotAUnitAfterReduction(format!(
            "nu_1 of the product is {nu1}"
        )));
    }
    // With nu_1 = 0 the first reduction is the product of the residues.
    let w = rf
        .res
        .pow(a)?
        .mul(&rg.res.pow(b)?)
        .mul(&rh.res.pow(c)?)
        .scale(&k.sign(sgn));
    let v = constant_term_of_unit(&w, "the reduced product")?;
    Ok(SymbolValue::new(k, v))
}

/// Product of per-branch symbols.
pub fn tame2d_branch_sum(
    f: &[LaurentSeries2],
    g: &[LaurentSeries2],
    h: &[LaurentSeries2],
) -> Result<SymbolValue> {
    if f.len() != g.len() || g.len() != h.len() || f.is_empty() {
        return Err(Error::LengthMismatch);
    }
    let mut acc: Option<SymbolValue> = None;
    for i in 0..f.len() {
        let x = tame2d(&f[i], &g[i], &h[i])?;
        acc = Some(match acc {
            None => x,
            Some(a) => a.mul(&x)?,
        });
    }
    Ok(acc.unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn worked_tame1d_examples() {
        let f5 = k(5);
        let t = LaurentSeries1::t(&f5, 8);
        let one = LaurentSeries1::one(&f5, 9);
        assert_eq!(tame1d(&t, &t).unwrap().elem(), &f5.from_i64(-1));
        assert!(tame1d(&t, &one.sub(&t)).unwrap().is_one());
        let q = Field::rationals();
        let f = LaurentSeries1::monomial(&q, q.from_i64(2), 1, 9);
        let g = LaurentSeries1::monomial(&q, q.from_i64(3), 2, 9);
        let r = tame1d(&f, &g).unwrap();
        assert_eq!(r.to_string(), "4/3");
    }

    #[test]
    fn worked_nu_k_examples() {
        let f5 = k(5);
        let t = LaurentSeries2::t(&f5, 8);
        let s = LaurentSeries2::s(&f5, 8);
        assert_eq!(nu_k(&t, &s).unwrap(), 1);
        assert_eq!(nu_k(&s, &t).unwrap(), -1);
        let one = LaurentSeries2::constant(&f5, f5.one(), 8);
        let u1 = one.add(&t).unwrap().add(&s).unwrap();
        let u2 = LaurentSeries2::constant(&f5, f5.from_i64(3), 8)
            .add(&s)
            .unwrap();
        assert_eq!(nu_k(&u1, &u2).unwrap(), 0);
    }

    #[test]
    fn worked_tame2d_examples() {
        let f5 = k(5);
        let t = LaurentSeries2::t(&f5, 8);
        let s = LaurentSeries2::s(&f5, 8);
        let c = LaurentSeries2::constant(&f5, f5.from_i64(3), 8);
        assert_eq!(tame2d(&t, &s, &c).unwrap().elem(), &f5.from_i64(3));
        assert_eq!(tame2d(&t, &s, &s).unwrap().elem(), &f5.from_i64(-1));
        let one = LaurentSeries2::constant(&f5, f5.one(), 8);
        let u1 = one.add(&t).unwrap();
        let u2 = one.add(&s).unwrap();
        let u3 = c.add(&t.mul(&s).unwrap()).unwrap();
        assert!(tame2d(&u1, &u2, &u3).unwrap().is_one());
    }

    #[test]
    fn branch_sum() {
        let f5 = k(5);
        let t = LaurentSeries2::t(&f5, 8);
        let s = LaurentSeries2::s(&f5, 8);
        let c = LaurentSeries2::constant(&f5, f5.from_i64(2), 8);
        let single = tame2d_branch_sum(
            std::slice::from_ref(&t),
            std::slice::from_ref(&s),
            std::slice::from_ref(&c),
        )
        .unwrap();
        assert_eq!(single, tame2d(&t, &s, &c).unwrap());
        let pair = tame2d_branch_sum(
            &[t.clone(), s.clone()],
            &[s.clone(), t.clone()],
            &[c.clone(), c.clone()],
        )
        .unwrap();
        assert!(pair.is_one());
        assert_eq!(
            tame2d_branch_sum(std::slice::from_ref(&t), &[], &[]),
            Err(Error::LengthMismatch)
        );
    }
}
