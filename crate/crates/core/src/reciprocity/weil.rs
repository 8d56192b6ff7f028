use std::fmt;

use super::{ReportEntry, VerificationReport};
use crate::error::{Error, Result};
use crate::factor::factorize;
use crate::field::{Elem, Field};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::series::LaurentSeries1;
use crate::symbols::{tame1d, SymbolValue};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PlaceKind {
    Finite(Poly),
    Infinity,
}

/// A closed point of the projective line over `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Place {
    pub kind: PlaceKind,
    /// `k[T]/(pi)`, or `k` itself for rational places.
    pub residue: Field,
}

impl Place {
    pub fn infinity(k: &Field) -> Place {
        Place {
            kind: PlaceKind::Infinity,
            residue: k.clone(),
        }
    }

    /// The place of a monic irreducible `pi`.
    pub fn finite(pi: &Poly) -> Result<Place> {
        let k = pi.field();
        let d = pi.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 || !pi.is_monic() {
            return Err(Error::InvalidField(
                "a place needs a monic nonconstant polynomial".into(),
            ));
        }
        let residue = if d == 1 {
            k.clone()
        } else if k.is_rationals() {
            return Err(Error::UnsupportedBase(format!(
                "place {} over Q has a nonrational residue field",
                pi.display("T")
            )));
        } else {
            Field::extension(k, pi, "z")?
        };
        Ok(Place {
            kind: PlaceKind::Finite(pi.clone()),
            residue,
        })
    }

    pub fn degree(&self) -> usize {
        match &self.kind {
            PlaceKind::Finite(p) => p.degree().unwrap_or(0),
            PlaceKind::Infinity => 1,
        }
    }

    /// The class of `T` in the residue field.
    pub fn root(&self) -> Option<Elem> {
        match &self.kind {
            PlaceKind::Finite(p) if p.degree() == Some(1) => Some(self.residue.neg(&p.coeff(0))),
            PlaceKind::Finite(_) => self.residue.generator().ok(),
            PlaceKind::Infinity => None,
        }
    }

    /// Image of a polynomial with no pole here in the residue field.
    fn reduce(&self, p: &Poly) -> Elem {
        match &self.kind {
            PlaceKind::Finite(pi) if pi.degree() == Some(1) => p.eval(&self.root().unwrap()),
            PlaceKind::Finite(pi) => {
                let r = p.rem(pi).expect("nonzero modulus");
                self.residue.from_base_coeffs(r.coeffs())
            }
            PlaceKind::Infinity => unreachable!("handled by the caller"),
        }
    }

    /// `(ord_p(f), residue of f * pi^(-ord_p(f)))`.
    fn split(&self, f: &RationalFunction) -> Result<(i64, Elem)> {
        let r = &self.residue;
        match &self.kind {
            PlaceKind::Finite(pi) => {
                let (a, n) = f.num().multiplicity(pi);
                let (b, d) = f.den().multiplicity(pi);
                Ok((
                    a as i64 - b as i64,
                    r.div(&self.reduce(&n), &self.reduce(&d))?,
                ))
            }
            PlaceKind::Infinity => {
                let dn = f.num().degree().ok_or(Error::ZeroPolynomial)? as i64;
                let dd = f.den().degree().unwrap() as i64;
                let lc = r.div(f.num().lc().unwrap(), f.den().lc().unwrap())?;
                Ok((dd - dn, lc))
            }
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PlaceKind::Finite(p) => f.write_str(&p.display("T")),
            PlaceKind::Infinity => f.write_str("inf"),
        }
    }
}

/// All places where some argument has a zero or a pole.
pub fn places_of_support(fs: &[RationalFunction], seed: u64) -> Result<Vec<Place>> {
    let mut polys: Vec<Poly> = Vec::new();
    let mut infinity = false;
    for f in fs {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.num().degree() != f.den().degree() {
            infinity = true;
        }
        for p in [f.num(), f.den()] {
            if p.is_constant() {
                continue;
            }
            for (q, _) in factorize(p, seed)?.factors {
                if !polys.contains(&q) {
                    polys.push(q);
                }
            }
        }
    }
    let k = match fs.first() {
        Some(f) => f.field().clone(),
        None => return Ok(Vec::new()),
    };
    let sorted = factorize(&polys.iter().fold(Poly::one(&k), |a, p| a.mul(p)), seed)?;
    let mut out = sorted
        .factors
        .iter()
        .map(|(p, _)| Place::finite(p))
        .collect::<Result<Vec<_>>>()?;
    if infinity {
        out.push(Place::infinity(&k));
    }
    Ok(out)
}

/// `{f, g}_p` from orders and leading units.
pub fn local_symbol_at_place(
    f: &RationalFunction,
    g: &RationalFunction,
    place: &Place,
) -> Result<SymbolValue> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let r = &place.residue;
    let (a, uf) = place.split(f)?;
    let (b, ug) = place.split(g)?;
    let v = r.div(&r.pow(&uf, b)?, &r.pow(&ug, a)?)?;
    Ok(SymbolValue::new(r, r.mul(&r.sign(a * b), &v)))
}

fn expand_at(f: &RationalFunction, place: &Place, prec: i64) -> Result<LaurentSeries1> {
    let r = &place.residue;
    match &place.kind {
        PlaceKind::Finite(_) => {
            let z = place.root().unwrap();
            let n = f.num().base_change(r)?.shift(&z);
            let d = f.den().base_change(r)?.shift(&z);
            LaurentSeries1::from_poly(&n, prec).div(&LaurentSeries1::from_poly(&d, prec))
        }
        PlaceKind::Infinity => {
            let dn = f.num().degree().ok_or(Error::ZeroPolynomial)? as i64;
            let dd = f.den().degree().unwrap() as i64;
            let n = LaurentSeries1::from_poly(&f.num().reversed(), prec);
            let d = LaurentSeries1::from_poly(&f.den().reversed(), prec);
            Ok(n.div(&d)?.shift(dd - dn))
        }
    }
}

/// `{f, g}_p` by expanding both functions in `k(p)((t))` and applying [`tame1d`].
pub fn local_symbol_series_path(
    f: &RationalFunction,
    g: &RationalFunction,
    place: &Place,
    prec: i64,
) -> Result<SymbolValue> {
    tame1d(&expand_at(f, place, prec)?, &expand_at(g, place, prec)?)
}

/// Checks that the normed local symbols of `f, g` multiply to one.
pub fn weil_verify(
    f: &RationalFunction,
    g: &RationalFunction,
    seed: u64,
) -> Result<VerificationReport> {
    let k = f.field().clone();
    if g.field() != &k {
        return Err(Error::SpecMismatch(
            "functions over different fields".into(),
        ));
    }
    let mut entries = Vec::new();
    for place in places_of_support(&[f.clone(), g.clone()], seed)? {
        let sym = local_symbol_at_place(f, g, &place)?;
        entries.push(ReportEntry {
            place: place.to_string(),
            symbol: sym.value.to_string(),
            norm: sym.norm_to(&k)?,
        });
    }
    Ok(VerificationReport::assemble("weil", &k, entries, 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElem;

    fn rf(k: &Field, num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction::new(Poly::from_i64s(k, num), Poly::from_i64s(k, den)).unwrap()
    }

    #[test]
    fn worked_support_examples() {
        let f5 = Field::prime(5).unwrap();
        let t = rf(&f5, &[0, 1], &[1]);
        let omt = rf(&f5, &[1, -1], &[1]);
        let names: Vec<String> = places_of_support(&[t.clone(), omt.clone()], 0)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(names, vec!["T", "T+4", "inf"]);
        let c = rf(&f5, &[2], &[3]);
        assert!(places_of_support(&[c.clone(), c], 0).unwrap().is_empty());
        let f3 = Field::prime(3).unwrap();
        let q = rf(&f3, &[1, 0, 1], &[1]);
        let names: Vec<String> = places_of_support(&[q, rf(&f3, &[0, 1], &[1])], 0)
            .unwrap()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(names, vec!["T", "T^2+1", "inf"]);
    }

    #[test]
    fn worked_local_symbol_examples() {
        let f5 = Field::prime(5).unwrap();
        let t = rf(&f5, &[0, 1], &[1]);
        let omt = rf(&f5, &[1, -1], &[1]);
        let at0 = Place::finite(&Poly::x(&f5)).unwrap();
        assert!(local_symbol_at_place(&t, &omt, &at0).unwrap().is_one());
        assert_eq!(
            local_symbol_at_place(&t, &t, &at0).unwrap().elem(),
            &f5.from_i64(-1)
        );
        let inf = Place::infinity(&f5);
        assert_eq!(
            local_symbol_at_place(&t, &t, &inf).unwrap().elem(),
            &f5.from_i64(-1)
        );
    }

    #[test]
    fn worked_weil_examples() {
        let f5 = Field::prime(5).unwrap();
        let t = rf(&f5, &[0, 1], &[1]);
        let omt = rf(&f5, &[1, -1], &[1]);
        let r = weil_verify(&t, &omt, 0).unwrap();
        assert!(r.passed);
        assert_eq!(r.entries.len(), 3);
        assert!(r.entries.iter().all(|e| e.norm.is_one()));
        let r = weil_verify(&t, &t, 0).unwrap();
        assert!(r.passed);
        assert_eq!(r.entries.len(), 2);
        assert!(r
            .entries
            .iter()
            .all(|e| e.norm == FieldElem::from_i64(&f5, -1)));
        let c = rf(&f5, &[2], &[1]);
        let r = weil_verify(&c, &rf(&f5, &[3], &[1]), 0).unwrap();
        assert!(r.passed && r.entries.is_empty());
    }

    #[test]
    fn degree_two_place_and_series_path() {
        let f3 = Field::prime(3).unwrap();
        let f = rf(&f3, &[1, 0, 1], &[0, 1]);
        let g = rf(&f3, &[2, 1], &[1, 0, 1]);
        let r = weil_verify(&f, &g, 0).unwrap();
        assert!(r.passed, "{r:?}");
        for place in places_of_support(&[f.clone(), g.clone()], 0).unwrap() {
            assert_eq!(
                local_symbol_at_place(&f, &g, &place).unwrap(),
                local_symbol_series_path(&f, &g, &place, 8).unwrap()
            );
        }
    }

    #[test]
    fn rational_base_with_rational_places() {
        let q = Field::rationals();
        let f = rf(&q, &[-1, 0, 1], &[2, 1]);
        let g = rf(&q, &[3, 0, 0, 1], &[0, 1]);
        assert!(weil_verify(&f, &g, 0).is_err());
        let g = rf(&q, &[3, 2], &[0, 1]);
        assert!(weil_verify(&f, &g, 0).unwrap().passed);
    }
}
