use super::weil::{Place, PlaceKind};
use super::{ReportEntry, RetryPolicy, VerificationReport};
use crate::bivariate::{BiPoly, BivariateRational};
use crate::branch::{expand_at_branch, BranchDescriptor, BranchSeries};
use crate::error::{Error, Result};
use crate::factor::factorize;
use crate::field::{Elem, Field};
use crate::poly::Poly;
use crate::symbols::tame2d;

/// The line `T -> (u0 + u1 T, v0 + v1 T)` in the plane, closed up in `P^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineParam {
    pub field: Field,
    pub u: (Elem, Elem),
    pub v: (Elem, Elem),
}

impl LineParam {
    pub fn new(field: &Field, u: (Elem, Elem), v: (Elem, Elem)) -> Result<Self> {
        if field.is_zero(&u.1) && field.is_zero(&v.1) {
            return Err(Error::DegenerateSubstitution(
                "the parametrization is constant".into(),
            ));
        }
        Ok(LineParam {
            field: field.clone(),
            u,
            v,
        })
    }

    /// The axis `v = 0`, parametrized by `u = T`.
    pub fn v_axis(field: &Field) -> Self {
        LineParam {
            field: field.clone(),
            u: (field.zero(), field.one()),
            v: (field.zero(), field.zero()),
        }
    }

    /// Coordinates `(T, w)` with the line at `w = 0`: returns `(u, v)` as
    /// polynomials in `T` (first variable) and `w` (second).
    fn coordinates(&self) -> (BiPoly, BiPoly) {
        let k = &self.field;
        let (a, b) = if k.is_zero(&self.u.1) {
            (k.one(), k.zero())
        } else {
            (k.zero(), k.one())
        };
        let lu = BiPoly::from_terms(
            k,
            &[
                (self.u.0.clone(), 0, 0),
                (self.u.1.clone(), 1, 0),
                (a, 0, 1),
            ],
        );
        let lv = BiPoly::from_terms(
            k,
            &[
                (self.v.0.clone(), 0, 0),
                (self.v.1.clone(), 1, 0),
                (b, 0, 1),
            ],
        );
        (lu, lv)
    }
}

/// Symbol at the origin of the current chart along the axis `v = 0`.
fn axis_entry(
    fs: &[BivariateRational; 3],
    field: &Field,
    center: Elem,
    prec: i64,
) -> Result<crate::symbols::SymbolValue> {
    let br = BranchDescriptor::graph_v(
        field,
        (center, field.zero()),
        BranchSeries::Exact(Poly::zero(field)),
    )
    .with_curve(BiPoly::v(field));
    let e = |r: &BivariateRational| expand_at_branch(r, &br, prec, prec);
    tame2d(&e(&fs[0])?, &e(&fs[1])?, &e(&fs[2])?)
}

/// Checks that the normed symbols `{f, g, h}_(x, C)` over all points `x` of
/// the line `C` multiply to one.
pub fn parshin_curve_verify(
    f: &BivariateRational,
    g: &BivariateRational,
    h: &BivariateRational,
    line: &LineParam,
    seed: u64,
    policy: RetryPolicy,
) -> Result<VerificationReport> {
    let k = f.field().clone();
    if line.field != k {
        return Err(Error::SpecMismatch(
            "line and functions over different fields".into(),
        ));
    }
    let (lu, lv) = line.coordinates();
    let move_to_axis = |r: &BivariateRational| {
        r.map_factors(&k, |p| Ok((p.substitute(&lu, &lv), 0)), &BiPoly::u(&k))
    };
    let fs = [move_to_axis(f)?, move_to_axis(g)?, move_to_axis(h)?];
    let w = BiPoly::v(&k);

    // Finite candidates: zeros on the axis of the factors, with the axis removed.
    let mut restricted = Poly::one(&k);
    for r in &fs {
        for (p, _) in r.factors() {
            let (_, rest) = p.multiplicity(&w);
            let q = rest.restrict_v0();
            if q.is_zero() {
                return Err(Error::RestrictionDegenerate(format!("{p}")));
            }
            if !q.is_constant() {
                restricted = restricted.mul(&q.monic()?.1);
            }
        }
    }
    let mut places = Vec::new();
    if !restricted.is_constant() {
        for (pi, _) in factorize(&restricted, seed)?.factors {
            places.push(Place::finite(&pi)?);
        }
    }
    let at_inf = {
        let chart = |r: &BivariateRational| {
            r.map_factors(
                &k,
                |p| {
                    let (q, d) = p.chart_u_infinity();
                    Ok((q, -(d as i64)))
                },
                &BiPoly::u(&k),
            )
        };
        [chart(&fs[0])?, chart(&fs[1])?, chart(&fs[2])?]
    };
    let (entries, prec) = policy.run(|prec| {
        let mut entries = Vec::new();
        for place in &places {
            let kx = &place.residue;
            let PlaceKind::Finite(pi) = &place.kind else {
                unreachable!()
            };
            let sym = axis_entry(&fs, kx, place.root().unwrap(), prec)?;
            entries.push(ReportEntry {
                place: format!("T: {}", pi.display("T")),
                symbol: sym.value.to_string(),
                norm: sym.norm_to(&k)?,
            });
        }
        let sym = axis_entry(&at_inf, &k, k.zero(), prec)?;
        entries.push(ReportEntry {
            place: "inf".into(),
            symbol: sym.value.to_string(),
            norm: sym.norm_to(&k)?,
        });
        Ok(entries)
    })?;
    Ok(VerificationReport::assemble(
        "parshin-curve",
        &k,
        entries,
        prec,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(p: BiPoly) -> BivariateRational {
        BivariateRational::from_bipoly(p).unwrap()
    }

    #[test]
    fn worked_curve_examples() {
        let k = Field::prime(5).unwrap();
        let (u, v) = (BiPoly::u(&k), BiPoly::v(&k));
        let line = LineParam::v_axis(&k);
        let one = BiPoly::one(&k);
        let r = parshin_curve_verify(
            &rat(u.clone()),
            &rat(v.clone()),
            &rat(one.sub(&u)),
            &line,
            0,
            RetryPolicy::default(),
        )
        .unwrap();
        assert!(r.passed, "{r:?}");
        let names: Vec<_> = r.entries.iter().map(|e| e.place.as_str()).collect();
        assert_eq!(names, vec!["T: T", "T: T+4", "inf"]);

        let c = |n| BivariateRational::constant(&k, k.from_i64(n)).unwrap();
        let r =
            parshin_curve_verify(&c(2), &c(3), &c(4), &line, 0, RetryPolicy::default()).unwrap();
        assert!(r.passed);
        assert_eq!(r.entries.len(), 1);
        assert!(r.entries[0].norm.is_one());

        let r = parshin_curve_verify(
            &rat(v.clone()),
            &rat(v.clone()),
            &rat(u.clone()),
            &line,
            0,
            RetryPolicy::default(),
        )
        .unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn slanted_line_and_degree_two_points() {
        let k = Field::prime(5).unwrap();
        let (u, v) = (BiPoly::u(&k), BiPoly::v(&k));
        let one = BiPoly::one(&k);
        // Line u = 1 + T, v = 2T; f contains u^2 + 2 (irreducible mod 5 on the line).
        let line = LineParam::new(&k, (k.one(), k.one()), (k.zero(), k.from_i64(2))).unwrap();
        let f = rat(u.pow(2).add(&one.scale(&k.from_i64(2))));
        let g = rat(v
            .sub(&u.scale(&k.from_i64(2)))
            .add(&one.scale(&k.from_i64(2))));
        let h = BivariateRational::new(u.add(&v), v.add(&one)).unwrap();
        let r = parshin_curve_verify(&f, &g, &h, &line, 3, RetryPolicy::default()).unwrap();
        assert!(r.passed, "{r:?}");
    }
}
