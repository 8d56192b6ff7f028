use super::{ReportEntry, RetryPolicy, VerificationReport};
use crate::bivariate::{BiPoly, BivariateRational};
use crate::branch::{expand_at_branch, hensel_branch, BranchDescriptor};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::series::LaurentSeries1;
use crate::symbols::tame2d;

/// Affine chart of the projective plane a point is given in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    /// Coordinates `(u, v)`.
    Affine,
    /// Coordinates `(1/u, v/u)`.
    UInfinity,
    /// Coordinates `(u/v, 1/v)`.
    VInfinity,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfacePoint {
    pub chart: Chart,
    /// Field of the coordinates; contains the field of the functions.
    pub field: Field,
    pub coords: (Elem, Elem),
}

impl SurfacePoint {
    pub fn affine(field: &Field, u0: Elem, v0: Elem) -> Self {
        SurfacePoint {
            chart: Chart::Affine,
            field: field.clone(),
            coords: (u0, v0),
        }
    }

    /// Rewrites `f` in this point's chart, over this point's field.
    pub fn localize(&self, f: &BivariateRational) -> Result<BivariateRational> {
        let k = &self.field;
        match self.chart {
            Chart::Affine => f.map_factors(k, |p| Ok((p.base_change(k)?, 0)), &BiPoly::u(k)),
            Chart::UInfinity => f.map_factors(
                k,
                |p| {
                    let (q, d) = p.chart_u_infinity();
                    Ok((q.base_change(k)?, -(d as i64)))
                },
                &BiPoly::u(k),
            ),
            Chart::VInfinity => f.map_factors(
                k,
                |p| {
                    let (q, d) = p.chart_v_infinity();
                    Ok((q.base_change(k)?, -(d as i64)))
                },
                &BiPoly::v(k),
            ),
        }
    }

    pub fn label(&self) -> String {
        let k = &self.field;
        let c = format!("{},{}", k.format(&self.coords.0), k.format(&self.coords.1));
        match self.chart {
            Chart::Affine => c,
            Chart::UInfinity => format!("u-inf:{c}"),
            Chart::VInfinity => format!("v-inf:{c}"),
        }
    }
}

fn pth_root(a: &BiPoly) -> BiPoly {
    let k = a.field();
    let p = k.characteristic() as usize;
    let terms: Vec<_> = a
        .terms()
        .map(|(c, i, j)| (k.pth_root(&c), i / p, j / p))
        .collect();
    BiPoly::from_terms(k, &terms)
}

fn push_nonconstant(out: &mut Vec<BiPoly>, p: BiPoly) {
    if !p.is_constant() {
        let p = p.normalized();
        if !out.contains(&p) {
            out.push(p);
        }
    }
}

/// Pairwise coprime square-free polynomials such that every input is a
/// constant times a product of their powers.
pub fn coprime_basis(polys: &[BiPoly]) -> Vec<BiPoly> {
    let mut work = Vec::new();
    for p in polys {
        push_nonconstant(&mut work, p.clone());
    }
    'outer: loop {
        for i in 0..work.len() {
            let a = work[i].clone();
            let (du, dv) = (a.d_u(), a.d_v());
            if du.is_zero() && dv.is_zero() {
                work.remove(i);
                push_nonconstant(&mut work, pth_root(&a));
                continue 'outer;
            }
            let g = BiPoly::gcd(&a, &BiPoly::gcd(&du, &dv));
            if !g.is_constant() {
                work.remove(i);
                let q = a.exact_div(&g).expect("gcd divides");
                push_nonconstant(&mut work, g);
                push_nonconstant(&mut work, q);
                continue 'outer;
            }
        }
        for i in 0..work.len() {
            for j in i + 1..work.len() {
                let g = BiPoly::gcd(&work[i], &work[j]);
                if !g.is_constant() {
                    let b = work.remove(j);
                    let a = work.remove(i);
                    let qa = a.exact_div(&g).expect("gcd divides");
                    let qb = b.exact_div(&g).expect("gcd divides");
                    push_nonconstant(&mut work, g);
                    push_nonconstant(&mut work, qa);
                    push_nonconstant(&mut work, qb);
                    continue 'outer;
                }
            }
        }
        break;
    }
    work.sort_by_key(|p| (p.total_degree(), p.display()));
    work
}

/// Value of `p(x(t), y(t))`.
fn eval_on(p: &BiPoly, x: &LaurentSeries1, y: &LaurentSeries1) -> Result<LaurentSeries1> {
    let mut acc = LaurentSeries1::exact_zero(x.field());
    for c in p.v_coeffs().iter().rev() {
        acc = acc.mul(y).add(&x.eval_poly(c)?);
    }
    Ok(acc)
}

struct Located {
    id: String,
    branch: BranchDescriptor,
}

/// Branches through `x` of the curves `basis`, at precision `prec`.
fn branches(
    basis: &[BiPoly],
    x: &SurfacePoint,
    extra: &[BranchDescriptor],
    prec: i64,
) -> Result<Vec<Located>> {
    let k = &x.field;
    let (u0, v0) = &x.coords;
    let mut out = Vec::new();
    for p in basis {
        let dv = p.d_v().eval(u0, v0);
        let du = p.d_u().eval(u0, v0);
        if !k.is_zero(&du) || !k.is_zero(&dv) {
            out.push(Located {
                id: p.display(),
                branch: hensel_branch(p, k, x.coords.clone(), prec)?,
            });
            continue;
        }
        let mult = p.translate(u0, v0).order_at_origin().unwrap_or(0);
        let mut covered = 0;
        let mut mine = Vec::new();
        for b in extra {
            let (bx, by) = b.param(prec);
            if !eval_on(p, &bx, &by)?.is_zero_window() {
                continue;
            }
            let ox = bx.sub(&LaurentSeries1::constant(k, u0.clone(), prec)).val();
            let oy = by.sub(&LaurentSeries1::constant(k, v0.clone(), prec)).val();
            covered += ox.min(oy).max(1) as usize;
            mine.push(b.clone().with_curve(p.clone()));
        }
        if covered > mult {
            return Err(Error::PrecisionExhausted(format!(
                "cannot separate the branches supplied for {p}"
            )));
        }
        if covered < mult {
            return Err(Error::SingularBranchUnhandled(format!(
                "{p} has multiplicity {mult} at ({}), branches supplied cover {covered}",
                x.label()
            )));
        }
        for (i, b) in mine.into_iter().enumerate() {
            out.push(Located {
                id: format!("{} #{}", p.display(), i + 1),
                branch: b,
            });
        }
    }
    Ok(out)
}

/// Checks that the symbols `{f, g, h}_(x, C)` over all curves `C` through `x` multiply to one.
///
/// Every curve in the divisors of the arguments that is singular at `x` must
/// be covered by `extra_branches`, which need to be centered at `x`.
pub fn parshin_point_verify(
    f: &BivariateRational,
    g: &BivariateRational,
    h: &BivariateRational,
    x: &SurfacePoint,
    extra_branches: &[BranchDescriptor],
    policy: RetryPolicy,
) -> Result<VerificationReport> {
    let k = &x.field;
    for b in extra_branches {
        if b.field != *k || b.center != x.coords {
            return Err(Error::DegenerateSubstitution(
                "supplied branch is not centered at the point".into(),
            ));
        }
    }
    let fs = [x.localize(f)?, x.localize(g)?, x.localize(h)?];
    let (u0, v0) = &x.coords;
    let through: Vec<BiPoly> = fs
        .iter()
        .flat_map(|r| r.factors().iter().map(|(p, _)| p.clone()))
        .filter(|p| k.is_zero(&p.eval(u0, v0)))
        .collect();
    let basis: Vec<BiPoly> = coprime_basis(&through)
        .into_iter()
        .filter(|p| k.is_zero(&p.eval(u0, v0)))
        .collect();
    let (entries, prec) = policy.run(|prec| {
        let mut entries = Vec::new();
        for loc in branches(&basis, x, extra_branches, prec)? {
            let e = |r: &BivariateRational| expand_at_branch(r, &loc.branch, prec, prec);
            let sym = tame2d(&e(&fs[0])?, &e(&fs[1])?, &e(&fs[2])?)?;
            entries.push(ReportEntry {
                place: loc.id,
                symbol: sym.value.to_string(),
                norm: sym.norm_to(k)?,
            });
        }
        Ok(entries)
    })?;
    Ok(VerificationReport::assemble(
        "parshin-point",
        k,
        entries,
        prec,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branch::BranchSeries;
    use crate::poly::Poly;

    fn lin(k: &Field, a: i64, b: i64, c: i64) -> BiPoly {
        BiPoly::from_terms(
            k,
            &[
                (k.from_i64(a), 1, 0),
                (k.from_i64(b), 0, 1),
                (k.from_i64(c), 0, 0),
            ],
        )
    }

    fn rat(p: BiPoly) -> BivariateRational {
        BivariateRational::from_bipoly(p).unwrap()
    }

    #[test]
    fn worked_point_examples() {
        let k = Field::prime(5).unwrap();
        let o = SurfacePoint::affine(&k, k.zero(), k.zero());
        let (u, v) = (BiPoly::u(&k), BiPoly::v(&k));
        let c = BivariateRational::constant(&k, k.from_i64(2)).unwrap();
        let r = parshin_point_verify(
            &rat(u.clone()),
            &rat(v.clone()),
            &c,
            &o,
            &[],
            RetryPolicy::default(),
        )
        .unwrap();
        assert!(r.passed);
        assert_eq!(r.entries.len(), 2);
        let vals: Vec<_> = r.entries.iter().map(|e| e.norm.value.clone()).collect();
        assert!(vals.contains(&k.from_i64(2)) && vals.contains(&k.from_i64(3)));

        let consts: Vec<_> = [3, 2, 4]
            .iter()
            .map(|c| BivariateRational::constant(&k, k.from_i64(*c)).unwrap())
            .collect();
        let r = parshin_point_verify(
            &consts[0],
            &consts[1],
            &consts[2],
            &o,
            &[],
            RetryPolicy::default(),
        )
        .unwrap();
        assert!(r.passed && r.entries.is_empty());

        let r = parshin_point_verify(
            &rat(u.clone()),
            &rat(v.clone()),
            &rat(u.add(&v)),
            &o,
            &[],
            RetryPolicy::default(),
        )
        .unwrap();
        assert!(r.passed);
        assert_eq!(r.entries.len(), 3);
    }

    #[test]
    fn coprime_basis_splits_shared_factors() {
        let k = Field::prime(5).unwrap();
        let (u, v) = (BiPoly::u(&k), BiPoly::v(&k));
        let a = u.pow(2).mul(&v);
        let b = u.mul(&lin(&k, 1, 1, 0));
        let c = lin(&k, 1, 1, 0).pow(5);
        let basis = coprime_basis(&[a, b, c]);
        assert_eq!(basis.len(), 3);
        assert!(basis.contains(&u) && basis.contains(&v) && basis.contains(&lin(&k, 1, 1, 0)));
    }

    #[test]
    fn node_needs_explicit_branches() {
        let k = Field::prime(5).unwrap();
        let (u, v) = (BiPoly::u(&k), BiPoly::v(&k));
        let node = v.pow(2).sub(&u.pow(2).mul(&u.add(&BiPoly::one(&k))));
        let o = SurfacePoint::affine(&k, k.zero(), k.zero());
        let f = rat(node.clone());
        let g = rat(u.add(&v.scale(&k.from_i64(2))));
        let h = rat(v.clone());
        let err = parshin_point_verify(&f, &g, &h, &o, &[], RetryPolicy::default()).unwrap_err();
        assert!(matches!(err, Error::SingularBranchUnhandled(_)));
        // Branches T = 1 and T = -1 of u = T^2 - 1, v = T^3 - T.
        let mk = |sgn: i64| {
            let x = Poly::from_i64s(&k, &[0, 2 * sgn, 1]);
            let y = Poly::from_i64s(&k, &[sgn, 1]).mul(&x);
            BranchDescriptor::explicit(
                &k,
                o.coords.clone(),
                BranchSeries::Exact(x),
                BranchSeries::Exact(y),
                None,
            )
        };
        let r = parshin_point_verify(&f, &g, &h, &o, &[mk(1)], RetryPolicy::default()).unwrap_err();
        assert!(matches!(r, Error::SingularBranchUnhandled(_)));
        let r =
            parshin_point_verify(&f, &g, &h, &o, &[mk(1), mk(-1)], RetryPolicy::default()).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.entries.len(), 4);
    }

    #[test]
    fn point_at_infinity() {
        let k = Field::prime(7).unwrap();
        let (u, v) = (BiPoly::u(&k), BiPoly::v(&k));
        let x = SurfacePoint {
            chart: Chart::UInfinity,
            field: k.clone(),
            coords: (k.zero(), k.zero()),
        };
        let r = parshin_point_verify(
            &rat(u.clone()),
            &rat(v.clone()),
            &rat(u.add(&v).add(&BiPoly::one(&k))),
            &x,
            &[],
            RetryPolicy::default(),
        )
        .unwrap();
        assert!(r.passed, "{r:?}");
        assert!(!r.entries.is_empty());
    }
}
