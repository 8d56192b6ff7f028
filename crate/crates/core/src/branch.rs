//! Formal branches of plane curves and expansion of rational functions along them.
//!
//! A branch through `(u0, v0)` gives local coordinates `(t, s)`: `t` runs along
//! the branch and `s` is a transverse equation. A function then expands as an
//! element of `k((t))((s))`.

use crate::bivariate::{BiPoly, BivariateRational};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;
use crate::series::{LaurentSeries1, LaurentSeries2};

/// A branch coordinate: an exact polynomial in `t`, or a truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchSeries {
    Exact(Poly),
    Truncated(LaurentSeries1),
}

impl BranchSeries {
    pub fn to_series(&self, t_prec: i64) -> LaurentSeries1 {
        match self {
            BranchSeries::Exact(p) => LaurentSeries1::from_poly(p, t_prec),
            BranchSeries::Truncated(s) => s.clone(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, BranchSeries::Exact(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BranchKind {
    /// `u = u0 + t`, `v = v0 + phi(t) + s` with `phi(0) = 0`.
    GraphV(BranchSeries),
    /// `u = u0 + psi(t) + s`, `v = v0 + t` with `psi(0) = 0`.
    GraphU(BranchSeries),
    /// `u = x(t)`, `v = y(t)` with `x(0) = u0`, `y(0) = v0`; the transverse
    /// coordinate is the branch's local equation.
    ExplicitParam { x: BranchSeries, y: BranchSeries },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchDescriptor {
    pub kind: BranchKind,
    /// Field containing the center coordinates and the branch coefficients.
    pub field: Field,
    pub center: (Elem, Elem),
    /// Polynomial whose zero set carries the branch. Required for explicit
    /// parametrizations and for truncated graph branches of curves that divide
    /// an argument.
    pub curve: Option<BiPoly>,
}

impl BranchDescriptor {
    pub fn graph_v(field: &Field, center: (Elem, Elem), phi: BranchSeries) -> Self {
        BranchDescriptor {
            kind: BranchKind::GraphV(phi),
            field: field.clone(),
            center,
            curve: None,
        }
    }

    pub fn graph_u(field: &Field, center: (Elem, Elem), psi: BranchSeries) -> Self {
        BranchDescriptor {
            kind: BranchKind::GraphU(psi),
            field: field.clone(),
            center,
            curve: None,
        }
    }

    pub fn explicit(
        field: &Field,
        center: (Elem, Elem),
        x: BranchSeries,
        y: BranchSeries,
        equation: Option<BiPoly>,
    ) -> Self {
        BranchDescriptor {
            kind: BranchKind::ExplicitParam { x, y },
            field: field.clone(),
            center,
            curve: equation,
        }
    }

    pub fn with_curve(mut self, curve: BiPoly) -> Self {
        self.curve = Some(curve);
        self
    }

    /// Absolute coordinates `(u(t), v(t))` of the branch.
    pub fn param(&self, t_prec: i64) -> (LaurentSeries1, LaurentSeries1) {
        let k = &self.field;
        let (u0, v0) = &self.center;
        let c = |e: &Elem| LaurentSeries1::constant(k, e.clone(), t_prec);
        let t = LaurentSeries1::t(k, t_prec - 1);
        match &self.kind {
            BranchKind::GraphV(phi) => (c(u0).add(&t), c(v0).add(&phi.to_series(t_prec))),
            BranchKind::GraphU(psi) => (c(u0).add(&psi.to_series(t_prec)), c(v0).add(&t)),
            BranchKind::ExplicitParam { x, y } => (x.to_series(t_prec), y.to_series(t_prec)),
        }
    }

    /// Swaps the roles of `u` and `v`.
    fn swapped(&self) -> BranchDescriptor {
        let kind = match &self.kind {
            BranchKind::GraphV(p) => BranchKind::GraphU(p.clone()),
            BranchKind::GraphU(p) => BranchKind::GraphV(p.clone()),
            BranchKind::ExplicitParam { x, y } => BranchKind::ExplicitParam {
                x: y.clone(),
                y: x.clone(),
            },
        };
        BranchDescriptor {
            kind,
            field: self.field.clone(),
            center: (self.center.1.clone(), self.center.0.clone()),
            curve: self.curve.as_ref().map(|c| c.swap()),
        }
    }
}

fn binomial_rows(k: &Field, n: usize) -> Vec<Vec<Elem>> {
    let mut rows: Vec<Vec<Elem>> = vec![vec![k.one()]];
    for b in 1..=n {
        let prev = &rows[b - 1];
        let mut row = vec![k.one(); b + 1];
        for j in 1..b {
            row[j] = k.add(&prev[j - 1], &prev[j]);
        }
        rows.push(row);
    }
    rows
}

/// Coefficients `Q_j` of `s^j` in `B(u0 + t, v0 + phi(t) + s)`.
fn graph_v_coeffs(
    b: &BiPoly,
    center: &(Elem, Elem),
    phi: &BranchSeries,
    t_prec: i64,
) -> Vec<LaurentSeries1> {
    let k = b.field();
    let bt = b.translate(&center.0, &center.1);
    let d = match bt.deg_v() {
        None => return Vec::new(),
        Some(d) => d,
    };
    let binom = binomial_rows(k, d);
    match phi {
        BranchSeries::Exact(phi) => {
            let mut pw = vec![Poly::one(k)];
            for i in 1..=d {
                pw.push(pw[i - 1].mul(phi));
            }
            (0..=d)
                .map(|j| {
                    let mut q = Poly::zero(k);
                    for bb in j..=d {
                        let term = bt.v_coeff(bb).mul(&pw[bb - j]).scale(&binom[bb][j]);
                        q = q.add(&term);
                    }
                    LaurentSeries1::from_poly(&q, t_prec)
                })
                .collect()
        }
        BranchSeries::Truncated(phi) => {
            let one = LaurentSeries1::one(k, t_prec);
            let mut pw = vec![one];
            for i in 1..=d {
                pw.push(pw[i - 1].mul(phi));
            }
            (0..=d)
                .map(|j| {
                    let mut q = LaurentSeries1::exact_zero(k);
                    for bb in j..=d {
                        let c = LaurentSeries1::from_poly(&bt.v_coeff(bb), t_prec);
                        q = q.add(&c.mul(&pw[bb - j]).scale(&binom[bb][j]));
                    }
                    q
                })
                .collect()
        }
    }
}

fn ls2_from_coeffs(k: &Field, mut q: Vec<LaurentSeries1>, s_prec: i64) -> Result<LaurentSeries2> {
    let lead = q.iter().position(|c| !c.is_exact_zero()).ok_or_else(|| {
        Error::DegenerateSubstitution("function vanishes identically along the branch".into())
    })?;
    let abs = lead as i64 + s_prec;
    q.truncate(abs as usize);
    LaurentSeries2::new(k, 0, q, abs)
}

/// Expands a polynomial along a branch.
pub fn expand_poly_at_branch(
    b: &BiPoly,
    branch: &BranchDescriptor,
    s_prec: i64,
    t_prec: i64,
) -> Result<LaurentSeries2> {
    let k = &branch.field;
    let b = b.base_change(k)?;
    if b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if b.is_constant() {
        return Ok(LaurentSeries2::constant(
            k,
            b.coeff(0, 0),
            s_prec.max(t_prec),
        ));
    }
    match &branch.kind {
        BranchKind::GraphU(_) => {
            expand_poly_at_branch(&b.swap(), &branch.swapped(), s_prec, t_prec)
        }
        BranchKind::GraphV(phi) => {
            let curve = match &branch.curve {
                Some(c) => Some(c.base_change(k)?),
                None => None,
            };
            let (e, rest) = match &curve {
                Some(c) if !phi.is_exact() => b.multiplicity(c),
                _ => (0, b.clone()),
            };
            let mut out = ls2_from_coeffs(
                k,
                graph_v_coeffs(&rest, &branch.center, phi, t_prec),
                s_prec,
            )?;
            if e > 0 {
                // The curve vanishes on its own branch; its constant term is
                // zero exactly even though the series only shows a zero window.
                let c = curve.unwrap();
                let mut q = graph_v_coeffs(&c, &branch.center, phi, t_prec);
                q[0] = LaurentSeries1::exact_zero(k);
                let ce = ls2_from_coeffs(k, q, s_prec)?;
                out = out.mul(&ce.pow(e as i64)?)?;
            }
            Ok(out)
        }
        BranchKind::ExplicitParam { .. } => {
            let eq = branch.curve.as_ref().ok_or_else(|| {
                Error::DegenerateSubstitution("explicit branch without a local equation".into())
            })?;
            let eq = eq.base_change(k)?;
            let (e, rest) = b.multiplicity(&eq);
            let (x, y) = branch.param(t_prec);
            let mut acc = LaurentSeries1::exact_zero(k);
            for c in rest.v_coeffs().iter().rev() {
                acc = acc.mul(&y).add(&x.eval_poly(c)?);
            }
            if acc.is_zero_window() {
                return Err(Error::PrecisionExhausted(format!(
                    "residue along the explicit branch vanishes modulo t^{}",
                    acc.abs_prec()
                )));
            }
            // Only the leading term in s is determined by this construction.
            LaurentSeries2::new(k, e as i64, vec![acc], e as i64 + 1)
        }
    }
}

/// Expands `f` along `branch` as an element of `k((t))((s))`.
pub fn expand_at_branch(
    f: &BivariateRational,
    branch: &BranchDescriptor,
    s_prec: i64,
    t_prec: i64,
) -> Result<LaurentSeries2> {
    let k = &branch.field;
    let unit = k.embed_from(f.field(), f.unit())?;
    let mut acc = LaurentSeries2::constant(k, unit, s_prec.max(t_prec));
    for (p, e) in f.factors() {
        let x = expand_poly_at_branch(p, branch, s_prec, t_prec)?;
        acc = acc.mul(&x.pow(*e)?)?;
    }
    Ok(acc)
}

fn trunc(p: &Poly, n: usize) -> Poly {
    let v = p.coeffs().iter().take(n).cloned().collect();
    Poly::new(p.field().clone(), v)
}

fn inv_trunc(p: &Poly, n: usize) -> Result<Poly> {
    let k = p.field();
    let c0 = k.inv(&p.coeff(0))?;
    let mut b = vec![c0.clone()];
    for m in 1..n {
        let mut acc = k.zero();
        for i in 1..=m {
            acc = k.add(&acc, &k.mul(&p.coeff(i), &b[m - i]));
        }
        b.push(k.neg(&k.mul(&c0, &acc)));
    }
    Ok(Poly::new(k.clone(), b))
}

fn eval_w(q: &BiPoly, phi: &Poly, n: Option<usize>) -> Poly {
    let k = q.field();
    q.v_coeffs().iter().rev().fold(Poly::zero(k), |acc, c| {
        let r = acc.mul(phi).add(c);
        match n {
            Some(n) => trunc(&r, n),
            None => r,
        }
    })
}

/// Solves `Q(t, phi(t)) = 0` with `phi(0) = 0`, given `Q(0,0) = 0` and `dQ/dw(0,0) != 0`.
fn newton(q: &BiPoly, n: usize) -> Result<BranchSeries> {
    let k = q.field();
    let dq = q.d_v();
    let mut phi = Poly::zero(k);
    for _ in 0..n + 2 {
        let f = eval_w(q, &phi, Some(n));
        if f.is_zero() {
            break;
        }
        let d = eval_w(&dq, &phi, Some(n));
        let step = trunc(&f.mul(&inv_trunc(&d, n)?), n);
        phi = phi.sub(&step);
    }
    if eval_w(q, &phi, None).is_zero() {
        Ok(BranchSeries::Exact(phi))
    } else {
        Ok(BranchSeries::Truncated(LaurentSeries1::new(
            k,
            0,
            phi.coeffs().to_vec(),
            n as i64,
        )))
    }
}

/// The formal branch of `p` through a smooth point.
pub fn hensel_branch(
    p: &BiPoly,
    field: &Field,
    center: (Elem, Elem),
    t_prec: i64,
) -> Result<BranchDescriptor> {
    let p = p.base_change(field)?;
    let (u0, v0) = &center;
    if !field.is_zero(&p.eval(u0, v0)) {
        return Err(Error::NotOnCurve);
    }
    let n = t_prec.max(1) as usize;
    let dv = p.d_v().eval(u0, v0);
    let du = p.d_u().eval(u0, v0);
    let desc = if !field.is_zero(&dv) {
        let phi = newton(&p.translate(u0, v0), n)?;
        BranchDescriptor::graph_v(field, center.clone(), phi)
    } else if !field.is_zero(&du) {
        let psi = newton(&p.swap().translate(v0, u0), n)?;
        BranchDescriptor::graph_u(field, center.clone(), psi)
    } else {
        return Err(Error::SingularAtPoint);
    };
    Ok(desc.with_curve(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5() -> Field {
        Field::prime(5).unwrap()
    }

    fn origin(k: &Field) -> (Elem, Elem) {
        (k.zero(), k.zero())
    }

    #[test]
    fn worked_expansion_examples() {
        let k = k5();
        let u = BiPoly::u(&k);
        let v = BiPoly::v(&k);
        let axis = BranchDescriptor::graph_v(&k, origin(&k), BranchSeries::Exact(Poly::zero(&k)));
        let s = LaurentSeries2::s(&k, 8);
        let t = LaurentSeries2::t(&k, 8);
        let fv = BivariateRational::from_bipoly(v.clone()).unwrap();
        assert!(expand_at_branch(&fv, &axis, 8, 8).unwrap().agrees_with(&s));
        let fu = BivariateRational::from_bipoly(u.clone()).unwrap();
        assert!(expand_at_branch(&fu, &axis, 8, 8).unwrap().agrees_with(&t));

        let parab = v.sub(&u.pow(2));
        let br = hensel_branch(&parab, &k, origin(&k), 8).unwrap();
        assert_eq!(
            br.kind,
            BranchKind::GraphV(BranchSeries::Exact(Poly::monomial(&k, k.one(), 2)))
        );
        let f = BivariateRational::from_bipoly(parab).unwrap();
        assert!(expand_at_branch(&f, &br, 8, 8).unwrap().agrees_with(&s));
    }

    #[test]
    fn worked_hensel_examples() {
        let k = k5();
        let u = BiPoly::u(&k);
        let v = BiPoly::v(&k);
        let br = hensel_branch(&v, &k, origin(&k), 8).unwrap();
        assert_eq!(
            br.kind,
            BranchKind::GraphV(BranchSeries::Exact(Poly::zero(&k)))
        );
        let br = hensel_branch(&u.add(&v), &k, origin(&k), 8).unwrap();
        assert_eq!(
            br.kind,
            BranchKind::GraphV(BranchSeries::Exact(Poly::from_i64s(&k, &[0, -1])))
        );
        assert_eq!(
            hensel_branch(&u.add(&BiPoly::one(&k)), &k, origin(&k), 8),
            Err(Error::NotOnCurve)
        );
        assert_eq!(
            hensel_branch(&u.mul(&v), &k, origin(&k), 8),
            Err(Error::SingularAtPoint)
        );
        // u - v^2: dv vanishes, so the branch is a graph over v.
        let br = hensel_branch(&u.sub(&v.pow(2)), &k, origin(&k), 8).unwrap();
        assert!(matches!(br.kind, BranchKind::GraphU(_)));
    }

    #[test]
    fn truncated_branch_satisfies_equation() {
        let k = k5();
        let u = BiPoly::u(&k);
        let v = BiPoly::v(&k);
        // v + v^2 - u: phi = u - u^2 + 2u^3 - ... never terminates.
        let p = v.add(&v.pow(2)).sub(&u);
        let br = hensel_branch(&p, &k, origin(&k), 12).unwrap();
        let BranchKind::GraphV(BranchSeries::Truncated(phi)) = &br.kind else {
            panic!("expected a truncated branch, got {:?}", br.kind)
        };
        assert_eq!(phi.abs_prec(), 12);
        let (x, y) = br.param(12);
        let val = y.add(&y.mul(&y)).sub(&x);
        assert!(val.is_zero_window());
        assert!(val.abs_prec() >= 12);

        // Expanding the curve itself along its branch gives nu_1 = 1.
        let f = BivariateRational::from_bipoly(p.pow(2).mul(&u)).unwrap();
        let e = expand_at_branch(&f, &br, 8, 12).unwrap();
        let (nu, res) = e.reduce().unwrap();
        assert_eq!(nu, 2);
        assert_eq!(res.valuation().unwrap(), 1);
    }

    #[test]
    fn explicit_branch_of_a_node() {
        let k = k5();
        let u = BiPoly::u(&k);
        let v = BiPoly::v(&k);
        // v^2 = u^2 (u + 1); branch through T = 1 of u = T^2 - 1, v = T(T^2 - 1).
        let node = v.pow(2).sub(&u.pow(2).mul(&u.add(&BiPoly::one(&k))));
        let x = Poly::from_i64s(&k, &[0, 2, 1]);
        let y = Poly::from_i64s(&k, &[1, 1]).mul(&x);
        let br = BranchDescriptor::explicit(
            &k,
            origin(&k),
            BranchSeries::Exact(x),
            BranchSeries::Exact(y),
            Some(node.clone()),
        );
        let f = BivariateRational::from_bipoly(node.mul(&u)).unwrap();
        let e = expand_at_branch(&f, &br, 8, 8).unwrap();
        let (nu, res) = e.reduce().unwrap();
        assert_eq!(nu, 1);
        assert_eq!(res.valuation().unwrap(), 1);
        assert_eq!(res.residue_unit().unwrap(), k.from_i64(2));
    }
}
