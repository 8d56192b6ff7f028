//! Graded lines, relative determinants of lattices in `k'((t))`, and the
//! commutator pairings computed from them.

use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldElem};
use crate::series::{LaurentSeries1, LaurentSeries2};
use crate::symbols::{tame1d, SymbolValue};

/// A graded line in coordinates: grading plus a nonzero scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLine {
    pub grading: i64,
    pub coord: FieldElem,
}

impl GradedLine {
    pub fn new(grading: i64, coord: FieldElem) -> Result<Self> {
        if coord.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(GradedLine { grading, coord })
    }

    pub fn unit(field: &Field) -> Self {
        GradedLine {
            grading: 0,
            coord: FieldElem::new(field, field.one()),
        }
    }
}

pub fn gl_tensor(a: &GradedLine, b: &GradedLine) -> Result<GradedLine> {
    if a.coord.field != b.coord.field {
        return Err(Error::SpecMismatch(
            "graded lines over different fields".into(),
        ));
    }
    let k = &a.coord.field;
    Ok(GradedLine {
        grading: a.grading + b.grading,
        coord: FieldElem::new(k, k.mul(&a.coord.value, &b.coord.value)),
    })
}

/// Koszul sign `(-1)^(n1 n2)` of the symmetry `a (x) b -> b (x) a`.
pub fn gl_braid_sign(a: &GradedLine, b: &GradedLine) -> FieldElem {
    let k = &a.coord.field;
    FieldElem::new(k, k.sign(a.grading * b.grading))
}

/// The lattice `t^shift k'[[t]]`, with `[k':k] = ext_degree`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeSpec {
    pub shift: i64,
    pub ext_degree: usize,
}

impl LatticeSpec {
    pub fn new(shift: i64, ext_degree: usize) -> Result<Self> {
        if ext_degree == 0 {
            return Err(Error::InvalidField(
                "extension degree must be positive".into(),
            ));
        }
        Ok(LatticeSpec { shift, ext_degree })
    }

    /// The standard lattice for series over `field`.
    pub fn standard(field: &Field, shift: i64) -> Self {
        LatticeSpec {
            shift,
            ext_degree: field.degree(),
        }
    }
}

/// Graded line of the pair `(L1, L2)`: coordinate one, grading `[k':k](m1 - m2)`.
pub fn rel_det(l1: &LatticeSpec, l2: &LatticeSpec, field: &Field) -> Result<GradedLine> {
    if l1.ext_degree != l2.ext_degree {
        return Err(Error::SpecMismatch(
            "lattices in different ambient fields".into(),
        ));
    }
    let k = ground(field);
    Ok(GradedLine {
        grading: l1.ext_degree as i64 * (l1.shift - l2.shift),
        coord: FieldElem::new(&k, k.one()),
    })
}

/// The field `k` over which determinants are taken.
fn ground(field: &Field) -> Field {
    field.base().cloned().unwrap_or_else(|| field.clone())
}

/// Columns of multiplication by `a` on `K` over its base, in the basis `1, z, ...`.
fn mult_matrix(field: &Field, a: &Elem) -> Vec<Vec<Elem>> {
    let d = field.degree();
    if !field.is_extension() {
        return vec![vec![a.clone()]];
    }
    let z = field.generator().expect("extension");
    let mut cols = Vec::with_capacity(d);
    let mut x = a.clone();
    for _ in 0..d {
        cols.push(field.to_base_coeffs(&x));
        x = field.mul(&x, &z);
    }
    cols
}

/// Determinant by Gaussian elimination.
fn determinant(k: &Field, mut m: Vec<Vec<Elem>>) -> Elem {
    let n = m.len();
    let mut det = k.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !k.is_zero(&m[r][c])) else {
            return k.zero();
        };
        if p != c {
            m.swap(p, c);
            det = k.neg(&det);
        }
        let piv = m[c][c].clone();
        det = k.mul(&det, &piv);
        let inv = k.inv(&piv).expect("nonzero pivot");
        for r in c + 1..n {
            if k.is_zero(&m[r][c]) {
                continue;
            }
            let factor = k.mul(&m[r][c], &inv);
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][c..n].iter_mut().zip(&top[c][c..n]) {
                *x = k.sub(x, &k.mul(&factor, y));
            }
        }
    }
    det
}

/// Determinant of multiplication by `f` from `t^m O / t^depth O` to
/// `t^(m+v(f)) O / t^(depth+v(f)) O`, over the ground field, in monomial bases
/// ordered by `t`-exponent and then by the basis `1, z, ...` of `k'`.
pub fn det_action(f: &LaurentSeries1, l: &LatticeSpec, depth: i64) -> Result<FieldElem> {
    let field = f.field();
    if l.ext_degree != field.degree() {
        return Err(Error::SpecMismatch(format!(
            "lattice has extension degree {} but the series field has degree {}",
            l.ext_degree,
            field.degree()
        )));
    }
    let k = ground(field);
    let nu = f.valuation()?;
    let n = (depth - l.shift).max(0);
    if f.rel_prec() < n {
        return Err(Error::PrecisionExhausted(format!(
            "window of dimension {n} needs relative precision {n}, have {}",
            f.rel_prec()
        )));
    }
    let d = l.ext_degree;
    let size = n as usize * d;
    let mut m = vec![vec![k.zero(); size]; size];
    for j in 0..n as usize {
        for i in j..n as usize {
            let c = f.coeff(nu + (i - j) as i64).expect("checked precision");
            if field.is_zero(&c) {
                continue;
            }
            let block = mult_matrix(field, &c);
            for (bj, col) in block.iter().enumerate() {
                for (bi, x) in col.iter().enumerate() {
                    m[i * d + bi][j * d + bj] = x.clone();
                }
            }
        }
    }
    Ok(FieldElem::new(&k, determinant(&k, m)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommReport {
    pub value: FieldElem,
    pub depth_used: i64,
    pub lattice_used: LatticeSpec,
}

/// Extra depth beyond `m + |v(f)| + |v(g)|` required by [`comm1d`].
pub const DEPTH_MARGIN: i64 = 4;

/// Commutator of multiplication by `f` and `g` on the determinant line of `L`.
///
/// Unwinds `Det(L|fgL) -> Det(L|fL) (x) Det(fL|fgL) -> (braid) -> ... -> Det(L|gfL)`
/// into four determinants of finite windows and one Koszul sign.
pub fn comm1d(
    f: &LaurentSeries1,
    g: &LaurentSeries1,
    l: &LatticeSpec,
    depth: i64,
) -> Result<CommReport> {
    if f.field() != g.field() {
        return Err(Error::SpecMismatch("series over different fields".into()));
    }
    let field = f.field();
    let nf = f.valuation()?;
    let ng = g.valuation()?;
    let required = l.shift + nf.abs() + ng.abs() + DEPTH_MARGIN;
    if depth < required {
        return Err(Error::DepthTooShallow { depth, required });
    }
    let k = ground(field);
    let fl = LatticeSpec {
        shift: l.shift + nf,
        ..*l
    };
    let gl = LatticeSpec {
        shift: l.shift + ng,
        ..*l
    };
    // All windows share the bottom t^depth O.
    let f_on_gl = det_action(f, &gl, depth)?;
    let g_on_l = det_action(g, l, depth)?;
    let f_on_l = det_action(f, l, depth)?;
    let g_on_fl = det_action(g, &fl, depth)?;
    let num = k.mul(&f_on_gl.value, &g_on_l.value);
    let den = k.mul(&f_on_l.value, &g_on_fl.value);
    let sign = gl_braid_sign(&rel_det(l, &fl, field)?, &rel_det(l, &gl, field)?);
    let value = k.mul(&sign.value, &k.div(&num, &den)?);
    Ok(CommReport {
        value: FieldElem::new(&k, value),
        depth_used: depth,
        lattice_used: *l,
    })
}

/// The pairing `C_3(f, g, h)` by reduction to the basic cases against the
/// uniformizer `s`: units only, two units and `s`, one unit and `s, s`.
pub fn c3_reduce(f: &LaurentSeries2, g: &LaurentSeries2, h: &LaurentSeries2) -> Result<FieldElem> {
    let k = f.field();
    if g.field() != k || h.field() != k {
        return Err(Error::SpecMismatch("series over different fields".into()));
    }
    // f = u_f s^a and so on; only the residues of the units matter.
    let (a, uf) = f.reduce()?;
    let (b, ug) = g.reduce()?;
    let (c, uh) = h.reduce()?;
    let pair = |x: &LaurentSeries1, y: &LaurentSeries1, e: i64| -> Result<Elem> {
        if e == 0 {
            return Ok(k.one());
        }
        k.pow(tame1d(x, y)?.elem(), e)
    };
    // {u_f,u_g,s}^c {u_f,s,u_h}^b {s,u_g,u_h}^a, each moved to (unit, unit, s).
    let mut v = pair(&uf, &ug, c)?;
    v = k.mul(&v, &pair(&uf, &uh, -b)?);
    v = k.mul(&v, &pair(&ug, &uh, a)?);
    // {u_f,s,s}^(bc) {s,u_g,s}^(ac) {s,s,u_h}^(ab); each is +-1.
    let e = uf.valuation()? * b * c + ug.valuation()? * a * c + uh.valuation()? * a * b;
    v = k.mul(&v, &k.sign(e));
    Ok(SymbolValue::new(k, v).norm())
}
