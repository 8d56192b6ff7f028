//! Truncated Laurent series in one variable `t` and iterated series in `t`, `s`.
//!
//! A series stores its coefficients from the first nonzero one up to an absolute
//! precision bound: every exponent below `abs_prec` is known exactly. A series
//! whose whole window is zero is kept as a distinct state and never mistaken
//! for the exact zero, which has its own sentinel.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{ArithOp, Elem, Field};
use crate::poly::Poly;

/// Precision marker of the exact zero.
pub const PREC_INF: i64 = i64::MAX / 4;

/// Element of `k((t))` known modulo `t^abs_prec`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries1 {
    field: Field,
    val: i64,
    coeffs: Vec<Elem>,
    abs_prec: i64,
}

impl LaurentSeries1 {
    /// Builds `sum coeffs[i] t^(val+i) + O(t^abs_prec)`. Missing coefficients
    /// below `abs_prec` are zero, extra ones are dropped.
    pub fn new(field: &Field, val: i64, mut coeffs: Vec<Elem>, abs_prec: i64) -> Self {
        if val >= abs_prec {
            return Self::zero(field, abs_prec);
        }
        let len = (abs_prec - val) as usize;
        coeffs.resize(len, field.zero());
        let mut s = LaurentSeries1 {
            field: field.clone(),
            val,
            coeffs,
            abs_prec,
        };
        s.normalize();
        s
    }

    /// `O(t^abs_prec)`.
    pub fn zero(field: &Field, abs_prec: i64) -> Self {
        LaurentSeries1 {
            field: field.clone(),
            val: abs_prec,
            coeffs: Vec::new(),
            abs_prec,
        }
    }

    pub fn exact_zero(field: &Field) -> Self {
        Self::zero(field, PREC_INF)
    }

    pub fn constant(field: &Field, c: Elem, abs_prec: i64) -> Self {
        Self::new(field, 0, vec![c], abs_prec)
    }

    pub fn one(field: &Field, abs_prec: i64) -> Self {
        Self::constant(field, field.one(), abs_prec)
    }

    /// `c t^n + O(t^abs_prec)`.
    pub fn monomial(field: &Field, c: Elem, n: i64, abs_prec: i64) -> Self {
        Self::new(field, n, vec![c], abs_prec)
    }

    /// The uniformizer with relative precision `rel_prec`.
    pub fn t(field: &Field, rel_prec: i64) -> Self {
        Self::monomial(field, field.one(), 1, 1 + rel_prec)
    }

    /// A polynomial in `t` with relative precision `rel_prec`; the zero
    /// polynomial maps to the exact zero.
    pub fn from_poly(p: &Poly, rel_prec: i64) -> Self {
        match p.low_degree() {
            None => Self::exact_zero(p.field()),
            Some(lo) => {
                let lo = lo as i64;
                Self::new(
                    p.field(),
                    lo,
                    p.coeffs()[lo as usize..].to_vec(),
                    lo + rel_prec,
                )
            }
        }
    }

    fn normalize(&mut self) {
        let k = &self.field;
        let lead = self.coeffs.iter().position(|c| !k.is_zero(c));
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.abs_prec;
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.val += i as i64;
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Exponent of the first stored coefficient (equals `abs_prec` for a zero window).
    pub fn val(&self) -> i64 {
        self.val
    }

    pub fn abs_prec(&self) -> i64 {
        self.abs_prec
    }

    pub fn rel_prec(&self) -> i64 {
        self.abs_prec - self.val
    }

    /// Coefficients of `t^val, t^(val+1), ...` up to `abs_prec`.
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_exact_zero(&self) -> bool {
        self.abs_prec >= PREC_INF
    }

    /// True when no nonzero coefficient is known (including the exact zero).
    pub fn is_zero_window(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^n`, or `None` when `n` is beyond the precision.
    pub fn coeff(&self, n: i64) -> Option<Elem> {
        if n >= self.abs_prec {
            None
        } else if n < self.val {
            Some(self.field.zero())
        } else {
            Some(self.coeffs[(n - self.val) as usize].clone())
        }
    }

    pub fn valuation(&self) -> Result<i64> {
        if self.is_zero_window() {
            Err(Error::IndistinguishableFromZero)
        } else {
            Ok(self.val)
        }
    }

    /// Leading coefficient, i.e. the residue of `a t^(-v(a))`.
    pub fn residue_unit(&self) -> Result<Elem> {
        self.coeffs
            .first()
            .cloned()
            .ok_or(Error::IndistinguishableFromZero)
    }

    pub fn neg(&self) -> Self {
        let k = &self.field;
        LaurentSeries1 {
            field: k.clone(),
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| k.neg(c)).collect(),
            abs_prec: self.abs_prec,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_exact_zero() {
            return other.clone();
        }
        if other.is_exact_zero() {
            return self.clone();
        }
        let k = &self.field;
        let prec = self.abs_prec.min(other.abs_prec);
        let lo = self.val.min(other.val);
        if lo >= prec {
            return Self::zero(k, prec);
        }
        let v = (lo..prec)
            .map(|n| k.add(&self.coeff(n).unwrap(), &other.coeff(n).unwrap()))
            .collect();
        Self::new(k, lo, v, prec)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let k = &self.field;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::exact_zero(k);
        }
        let val = self.val + other.val;
        let prec = (self.abs_prec + other.val).min(other.abs_prec + self.val);
        let n = (prec - val).max(0) as usize;
        let (a, b) = (&self.coeffs, &other.coeffs);
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = k.zero();
            let jlo = i.saturating_sub(b.len().saturating_sub(1));
            for j in jlo..=i.min(a.len().saturating_sub(1)) {
                if i - j < b.len() {
                    acc = k.add(&acc, &k.mul(&a[j], &b[i - j]));
                }
            }
            v.push(acc);
        }
        Self::new(k, val, v, prec)
    }

    pub fn scale(&self, c: &Elem) -> Self {
        let k = &self.field;
        if k.is_zero(c) {
            return Self::exact_zero(k);
        }
        LaurentSeries1 {
            field: k.clone(),
            val: self.val,
            coeffs: self.coeffs.iter().map(|x| k.mul(x, c)).collect(),
            abs_prec: self.abs_prec,
        }
    }

    /// Multiplication by `t^n`.
    pub fn shift(&self, n: i64) -> Self {
        if self.is_exact_zero() {
            return self.clone();
        }
        LaurentSeries1 {
            field: self.field.clone(),
            val: self.val + n,
            coeffs: self.coeffs.clone(),
            abs_prec: self.abs_prec + n,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let k = &self.field;
        let u = &self.coeffs;
        if u.is_empty() {
            return Err(Error::ZeroDivisor);
        }
        let n = u.len();
        let b0 = k.inv(&u[0])?;
        let mut b = Vec::with_capacity(n);
        b.push(b0.clone());
        for m in 1..n {
            let mut acc = k.zero();
            for i in 1..=m {
                acc = k.add(&acc, &k.mul(&u[i], &b[m - i]));
            }
            b.push(k.neg(&k.mul(&b0, &acc)));
        }
        Ok(Self::new(k, -self.val, b, -self.val + n as i64))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    /// Integer power by square-and-multiply; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let k = &self.field;
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if e == 0 {
            if self.is_zero_window() {
                return Err(Error::IndistinguishableFromZero);
            }
            return Ok(Self::one(k, self.rel_prec()));
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.unwrap())
    }

    /// Drops coefficients at and above `prec`.
    pub fn truncate(&self, prec: i64) -> Self {
        if prec >= self.abs_prec {
            return self.clone();
        }
        Self::new(&self.field, self.val, self.coeffs.clone(), prec)
    }

    /// True if both series have the same coefficients on their common window.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let prec = self.abs_prec.min(other.abs_prec);
        if prec >= PREC_INF {
            return self.is_exact_zero() == other.is_exact_zero();
        }
        let lo = self.val.min(other.val).min(prec);
        (lo..prec).all(|n| self.coeff(n) == other.coeff(n))
    }

    /// Image of the coefficients in an extension of the field.
    pub fn base_change(&self, to: &Field) -> Result<Self> {
        let v = self
            .coeffs
            .iter()
            .map(|c| to.embed_from(&self.field, c))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentSeries1 {
            field: to.clone(),
            val: self.val,
            coeffs: v,
            abs_prec: self.abs_prec,
        })
    }

    /// Evaluates a polynomial at this series.
    pub fn eval_poly(&self, p: &Poly) -> Result<Self> {
        let k = &self.field;
        let p = p.base_change(k)?;
        if self.is_exact_zero() {
            return Err(Error::DegenerateSubstitution(
                "evaluation at the exact zero".into(),
            ));
        }
        // Constants at this precision never lower the precision of the result.
        let cprec = self.abs_prec.max(1);
        let mut acc = Self::exact_zero(k);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self);
            if !k.is_zero(c) {
                acc = acc.add(&Self::constant(k, c.clone(), cprec));
            }
        }
        Ok(acc)
    }

    pub fn to_text(&self, var: &str) -> String {
        let k = &self.field;
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if k.is_zero(c) {
                continue;
            }
            let e = self.val + i as i64;
            let cs = k.format(c);
            let cs = if cs.contains(['+', '/']) {
                format!("({cs})")
            } else {
                cs
            };
            terms.push(match e {
                0 => cs,
                1 => format!("{cs}*{var}"),
                _ => format!("{cs}*{var}^{e}"),
            });
        }
        if !self.is_exact_zero() {
            terms.push(format!("O({var}^{})", self.abs_prec));
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Debug for LaurentSeries1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

impl fmt::Display for LaurentSeries1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("t"))
    }
}

/// Checked binary arithmetic on one-variable series.
pub fn ls1_arith(a: &LaurentSeries1, b: &LaurentSeries1, op: ArithOp) -> Result<LaurentSeries1> {
    if a.field() != b.field() {
        return Err(Error::SpecMismatch(format!(
            "{} vs {}",
            a.field().spec_string(),
            b.field().spec_string()
        )));
    }
    let r = match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.div(b)?,
    };
    if r.is_zero_window() && !r.is_exact_zero() {
        return Err(Error::PrecisionExhausted(format!(
            "result is zero modulo t^{}",
            r.abs_prec()
        )));
    }
    Ok(r)
}

/// Element of `k((t))((s))` known modulo `s^s_abs_prec`.
///
/// Each stored coefficient carries its own `t`-precision.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentSeries2 {
    field: Field,
    s_val: i64,
    s_coeffs: Vec<LaurentSeries1>,
    s_abs_prec: i64,
}

impl LaurentSeries2 {
    /// Builds `sum coeffs[j] s^(s_val+j) + O(s^s_abs_prec)`.
    ///
    /// Leading exact zeros are stripped. A leading coefficient that is only
    /// known to vanish to finite precision leaves `nu_1` undetermined and is
    /// reported as [`Error::PrecisionExhausted`].
    pub fn new(
        field: &Field,
        s_val: i64,
        mut s_coeffs: Vec<LaurentSeries1>,
        s_abs_prec: i64,
    ) -> Result<Self> {
        if s_val >= s_abs_prec {
            return Ok(Self::zero(field, s_abs_prec));
        }
        let len = (s_abs_prec - s_val) as usize;
        s_coeffs.truncate(len);
        while s_coeffs.len() < len {
            s_coeffs.push(LaurentSeries1::exact_zero(field));
        }
        let lead = s_coeffs.iter().position(|c| !c.is_exact_zero());
        match lead {
            None => Ok(Self::zero(field, s_abs_prec)),
            Some(i) => {
                if s_coeffs[i].is_zero_window() {
                    return Err(Error::PrecisionExhausted(format!(
                        "coefficient of s^{} vanishes modulo t^{}",
                        s_val + i as i64,
                        s_coeffs[i].abs_prec()
                    )));
                }
                s_coeffs.drain(..i);
                Ok(LaurentSeries2 {
                    field: field.clone(),
                    s_val: s_val + i as i64,
                    s_coeffs,
                    s_abs_prec,
                })
            }
        }
    }

    /// `O(s^s_abs_prec)`.
    pub fn zero(field: &Field, s_abs_prec: i64) -> Self {
        LaurentSeries2 {
            field: field.clone(),
            s_val: s_abs_prec,
            s_coeffs: Vec::new(),
            s_abs_prec,
        }
    }

    pub fn exact_zero(field: &Field) -> Self {
        Self::zero(field, PREC_INF)
    }

    /// An element of `k((t))` viewed as a constant in `s`.
    pub fn from_inner(a: LaurentSeries1, s_rel_prec: i64) -> Result<Self> {
        let k = a.field().clone();
        if a.is_exact_zero() {
            return Ok(Self::exact_zero(&k));
        }
        Self::new(&k, 0, vec![a], s_rel_prec)
    }

    /// `t` with precision `prec` in both variables.
    pub fn t(field: &Field, prec: i64) -> Self {
        Self::from_inner(LaurentSeries1::t(field, prec), prec).expect("nonzero")
    }

    /// `s` with precision `prec` in both variables.
    pub fn s(field: &Field, prec: i64) -> Self {
        Self::new(field, 1, vec![LaurentSeries1::one(field, prec)], 1 + prec).expect("nonzero")
    }

    pub fn constant(field: &Field, c: Elem, prec: i64) -> Self {
        if field.is_zero(&c) {
            return Self::exact_zero(field);
        }
        Self::from_inner(LaurentSeries1::constant(field, c, prec), prec).expect("nonzero")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn s_val(&self) -> i64 {
        self.s_val
    }

    pub fn s_abs_prec(&self) -> i64 {
        self.s_abs_prec
    }

    pub fn s_rel_prec(&self) -> i64 {
        self.s_abs_prec - self.s_val
    }

    pub fn s_coeffs(&self) -> &[LaurentSeries1] {
        &self.s_coeffs
    }

    /// Smallest absolute `t`-precision among the stored coefficients.
    pub fn inner_prec(&self) -> i64 {
        self.s_coeffs
            .iter()
            .map(|c| c.abs_prec())
            .min()
            .unwrap_or(PREC_INF)
    }

    pub fn is_exact_zero(&self) -> bool {
        self.s_abs_prec >= PREC_INF
    }

    pub fn is_zero_window(&self) -> bool {
        self.s_coeffs.is_empty()
    }

    /// Coefficient of `s^n`, or `None` beyond the precision.
    pub fn coeff(&self, n: i64) -> Option<LaurentSeries1> {
        if n >= self.s_abs_prec {
            None
        } else if n < self.s_val {
            Some(LaurentSeries1::exact_zero(&self.field))
        } else {
            Some(self.s_coeffs[(n - self.s_val) as usize].clone())
        }
    }

    /// The outer valuation `nu_1`.
    pub fn valuation_s(&self) -> Result<i64> {
        if self.is_zero_window() {
            Err(Error::IndistinguishableFromZero)
        } else {
            Ok(self.s_val)
        }
    }

    /// `(nu_1(a), residue of a s^(-nu_1(a)))`.
    pub fn reduce(&self) -> Result<(i64, LaurentSeries1)> {
        let v = self.valuation_s()?;
        Ok((v, self.s_coeffs[0].clone()))
    }

    pub fn neg(&self) -> Self {
        LaurentSeries2 {
            field: self.field.clone(),
            s_val: self.s_val,
            s_coeffs: self.s_coeffs.iter().map(|c| c.neg()).collect(),
            s_abs_prec: self.s_abs_prec,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_exact_zero() {
            return Ok(other.clone());
        }
        if other.is_exact_zero() {
            return Ok(self.clone());
        }
        let prec = self.s_abs_prec.min(other.s_abs_prec);
        let lo = self.s_val.min(other.s_val);
        if lo >= prec {
            return Ok(Self::zero(&self.field, prec));
        }
        let v = (lo..prec)
            .map(|n| self.coeff(n).unwrap().add(&other.coeff(n).unwrap()))
            .collect();
        Self::new(&self.field, lo, v, prec)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let k = &self.field;
        if self.is_exact_zero() || other.is_exact_zero() {
            return Ok(Self::exact_zero(k));
        }
        let val = self.s_val + other.s_val;
        let prec = (self.s_abs_prec + other.s_val).min(other.s_abs_prec + self.s_val);
        let n = (prec - val).max(0) as usize;
        let (a, b) = (&self.s_coeffs, &other.s_coeffs);
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = LaurentSeries1::exact_zero(k);
            for j in 0..=i {
                if j < a.len() && i - j < b.len() {
                    acc = acc.add(&a[j].mul(&b[i - j]));
                }
            }
            v.push(acc);
        }
        Self::new(k, val, v, prec)
    }

    /// Multiplication by an element of `k((t))`.
    pub fn mul_inner(&self, c: &LaurentSeries1) -> Result<Self> {
        if c.is_exact_zero() {
            return Ok(Self::exact_zero(&self.field));
        }
        let v = self.s_coeffs.iter().map(|x| x.mul(c)).collect();
        Self::new(&self.field, self.s_val, v, self.s_abs_prec)
    }

    /// Multiplication by `s^n`.
    pub fn shift_s(&self, n: i64) -> Self {
        if self.is_exact_zero() {
            return self.clone();
        }
        LaurentSeries2 {
            field: self.field.clone(),
            s_val: self.s_val + n,
            s_coeffs: self.s_coeffs.clone(),
            s_abs_prec: self.s_abs_prec + n,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        let a = &self.s_coeffs;
        if a.is_empty() {
            return Err(Error::ZeroDivisor);
        }
        let n = a.len();
        let b0 = a[0].inv()?;
        let mut b: Vec<LaurentSeries1> = Vec::with_capacity(n);
        b.push(b0.clone());
        for m in 1..n {
            let mut acc = LaurentSeries1::exact_zero(&self.field);
            for i in 1..=m {
                acc = acc.add(&a[i].mul(&b[m - i]));
            }
            b.push(b0.mul(&acc).neg());
        }
        Self::new(&self.field, -self.s_val, b, -self.s_val + n as i64)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        if e == 0 {
            if self.is_zero_window() {
                return Err(Error::IndistinguishableFromZero);
            }
            let one = LaurentSeries1::one(&self.field, self.s_coeffs[0].rel_prec());
            return Self::from_inner(one, self.s_rel_prec());
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base)?,
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc.unwrap())
    }

    /// True if both agree on the common window in both variables.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let prec = self.s_abs_prec.min(other.s_abs_prec);
        if prec >= PREC_INF {
            return self.is_exact_zero() == other.is_exact_zero();
        }
        let lo = self.s_val.min(other.s_val).min(prec);
        (lo..prec).all(|n| self.coeff(n).unwrap().agrees_with(&other.coeff(n).unwrap()))
    }

    pub fn base_change(&self, to: &Field) -> Result<Self> {
        let v = self
            .s_coeffs
            .iter()
            .map(|c| c.base_change(to))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentSeries2 {
            field: to.clone(),
            s_val: self.s_val,
            s_coeffs: v,
            s_abs_prec: self.s_abs_prec,
        })
    }

    /// Exponent-sorted text `c*t^i*s^j`.
    pub fn to_text(&self) -> String {
        let k = &self.field;
        let mut terms = Vec::new();
        for (j, c) in self.s_coeffs.iter().enumerate() {
            let sj = self.s_val + j as i64;
            let smono = match sj {
                0 => String::new(),
                1 => "s".to_string(),
                _ => format!("s^{sj}"),
            };
            for (i, a) in c.coeffs().iter().enumerate() {
                if k.is_zero(a) {
                    continue;
                }
                let ti = c.val() + i as i64;
                let cs = k.format(a);
                let mut parts = vec![if cs.contains(['+', '/']) {
                    format!("({cs})")
                } else {
                    cs
                }];
                match ti {
                    0 => {}
                    1 => parts.push("t".into()),
                    _ => parts.push(format!("t^{ti}")),
                }
                if !smono.is_empty() {
                    parts.push(smono.clone());
                }
                terms.push(parts.join("*"));
            }
            if !c.is_exact_zero() {
                let o = if smono.is_empty() {
                    format!("O(t^{})", c.abs_prec())
                } else {
                    format!("O(t^{})*{smono}", c.abs_prec())
                };
                terms.push(o);
            }
        }
        if !self.is_exact_zero() {
            terms.push(format!("O(s^{})", self.s_abs_prec));
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

impl fmt::Debug for LaurentSeries2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for LaurentSeries2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Checked binary arithmetic on iterated series.
pub fn ls2_arith(a: &LaurentSeries2, b: &LaurentSeries2, op: ArithOp) -> Result<LaurentSeries2> {
    if a.field() != b.field() {
        return Err(Error::SpecMismatch(format!(
            "{} vs {}",
            a.field().spec_string(),
            b.field().spec_string()
        )));
    }
    let r = match op {
        ArithOp::Add => a.add(b)?,
        ArithOp::Sub => a.sub(b)?,
        ArithOp::Mul => a.mul(b)?,
        ArithOp::Div => a.div(b)?,
    };
    if r.is_zero_window() && !r.is_exact_zero() {
        return Err(Error::PrecisionExhausted(format!(
            "result is zero modulo s^{}",
            r.s_abs_prec()
        )));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn ls(k: &Field, val: i64, c: &[i64], prec: i64) -> LaurentSeries1 {
        LaurentSeries1::new(k, val, c.iter().map(|x| k.from_i64(*x)).collect(), prec)
    }

    #[test]
    fn worked_ls1_examples() {
        let k = f(7);
        let t = LaurentSeries1::t(&k, 8);
        let p = t.mul(&t.inv().unwrap());
        assert_eq!(p.val(), 0);
        assert_eq!(p.residue_unit().unwrap(), k.one());

        let one_minus_t = ls(&k, 0, &[1, -1], 4);
        let g = one_minus_t.inv().unwrap();
        assert_eq!(g, ls(&k, 0, &[1, 1, 1, 1], 4));

        let a = ls(&k, 0, &[2, 1], 2);
        let b = ls(&k, 0, &[3, 1], 2);
        assert_eq!(a.mul(&b), ls(&k, 0, &[6, 5], 2));
    }

    #[test]
    fn worked_valuation_and_residue() {
        let k = f(7);
        let a = ls(&k, 3, &[1, 1], 10);
        assert_eq!(a.valuation().unwrap(), 3);
        let b = ls(&k, 2, &[1, 1], 10).inv().unwrap();
        assert_eq!(b.valuation().unwrap(), -2);
        assert_eq!(
            LaurentSeries1::constant(&k, k.from_i64(5), 4)
                .valuation()
                .unwrap(),
            0
        );
        assert_eq!(
            ls(&k, 2, &[4, 1], 10).residue_unit().unwrap(),
            k.from_i64(4)
        );
        let k5 = f(5);
        assert_eq!(
            ls(&k5, 0, &[2, 1], 6)
                .inv()
                .unwrap()
                .residue_unit()
                .unwrap(),
            k5.from_i64(3)
        );
        assert_eq!(ls(&k5, -1, &[1, 1], 6).residue_unit().unwrap(), k5.one());
    }

    #[test]
    fn zero_windows_are_flagged() {
        let k = f(5);
        let a = ls(&k, 0, &[1, 2], 3);
        let z = a.sub(&a);
        assert!(z.is_zero_window());
        assert!(!z.is_exact_zero());
        assert_eq!(z.valuation(), Err(Error::IndistinguishableFromZero));
        assert_eq!(z.inv(), Err(Error::ZeroDivisor));
        assert!(matches!(
            ls1_arith(&a, &a, ArithOp::Sub),
            Err(Error::PrecisionExhausted(_))
        ));
    }

    #[test]
    fn worked_ls2_reduce_examples() {
        let k = f(5);
        let p = 8;
        let t = LaurentSeries2::t(&k, p);
        let s = LaurentSeries2::s(&k, p);
        let x = s.pow(2).unwrap().mul(&t.add(&s).unwrap()).unwrap();
        let (v, r) = x.reduce().unwrap();
        assert_eq!(v, 2);
        assert!(r.agrees_with(&LaurentSeries1::t(&k, p)));

        let y = t.inv().unwrap().add(&s).unwrap();
        let (v, r) = y.reduce().unwrap();
        assert_eq!(v, 0);
        assert_eq!(r.valuation().unwrap(), -1);

        // 1/(s - t) = -t^-1 (1 + s/t + s^2/t^2 + ...)
        let z = s.sub(&t).unwrap().inv().unwrap();
        assert_eq!(z.s_val(), 0);
        for j in 0..4 {
            let c = z.coeff(j).unwrap();
            assert_eq!(c.valuation().unwrap(), -1 - j);
            assert_eq!(c.residue_unit().unwrap(), k.from_i64(-1));
        }
    }

    #[test]
    fn ls2_inverse_roundtrip() {
        let k = f(5);
        let t = LaurentSeries2::t(&k, 10);
        let s = LaurentSeries2::s(&k, 10);
        let x = t
            .add(&s.mul(&t.pow(-2).unwrap()).unwrap())
            .unwrap()
            .add(&LaurentSeries2::constant(&k, k.from_i64(3), 10))
            .unwrap();
        let one = x.mul(&x.inv().unwrap()).unwrap();
        assert!(one.agrees_with(&LaurentSeries2::constant(&k, k.one(), 10)));
    }

    #[test]
    fn cancelling_leading_coefficient_is_reported() {
        let k = f(5);
        let one = LaurentSeries2::constant(&k, k.one(), 4);
        let s = LaurentSeries2::s(&k, 4);
        let a = one.add(&s).unwrap();
        assert!(matches!(a.sub(&one), Err(Error::PrecisionExhausted(_))));
    }

    #[test]
    fn text_form() {
        let k = f(5);
        let a = ls(&k, -1, &[2, 0, 1], 2);
        assert_eq!(a.to_string(), "2*t^-1 + 1*t + O(t^2)");
    }
}
