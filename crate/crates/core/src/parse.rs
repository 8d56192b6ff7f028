//! Text input: field specs and arithmetic expressions.
//!
//! Grammar (whitespace is ignored):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' exponent)?
//! exponent := ['-'] integer | '(' ['-'] integer ')'
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Which identifiers are allowed depends on the target: `T` for univariate
//! functions, `u`, `v` for bivariate ones, `t`, `s` for series, and the
//! generator names of the field (the user field's generator is `a`).

use num_bigint::BigInt;

use crate::bivariate::{BiPoly, BivariateRational};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;
use crate::ratfun::RationalFunction;
use crate::series::{LaurentSeries1, LaurentSeries2};

pub const MAX_INPUT_LEN: usize = 4096;
pub const MAX_DEPTH: usize = 64;
pub const MAX_EXPONENT: i64 = 64;
/// Largest degree of a polynomial built while evaluating an expression.
pub const MAX_DEGREE: usize = 1024;
/// Largest `p^d` accepted in a field spec.
pub const MAX_FIELD_SIZE: u64 = crate::field::MAX_EXTENSION_SIZE;

/// Name of the generator of an extension field given on the command line.
pub const FIELD_GENERATOR: &str = "a";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    if src.len() > MAX_INPUT_LEN {
        return Err(Error::parse(
            0,
            format!("input longer than {MAX_INPUT_LEN} bytes"),
        ));
    }
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((st, Tok::Int(src[st..i].parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((st, Tok::Ident(src[st..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            let ch = src[i..].chars().next().unwrap();
            return Err(Error::parse(i, format!("unexpected character {ch:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(Error::parse(self.offset(), "expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Expr> {
        self.enter()?;
        let mut e = self.term()?;
        loop {
            if self.eat('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(e)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat('*') {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.eat('/') {
                e = Expr::Div(Box::new(e), Box::new(self.unary()?));
            } else {
                break;
            }
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr> {
        self.enter()?;
        let e = if self.eat('-') {
            Expr::Neg(Box::new(self.unary()?))
        } else if self.eat('+') {
            self.unary()?
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(e)
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let paren = self.eat('(');
        let neg = self.eat('-');
        let at = self.offset();
        let n = match self.peek() {
            Some(Tok::Int(n)) => n.clone(),
            _ => return Err(Error::parse(at, "expected an integer exponent")),
        };
        self.pos += 1;
        if paren && !self.eat(')') {
            return Err(Error::parse(self.offset(), "expected ')'"));
        }
        let n = i64::try_from(n)
            .ok()
            .filter(|n| *n <= MAX_EXPONENT)
            .ok_or_else(|| Error::parse(at, format!("exponent larger than {MAX_EXPONENT}")))?;
        Ok(Expr::Pow(Box::new(base), if neg { -n } else { n }))
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(Expr::Var(s))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::parse(self.offset(), "expected ')'"));
                }
                Ok(e)
            }
            Some(t) => Err(Error::parse(at, format!("unexpected token {t:?}"))),
            None => Err(Error::parse(at, "unexpected end of input")),
        }
    }
}

/// Parses an arithmetic expression into a syntax tree.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        depth: 0,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(p.offset(), "trailing input"));
    }
    Ok(e)
}

/// A target algebra for evaluating expressions.
trait Algebra {
    type V: Clone;
    fn int(&self, n: &BigInt) -> Result<Self::V>;
    fn var(&self, name: &str) -> Result<Self::V>;
    fn add(&self, a: Self::V, b: Self::V) -> Result<Self::V>;
    fn sub(&self, a: Self::V, b: Self::V) -> Result<Self::V>;
    fn mul(&self, a: Self::V, b: Self::V) -> Result<Self::V>;
    fn div(&self, a: Self::V, b: Self::V) -> Result<Self::V>;
    fn neg(&self, a: Self::V) -> Result<Self::V>;
    fn pow(&self, a: Self::V, e: i64) -> Result<Self::V>;
}

fn eval<A: Algebra>(alg: &A, e: &Expr) -> Result<A::V> {
    match e {
        Expr::Int(n) => alg.int(n),
        Expr::Var(s) => alg.var(s),
        Expr::Neg(a) => alg.neg(eval(alg, a)?),
        Expr::Add(a, b) => alg.add(eval(alg, a)?, eval(alg, b)?),
        Expr::Sub(a, b) => alg.sub(eval(alg, a)?, eval(alg, b)?),
        Expr::Mul(a, b) => alg.mul(eval(alg, a)?, eval(alg, b)?),
        Expr::Div(a, b) => alg.div(eval(alg, a)?, eval(alg, b)?),
        Expr::Pow(a, n) => alg.pow(eval(alg, a)?, *n),
    }
}

fn check_degree(d: usize) -> Result<()> {
    if d > MAX_DEGREE {
        return Err(Error::parse(0, format!("degree {d} exceeds {MAX_DEGREE}")));
    }
    Ok(())
}

fn ratfun_degree(f: &RationalFunction) -> usize {
    f.num().degree().unwrap_or(0) + f.den().degree().unwrap_or(0)
}

fn bi_degree(f: &Bi) -> usize {
    match f {
        Bi::Zero => 0,
        Bi::Rat(r) => r.num().total_degree().unwrap_or(0) + r.den().total_degree().unwrap_or(0),
    }
}

fn unknown(name: &str, allowed: &str) -> Error {
    Error::parse(0, format!("unknown variable {name:?} (allowed: {allowed})"))
}

fn constant(k: &Field, name: &str) -> Option<Elem> {
    k.find_generator(name)
}

struct Scalars<'a>(&'a Field);

impl Algebra for Scalars<'_> {
    type V = Elem;
    fn int(&self, n: &BigInt) -> Result<Elem> {
        Ok(self.0.from_bigint(n))
    }
    fn var(&self, name: &str) -> Result<Elem> {
        constant(self.0, name).ok_or_else(|| unknown(name, "field generators"))
    }
    fn add(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.0.add(&a, &b))
    }
    fn sub(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.0.sub(&a, &b))
    }
    fn mul(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.0.mul(&a, &b))
    }
    fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        self.0.div(&a, &b)
    }
    fn neg(&self, a: Elem) -> Result<Elem> {
        Ok(self.0.neg(&a))
    }
    fn pow(&self, a: Elem, e: i64) -> Result<Elem> {
        self.0.pow(&a, e)
    }
}

/// A field element; extension generators are referred to by name.
pub fn parse_field_elem(k: &Field, src: &str) -> Result<Elem> {
    eval(&Scalars(k), &parse_expr(src)?)
}

struct Univariate<'a> {
    k: &'a Field,
    var: &'a str,
}

impl Algebra for Univariate<'_> {
    type V = RationalFunction;
    fn int(&self, n: &BigInt) -> Result<Self::V> {
        Ok(RationalFunction::constant(self.k, self.k.from_bigint(n)))
    }
    fn var(&self, name: &str) -> Result<Self::V> {
        if name == self.var {
            return Ok(RationalFunction::from_poly(Poly::x(self.k)));
        }
        constant(self.k, name)
            .map(|c| RationalFunction::constant(self.k, c))
            .ok_or_else(|| unknown(name, self.var))
    }
    fn add(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        check_degree(ratfun_degree(&a) + ratfun_degree(&b))?;
        a.add(&b)
    }
    fn sub(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        check_degree(ratfun_degree(&a) + ratfun_degree(&b))?;
        a.sub(&b)
    }
    fn mul(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        check_degree(ratfun_degree(&a) + ratfun_degree(&b))?;
        a.mul(&b)
    }
    fn div(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        check_degree(ratfun_degree(&a) + ratfun_degree(&b))?;
        a.div(&b)
    }
    fn neg(&self, a: Self::V) -> Result<Self::V> {
        Ok(a.neg())
    }
    fn pow(&self, a: Self::V, e: i64) -> Result<Self::V> {
        check_degree(ratfun_degree(&a) * e.unsigned_abs() as usize)?;
        a.pow(e)
    }
}

/// A rational function in `T`.
pub fn parse_rational_fn(k: &Field, src: &str) -> Result<RationalFunction> {
    eval(&Univariate { k, var: "T" }, &parse_expr(src)?)
}

/// A polynomial in the given variable.
pub fn parse_poly(k: &Field, var: &str, src: &str) -> Result<Poly> {
    let r = eval(&Univariate { k, var }, &parse_expr(src)?)?;
    if !r.den().is_one() {
        return Err(Error::parse(0, "expected a polynomial"));
    }
    Ok(r.num().clone())
}

/// Bivariate values keep products and powers factored; sums collapse.
#[derive(Clone)]
enum Bi {
    Zero,
    Rat(BivariateRational),
}

struct Bivariate<'a>(&'a Field);

impl Bivariate<'_> {
    fn of(&self, p: BiPoly) -> Result<Bi> {
        if p.is_zero() {
            Ok(Bi::Zero)
        } else {
            Ok(Bi::Rat(BivariateRational::from_bipoly(p)?))
        }
    }
}

impl Algebra for Bivariate<'_> {
    type V = Bi;
    fn int(&self, n: &BigInt) -> Result<Bi> {
        self.of(BiPoly::constant(self.0, self.0.from_bigint(n)))
    }
    fn var(&self, name: &str) -> Result<Bi> {
        match name {
            "u" => self.of(BiPoly::u(self.0)),
            "v" => self.of(BiPoly::v(self.0)),
            _ => constant(self.0, name)
                .map(|c| self.of(BiPoly::constant(self.0, c)))
                .ok_or_else(|| unknown(name, "u, v"))?,
        }
    }
    fn add(&self, a: Bi, b: Bi) -> Result<Bi> {
        check_degree(bi_degree(&a) + bi_degree(&b))?;
        match (a, b) {
            (Bi::Zero, x) | (x, Bi::Zero) => Ok(x),
            (Bi::Rat(a), Bi::Rat(b)) => {
                let num = a.num().mul(b.den()).add(&b.num().mul(a.den()));
                if num.is_zero() {
                    return Ok(Bi::Zero);
                }
                Ok(Bi::Rat(BivariateRational::new(num, a.den().mul(b.den()))?))
            }
        }
    }
    fn sub(&self, a: Bi, b: Bi) -> Result<Bi> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }
    fn mul(&self, a: Bi, b: Bi) -> Result<Bi> {
        check_degree(bi_degree(&a) + bi_degree(&b))?;
        match (a, b) {
            (Bi::Zero, _) | (_, Bi::Zero) => Ok(Bi::Zero),
            (Bi::Rat(a), Bi::Rat(b)) => Ok(Bi::Rat(a.mul(&b)?)),
        }
    }
    fn div(&self, a: Bi, b: Bi) -> Result<Bi> {
        check_degree(bi_degree(&a) + bi_degree(&b))?;
        match (a, b) {
            (_, Bi::Zero) => Err(Error::DivisionByZero),
            (Bi::Zero, _) => Ok(Bi::Zero),
            (Bi::Rat(a), Bi::Rat(b)) => Ok(Bi::Rat(a.mul(&b.inv()?)?)),
        }
    }
    fn neg(&self, a: Bi) -> Result<Bi> {
        match a {
            Bi::Zero => Ok(Bi::Zero),
            Bi::Rat(a) => Ok(Bi::Rat(a.neg()?)),
        }
    }
    fn pow(&self, a: Bi, e: i64) -> Result<Bi> {
        check_degree(bi_degree(&a) * e.unsigned_abs() as usize)?;
        match a {
            Bi::Zero if e > 0 => Ok(Bi::Zero),
            Bi::Zero => Err(Error::DivisionByZero),
            Bi::Rat(a) => Ok(Bi::Rat(a.pow(e)?)),
        }
    }
}

/// A nonzero rational function in `u`, `v`, keeping the factored form of the input.
pub fn parse_bivariate(k: &Field, src: &str) -> Result<BivariateRational> {
    match eval(&Bivariate(k), &parse_expr(src)?)? {
        Bi::Zero => Err(Error::ZeroPolynomial),
        Bi::Rat(r) => Ok(r),
    }
}

/// A polynomial in `u`, `v`.
pub fn parse_bipoly(k: &Field, src: &str) -> Result<BiPoly> {
    match eval(&Bivariate(k), &parse_expr(src)?)? {
        Bi::Zero => Ok(BiPoly::zero(k)),
        Bi::Rat(r) if r.den().is_constant() => {
            let c = k.inv(&r.den().coeff(0, 0))?;
            Ok(r.num().scale(&c))
        }
        Bi::Rat(_) => Err(Error::parse(0, "expected a polynomial")),
    }
}

struct Series1<'a> {
    k: &'a Field,
    prec: i64,
}

impl Algebra for Series1<'_> {
    type V = LaurentSeries1;
    fn int(&self, n: &BigInt) -> Result<Self::V> {
        let c = self.k.from_bigint(n);
        if self.k.is_zero(&c) {
            return Ok(LaurentSeries1::exact_zero(self.k));
        }
        Ok(LaurentSeries1::constant(self.k, c, self.prec))
    }
    fn var(&self, name: &str) -> Result<Self::V> {
        if name == "t" {
            return Ok(LaurentSeries1::t(self.k, self.prec));
        }
        constant(self.k, name)
            .map(|c| LaurentSeries1::constant(self.k, c, self.prec))
            .ok_or_else(|| unknown(name, "t"))
    }
    fn add(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        Ok(a.add(&b))
    }
    fn sub(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        Ok(a.sub(&b))
    }
    fn mul(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        Ok(a.mul(&b))
    }
    fn div(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        a.div(&b)
    }
    fn neg(&self, a: Self::V) -> Result<Self::V> {
        Ok(a.neg())
    }
    fn pow(&self, a: Self::V, e: i64) -> Result<Self::V> {
        a.pow(e)
    }
}

/// A Laurent expression in `t`; constants and `t` carry precision `prec`.
pub fn parse_series1(k: &Field, src: &str, prec: i64) -> Result<LaurentSeries1> {
    eval(&Series1 { k, prec }, &parse_expr(src)?)
}

struct Series2<'a> {
    k: &'a Field,
    prec: i64,
}

impl Algebra for Series2<'_> {
    type V = LaurentSeries2;
    fn int(&self, n: &BigInt) -> Result<Self::V> {
        Ok(LaurentSeries2::constant(
            self.k,
            self.k.from_bigint(n),
            self.prec,
        ))
    }
    fn var(&self, name: &str) -> Result<Self::V> {
        match name {
            "t" => Ok(LaurentSeries2::t(self.k, self.prec)),
            "s" => Ok(LaurentSeries2::s(self.k, self.prec)),
            _ => constant(self.k, name)
                .map(|c| LaurentSeries2::constant(self.k, c, self.prec))
                .ok_or_else(|| unknown(name, "t, s")),
        }
    }
    fn add(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        a.add(&b)
    }
    fn sub(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        a.sub(&b)
    }
    fn mul(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        a.mul(&b)
    }
    fn div(&self, a: Self::V, b: Self::V) -> Result<Self::V> {
        a.div(&b)
    }
    fn neg(&self, a: Self::V) -> Result<Self::V> {
        Ok(a.neg())
    }
    fn pow(&self, a: Self::V, e: i64) -> Result<Self::V> {
        a.pow(e)
    }
}

/// A Laurent expression in `t`, `s`; precision `prec` in both variables.
pub fn parse_series2(k: &Field, src: &str, prec: i64) -> Result<LaurentSeries2> {
    eval(&Series2 { k, prec }, &parse_expr(src)?)
}

/// Parses `Fp`, `Fp^d:modulus` (modulus in `T`) or `Q`.
pub fn parse_field_spec(src: &str) -> Result<Field> {
    let s = src.trim();
    if s == "Q" {
        return Ok(Field::rationals());
    }
    let rest = s
        .strip_prefix('F')
        .ok_or_else(|| Error::parse(0, "field must be Fp, Fp^d:modulus or Q"))?;
    let (head, modulus) = match rest.split_once(':') {
        Some((h, m)) => (h, Some(m)),
        None => (rest, None),
    };
    let (p, d) = match head.split_once('^') {
        Some((p, d)) => (p, Some(d)),
        None => (head, None),
    };
    let num = |x: &str, at: usize| {
        x.trim()
            .parse::<u64>()
            .map_err(|_| Error::parse(at, format!("expected an integer, found {x:?}")))
    };
    let p = num(p, 1)?;
    if p > MAX_FIELD_SIZE {
        return Err(Error::InvalidField(format!("prime {p} too large")));
    }
    let base = Field::prime(p)?;
    let d = match d {
        None => 1,
        Some(d) => num(d, 2 + head.find('^').unwrap_or(0))?,
    };
    match (d, modulus) {
        (1, None) => Ok(base),
        (_, None) => Err(Error::parse(s.len(), "extension field needs ':modulus'")),
        (d, Some(m)) => {
            let m = parse_poly(&base, "T", m)?;
            if m.degree() != Some(d as usize) {
                return Err(Error::InvalidField(format!(
                    "modulus has degree {:?}, expected {d}",
                    m.degree()
                )));
            }
            if !m.is_monic() {
                return Err(Error::InvalidField("modulus must be monic".into()));
            }
            if (p as f64).powi(d as i32) > MAX_FIELD_SIZE as f64 {
                return Err(Error::InvalidField(format!("F{p}^{d} is too large")));
            }
            Field::extension(&base, &m, FIELD_GENERATOR)
        }
    }
}
