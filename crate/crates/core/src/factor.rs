//! Univariate factorization.
//!
//! Finite fields: square-free decomposition, distinct-degree splitting, then
//! Cantor-Zassenhaus equal-degree splitting driven by a seeded RNG.
//! Rationals: rational roots plus square-free parts of degree at most three.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    /// Monic irreducible factors with multiplicities, in canonical order.
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: &Field) -> Poly {
        self.factors
            .iter()
            .fold(Poly::constant(field, self.unit.clone()), |acc, (f, e)| {
                acc.mul(&f.pow(*e))
            })
    }
}

fn big_q(field: &Field) -> BigUint {
    BigUint::from(field.size().expect("finite field"))
}

/// Rabin's irreducibility test over a finite field.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let k = f.field();
    if !k.is_finite() {
        return Err(Error::UnsupportedBase(
            "irreducibility test needs a finite field".into(),
        ));
    }
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let (_, f) = f.monic()?;
    let q = big_q(k);
    let x = Poly::x(k);
    let frob = |h: &Poly, times: usize| {
        let mut h = h.clone();
        for _ in 0..times {
            h = h.powmod(&q, &f);
        }
        h
    };
    let full = frob(&x, n);
    if !full.sub(&x).rem(&f)?.is_zero() {
        return Ok(false);
    }
    let mut m = n;
    let mut r = 2;
    let mut primes = Vec::new();
    while r * r <= m {
        if m % r == 0 {
            primes.push(r);
            while m % r == 0 {
                m /= r;
            }
        }
        r += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for r in primes {
        let h = frob(&x, n / r);
        let g = Poly::gcd(&h.sub(&x), &f);
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn pth_root_poly(f: &Poly) -> Poly {
    let k = f.field();
    let p = k.characteristic() as usize;
    let v = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|c| k.pth_root(c))
        .collect();
    Poly::new(k.clone(), v)
}

/// Square-free decomposition of a monic polynomial over a finite field.
pub fn squarefree_finite(f: &Poly) -> Vec<(Poly, u32)> {
    let k = f.field();
    let p = k.characteristic() as u32;
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let df = f.derivative();
    let mut c = Poly::gcd(f, &df);
    let mut w = f.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() {
        let y = Poly::gcd(&w, &c);
        let fac = w.exact_div(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i));
        }
        w = y;
        c = c.exact_div(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_one() {
        let root = pth_root_poly(&c);
        for (g, e) in squarefree_finite(&root) {
            out.push((g, e * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial.
pub fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let k = f.field();
    let q = big_q(k);
    let x = Poly::x(k);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut i = 1;
    while rest.degree().unwrap_or(0) >= 2 * i {
        h = h.powmod(&q, &rest);
        let g = Poly::gcd(&h.sub(&x), &rest);
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest).expect("nonzero");
            out.push((g, i));
        }
        i += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

fn random_poly(k: &Field, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    Poly::new(k.clone(), (0..deg).map(|_| k.random_elem(rng)).collect())
}

/// Splits a monic square-free polynomial whose irreducible factors all have degree `d`.
pub fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let k = f.field();
    let q = big_q(k);
    let p = k.characteristic();
    loop {
        let a = random_poly(k, n, rng);
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // Trace map T(a) = a + a^2 + ... + a^(2^(m*d - 1)), q = 2^m.
            let m = q.bits() as usize - 1;
            let mut t = a.rem(f).unwrap();
            let mut acc = t.clone();
            for _ in 1..m * d {
                t = t.mulmod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (q.pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            a.powmod(&e, f).sub(&Poly::one(k))
        };
        let g = Poly::gcd(&b, f);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let other = f.exact_div(&g).expect("gcd divides");
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&other, d, rng));
            return out;
        }
    }
}

fn canonical_key(k: &Field, p: &Poly) -> (usize, Vec<String>) {
    (
        p.degree().unwrap_or(0),
        p.coeffs().iter().rev().map(|c| k.format(c)).collect(),
    )
}

fn finish(k: &Field, unit: Elem, mut factors: Vec<(Poly, u32)>) -> Factorization {
    factors.sort_by(|a, b| {
        let ka = canonical_key(k, &a.0);
        let kb = canonical_key(k, &b.0);
        ka.0.cmp(&kb.0).then_with(|| {
            if k.is_finite() {
                let ia: Vec<u64> = a.0.coeffs().iter().rev().map(|c| k.index(c)).collect();
                let ib: Vec<u64> = b.0.coeffs().iter().rev().map(|c| k.index(c)).collect();
                ia.cmp(&ib)
            } else {
                ka.1.cmp(&kb.1)
            }
        })
    });
    Factorization { unit, factors }
}

/// Factors a nonzero polynomial into a unit times monic irreducibles.
///
/// The seed drives the randomized equal-degree step; the output is
/// canonical and independent of it.
pub fn factorize(f: &Poly, seed: u64) -> Result<Factorization> {
    let k = f.field().clone();
    let (unit, monic) = f.monic()?;
    if monic.is_one() {
        return Ok(Factorization {
            unit,
            factors: Vec::new(),
        });
    }
    if k.is_rationals() {
        return factorize_rational(&unit, &monic);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors = Vec::new();
    for (sq, e) in squarefree_finite(&monic) {
        for (g, d) in distinct_degree(&sq) {
            for h in equal_degree(&g, d, &mut rng) {
                factors.push((h, e));
            }
        }
    }
    Ok(finish(&k, unit, factors))
}

fn rat(a: &Elem) -> &BigRational {
    crate::field::rational_of(a).expect("rational element")
}

const MAX_DIVISOR_SEARCH: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let v = n
        .to_u64()
        .filter(|v| *v <= MAX_DIVISOR_SEARCH)
        .ok_or_else(|| {
            Error::UnsupportedBase("coefficients too large for rational roots".into())
        })?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= v {
        if v % d == 0 {
            out.push(BigInt::from(d));
            if d * d != v {
                out.push(BigInt::from(v / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

fn squarefree_char0(f: &Poly) -> Vec<(Poly, u32)> {
    // Yun's algorithm.
    let mut out = Vec::new();
    let df = f.derivative();
    let a0 = Poly::gcd(f, &df);
    let mut b = f.exact_div(&a0).unwrap();
    let mut c = df.exact_div(&a0).unwrap();
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    loop {
        let a = Poly::gcd(&b, &d);
        if !a.is_one() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).unwrap();
        if b.is_one() {
            break;
        }
        c = d.exact_div(&a).unwrap();
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

fn factorize_rational(unit: &Elem, monic: &Poly) -> Result<Factorization> {
    let k = monic.field().clone();
    let mut factors = Vec::new();
    for (part, e) in squarefree_char0(monic) {
        let mut rest = part;
        // Scale to a primitive integer polynomial for the rational-root search.
        let lcm_den = rest
            .coeffs()
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(rat(c).denom()));
        let ints: Vec<BigInt> = rest
            .coeffs()
            .iter()
            .map(|c| (rat(c) * BigRational::from_integer(lcm_den.clone())).to_integer())
            .collect();
        let a0_idx = ints.iter().position(|c| !c.is_zero()).unwrap();
        if a0_idx > 0 {
            let x = Poly::x(&k);
            factors.push((x.clone(), e));
            rest = rest.exact_div(&x.pow(a0_idx as u32)).unwrap();
        }
        if rest.degree().unwrap_or(0) > 0 {
            let lead = ints.last().unwrap().clone();
            let low = ints[a0_idx].clone();
            let mut cands = Vec::new();
            for p in divisors(&low)? {
                for q in divisors(&lead)? {
                    let r = BigRational::new(p.clone(), q.clone());
                    cands.push(r.clone());
                    cands.push(-r);
                }
            }
            cands.sort();
            cands.dedup();
            for r in cands {
                let lin = Poly::new(k.clone(), vec![Elem::Rat(-r.clone()), k.one()]);
                if let Some(q) = rest.exact_div(&lin) {
                    rest = q;
                    factors.push((lin, e));
                }
                if rest.degree().unwrap_or(0) == 0 {
                    break;
                }
            }
        }
        match rest.degree() {
            Some(0) | None => {}
            Some(d) if d <= 3 => factors.push((rest, e)),
            Some(d) => {
                return Err(Error::UnsupportedBase(format!(
                    "factoring a degree-{d} rational polynomial without rational roots"
                )))
            }
        }
    }
    Ok(finish(&k, unit.clone(), factors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn worked_examples() {
        let f5 = Field::prime(5).unwrap();
        let fac = factorize(&Poly::from_i64s(&f5, &[-1, 0, 1]), 1).unwrap();
        assert_eq!(fac.unit, f5.one());
        assert_eq!(
            fac.factors,
            vec![
                (Poly::from_i64s(&f5, &[1, 1]), 1),
                (Poly::from_i64s(&f5, &[4, 1]), 1)
            ]
        );
        let f3 = Field::prime(3).unwrap();
        let m = Poly::from_i64s(&f3, &[1, 0, 1]);
        let fac = factorize(&m, 1).unwrap();
        assert_eq!(fac.factors, vec![(m, 1)]);
        let fac = factorize(&Poly::from_i64s(&f5, &[0, 0, 3]), 1).unwrap();
        assert_eq!(fac.unit, f5.from_i64(3));
        assert_eq!(fac.factors, vec![(Poly::x(&f5), 2)]);
    }

    #[test]
    fn zero_polynomial_rejected() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(factorize(&Poly::zero(&f5), 0), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn random_factorizations_recombine() {
        let f5 = Field::prime(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..500 {
            let deg = rng.gen_range(0..=8);
            let mut v: Vec<Elem> = (0..=deg).map(|_| f5.random_elem(&mut rng)).collect();
            v[deg] = f5.random_nonzero(&mut rng);
            let p = Poly::new(f5.clone(), v);
            let fac = factorize(&p, i).unwrap();
            assert_eq!(fac.expand(&f5), p);
            for (j, (g, _)) in fac.factors.iter().enumerate() {
                assert!(g.is_monic());
                assert!(is_irreducible(g).unwrap());
                for (h, _) in &fac.factors[j + 1..] {
                    assert_ne!(g, h);
                }
            }
        }
    }

    #[test]
    fn characteristic_two_and_powers() {
        let f2 = Field::prime(2).unwrap();
        // (T^2+T+1)^2 * (T+1)^3 * T
        let a = Poly::from_i64s(&f2, &[1, 1, 1]).pow(2);
        let b = Poly::from_i64s(&f2, &[1, 1]).pow(3);
        let p = a.mul(&b).mul(&Poly::x(&f2));
        let fac = factorize(&p, 3).unwrap();
        assert_eq!(fac.expand(&f2), p);
        assert_eq!(fac.factors.len(), 3);
        // Product of the two distinct quadratic-free degree-3 irreducibles.
        let c = Poly::from_i64s(&f2, &[1, 1, 0, 1]).mul(&Poly::from_i64s(&f2, &[1, 0, 1, 1]));
        let fac = factorize(&c, 9).unwrap();
        assert_eq!(fac.factors.len(), 2);
    }

    #[test]
    fn rationals() {
        let q = Field::rationals();
        // 2(T - 1/2)(T + 3)(T^2 + 1)^2
        let p = Poly::from_i64s(&q, &[-1, 2])
            .mul(&Poly::from_i64s(&q, &[3, 1]))
            .mul(&Poly::from_i64s(&q, &[1, 0, 1]).pow(2));
        let fac = factorize(&p, 0).unwrap();
        assert_eq!(fac.expand(&q), p);
        assert_eq!(fac.factors.len(), 3);
        let quartic = Poly::from_i64s(&q, &[2, 0, 0, 0, 1]);
        assert!(matches!(
            factorize(&quartic, 0),
            Err(Error::UnsupportedBase(_))
        ));
    }

    #[test]
    fn rabin_matches_brute_force_over_f3() {
        let f3 = Field::prime(3).unwrap();
        // Count monic irreducible quartics over F_3: (3^4 - 3^2)/4 = 18.
        let mut count = 0;
        for i in 0..81u64 {
            let mut v: Vec<i64> = (0..4).map(|j| ((i / 3u64.pow(j)) % 3) as i64).collect();
            v.push(1);
            if is_irreducible(&Poly::from_i64s(&f3, &v)).unwrap() {
                count += 1;
            }
        }
        assert_eq!(count, 18);
    }
}
