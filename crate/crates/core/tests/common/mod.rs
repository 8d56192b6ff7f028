#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tame_core::bivariate::BiPoly;
use tame_core::parse::parse_field_spec;
use tame_core::ratfun::RationalFunction;
use tame_core::series::{LaurentSeries1, LaurentSeries2};
use tame_core::{Elem, Field, Poly};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fp(p: u64) -> Field {
    Field::prime(p).unwrap()
}

pub fn f9() -> Field {
    parse_field_spec("F3^2:T^2+1").unwrap()
}

pub fn random_poly(k: &Field, rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    let mut c: Vec<Elem> = (0..d).map(|_| k.random_elem(rng)).collect();
    c.push(k.random_nonzero(rng));
    Poly::new(k.clone(), c)
}

pub fn random_ratfun(k: &Field, rng: &mut ChaCha8Rng, max_deg: usize) -> RationalFunction {
    RationalFunction::new(random_poly(k, rng, max_deg), random_poly(k, rng, max_deg)).unwrap()
}

/// Coefficients drawn once, long enough to build a series at several precisions.
#[derive(Clone, Debug)]
pub struct Draw1 {
    pub val: i64,
    pub coeffs: Vec<Elem>,
}

impl Draw1 {
    pub fn random(k: &Field, rng: &mut ChaCha8Rng, max_val: i64, len: usize) -> Self {
        let val = rng.gen_range(-max_val..=max_val);
        let mut coeffs = vec![k.random_nonzero(rng)];
        coeffs.extend((1..len).map(|_| k.random_elem(rng)));
        Draw1 { val, coeffs }
    }

    /// The series with relative precision `rel`.
    pub fn series(&self, k: &Field, rel: usize) -> LaurentSeries1 {
        assert!(rel <= self.coeffs.len());
        LaurentSeries1::new(
            k,
            self.val,
            self.coeffs[..rel].to_vec(),
            self.val + rel as i64,
        )
    }
}

/// A draw for `k((t))((s))`: one inner draw per `s`-coefficient.
#[derive(Clone, Debug)]
pub struct Draw2 {
    pub s_val: i64,
    pub inner: Vec<Draw1>,
}

impl Draw2 {
    pub fn random(k: &Field, rng: &mut ChaCha8Rng, max_val: i64, len: usize) -> Self {
        let s_val = rng.gen_range(-max_val..=max_val);
        let inner = (0..len)
            .map(|_| Draw1::random(k, rng, max_val, len))
            .collect();
        Draw2 { s_val, inner }
    }

    /// Precision `prec` in `s` (relative) and in each inner series (relative).
    pub fn series(&self, k: &Field, prec: usize) -> LaurentSeries2 {
        let coeffs = self.inner[..prec]
            .iter()
            .map(|d| d.series(k, prec))
            .collect();
        LaurentSeries2::new(k, self.s_val, coeffs, self.s_val + prec as i64).unwrap()
    }
}

/// The branch polynomials `u, v, u+v, v-u^2, u-v^2` through the origin.
pub fn grid_branches(k: &Field) -> Vec<BiPoly> {
    let one = k.one();
    let m1 = k.from_i64(-1);
    vec![
        BiPoly::u(k),
        BiPoly::v(k),
        BiPoly::from_terms(k, &[(one.clone(), 1, 0), (one.clone(), 0, 1)]),
        BiPoly::from_terms(k, &[(one.clone(), 0, 1), (m1.clone(), 2, 0)]),
        BiPoly::from_terms(k, &[(one, 1, 0), (m1, 0, 2)]),
    ]
}
