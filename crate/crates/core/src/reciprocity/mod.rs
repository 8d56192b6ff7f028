//! Reciprocity laws: Weil on the projective line, Parshin's point and curve laws
//! on the plane.
//!
//! Local symbols are collected into a [`VerificationReport`] whose product of
//! norms must be exactly one.

mod curve;
mod point;
mod weil;

pub use curve::{parshin_curve_verify, LineParam};
pub use point::{coprime_basis, parshin_point_verify, Chart, SurfacePoint};
pub use weil::{
    local_symbol_at_place, local_symbol_series_path, places_of_support, weil_verify, Place,
    PlaceKind,
};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// Default working precision for series expansions.
pub const DEFAULT_PRECISION: i64 = 16;
/// Default cap for precision doubling.
pub const DEFAULT_RETRY_CAP: i64 = 1 << 10;

/// Precision schedule: start at `initial`, double on precision failures up to `cap`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RetryPolicy {
    pub initial: i64,
    pub cap: i64,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        RetryPolicy {
            initial: DEFAULT_PRECISION,
            cap: DEFAULT_RETRY_CAP,
        }
    }
}

impl RetryPolicy {
    pub fn new(initial: i64, cap: i64) -> Self {
        RetryPolicy { initial, cap }
    }

    /// Runs `f` at increasing precision until it stops failing for lack of it.
    pub fn run<T>(&self, mut f: impl FnMut(i64) -> Result<T>) -> Result<(T, i64)> {
        let mut prec = self.initial.max(1);
        loop {
            match f(prec) {
                Err(Error::PrecisionExhausted(_) | Error::IndistinguishableFromZero)
                    if prec * 2 <= self.cap =>
                {
                    prec *= 2
                }
                Err(e) => return Err(e),
                Ok(v) => return Ok((v, prec)),
            }
        }
    }
}

/// One contributing place, point or branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportEntry {
    pub place: String,
    /// Local symbol in the residue field, as a canonical string.
    pub symbol: String,
    /// Its norm to the ground field.
    pub norm: FieldElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub law: String,
    pub field: Field,
    pub entries: Vec<ReportEntry>,
    pub product: FieldElem,
    pub passed: bool,
    pub precision_used: i64,
}

impl VerificationReport {
    /// Sorts the entries and computes the product of the norm column.
    pub fn assemble(
        law: &str,
        field: &Field,
        mut entries: Vec<ReportEntry>,
        precision_used: i64,
    ) -> Self {
        entries.sort_by(|a, b| a.place.cmp(&b.place));
        let mut p = field.one();
        for e in &entries {
            p = field.mul(&p, &e.norm.value);
        }
        let product = FieldElem::new(field, p);
        VerificationReport {
            law: law.to_string(),
            field: field.clone(),
            passed: product.is_one(),
            entries,
            product,
            precision_used,
        }
    }
}
