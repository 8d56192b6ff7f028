//! JSON rendering of verification reports.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::parse::{parse_field_elem, parse_field_spec};
use crate::reciprocity::VerificationReport;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryJson {
    pub place: String,
    pub symbol: String,
    pub norm: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportJson {
    pub schema: u32,
    pub law: String,
    pub field: String,
    pub precision: i64,
    pub entries: Vec<EntryJson>,
    pub product: String,
    pub passed: bool,
}

impl From<&VerificationReport> for ReportJson {
    fn from(r: &VerificationReport) -> Self {
        ReportJson {
            schema: SCHEMA_VERSION,
            law: r.law.clone(),
            field: r.field.spec_string(),
            precision: r.precision_used,
            entries: r
                .entries
                .iter()
                .map(|e| EntryJson {
                    place: e.place.clone(),
                    symbol: e.symbol.clone(),
                    norm: e.norm.to_string(),
                })
                .collect(),
            product: r.product.to_string(),
            passed: r.passed,
        }
    }
}

impl ReportJson {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Multiplies the norm column again in the report's field.
    pub fn recompute_product(&self) -> Result<FieldElem> {
        let k: Field = parse_field_spec(&self.field)?;
        let mut p = k.one();
        for e in &self.entries {
            let n = parse_field_elem(&k, &e.norm)?;
            p = k.mul(&p, &n);
        }
        Ok(FieldElem::new(&k, p))
    }
}

/// Parses a report and checks the schema version and the product column.
pub fn parse_report(text: &str) -> Result<ReportJson> {
    let r: ReportJson = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.column(), format!("line {}: {e}", e.line())))?;
    if r.schema != SCHEMA_VERSION {
        return Err(Error::parse(
            0,
            format!("unsupported schema version {}", r.schema),
        ));
    }
    let p = r.recompute_product()?;
    if p.to_string() != r.product {
        return Err(Error::parse(
            0,
            format!("product {} does not match the entries ({p})", r.product),
        ));
    }
    if r.passed != p.is_one() {
        return Err(Error::parse(0, "passed flag contradicts the product"));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfun::RationalFunction;
    use crate::reciprocity::weil_verify;
    use crate::Poly;

    #[test]
    fn round_trip() {
        let k = Field::prime(5).unwrap();
        let f = RationalFunction::from_poly(Poly::x(&k));
        let g = RationalFunction::from_poly(Poly::from_i64s(&k, &[1, -1]));
        let rep = weil_verify(&f, &g, 0).unwrap();
        let j = ReportJson::from(&rep);
        let text = j.to_json();
        let back = parse_report(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.recompute_product().unwrap().to_string(), j.product);
        let bad = text.replace("\"passed\": true", "\"passed\": false");
        assert!(matches!(parse_report(&bad), Err(Error::Parse { .. })));
        assert!(parse_report("{").is_err());
    }
}
