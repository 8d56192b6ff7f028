//! Replays the checked-in fuzz seeds through the same checks as the fuzz targets.

use std::path::PathBuf;

use tame_core::config::parse_config;
use tame_core::parse::{
    parse_bivariate, parse_field_spec, parse_rational_fn, parse_series1, parse_series2,
};
use tame_core::report::parse_report;
use tame_core::Field;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn field_spec_seeds() {
    for (name, text) in seeds("parse_field_spec") {
        match parse_field_spec(&text) {
            Ok(k) => assert_eq!(parse_field_spec(&k.spec_string()).unwrap(), k, "{name}"),
            Err(e) => assert_eq!(name, "missing_modulus", "{e}"),
        }
    }
}

#[test]
fn rational_fn_seeds() {
    let k = Field::prime(5).unwrap();
    for (name, text) in seeds("parse_rational_fn") {
        let f = parse_rational_fn(&k, &text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_rational_fn(&k, &f.to_string()).unwrap(), f, "{name}");
    }
}

#[test]
fn bivariate_seeds() {
    let k = Field::prime(7).unwrap();
    for (name, text) in seeds("parse_bivariate") {
        let f = parse_bivariate(&k, &text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_bivariate(&k, &f.to_string()).unwrap(), f, "{name}");
    }
}

#[test]
fn series_seeds() {
    let k = Field::prime(5).unwrap();
    for (name, text) in seeds("parse_series1") {
        parse_series1(&k, &text, 8).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    for (name, text) in seeds("parse_series2") {
        parse_series2(&k, &text, 6).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn report_seeds() {
    for (name, text) in seeds("parse_report") {
        let r = parse_report(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_report(&r.to_json()).unwrap(), r);
        assert!(r.passed);
    }
}

#[test]
fn config_seeds() {
    for (name, text) in seeds("parse_config") {
        match parse_config(&text) {
            Ok(c) => assert!(c.precision >= 4 && c.retry_cap >= c.precision, "{name}"),
            Err(e) => assert_eq!(name, "too_small", "{e}"),
        }
    }
}
