use std::process::{Command, Output};

use tame_core::report::parse_report;

fn tame(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tame"))
        .args(args)
        .env_remove("TAME_PRECISION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn field_line(o: &Output, key: &str) -> String {
    let prefix = format!("{key}: ");
    stdout(o)
        .lines()
        .find_map(|l| l.strip_prefix(&prefix).map(str::to_string))
        .unwrap_or_else(|| panic!("no {key} in {}", stdout(o)))
}

#[test]
fn symbol1d_examples() {
    let o = tame(&["--field", "F5", "symbol1d", "t", "t"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field_line(&o, "symbol"), "4");
    let o = tame(&["--field", "Q", "symbol1d", "2*t", "3*t^2"]);
    assert_eq!(field_line(&o, "symbol"), "4/3");
    let o = tame(&["--field", "F5", "symbol1d", "t", "1-t"]);
    assert_eq!(field_line(&o, "symbol"), "1");
}

#[test]
fn symbol2d_and_nuk_examples() {
    let o = tame(&["--field", "F5", "symbol2d", "t", "s", "2"]);
    assert_eq!(field_line(&o, "symbol"), "2");
    let o = tame(&["--field", "F5", "nuk", "t", "s"]);
    assert_eq!(field_line(&o, "nu_K"), "1");
    let o = tame(&["--field", "F5", "symbol2d", "t", "s", "s"]);
    assert_eq!(field_line(&o, "symbol"), "4");
}

#[test]
fn comm_and_c3_examples() {
    let o = tame(&["--field", "F5", "comm1d", "t", "t"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field_line(&o, "comm1d"), "4");
    assert_eq!(field_line(&o, "oracle"), "4");
    assert_eq!(field_line(&o, "verdict"), "AGREE");
    let o = tame(&["--field", "F5", "c3", "t", "s", "2"]);
    assert_eq!(field_line(&o, "c3"), "2");
    assert_eq!(field_line(&o, "oracle"), "2");
    let o = tame(&["--field", "F7", "comm1d", "3", "5"]);
    assert_eq!(field_line(&o, "comm1d"), "1");
    assert_eq!(field_line(&o, "verdict"), "AGREE");
    let o = tame(&["--field", "F9", "comm1d", "t", "t"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tame(&[
        "--field",
        "F3^2:T^2+1",
        "comm1d",
        "--lattice-shift",
        "-1",
        "a*t^-1+1",
        "t^2+a",
    ]);
    assert_eq!(field_line(&o, "verdict"), "AGREE", "{}", stderr(&o));
}

#[test]
fn report_examples() {
    let o = tame(&["--field", "F5", "weil", "T", "1-T"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field_line(&o, "rows"), "3");
    assert_eq!(field_line(&o, "product"), "1");
    assert!(stdout(&o).ends_with("PASS\n"));
    let o = tame(&[
        "--field",
        "F5",
        "parshin-point",
        "--at",
        "0,0",
        "u",
        "v",
        "2",
    ]);
    assert_eq!(field_line(&o, "rows"), "2");
    assert!(stdout(&o).ends_with("PASS\n"));
    let o = tame(&[
        "--field",
        "F5",
        "parshin-point",
        "--at",
        "0,0",
        "3",
        "2",
        "4",
    ]);
    assert_eq!(field_line(&o, "rows"), "0");
    assert_eq!(field_line(&o, "product"), "1");
    let o = tame(&["--field", "F5", "parshin-curve", "u", "u+v", "u^2+2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(field_line(&o, "rows"), "3");
}

#[test]
fn exit_codes() {
    let o = tame(&["--field", "F5", "symbol1d", "t+", "t"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("Parse"));
    let o = tame(&["--field", "F6", "symbol1d", "t", "t"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tame(&["symbol1d", "t", "t"]);
    assert_eq!(o.status.code(), Some(2));
    let o = tame(&["--field", "F5", "symbol1d", "t-t", "t"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("IndistinguishableFromZero"));
    let o = tame(&["--field", "F5", "comm1d", "--depth", "3", "t^3", "t"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("DepthTooShallow"));
    let o = tame(&[
        "--field",
        "F5",
        "parshin-point",
        "--at",
        "0,0",
        "v^2-u^2*(u+1)",
        "u",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(5));
    assert!(stderr(&o).contains("SingularBranchUnhandled"));
    assert!(stderr(&o).contains("v^2"));
    let o = tame(&["--field", "F5", "--precision", "2", "symbol1d", "t", "t"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn node_with_explicit_branches() {
    let o = tame(&[
        "--field",
        "F5",
        "parshin-point",
        "--at",
        "0,0",
        "--branch",
        "2*t+t^2;(1+t)*(2*t+t^2)",
        "--branch",
        "2*t+t^2;-(1+t)*(2*t+t^2)",
        "v^2-u^2*(u+1)",
        "u",
        "u+2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(field_line(&o, "rows"), "3");
}

#[test]
fn precision_from_env_and_config() {
    let out = Command::new(env!("CARGO_BIN_EXE_tame"))
        .args([
            "--field",
            "F5",
            "--output",
            "json",
            "parshin-point",
            "--at",
            "0,0",
            "u",
            "v",
            "2",
        ])
        .env("TAME_PRECISION", "8")
        .output()
        .unwrap();
    let r = parse_report(&stdout(&out)).unwrap();
    assert_eq!(r.precision, 8);
    let dir = std::env::temp_dir().join(format!("tame-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("tame.conf");
    std::fs::write(&cfg, "field = F7\nprecision = 32\noutput = json\n").unwrap();
    let o = tame(&[
        "--config",
        cfg.to_str().unwrap(),
        "parshin-point",
        "--at",
        "0,0",
        "u",
        "v",
        "2",
    ]);
    let r = parse_report(&stdout(&o)).unwrap();
    assert_eq!((r.field.as_str(), r.precision), ("F7", 32));
    std::fs::write(&cfg, "precision = many\n").unwrap();
    let o = tame(&[
        "--config",
        cfg.to_str().unwrap(),
        "--field",
        "F5",
        "nuk",
        "t",
        "s",
    ]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn json_round_trip_and_determinism() {
    let cases: [&[&str]; 3] = [
        &[
            "--field",
            "F3^2:T^2+1",
            "--output",
            "json",
            "--seed",
            "7",
            "weil",
            "T^3+a*T+1",
            "(T-a)^2/(T+1)",
        ],
        &[
            "--field",
            "F5",
            "--output",
            "json",
            "parshin-point",
            "--at",
            "1,2",
            "(u-1)*(v-2)^2",
            "u+v-3",
            "v",
        ],
        &[
            "--field",
            "F5",
            "--output",
            "json",
            "--seed",
            "3",
            "parshin-curve",
            "u^2+2",
            "u*v+1",
            "u-1",
        ],
    ];
    for args in cases {
        let a = tame(args);
        let b = tame(args);
        assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
        assert_eq!(a.stdout, b.stdout);
        let text = stdout(&a);
        let r = parse_report(&text).unwrap();
        assert_eq!(r.schema, 1);
        assert_eq!(r.recompute_product().unwrap().to_string(), r.product);
        assert!(r.passed);
    }
}
