#![no_main]

use libfuzzer_sys::fuzz_target;
use tame_core::report::parse_report;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_report(text) {
        assert_eq!(parse_report(&r.to_json()).unwrap(), r);
    }
});
