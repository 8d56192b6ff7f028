#![no_main]

use libfuzzer_sys::fuzz_target;
use tame_core::parse::{parse_field_elem, parse_field_spec};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(k) = parse_field_spec(text) {
        assert_eq!(parse_field_spec(&k.spec_string()).unwrap(), k);
        let _ = parse_field_elem(&k, "a^2+1");
    }
});
