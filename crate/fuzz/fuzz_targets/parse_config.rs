#![no_main]

use libfuzzer_sys::fuzz_target;
use tame_core::config::parse_config;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(c) = parse_config(text) {
        assert!(c.precision >= 4);
        assert!(c.retry_cap.count_ones() == 1 && c.retry_cap >= c.precision);
    }
});
