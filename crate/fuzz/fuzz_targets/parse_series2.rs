#![no_main]

use libfuzzer_sys::fuzz_target;
use tame_core::parse::parse_series2;
use tame_core::symbols::nu_k;
use tame_core::Field;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let k = Field::prime(5).unwrap();
    if let Ok(f) = parse_series2(&k, text, 6) {
        let s = parse_series2(&k, "s+t", 6).unwrap();
        let _ = nu_k(&f, &s);
    }
});
