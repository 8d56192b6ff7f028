#![no_main]

use libfuzzer_sys::fuzz_target;
use tame_core::parse::parse_series1;
use tame_core::symbols::tame1d;
use tame_core::Field;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let k = Field::prime(5).unwrap();
    if let Ok(f) = parse_series1(&k, text, 8) {
        let t = parse_series1(&k, "t", 8).unwrap();
        let _ = tame1d(&f, &t);
    }
});
