#![no_main]

use libfuzzer_sys::fuzz_target;
use tame_core::parse::parse_bivariate;
use tame_core::Field;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let k = Field::prime(7).unwrap();
    if let Ok(f) = parse_bivariate(&k, text) {
        let back = parse_bivariate(&k, &f.to_string()).unwrap();
        assert_eq!(back, f);
    }
});
