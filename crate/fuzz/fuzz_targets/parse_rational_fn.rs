#![no_main]

use libfuzzer_sys::fuzz_target;
use tame_core::parse::parse_rational_fn;
use tame_core::Field;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let k = Field::prime(5).unwrap();
    if let Ok(f) = parse_rational_fn(&k, text) {
        // Printing and parsing again gives the same function.
        assert_eq!(parse_rational_fn(&k, &f.to_string()).unwrap(), f);
    }
});
