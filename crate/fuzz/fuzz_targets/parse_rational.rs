#![no_main]

use klein_core::polyalg::parse_element;
use klein_core::rational::{fmt_rational, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(v) = parse_rational(text) {
        assert_eq!(parse_rational(&fmt_rational(&v)).unwrap(), v);
    }
    let _ = parse_element(text);
});
