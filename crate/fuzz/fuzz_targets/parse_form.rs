#![no_main]

use klein_core::models::klein::klein_field;
use klein_core::polyalg::{format_form, parse_form};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(parsed) = parse_form(text) else { return };
    if parsed.degree > 64 {
        return;
    }
    if let Ok(f) = parsed.clone().into_rational() {
        let again = parse_form(&format_form(&f)).and_then(|p| p.into_rational()).expect("printed form parses");
        assert!(again == f || (f.is_zero() && again.is_zero()));
    }
    let _ = parsed.into_field(&klein_field());
});
