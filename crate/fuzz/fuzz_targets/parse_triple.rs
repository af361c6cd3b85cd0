#![no_main]

use klein_core::models::klein::{klein_field, point};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let _ = point(&klein_field(), text);
});
