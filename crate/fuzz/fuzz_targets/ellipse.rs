#![no_main]

use klein_core::realize::Ellipse;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(e) = Ellipse::parse(text) {
        assert!(e.a > 0.0 && e.b > 0.0);
        let _ = e.sym();
    }
});
