#![no_main]

use klein_core::arrangement::{line_census, LinesJson};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(j) = serde_json::from_slice::<LinesJson>(data) else { return };
    if j.field.minpoly.len() > 8 || j.lines.len() > 24 {
        return;
    }
    if let Ok((_, lines)) = j.parse() {
        let _ = line_census(&lines);
    }
});
