#![no_main]

use klein_core::models::derived::{DerivedConfig, DerivedConfigJson};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(j) = serde_json::from_slice::<DerivedConfigJson>(data) else { return };
    if j.field.minpoly.len() > 8 || j.points.len() > 64 {
        return;
    }
    let _ = DerivedConfig::from_json(&j);
});
