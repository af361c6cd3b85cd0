#![no_main]

use klein_core::numfield::{element_from_json, field_from_json, ElementJson, FieldJson};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(j) = serde_json::from_slice::<FieldJson>(data) {
        if j.minpoly.len() <= 12 {
            let _ = field_from_json(&j);
        }
    }
    if let Ok(j) = serde_json::from_slice::<ElementJson>(data) {
        if j.minpoly.len() <= 12 {
            let _ = element_from_json(&j);
        }
    }
});
